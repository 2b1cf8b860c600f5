"""Self-convolution identities and the brute-force convolution oracle.

Every identity here has the shape::

    D * sum_{i=0}^{n} a_i a_{n-i} = sum_t coeff_t * (alpha_t*n + beta_t) * s_t(n + offset_t)

where ``s_t`` is the sequence named by the term's role.  Most identities only
use one sequence; two of the Fibonacci/Lucas identities mix ``F`` and ``L``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Union

from .sequences import (
    SequenceSpec,
    TermVector,
    fibonacci_spec,
    lucas_spec,
    narayana_spec,
    rabinowitz_spec,
    terms as sequence_terms,
)


class NonDivisibleError(ArithmeticError):
    """A right-hand side was not divisible by the identity's multiplier."""


@dataclass(frozen=True)
class RhsTerm:
    coeff: int
    n_weight: tuple[int, int]
    index_offset: int
    role: str = "a"

    def weight(self, n: int) -> int:
        alpha, beta = self.n_weight
        return alpha * n + beta


@dataclass(frozen=True)
class IdentityForm:
    name: str
    k: Union[int, str]
    lhs_multiplier: int
    rhs_terms: tuple[RhsTerm, ...]
    sequence_roles: Mapping[str, SequenceSpec]
    min_n: int = 0
    conv_role: str = "a"
    notes: str = ""

    @property
    def conv_spec(self) -> SequenceSpec:
        return self.sequence_roles[self.conv_role]

    def offsets(self, role: Optional[str] = None) -> list[int]:
        return [t.index_offset for t in self.rhs_terms if role is None or t.role == role]

    def max_index(self, n_max: int) -> int:
        """Largest sequence index the right-hand side touches for ``n <= n_max``."""
        return n_max + max(self.offsets())

    def describe(self) -> str:
        parts = []
        for t in self.rhs_terms:
            alpha, beta = t.n_weight
            w = _affine(alpha, beta)
            idx = _affine(1, t.index_offset)
            parts.append(f"{t.coeff:+d}*({w})*{t.role}[{idx}]")
        return f"{self.lhs_multiplier} * conv({self.conv_role})[n] = " + " ".join(parts)


def _affine(alpha: int, beta: int) -> str:
    if alpha == 0:
        return str(beta)
    head = "n" if alpha == 1 else f"{alpha}n"
    if beta == 0:
        return head
    return f"{head}{beta:+d}"


@dataclass(frozen=True)
class ConvolutionValue:
    n: int
    value: int


def self_convolution(spec: SequenceSpec, n_max: int) -> list[ConvolutionValue]:
    """Direct Cauchy sums ``sum_{i=0}^{n} a_i a_{n-i}`` for ``0 <= n <= n_max``.

    O(n_max^2) multiplications; this is the oracle the closed forms are
    checked against, so it deliberately uses nothing but the raw terms.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    a = sequence_terms(spec, n_max).values
    out = []
    for n in range(n_max + 1):
        # pair i with n-i once and double, adding the middle term when n is even
        half = sum(a[i] * a[n - i] for i in range((n + 1) // 2))
        v = 2 * half
        if n % 2 == 0:
            v += a[n // 2] ** 2
        out.append(ConvolutionValue(n, v))
    return out


def general_form(k: int) -> IdentityForm:
    """Self-convolution identity for the k-step Narayana numbers, valid for every k >= 2.

    ``(k^k + (k-1)^(k-1)) * conv(n) = k^(k-1) (n+k-2) R_{n+k-1}
    - sum_{j=0}^{k-2} k^j (k-1)^(k-2-j) (n+k+j-1) R_{n+j}``.
    """
    if k < 2:
        raise ValueError(f"the identity needs k >= 2, got {k}")
    rhs = [RhsTerm(k ** (k - 1), (1, k - 2), k - 1)]
    for j in range(k - 1):
        rhs.append(RhsTerm(-(k**j) * (k - 1) ** (k - 2 - j), (1, k + j - 1), j))
    return IdentityForm(
        name=f"general-k{k}",
        k=k,
        lhs_multiplier=k**k + (k - 1) ** (k - 1),
        rhs_terms=tuple(rhs),
        sequence_roles={"a": narayana_spec(k)},
        min_n=0,
    )


# the identity is commonly cited by its theorem label; keep that spelling available
theorem1_form = general_form


def _form(name, k, d, terms, roles, min_n=0, conv_role="a", notes=""):
    return IdentityForm(
        name=name,
        k=k,
        lhs_multiplier=d,
        rhs_terms=tuple(RhsTerm(*t) for t in terms),
        sequence_roles=roles,
        min_n=min_n,
        conv_role=conv_role,
        notes=notes,
    )


def fixed_forms() -> list[IdentityForm]:
    """The identities stated with explicit numeric coefficients."""
    fib = {"a": fibonacci_spec()}
    fib_luc = {"F": fibonacci_spec(), "L": lucas_spec()}
    return [
        _form("fibonacci-2n", 2, 5, [(2, (1, 0), 1), (-1, (1, 1), 0)], fib),
        _form("fibonacci-prev", 2, 5, [(1, (1, -1), 0), (2, (1, 0), -1)], fib, min_n=1),
        _form("fibonacci-outer", 2, 5, [(1, (1, -1), 1), (1, (1, 1), -1)], fib, min_n=1),
        _form(
            "fibonacci-lucas",
            2,
            5,
            [(1, (1, 0), 0, "L"), (-1, (0, 1), 0, "F")],
            fib_luc,
            conv_role="F",
        ),
        _form(
            "lucas",
            2,
            1,
            [(1, (1, 1), 0, "L"), (2, (0, 1), 1, "F")],
            fib_luc,
            conv_role="L",
        ),
        _form(
            "rabinowitz",
            3,
            31,
            [(6, (1, -2), 1), (-2, (1, 0), -1), (3, (1, 1), -2)],
            {"a": rabinowitz_spec()},
            min_n=2,
        ),
        _form(
            "narayana3",
            3,
            31,
            [(9, (1, 1), 2), (-3, (1, 3), 1), (-2, (1, 2), 0)],
            {"a": narayana_spec(3)},
        ),
        _form(
            "narayana4",
            4,
            283,
            [(64, (1, 2), 3), (-16, (1, 5), 2), (-12, (1, 4), 1), (-9, (1, 3), 0)],
            {"a": narayana_spec(4)},
        ),
        _form(
            "narayana6",
            6,
            6**6 + 5**5,
            [(6**5, (1, 4), 5)] + [(-(6**j) * 5 ** (4 - j), (1, 5 + j), j) for j in range(5)],
            {"a": narayana_spec(6)},
            notes=(
                "printed with weights 6^i 5^(4-i) under a sum over j; "
                "stored with the summation index j in both exponents"
            ),
        ),
    ]


def catalog(k_values: Iterable[int] = range(2, 9)) -> list[IdentityForm]:
    """All fixed identities followed by the general identity for each ``k`` in ``k_values``."""
    return fixed_forms() + [general_form(k) for k in k_values]


TermSource = Union[TermVector, Mapping[str, TermVector]]


def _lookup(source: TermSource, role: str) -> TermVector:
    if isinstance(source, TermVector):
        return source
    return source[role]


def evaluate_rhs(form: IdentityForm, terms: TermSource, n: int) -> int:
    """The exact right-hand side at ``n``, before dividing by the multiplier."""
    if n < form.min_n:
        raise ValueError(f"{form.name} is only asserted for n >= {form.min_n}, got n={n}")
    total = 0
    for t in form.rhs_terms:
        total += t.coeff * t.weight(n) * _lookup(terms, t.role).at(n + t.index_offset)
    return total


def closed_form_convolution(form: IdentityForm, terms: TermSource, n: int) -> int:
    """The convolution at ``n`` computed from the closed form; the division must be exact."""
    rhs = evaluate_rhs(form, terms, n)
    q, r = divmod(rhs, form.lhs_multiplier)
    if r:
        raise NonDivisibleError(
            f"{form.name}: right-hand side {rhs} at n={n} is not divisible by {form.lhs_multiplier}"
        )
    return q


def terms_for(form: IdentityForm, n_max: int, modulus: Optional[int] = None) -> dict[str, TermVector]:
    """Term vectors for every role of ``form``, long enough to evaluate it for ``n <= n_max``."""
    out = {}
    for role, spec in form.sequence_roles.items():
        need = max([n_max] + [n_max + d for d in form.offsets(role)])
        out[role] = sequence_terms(spec, need, modulus)
    return out


def perturb(form: IdentityForm, term_index: Optional[int] = None, field_name: str = "coeff", delta: int = 1) -> IdentityForm:
    """A copy of ``form`` with one number changed by ``delta``.

    ``term_index=None`` perturbs the left multiplier.  Otherwise ``field_name``
    selects the term's ``coeff``, ``alpha`` or ``beta``.
    """
    if term_index is None:
        return replace(form, name=form.name + "~D", lhs_multiplier=form.lhs_multiplier + delta)
    rhs = list(form.rhs_terms)
    t = rhs[term_index]
    alpha, beta = t.n_weight
    if field_name == "coeff":
        t = replace(t, coeff=t.coeff + delta)
    elif field_name == "alpha":
        t = replace(t, n_weight=(alpha + delta, beta))
    elif field_name == "beta":
        t = replace(t, n_weight=(alpha, beta + delta))
    else:
        raise ValueError(f"unknown field {field_name!r}")
    rhs[term_index] = t
    return replace(form, name=f"{form.name}~{term_index}.{field_name}", rhs_terms=tuple(rhs))
