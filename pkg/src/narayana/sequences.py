"""Integer linear recurrences: k-step Narayana numbers and friends.

A recurrence of order k is ``a_n = c_1*a_{n-1} + ... + c_k*a_{n-k}`` together
with the initial terms ``a_0 .. a_{k-1}``.  Terms are exact Python integers.

Two evaluation strategies are provided.  :func:`terms` iterates the recurrence
and returns a dense vector; :func:`term_at` computes a single term by reducing
``x**n`` modulo the characteristic polynomial, which takes O(k^2 log n)
coefficient operations and works both exactly and modulo an integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .polynomial import IntPolynomial, x_power_mod


@dataclass(frozen=True)
class SequenceSpec:
    order: int
    recurrence_coeffs: tuple[int, ...]
    initial_terms: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "recurrence_coeffs", tuple(int(c) for c in self.recurrence_coeffs))
        object.__setattr__(self, "initial_terms", tuple(int(c) for c in self.initial_terms))
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if len(self.recurrence_coeffs) != self.order:
            raise ValueError(f"expected {self.order} recurrence coefficients, got {len(self.recurrence_coeffs)}")
        if len(self.initial_terms) != self.order:
            raise ValueError(f"expected {self.order} initial terms, got {len(self.initial_terms)}")

    def characteristic_polynomial(self) -> IntPolynomial:
        """``x^k - c_1 x^(k-1) - ... - c_k``."""
        k = self.order
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        for i, c in enumerate(self.recurrence_coeffs, start=1):
            coeffs[k - i] = -c
        return IntPolynomial(coeffs)


@dataclass(frozen=True)
class TermVector:
    """Consecutive sequence terms; ``values[i]`` is the term at ``start_index + i``."""

    start_index: int
    values: tuple[int, ...]

    def __len__(self):
        return len(self.values)

    @property
    def stop_index(self) -> int:
        return self.start_index + len(self.values)

    def at(self, index: int) -> int:
        i = index - self.start_index
        if i < 0 or i >= len(self.values):
            raise IndexError(
                f"index {index} outside available range [{self.start_index}, {self.stop_index - 1}]"
            )
        return self.values[i]


def narayana_spec(k: int) -> SequenceSpec:
    """The k-step Narayana numbers: 0, 1, ..., 1 (k terms), then ``a_n = a_{n-1} + a_{n-k}``."""
    if k < 2:
        raise ValueError(f"k-step Narayana numbers need k >= 2, got {k}")
    coeffs = [0] * k
    coeffs[0] = 1
    coeffs[k - 1] += 1
    name = "fibonacci" if k == 2 else f"narayana{k}"
    return SequenceSpec(k, tuple(coeffs), (0,) + (1,) * (k - 1), name)


def fibonacci_spec() -> SequenceSpec:
    return SequenceSpec(2, (1, 1), (0, 1), "fibonacci")


def lucas_spec() -> SequenceSpec:
    return SequenceSpec(2, (1, 1), (2, 1), "lucas")


def rabinowitz_spec() -> SequenceSpec:
    """Third-order sequence with X_0 = X_1 = 0, X_2 = 1 and ``X_n = X_{n-1} + X_{n-3}``."""
    return SequenceSpec(3, (1, 0, 1), (0, 0, 1), "rabinowitz")


def _sparse_coeffs(spec: SequenceSpec) -> list[tuple[int, int]]:
    return [(i, c) for i, c in enumerate(spec.recurrence_coeffs, start=1) if c]


def terms(spec: SequenceSpec, n_max: int, modulus: Optional[int] = None) -> TermVector:
    """Terms ``a_0 .. a_{n_max}`` by direct iteration.

    Only nonzero recurrence coefficients are visited, so a k-step Narayana
    vector costs two big-integer additions per term.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    _check_modulus(modulus)
    init = spec.initial_terms
    if modulus is not None:
        init = tuple(v % modulus for v in init)
    if n_max < spec.order:
        return TermVector(0, init[: n_max + 1])
    sparse = _sparse_coeffs(spec)
    out = list(init)
    if len(sparse) == 2 and sparse[0][1] == sparse[1][1] == 1:
        (i, _), (j, _) = sparse
        for n in range(spec.order, n_max + 1):
            v = out[n - i] + out[n - j]
            out.append(v if modulus is None else v % modulus)
    else:
        for n in range(spec.order, n_max + 1):
            v = sum(c * out[n - i] for i, c in sparse)
            out.append(v if modulus is None else v % modulus)
    return TermVector(0, tuple(out))


def term_iter(spec: SequenceSpec, n: int, modulus: Optional[int] = None) -> int:
    """``a_n`` by iterating with a sliding window of the last ``k`` terms (O(k) memory)."""
    if n < 0:
        raise ValueError(f"sequence index must be >= 0, got {n}")
    _check_modulus(modulus)
    k = spec.order
    window = deque(spec.initial_terms if modulus is None else (v % modulus for v in spec.initial_terms), maxlen=k)
    if n < k:
        return window[n]
    sparse = [(k - i, c) for i, c in _sparse_coeffs(spec)]
    for _ in range(n - k + 1):
        v = sum(c * window[pos] for pos, c in sparse)
        if modulus is not None:
            v %= modulus
        window.append(v)
    return window[-1]


def combine_initial(spec: SequenceSpec, residue: IntPolynomial, modulus: Optional[int] = None) -> int:
    """Evaluate ``sum r_j * a_j`` for a residue ``r`` of ``x^n`` modulo the characteristic polynomial."""
    v = sum(residue[j] * a for j, a in enumerate(spec.initial_terms))
    return v % modulus if modulus is not None else v


def term_at(spec: SequenceSpec, n: int, modulus: Optional[int] = None) -> int:
    """``a_n`` (or ``a_n mod modulus``) via ``x^n mod`` the characteristic polynomial."""
    if n < 0:
        raise ValueError(f"sequence index must be >= 0, got {n}")
    _check_modulus(modulus)
    residue = x_power_mod(n, spec.characteristic_polynomial(), modulus)
    return combine_initial(spec, residue, modulus)


def _check_modulus(modulus: Optional[int]) -> None:
    if modulus is not None and modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")


def window_satisfies_recurrence(spec: SequenceSpec, window: Sequence[int], modulus: Optional[int] = None) -> bool:
    """True if ``window[-1]`` follows from the ``k`` values before it."""
    k = spec.order
    if len(window) != k + 1:
        raise ValueError(f"need {k + 1} consecutive terms, got {len(window)}")
    v = sum(c * window[k - i] for i, c in enumerate(spec.recurrence_coeffs, start=1))
    if modulus is None:
        return v == window[k]
    return (v - window[k]) % modulus == 0
