"""Truncated Laurent series with exact rational coefficients.

A :class:`LaurentSeries` knows its coefficients for every exponent from
``start_exp`` through ``trunc_order``.  Coefficients above ``trunc_order`` are
*unknown*, not zero, and every operation tracks how far its result is
actually determined.  Polynomials are represented the same way: a polynomial
built with ``trunc_order=N`` simply claims nothing beyond ``x^N``.

The second half of the module builds the generating functions of the
k-step Narayana self-convolution identity, once from the coefficient
definitions and once from the closed rational forms, so the two can be
compared term by term.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .identities import general_form, self_convolution
from .sequences import narayana_spec, terms as sequence_terms

Number = Union[int, Fraction]

DEFAULT_ORDER = 200
ORDER_ENV_VAR = "NARAYANA_SERIES_ORDER"


def default_order() -> int:
    """Default truncation order, overridable through ``NARAYANA_SERIES_ORDER``."""
    raw = os.environ.get(ORDER_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_ORDER
    value = int(raw.strip())
    if value < 0:
        raise ValueError(f"{ORDER_ENV_VAR} must be >= 0, got {value}")
    return value


class NotInvertibleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class LaurentSeries:
    start_exp: int
    coeffs: tuple[Fraction, ...]
    trunc_order: int

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        expected = self.trunc_order - self.start_exp + 1
        if expected < 0:
            raise ValueError("start_exp may exceed trunc_order by at most one")
        if len(coeffs) < expected:
            coeffs = coeffs + (Fraction(0),) * (expected - len(coeffs))
        elif len(coeffs) > expected:
            coeffs = coeffs[:expected]
        object.__setattr__(self, "coeffs", coeffs)

    # construction

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], trunc_order: int, start_exp: int = 0) -> "LaurentSeries":
        """Series with the given coefficients from ``x^start_exp``; missing ones up to ``trunc_order`` are 0."""
        return cls(start_exp, tuple(coeffs), trunc_order)

    @classmethod
    def zero(cls, trunc_order: int) -> "LaurentSeries":
        return cls(trunc_order + 1, (), trunc_order)

    @classmethod
    def monomial(cls, c: Number, exp: int, trunc_order: int) -> "LaurentSeries":
        if exp > trunc_order:
            return cls.zero(trunc_order)
        return cls(exp, (c,), trunc_order)

    # inspection

    @property
    def valuation(self) -> Optional[int]:
        """Exponent of the lowest nonzero coefficient, or None if all known coefficients vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start_exp + i
        return None

    def is_zero(self) -> bool:
        return self.valuation is None

    def coefficient(self, exp: int) -> Fraction:
        if exp > self.trunc_order:
            raise IndexError(f"coefficient of x^{exp} is beyond the truncation order {self.trunc_order}")
        if exp < self.start_exp:
            return Fraction(0)
        return self.coeffs[exp - self.start_exp]

    __getitem__ = coefficient

    def items(self):
        """``(exponent, coefficient)`` pairs for the nonzero known coefficients."""
        return [(self.start_exp + i, c) for i, c in enumerate(self.coeffs) if c]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def normalize(self) -> "LaurentSeries":
        """Drop leading zero coefficients, raising ``start_exp``; values are unchanged."""
        v = self.valuation
        if v is None:
            return LaurentSeries.zero(self.trunc_order)
        if v == self.start_exp:
            return self
        return LaurentSeries(v, self.coeffs[v - self.start_exp :], self.trunc_order)

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.trunc_order:
            raise ValueError(f"cannot raise the truncation order from {self.trunc_order} to {order}")
        start = min(self.start_exp, order + 1)
        return LaurentSeries(start, self.coeffs[: max(0, order - start + 1)], order)

    def extend_start(self, start: int) -> "LaurentSeries":
        """Same series, with explicit zero coefficients down to ``start``."""
        if start >= self.start_exp:
            return self
        pad = (Fraction(0),) * (self.start_exp - start)
        return LaurentSeries(start, pad + self.coeffs, self.trunc_order)

    # arithmetic

    def __neg__(self):
        return LaurentSeries(self.start_exp, tuple(-c for c in self.coeffs), self.trunc_order)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(other, 0, self.trunc_order)
        order = min(self.trunc_order, other.trunc_order)
        start = min(self.start_exp, other.start_exp, order + 1)
        out = [Fraction(0)] * (order - start + 1)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.start_exp + i
                if e > order:
                    break
                out[e - start] += c
        return LaurentSeries(start, tuple(out), order)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(other, 0, self.trunc_order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        a, b = self.normalize(), other.normalize()
        order = min(a.trunc_order + b.start_exp, b.trunc_order + a.start_exp)
        start = a.start_exp + b.start_exp
        if start > order:
            return LaurentSeries.zero(order)
        out = [Fraction(0)] * (order - start + 1)
        limit = order - start
        bnz = [(j, c) for j, c in enumerate(b.coeffs) if c]
        for i, x in enumerate(a.coeffs):
            if i > limit:
                break
            if not x:
                continue
            for j, y in bnz:
                if i + j > limit:
                    break
                out[i + j] += x * y
        return LaurentSeries(start, tuple(out), order)

    __rmul__ = __mul__

    def scale(self, q: Number) -> "LaurentSeries":
        q = Fraction(q)
        return LaurentSeries(self.start_exp, tuple(c * q for c in self.coeffs), self.trunc_order)

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by ``x^m``."""
        return LaurentSeries(self.start_exp + m, self.coeffs, self.trunc_order + m)

    def inverse_unit(self) -> "LaurentSeries":
        """Multiplicative inverse through the order the input determines.

        For ``a = x^e (c_0 + c_1 x + ...)`` known through ``x^N`` the inverse is
        ``x^-e (b_0 + b_1 x + ...)`` known through ``x^(N - 2e)``.
        """
        a = self.normalize()
        if a.is_zero():
            raise NotInvertibleError("series has no nonzero coefficient within its truncation order")
        e = a.start_exp
        rel = a.trunc_order - e
        c = a.coeffs
        c0 = c[0]
        nz = [(i, ci) for i, ci in enumerate(c) if i and ci]
        b = [1 / c0]
        for m in range(1, rel + 1):
            acc = Fraction(0)
            for i, ci in nz:
                if i > m:
                    break
                acc += ci * b[m - i]
            b.append(-acc / c0)
        return LaurentSeries(-e, tuple(b), -e + rel)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse_unit()
        return self.scale(1 / Fraction(other))

    def __pow__(self, p: int):
        if p < 0:
            return self.inverse_unit() ** (-p)
        result = LaurentSeries.monomial(1, 0, self.trunc_order)
        base = self
        while p:
            if p & 1:
                result = result * base
            p >>= 1
            if p:
                base = base * base
        return result

    def derivative(self) -> "LaurentSeries":
        """Term-by-term ``d/dx``, valid for negative exponents too."""
        out = tuple((self.start_exp + i) * c for i, c in enumerate(self.coeffs))
        return LaurentSeries(self.start_exp - 1, out, self.trunc_order - 1)

    def agrees_with(self, other: "LaurentSeries") -> tuple[bool, int, int, Optional[int]]:
        """Compare over the mutually determined range.

        Returns ``(equal, low, high, first_mismatch)``; ``low..high`` is the
        exponent range compared.  Below both start exponents both series are zero.
        """
        high = min(self.trunc_order, other.trunc_order)
        low = min(self.start_exp, other.start_exp)
        for e in range(low, high + 1):
            if self.coefficient(e) != other.coefficient(e):
                return False, low, high, e
        return True, low, high, None

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.trunc_order == other.trunc_order and self.agrees_with(other)[0]

    def __hash__(self):
        n = self.normalize()
        return hash((n.start_exp, n.coeffs, n.trunc_order))

    def __str__(self):
        return format_series(self)


def _format_coeff(c: Fraction, exp: int, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    mag = -c if c < 0 else c
    if exp == 0:
        mono = ""
    elif exp == 1:
        mono = "x"
    else:
        mono = f"x^{exp}"
    if mag.denominator == 1:
        num = "" if (mag == 1 and mono) else str(mag.numerator)
    else:
        num = f"{mag.numerator}/{mag.denominator}" + ("*" if mono else "")
    body = num + mono
    if first:
        return ("-" if sign == "-" else "") + body
    return f" {sign} {body}"


def format_series(s: LaurentSeries, show_order: bool = True) -> str:
    """Render as ``c_e x^e + ... + c_N x^N + O(x^(N+1))``.

    Integer coefficients are juxtaposed (``2x^3``); other rationals are written
    ``p/q*x^e``.  Zero coefficients are omitted and an all-zero series prints ``0``.
    """
    items = s.items()
    if not items:
        text = "0"
    else:
        text = "".join(_format_coeff(c, e, i == 0) for i, (e, c) in enumerate(items))
    if show_order:
        text += f" + O(x^{s.trunc_order + 1})"
    return text


def polynomial(coeffs: Sequence[Number], trunc_order: int, start_exp: int = 0) -> LaurentSeries:
    """A finite Laurent polynomial, exact through ``trunc_order``."""
    top = start_exp + len(coeffs) - 1
    if top > trunc_order:
        coeffs = coeffs[: max(0, trunc_order - start_exp + 1)]
    return LaurentSeries.from_coeffs(coeffs, trunc_order, start_exp)


# generating functions of the k-step Narayana identity


def denominator(k: int, order: int) -> LaurentSeries:
    """``1 - x - x^k``."""
    coeffs = [0] * (k + 1)
    coeffs[0], coeffs[1] = 1, -1
    coeffs[k] -= 1
    return polynomial(coeffs, order)


def _working_order(k: int, order: int) -> int:
    # headroom for the x^-(k-3) factor so results stay determined through ``order``
    return order + max(k - 3, 0) + 1


def narayana_gf(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``x / (1 - x - x^k)`` through ``x^order``; coefficient n is the n-th k-step Narayana number."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if order is None:
        order = default_order()
    w = order + 1
    return (denominator(k, w).inverse_unit().shift(1)).truncate(order)


def _inv_den_squared(k: int, w: int) -> LaurentSeries:
    inv = denominator(k, w).inverse_unit()
    return inv * inv


def _correction(k: int, w: int) -> LaurentSeries:
    """``k^(k-1) / x^(k-3) * sum_{i=0}^{k-3} i x^(i-1)``; the zero series when k < 4."""
    # the i = 0 term vanishes; starting at i = 1 keeps the lowest exponent at -(k-3)
    poly = polynomial(list(range(1, max(k - 2, 1))), w)
    return poly.shift(-(k - 3)).scale(k ** (k - 1))


def A_gf(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``(k^k + (k-1)^(k-1)) x^2 / (1 - x - x^k)^2``."""
    if order is None:
        order = default_order()
    w = _working_order(k, order)
    d = k**k + (k - 1) ** (k - 1)
    return _inv_den_squared(k, w).shift(2).scale(d).truncate(order)


def B_gf_closed(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``(k^(k-1) + k^k x^(k-1)) / (x^(k-3) (1-x-x^k)^2) - k^(k-1)/x^(k-3) sum_{i=0}^{k-3} i x^(i-1)``."""
    if order is None:
        order = default_order()
    w = _working_order(k, order)
    num = polynomial([k ** (k - 1)] + [0] * (k - 2) + [k**k], w)
    main = (num * _inv_den_squared(k, w)).shift(-(k - 3))
    return (main - _correction(k, w)).truncate(order)


def C_gf_closed(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``(k^(k-1) - (k-1)^(k-1) x^(k-1)) / (x^(k-3) (1-x-x^k)^2) - k^(k-1)/x^(k-3) sum_{i=0}^{k-3} i x^(i-1)``."""
    if order is None:
        order = default_order()
    w = _working_order(k, order)
    num = polynomial([k ** (k - 1)] + [0] * (k - 2) + [-((k - 1) ** (k - 1))], w)
    main = (num * _inv_den_squared(k, w)).shift(-(k - 3))
    return (main - _correction(k, w)).truncate(order)


def B_gf_def(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``sum_n k^(k-1) (n+k-2) R_{n+k-1} x^n`` straight from the coefficient definition."""
    if order is None:
        order = default_order()
    r = sequence_terms(narayana_spec(k), order + k - 1).values
    c = k ** (k - 1)
    return LaurentSeries.from_coeffs([c * (n + k - 2) * r[n + k - 1] for n in range(order + 1)], order)


def C_gf_def(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``sum_n sum_{j=0}^{k-2} k^j (k-1)^(k-2-j) (n+k+j-1) R_{n+j} x^n``."""
    if order is None:
        order = default_order()
    r = sequence_terms(narayana_spec(k), order + k - 2).values
    weights = [k**j * (k - 1) ** (k - 2 - j) for j in range(k - 1)]
    coeffs = [
        sum(w * (n + k + j - 1) * r[n + j] for j, w in enumerate(weights))
        for n in range(order + 1)
    ]
    return LaurentSeries.from_coeffs(coeffs, order)


def convolution_gf(k: int, order: Optional[int] = None) -> LaurentSeries:
    """``D_k * sum_n conv(n) x^n`` from the brute-force convolution."""
    if order is None:
        order = default_order()
    d = general_form(k).lhs_multiplier
    return LaurentSeries.from_coeffs([d * c.value for c in self_convolution(narayana_spec(k), order)], order)
