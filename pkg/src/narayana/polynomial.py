"""Dense univariate polynomials with integer coefficients.

Coefficients are stored lowest degree first.  Besides ring arithmetic this
module provides the two things the rest of the package needs from
polynomials: reduction of powers of ``x`` modulo a monic polynomial (used for
fast recurrence evaluation) and resultants/discriminants computed from the
Sylvester matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class InexactDivisionError(ArithmeticError):
    """An integer division that was required to be exact left a remainder."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def rem_monic(self, divisor: "IntPolynomial", modulus: Optional[int] = None) -> "IntPolynomial":
        """Remainder of division by a monic ``divisor``, optionally reduced mod ``modulus``."""
        if divisor.leading != 1:
            raise ValueError("divisor must be monic")
        tail = _monic_tail(divisor)
        return IntPolynomial(_reduce(list(self.coeffs), tail, modulus))

    def pow_mod(self, e: int, divisor: "IntPolynomial", modulus: Optional[int] = None) -> "IntPolynomial":
        """``self**e`` reduced modulo the monic ``divisor`` (and ``modulus`` if given)."""
        if e < 0:
            raise ValueError("exponent must be non-negative")
        if divisor.leading != 1:
            raise ValueError("divisor must be monic")
        tail = _monic_tail(divisor)
        base = _reduce(list(self.coeffs), tail, modulus)
        result = _reduce([1], tail, modulus)
        while e:
            if e & 1:
                result = _reduce(_mul(result, base), tail, modulus)
            e >>= 1
            if e:
                base = _reduce(_square(base), tail, modulus)
        return IntPolynomial(result)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _monic_tail(divisor: IntPolynomial) -> tuple[int, list[tuple[int, int]]]:
    # x^d == sum(-c_i * x^i) over the nonzero lower coefficients of a monic divisor
    d = divisor.degree
    return d, [(i, -c) for i, c in enumerate(divisor.coeffs[:d]) if c]


def _reduce(coeffs: list[int], tail: tuple[int, list[tuple[int, int]]], modulus: Optional[int]) -> list[int]:
    d, terms = tail
    for top in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[top]
        if not c:
            continue
        coeffs[top] = 0
        shift = top - d
        for i, t in terms:
            coeffs[shift + i] += c * t
    del coeffs[d:]
    if modulus is not None:
        coeffs = [c % modulus for c in coeffs]
    return coeffs


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _square(a: Sequence[int]) -> list[int]:
    n = len(a)
    if not n:
        return []
    out = [0] * (2 * n - 1)
    for i in range(n):
        x = a[i]
        if not x:
            continue
        out[2 * i] += x * x
        x2 = 2 * x
        for j in range(i + 1, n):
            out[i + j] += x2 * a[j]
    return out


def x_power_mod(e: int, divisor: IntPolynomial, modulus: Optional[int] = None) -> IntPolynomial:
    """``x**e`` modulo the monic ``divisor``.

    Left-to-right binary powering: each bit costs one squaring plus, for set
    bits, a multiplication by ``x`` which is only a shift and a single
    reduction step.
    """
    if e < 0:
        raise ValueError("exponent must be non-negative")
    if divisor.leading != 1:
        raise ValueError("divisor must be monic")
    tail = _monic_tail(divisor)
    result = _reduce([1], tail, modulus)
    for bit in bin(e)[2:]:
        result = _reduce(_square(result), tail, modulus)
        if bit == "1":
            result = _reduce([0] + result, tail, modulus)
    return IntPolynomial(result)


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> list[list[int]]:
    """Sylvester matrix of ``p`` and ``q`` with rows built from highest-degree coefficients."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        raise ValueError("Sylvester matrix of the zero polynomial is undefined")
    size = m + n
    rows = []
    hp = list(reversed(p.coeffs))
    hq = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + hp + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hq + [0] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                if r:
                    raise InexactDivisionError("Bareiss step left a remainder")
                a[i][j] = q
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant requires nonzero polynomials")
    if p.degree == 0 and q.degree == 0:
        return 1
    if p.degree == 0:
        return p.leading ** q.degree
    if q.degree == 0:
        return q.leading ** p.degree
    return bareiss_determinant(sylvester_matrix(p, q))


def discriminant(p: IntPolynomial) -> int:
    """Discriminant ``(-1)^(d(d-1)/2) * Res(p, p') / lc(p)``."""
    d = p.degree
    if d < 1:
        raise ValueError("discriminant requires degree >= 1")
    if d == 1:
        return 1
    res = resultant(p, p.derivative())
    q, r = divmod(res, p.leading)
    if r:
        raise InexactDivisionError(f"resultant {res} not divisible by leading coefficient {p.leading}")
    return -q if (d * (d - 1) // 2) % 2 else q


def one_minus_x_minus_xk(k: int) -> IntPolynomial:
    """The polynomial ``1 - x - x^k``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    coeffs = [0] * (k + 1)
    coeffs[0] = 1
    coeffs[1] = -1
    coeffs[k] = -1
    return IntPolynomial(coeffs)
