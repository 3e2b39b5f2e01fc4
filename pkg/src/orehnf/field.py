"""Exact arithmetic in Q[t] and the rational function field Q(t).

Everything here is immutable and exact: coefficients are arbitrary-precision
rationals, rational functions are kept in reduced canonical form (coprime
numerator/denominator, monic denominator), and there is no floating point
anywhere.  The degree of the zero polynomial is a negative-infinity sentinel
ordered below every integer.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Sequence, Union

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

from .errors import DivisionByZero

NEG_INF = float("-inf")

RatLike = Union[int, "Rat"]


def _rat(x: RatLike) -> Rat:
    return x if isinstance(x, Rat) else Rat(x)


class TPoly:
    """Dense univariate polynomial in t with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t^i``; trailing zeros are stripped,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RatLike] = ()):
        cs = [_rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def _make(cls, cs: list) -> "TPoly":
        """Internal: adopt a list of Rat values, trimming trailing zeros."""
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(cs))
        return p

    @classmethod
    def const(cls, value: RatLike) -> "TPoly":
        return cls((value,))

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Rat:
        if not self.coeffs:
            return Rat(0)
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "TPoly":
        return TPoly._make([-c for c in self.coeffs])

    def __add__(self, other: "TPoly") -> "TPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return TPoly._make(out)

    def __sub__(self, other: "TPoly") -> "TPoly":
        out = list(self.coeffs) + [Rat(0)] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return TPoly._make(out)

    def __mul__(self, other: Union["TPoly", RatLike]) -> "TPoly":
        if not isinstance(other, TPoly):
            c = _rat(other)
            return TPoly._make([c * x for x in self.coeffs]) if c else TP_ZERO
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TP_ZERO
        if len(a) == 1:
            c = a[0]
            return other if c == 1 else TPoly._make([c * x for x in b])
        if len(b) == 1:
            c = b[0]
            return self if c == 1 else TPoly._make([c * x for x in a])
        out = [Rat(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return TPoly._make(out)

    def __rmul__(self, other: RatLike) -> "TPoly":
        return self.__mul__(other)

    def __divmod__(self, other: "TPoly"):
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lead = other.leading
        q = [Rat(0)] * max(0, len(r) - db)
        while len(r) - 1 >= db and r:
            c = r[-1] / lead
            k = len(r) - 1 - db
            q[k] = c
            for i, bc in enumerate(other.coeffs):
                r[k + i] -= c * bc
            while r and not r[-1]:
                r.pop()
        return TPoly._make(q), TPoly._make(r)

    def exact_div(self, other: "TPoly") -> "TPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def derivative(self) -> "TPoly":
        return TPoly._make([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "TPoly":
        if self.is_zero or self.leading == 1:
            return self
        inv = 1 / self.leading
        return TPoly._make([c * inv for c in self.coeffs])

    def __str__(self) -> str:
        return format_tpoly(self)

    def __repr__(self) -> str:
        return f"TPoly({list(self.coeffs)!r})"


TP_ZERO = TPoly()
TP_ONE = TPoly((1,))
TP_T = TPoly((0, 1))


def format_tpoly(p: TPoly) -> str:
    """Canonical text form: ascending powers of t, explicit ``*`` and ``^``."""
    if p.is_zero:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        else:
            tp = "t" if i == 1 else f"t^{i}"
            body = tp if mag == 1 else f"{mag}*{tp}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _int_coeffs(p: TPoly) -> list:
    """Scale to integer coefficients, divide out content, force positive lead."""
    if p.is_zero:
        return []
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, int(c.denominator))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists; result may be scaled."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        c = r[-1]
        k = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_primitive(a: list) -> list:
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if not g:
        return []
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def _coprime_certificate(x: list, y: list) -> bool:
    """Sound one-sided coprimality test for primitive integer polynomials.

    Evaluates both at a point beyond the Mignotte bound on factor
    coefficients; a nontrivial common factor g would then satisfy
    ``|g(x0)| > 1``, so an integer gcd of 1 certifies coprimality.
    """
    d = min(len(x), len(y)) - 1
    height = max(max(abs(v) for v in x), max(abs(v) for v in y))
    bound = (1 << d) * (d + 1) * height  # >= any factor coefficient
    x0 = 2 * bound + 2
    vx = 0
    for c in reversed(x):
        vx = vx * x0 + c
    vy = 0
    for c in reversed(y):
        vy = vy * x0 + c
    return math.gcd(vx, vy) == 1


def poly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Monic greatest common divisor in Q[t]; ``gcd(0, 0) = 0``.

    A cheap evaluation certificate settles the common coprime case; otherwise
    the primitive polynomial remainder sequence over Z keeps the intermediate
    coefficients small.
    """
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return TP_ONE
    x, y = _int_coeffs(a), _int_coeffs(b)
    if _coprime_certificate(x, y):
        return TP_ONE
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _int_primitive(_int_prem(x, y))
    return TPoly(x).monic()


def poly_lcm(a: TPoly, b: TPoly) -> TPoly:
    if a.is_zero or b.is_zero:
        return TP_ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


class RatFun:
    """Element of Q(t): a reduced fraction of two polynomials.

    Canonical form: ``gcd(num, den) = 1``, ``den`` monic, and zero is ``0/1``.
    Equality and hashing are structural, which the canonical form makes sound.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=TP_ONE):
        if not isinstance(num, TPoly):
            num = TPoly.const(num) if not isinstance(num, (list, tuple)) else TPoly(num)
        if not isinstance(den, TPoly):
            den = TPoly.const(den) if not isinstance(den, (list, tuple)) else TPoly(den)
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero:
            num, den = TP_ZERO, TP_ONE
        else:
            if num.degree > 0 and den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lead = den.leading
            if lead != 1:
                inv = 1 / lead
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def _reduced(cls, num: TPoly, den: TPoly) -> "RatFun":
        """Internal: wrap parts already in canonical form (no checks)."""
        r = object.__new__(cls)
        object.__setattr__(r, "num", num)
        object.__setattr__(r, "den", den)
        return r

    @classmethod
    def const(cls, value: RatLike) -> "RatFun":
        return cls(TPoly.const(value))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def deg_t(self) -> Union[int, float]:
        if self.is_zero:
            return NEG_INF
        return max(self.num.degree, self.den.degree)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatFun.const(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RatFun":
        r = object.__new__(RatFun)
        object.__setattr__(r, "num", -self.num)
        object.__setattr__(r, "den", self.den)
        return r

    def __add__(self, other: "RatFun") -> "RatFun":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = self.num, self.den
        c, d = other.num, other.den
        if b == d:
            top = a + c
            if top.is_zero:
                return RF_ZERO
            h = poly_gcd(top, b)
            if h.degree > 0:
                return RatFun._reduced(top.exact_div(h), b.exact_div(h))
            return RatFun._reduced(top, b)
        # Knuth's scheme: pull out g = gcd(b, d); then only small gcds remain.
        g = poly_gcd(b, d)
        if g.degree <= 0:
            top = a * d + c * b
            if top.is_zero:
                return RF_ZERO
            return RatFun._reduced(top, b * d)
        b1 = b.exact_div(g)
        d1 = d.exact_div(g)
        top = a * d1 + c * b1
        if top.is_zero:
            return RF_ZERO
        h = poly_gcd(top, g)
        if h.degree > 0:
            top = top.exact_div(h)
            g = g.exact_div(h)
        return RatFun._reduced(top, b1 * d1 * g)

    def __sub__(self, other: "RatFun") -> "RatFun":
        if other.is_zero:
            return self
        return self.__add__(-other)

    def __mul__(self, other: "RatFun") -> "RatFun":
        if self.is_zero or other.is_zero:
            return RF_ZERO
        # Reduce cross gcds first so the final product is already coprime.
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        g1 = poly_gcd(n1, d2)
        if g1.degree > 0:
            n1 = n1.exact_div(g1)
            d2 = d2.exact_div(g1)
        g2 = poly_gcd(n2, d1)
        if g2.degree > 0:
            n2 = n2.exact_div(g2)
            d1 = d1.exact_div(g2)
        return RatFun._reduced(n1 * n2, d1 * d2)

    def __truediv__(self, other: "RatFun") -> "RatFun":
        return self.__mul__(other.inverse())

    def inverse(self) -> "RatFun":
        if self.is_zero:
            raise DivisionByZero("inverse of zero rational function")
        lead = self.num.leading
        if lead == 1:
            return RatFun._reduced(self.den, self.num)
        inv = 1 / lead
        return RatFun._reduced(self.den * inv, self.num * inv)

    def __str__(self) -> str:
        if self.is_polynomial:
            return format_tpoly(self.num)
        return f"({format_tpoly(self.num)})/({format_tpoly(self.den)})"

    def __repr__(self) -> str:
        return f"RatFun({self!s})"


RF_ZERO = RatFun(TP_ZERO)
RF_ONE = RatFun(TP_ONE)
RF_T = RatFun(TP_T)


class Derivation(Enum):
    """Pseudo-derivative on Q(t), determined by the image of t.

    ``STANDARD`` is the usual derivative (t maps to 1); ``EULER`` maps t to t.
    Both satisfy additivity and the Leibniz product law, and extend to
    quotients by the forced quotient rule.
    """

    STANDARD = "standard"
    EULER = "euler"

    def apply(self, a: RatFun) -> RatFun:
        # delta(u/v) = (u'v - uv')/v^2 * delta(t) for any derivation fixing Q.
        u, v = a.num, a.den
        if v.degree == 0:
            base = RatFun(u.derivative())
        else:
            base = RatFun(u.derivative() * v - u * v.derivative(), v * v)
        if self is Derivation.EULER:
            return base * RF_T
        return base
