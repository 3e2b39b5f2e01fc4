"""The ring of differential operators F(t)[D;delta].

Elements are polynomials ``f = f_0 + f_1*D + ... + f_d*D^d`` with coefficients
in Q(t) written to the left of the operator variable, multiplied under the
twisted rule ``D*a = a*D + delta(a)``.  The derivation is carried as shared
context on each element; combining elements over different derivations is a
contract violation and raises immediately.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence, Tuple, Union

from .errors import DerivationMismatch, DivisionByZero, ZeroOperand
from .field import NEG_INF, Derivation, RatFun, RF_ONE, RF_ZERO


class OrePoly:
    """Differential operator with dense Q(t) coefficients by power of D."""

    __slots__ = ("coeffs", "derivation")

    def __init__(self, coeffs: Sequence[RatFun], derivation: Derivation):
        cs = [c if isinstance(c, RatFun) else RatFun.const(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "derivation", derivation)

    def __setattr__(self, name, value):
        raise AttributeError("OrePoly is immutable")

    @classmethod
    def zero(cls, derivation: Derivation) -> "OrePoly":
        return cls((), derivation)

    @classmethod
    def one(cls, derivation: Derivation) -> "OrePoly":
        return cls((RF_ONE,), derivation)

    @classmethod
    def scalar(cls, c, derivation: Derivation) -> "OrePoly":
        return cls((c if isinstance(c, RatFun) else RatFun.const(c),), derivation)

    @classmethod
    def d_power(cls, k: int, derivation: Derivation) -> "OrePoly":
        return cls([RF_ZERO] * k + [RF_ONE], derivation)

    @property
    def deg(self) -> Union[int, float]:
        """Degree in the operator variable D; -inf for the zero operator."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def deg_t(self) -> Union[int, float]:
        if not self.coeffs:
            return NEG_INF
        return max(c.deg_t for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> RatFun:
        return self.coeffs[-1] if self.coeffs else RF_ZERO

    def coeff(self, i: int) -> RatFun:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RF_ZERO

    def _check(self, other: "OrePoly") -> None:
        if self.derivation is not other.derivation:
            raise DerivationMismatch(
                f"mixed derivations: {self.derivation.value} vs {other.derivation.value}"
            )

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.derivation is other.derivation and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.derivation))

    def __neg__(self) -> "OrePoly":
        return OrePoly([-c for c in self.coeffs], self.derivation)

    def __add__(self, other: "OrePoly") -> "OrePoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly(out, self.derivation)

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return self.__add__(-other)

    def d_shift(self) -> "OrePoly":
        """Left-multiply by D: ``D*f = sum f_i D^{i+1} + sum delta(f_i) D^i``."""
        delta = self.derivation.apply
        out = [RF_ZERO] * (len(self.coeffs) + 1)
        for i, c in enumerate(self.coeffs):
            out[i + 1] = out[i + 1] + c
            out[i] = out[i] + delta(c)
        return OrePoly(out, self.derivation)

    def shift_powers(self, m: int) -> list:
        """Compute ``[D*f, D^2*f, ..., D^m*f]`` incrementally."""
        if m < 1:
            raise ValueError("m must be at least 1")
        out = []
        cur = self
        for _ in range(m):
            cur = cur.d_shift()
            out.append(cur)
        return out

    def left_scale(self, c: RatFun) -> "OrePoly":
        """Multiply by a field element on the left (coefficient-wise)."""
        if c.is_zero:
            return OrePoly.zero(self.derivation)
        return OrePoly([c * x for x in self.coeffs], self.derivation)

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return OrePoly.zero(self.derivation)
        # f*g = sum_i f_i * (D^i g); the shifts are built incrementally.
        acc = [RF_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        cur = other
        for i, fi in enumerate(self.coeffs):
            if i > 0:
                cur = cur.d_shift()
            if fi.is_zero:
                continue
            for j, gj in enumerate(cur.coeffs):
                if not gj.is_zero:
                    acc[j] = acc[j] + fi * gj
        return OrePoly(acc, self.derivation)

    def monic(self) -> "OrePoly":
        if self.is_zero or self.leading == RF_ONE:
            return self
        return self.left_scale(self.leading.inverse())

    def right_divrem(self, other: "OrePoly") -> Tuple["OrePoly", "OrePoly"]:
        """Unique (q, r) with ``self = q*other + r`` and ``deg r < deg other``."""
        self._check(other)
        if other.is_zero:
            raise DivisionByZero("right division by the zero operator")
        dg = other.deg
        q = [RF_ZERO] * max(0, len(self.coeffs) - dg)
        r = self
        while not r.is_zero and r.deg >= dg:
            k = r.deg - dg
            # D^k * other has leading coefficient equal to other's.
            c = r.leading / other.leading
            q[k] = q[k] + c
            term = OrePoly([RF_ZERO] * k + [c], self.derivation)
            r = r - term * other
        return OrePoly(q, self.derivation), r

    def __str__(self) -> str:
        return format_ore(self)

    def __repr__(self) -> str:
        return f"OrePoly({self!s}, {self.derivation.value})"


def format_ore(f: OrePoly) -> str:
    """Canonical text form: ascending powers of D, reduced coefficients."""
    if f.is_zero:
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c.is_zero:
            continue
        if i == 0:
            # always the first part; printed with its own signs
            parts.append(str(c))
            continue
        neg = c.num.leading < 0
        mag = -c if neg else c
        dp = "D" if i == 1 else f"D^{i}"
        if mag == RF_ONE:
            body = dp
        else:
            s = str(mag)
            if mag.is_polynomial and sum(1 for x in mag.num.coeffs if x) > 1:
                s = f"({s})"
            body = f"{s}*{dp}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


class GcrdResult(NamedTuple):
    """Monic GCRD g of (f, h) with cofactors: ``u*f + v*h = g``."""

    g: OrePoly
    u: OrePoly
    v: OrePoly


def _extended_euclid(f: OrePoly, h: OrePoly):
    """Right Euclidean scheme; returns the full final rows.

    ``(r, u, v)`` satisfies ``u*f + v*h = r`` where r is the last nonzero
    remainder, and ``(u2, v2)`` is the row past it: ``u2*f + v2*h = 0``.
    """
    one = OrePoly.one(f.derivation)
    zero = OrePoly.zero(f.derivation)
    r0, u0, v0 = f, one, zero
    r1, u1, v1 = h, zero, one
    while not r1.is_zero:
        q, r2 = r0.right_divrem(r1)
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r2, u0 - q * u1, v0 - q * v1
    return (r0, u0, v0), (u1, v1)


def gcrd_extended(f: OrePoly, h: OrePoly) -> GcrdResult:
    """Extended greatest common right divisor, normalized monic."""
    f._check(h)
    (g, u, v), _ = _extended_euclid(f, h)
    if g.is_zero:
        return GcrdResult(g, u, v)
    c = g.leading.inverse()
    return GcrdResult(g.left_scale(c), u.left_scale(c), v.left_scale(c))


def lclm(f: OrePoly, h: OrePoly) -> Tuple[OrePoly, OrePoly, OrePoly]:
    """Least common left multiple with witnesses: ``l = s*f = -tt*h``, l monic."""
    f._check(h)
    if f.is_zero or h.is_zero:
        raise ZeroOperand("lclm requires nonzero operands")
    _, (u2, v2) = _extended_euclid(f, h)
    l = u2 * f
    c = l.leading.inverse()
    return l.left_scale(c), u2.left_scale(c), v2.left_scale(c)
