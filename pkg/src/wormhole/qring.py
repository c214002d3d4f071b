"""Exact scalars: Laurent polynomials in ``A`` over the integers and their fraction field.

All values are immutable.  ``RatFn`` is always stored in a canonical form so that
equality is structural:

* numerator and denominator share no common factor (integer content included);
* the denominator has lowest exponent 0 and a positive top coefficient.

The bar involution sends ``A`` to ``A^-1``.
"""

from __future__ import annotations

import cmath
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RatFn",
    "NotLaurent",
    "NOT_LAURENT",
    "PoleAtPoint",
    "A",
    "D",
    "as_ratfn",
    "poly_gcd",
]


class PoleAtPoint(ArithmeticError):
    """Raised when a denominator vanishes (numerically) at an evaluation point."""


class NotLaurent:
    """Sentinel returned by :meth:`RatFn.as_laurent` when the value has a true denominator."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotLaurent"

    def __bool__(self) -> bool:
        return False


NOT_LAURENT = NotLaurent()


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: Iterable[int]) -> int:
    return reduce(gcd, p, 0)


def _divexact(f: list[int], g: list[int]) -> list[int] | None:
    """Return f / g over Z if g divides f exactly, else None."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return None
    rem = list(f)
    lc = g[-1]
    q = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = rem[k + dg]
        if c == 0:
            continue
        qk, r = divmod(c, lc)
        if r:
            return None
        q[k] = qk
        for j, gj in enumerate(g):
            if gj:
                rem[k + j] -= qk * gj
    if any(rem[:dg]):
        return None
    return q


def _prs_gcd(f: list[int], g: list[int]) -> list[int]:
    """Primitive polynomial remainder sequence gcd of primitive inputs."""
    if len(f) < len(g):
        f, g = g, f
    while g:
        # pseudo-remainder of f by g
        r = list(f)
        dg = len(g) - 1
        lc = g[-1]
        while len(r) - 1 >= dg and r:
            c = r[-1]
            shift = len(r) - 1 - dg
            r = [lc * x for x in r]
            for j, gj in enumerate(g):
                r[shift + j] -= c * gj
            _trim(r)
        if not r:
            return g
        cr = _content(r)
        r = [x // cr for x in r]
        f, g = g, r
    return f


def _eval_int(p: list[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _interpolate(h: int, x: int) -> list[int]:
    out = []
    half = x // 2
    while h:
        c = h % x
        if c > half:
            c -= x
        out.append(c)
        h = (h - c) // x
    return out


def _heu_gcd(f: list[int], g: list[int]) -> list[int] | None:
    """Heuristic gcd of primitive polynomials via integer gcd; None if inconclusive."""
    fn = max(abs(c) for c in f)
    gn = max(abs(c) for c in g)
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f[-1]), gn // abs(g[-1])) + 2)
    for _ in range(6):
        ff, gg = _eval_int(f, x), _eval_int(g, x)
        if ff and gg:
            h = gcd(ff, gg)
            cand = _interpolate(h, x)
            if cand:
                cc = _content(cand)
                cand = [c // cc for c in cand]
                if cand[-1] < 0:
                    cand = [-c for c in cand]
                if _divexact(f, cand) is not None and _divexact(g, cand) is not None:
                    return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def poly_gcd(f: list[int], g: list[int]) -> list[int]:
    """Gcd over Z[x] of dense coefficient lists (lowest degree first), positive top coefficient."""
    f, g = _trim(list(f)), _trim(list(g))
    if not f or not g:
        h = f or g
        return [-c for c in h] if h and h[-1] < 0 else h
    cf, cg = _content(f), _content(g)
    c = gcd(cf, cg)
    if len(f) == 1 or len(g) == 1:
        return [c]
    pf = [x // cf for x in f]
    pg = [x // cg for x in g]
    h = _heu_gcd(pf, pg)
    if h is None:
        h = _prs_gcd(pf, pg)
        ch = _content(h)
        h = [x // ch for x in h]
        if h[-1] < 0:
            h = [-x for x in h]
    return [c * x for x in h]


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

Scalar = Union[int, "LaurentPoly", "RatFn"]


class LaurentPoly:
    """Element of Z[A, A^-1] stored as a map exponent -> nonzero coefficient."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int = 0):
        if isinstance(terms, int):
            t = {0: terms} if terms else {}
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            t = {}
            for e, c in items:
                c = t.get(e, 0) + c
                if c:
                    t[e] = c
                else:
                    t.pop(e, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict[int, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def from_dense(cls, coeffs: list[int], low: int = 0) -> "LaurentPoly":
        return cls._raw({low + i: c for i, c in enumerate(coeffs) if c})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def coeff(self, exp: int) -> int:
        return self._t.get(exp, 0)

    def dense(self) -> tuple[int, list[int]]:
        """(lowest exponent, coefficient list from that exponent upward)."""
        lo, hi = self.min_exp(), self.max_exp()
        return lo, [self._t.get(e, 0) for e in range(lo, hi + 1)]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            c += t.get(e, 0)
            if c:
                t[e] = c
            else:
                del t[e]
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: c * other for e, c in self._t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        t: dict[int, int] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, c), = self._t.items()
                if abs(c) == 1:
                    return LaurentPoly._raw({e * n: c ** (-n)})
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Quotient in Z[A,A^-1] if ``other`` divides ``self``, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        lo_s, ds = self.dense()
        lo_o, do = other.dense()
        q = _divexact(ds, do)
        if q is None:
            return None
        return LaurentPoly.from_dense(q, lo_s - lo_o)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, RatFn):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    # -- evaluation & io --------------------------------------------------
    def evaluate(self, z: complex) -> complex:
        if not self._t:
            return 0j
        lo, coeffs = self.dense()
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc * z ** lo

    def abs_norm(self, radius: float = 1.0) -> float:
        return float(sum(abs(c) * radius ** e for e, c in self._t.items()))

    def to_list(self) -> list[list[int]]:
        return [[e, self._t[e]] for e in sorted(self._t)]

    @classmethod
    def from_list(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        return cls((int(e), int(c)) for e, c in pairs)

    def pretty(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for i, e in enumerate(sorted(self._t, reverse=True)):
            c = self._t[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    __str__ = pretty

    def __repr__(self):
        return f"LaurentPoly({self.pretty()!r})"


A = LaurentPoly.monomial(1)
D = LaurentPoly({2: -1, -2: -1})


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return LaurentPoly._raw({}), LaurentPoly._raw({0: 1})
    nlo, nd = num.dense()
    dlo, dd = den.dense()
    if len(dd) == 1:
        c = dd[0]
        g = gcd(_content(nd), c)
        if c < 0:
            g = -g
        return LaurentPoly.from_dense([x // g for x in nd], nlo - dlo), LaurentPoly._raw({0: c // g})
    g = poly_gcd(nd, dd)
    if len(g) > 1 or g[0] != 1:
        nd = _divexact(nd, g)
        dd = _divexact(dd, g)
    if dd[-1] < 0:
        nd = [-x for x in nd]
        dd = [-x for x in dd]
    return LaurentPoly.from_dense(nd, nlo - dlo), LaurentPoly.from_dense(dd, 0)


class RatFn:
    """Element of Q(A) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | int = 0, den: LaurentPoly | int = 1, *, _canon: bool = False):
        if isinstance(num, int):
            num = LaurentPoly(num)
        if isinstance(den, int):
            den = LaurentPoly(den)
        if not _canon:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFn":
        return cls(p, LaurentPoly._raw({0: 1}), _canon=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _is_poly(self) -> bool:
        return self.den._t == {0: 1}

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if self._is_poly() and other._is_poly():
            return RatFn.from_laurent(self.num + other.num)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _canon=True)

    def __sub__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if self._is_poly() and other._is_poly():
            return RatFn.from_laurent(self.num * other.num)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(A)")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(A)")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return as_ratfn(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFn(self.num ** n, self.den ** n)

    def involute(self) -> "RatFn":
        """Bar involution A -> A^-1."""
        return RatFn(self.num.bar(), self.den.bar())

    bar = involute

    # -- predicates / conversions ----------------------------------------
    def as_laurent(self) -> LaurentPoly | NotLaurent:
        if self._is_poly():
            return self.num
        if self.den.is_monomial():
            (e, c), = self.den.items()
            if abs(c) == 1:
                return self.num.shift(-e) * c
        q = self.num.exact_div(self.den)
        return NOT_LAURENT if q is None else q

    def evaluate_at(self, z: complex, tol: float = 1e-12) -> complex:
        dv = self.den.evaluate(z)
        scale = self.den.abs_norm(abs(z)) or 1.0
        if abs(dv) <= tol * scale:
            raise PoleAtPoint(f"denominator vanishes at {z}")
        value = self.num.evaluate(z) / dv
        if not (cmath.isfinite(value)):
            raise PoleAtPoint(f"non-finite value at {z}")
        return value

    def __eq__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_json(self) -> dict:
        return {"num": self.num.to_list(), "den": self.den.to_list()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFn":
        return cls(LaurentPoly.from_list(data["num"]), LaurentPoly.from_list(data["den"]))

    def pretty(self) -> str:
        if self._is_poly():
            return self.num.pretty()
        if self.num.is_monomial():
            # move the unit into the denominator so the numerator reads as a positive integer
            (e, c), = self.num.items()
            den = self.den.shift(-e) * (1 if c > 0 else -1)
            return f"{abs(c)}/({den.pretty()})"
        return f"({self.num.pretty()})/({self.den.pretty()})"

    __str__ = pretty

    def __repr__(self):
        return f"RatFn({self.pretty()!r})"


def as_ratfn(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, LaurentPoly):
        return RatFn.from_laurent(x)
    if isinstance(x, int):
        return RatFn.from_laurent(LaurentPoly(x))
    return NotImplemented


def field_arithmetic(a: RatFn, b: RatFn, op: str) -> RatFn:
    """Dispatch helper for ``add``/``sub``/``mul``/``div``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
