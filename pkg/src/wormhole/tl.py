"""Temperley-Lieb diagram algebra over Q(A).

A ``Matching`` with ``n_bottom`` bottom points and ``n_top`` top points is a
crossingless perfect matching of the concatenated boundary: bottom points
numbered left to right, then top points numbered right to left.  In that order
planarity is exactly the balanced-parentheses condition.

Products read bottom to top: ``compose(x, y)`` stacks ``y`` on top of ``x``.
Closed loops created by stacking are replaced by the loop value
``d = -A^2 - A^-2``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import kernels
from .errors import BoundaryMismatch
from .qring import D, LaurentPoly, RatFn, poly_gcd
from .recoupling import delta_laurent

__all__ = [
    "Matching",
    "TLElement",
    "is_planar",
    "catalan_matchings",
    "identity",
    "generator",
    "compose",
    "tensor",
    "jones_wenzl",
    "jones_wenzl_scaled",
    "closure_value",
    "closure_loops",
]


def is_planar(pairing: tuple[int, ...]) -> bool:
    n = len(pairing)
    for i, j in enumerate(pairing):
        if not (0 <= j < n) or j == i or pairing[j] != i:
            return False
    stack = []
    for i, j in enumerate(pairing):
        if i < j:
            stack.append(j)
        elif stack.pop() != i:
            return False
    return True


@dataclass(frozen=True)
class Matching:
    n_bottom: int
    n_top: int
    pairing: tuple[int, ...]
    loops: int = field(default=0, compare=False)

    def __post_init__(self):
        if len(self.pairing) != self.n_bottom + self.n_top:
            raise ValueError("pairing length does not match the boundary size")
        if (self.n_bottom + self.n_top) % 2:
            raise ValueError("odd number of boundary points")
        if not is_planar(self.pairing):
            raise ValueError(f"pairing {self.pairing} is not a crossingless matching")

    def parens(self) -> str:
        """Nested-parentheses debug form; '|' separates bottom from top."""
        s = "".join("(" if j > i else ")" for i, j in enumerate(self.pairing))
        return s[: self.n_bottom] + "|" + s[self.n_bottom:]

    @classmethod
    def from_parens(cls, text: str) -> "Matching":
        bottom, _, top = text.partition("|")
        seq = bottom + top
        pairing = [0] * len(seq)
        stack = []
        for i, ch in enumerate(seq):
            if ch == "(":
                stack.append(i)
            elif ch == ")":
                j = stack.pop()
                pairing[i], pairing[j] = j, i
            else:
                raise ValueError(f"bad character {ch!r}")
        if stack:
            raise ValueError("unbalanced parentheses")
        return cls(len(bottom), len(top), tuple(pairing))

    def top_index(self, j: int) -> int:
        """Pairing index of the j-th top point counted from the left."""
        return self.n_bottom + self.n_top - 1 - j

    def through_strands(self) -> int:
        return sum(1 for i in range(self.n_bottom) if self.pairing[i] >= self.n_bottom)


def catalan_matchings(npoints: int) -> Iterator[tuple[int, ...]]:
    """All crossingless matchings of ``npoints`` points in a deterministic order."""
    if npoints % 2:
        return
    seq = [-1] * npoints

    def place(i: int, size: int):
        if size == 0:
            yield
            return
        for left in range(size):
            l, r = i, i + 1 + 2 * left
            seq[l], seq[r] = r, l
            for _ in place(l + 1, left):
                yield from place(r + 1, size - left - 1)

    for _ in place(0, npoints // 2):
        yield tuple(seq)


class TLElement:
    """Formal Q(A)-combination of matchings with a common boundary."""

    __slots__ = ("n_bottom", "n_top", "combo")

    def __init__(self, n_bottom: int, n_top: int, combo: Mapping[tuple[int, ...], RatFn] | None = None):
        self.n_bottom = n_bottom
        self.n_top = n_top
        self.combo = {m: c for m, c in (combo or {}).items() if not c.is_zero()}

    @classmethod
    def from_matching(cls, m: Matching, coeff: RatFn | int = 1) -> "TLElement":
        return cls(m.n_bottom, m.n_top, {m.pairing: RatFn(coeff) if isinstance(coeff, int) else coeff})

    def matchings(self) -> list[tuple[Matching, RatFn]]:
        return [(Matching(self.n_bottom, self.n_top, m), c) for m, c in self.combo.items()]

    def coefficient(self, m: Matching | tuple[int, ...]) -> RatFn:
        key = m.pairing if isinstance(m, Matching) else m
        return self.combo.get(key, RatFn(0))

    def is_zero(self) -> bool:
        return not self.combo

    def _check(self, other: "TLElement"):
        if (self.n_bottom, self.n_top) != (other.n_bottom, other.n_top):
            raise BoundaryMismatch("TL elements have different boundaries")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        out = dict(self.combo)
        for m, c in other.combo.items():
            out[m] = out[m] + c if m in out else c
        return TLElement(self.n_bottom, self.n_top, out)

    def __neg__(self):
        return TLElement(self.n_bottom, self.n_top, {m: -c for m, c in self.combo.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, s: RatFn | int) -> "TLElement":
        s = RatFn(s) if isinstance(s, int) else s
        return TLElement(self.n_bottom, self.n_top, {m: c * s for m, c in self.combo.items()})

    def __mul__(self, other: "TLElement") -> "TLElement":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self.n_bottom, self.n_top, self.combo) == (other.n_bottom, other.n_top, other.combo)

    def __repr__(self):
        body = " + ".join(f"({c})*{Matching(self.n_bottom, self.n_top, m).parens()}" for m, c in self.combo.items())
        return f"TLElement({self.n_bottom}->{self.n_top}: {body or '0'})"


def identity(n: int) -> TLElement:
    return TLElement(n, n, {tuple(2 * n - 1 - i for i in range(2 * n)): RatFn(1)})


def _generator_pairing(i: int, n: int) -> tuple[int, ...]:
    # e_i joins strands i-1, i (0-based) at the bottom and at the top
    pairing = list(2 * n - 1 - k for k in range(2 * n))
    a, b = i - 1, i
    ta, tb = 2 * n - 1 - a, 2 * n - 1 - b
    pairing[a], pairing[b] = b, a
    pairing[ta], pairing[tb] = tb, ta
    return tuple(pairing)


def generator(i: int, n: int) -> TLElement:
    """The cup-cap generator e_i of TL_n, 1 <= i < n."""
    if not 1 <= i < n:
        raise ValueError(f"e_{i} is not defined in TL_{n}")
    return TLElement(n, n, {_generator_pairing(i, n): RatFn(1)})


def _d_power(k: int) -> LaurentPoly:
    return D ** k


def compose(x: TLElement, y: TLElement) -> TLElement:
    """Stack y on top of x; each closed loop contributes a factor d."""
    if x.n_top != y.n_bottom:
        raise BoundaryMismatch(f"cannot stack {y.n_bottom}-point bottom on {x.n_top}-point top")
    nb, mid, nt = x.n_bottom, x.n_top, y.n_top
    out: dict[tuple[int, ...], RatFn] = {}
    for m1, c1 in x.combo.items():
        for m2, c2 in y.combo.items():
            m, loops = kernels.compose_matchings(m1, m2, nb, mid, nt)
            c = c1 * c2
            if loops:
                c = c * RatFn.from_laurent(_d_power(loops))
            out[m] = out[m] + c if m in out else c
    return TLElement(nb, nt, out)


def _tensor_pairing(m1, nb1, nt1, m2, nb2, nt2) -> tuple[int, ...]:
    nb, nt = nb1 + nb2, nt1 + nt2
    total = nb + nt

    def map1(i):
        return i if i < nb1 else total - 1 - (nb1 + nt1 - 1 - i)

    def map2(i):
        return nb1 + i if i < nb2 else total - 1 - (nt1 + nb2 + nt2 - 1 - i)

    out = [0] * total
    for i, j in enumerate(m1):
        out[map1(i)] = map1(j)
    for i, j in enumerate(m2):
        out[map2(i)] = map2(j)
    return tuple(out)


def tensor(x: TLElement, y: TLElement) -> TLElement:
    """Place y to the right of x."""
    out: dict[tuple[int, ...], RatFn] = {}
    for m1, c1 in x.combo.items():
        for m2, c2 in y.combo.items():
            m = _tensor_pairing(m1, x.n_bottom, x.n_top, m2, y.n_bottom, y.n_top)
            c = c1 * c2
            out[m] = out[m] + c if m in out else c
    return TLElement(x.n_bottom + y.n_bottom, x.n_top + y.n_top, out)


def closure_loops(pairing: tuple[int, ...], n: int) -> int:
    """Number of loops in the trace closure of an (n, n) matching."""
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        v = s
        while True:
            seen[v] = True
            w = pairing[v]
            seen[w] = True
            # closure arc: bottom i <-> top i (index 2n-1-i)
            v = 2 * n - 1 - w
            if v == s:
                break
        loops += 1
    return loops


def closure_value(x: TLElement) -> RatFn:
    if x.n_bottom != x.n_top:
        raise BoundaryMismatch("trace closure needs equal bottom and top")
    n = x.n_bottom
    total = RatFn(0)
    for m, c in x.combo.items():
        total = total + c * RatFn.from_laurent(_d_power(closure_loops(m, n)))
    return total


# -- Jones-Wenzl projectors ------------------------------------------------
#
# Stored scaled: f^(n) = F_n / D_n with F_n a map matching -> Laurent numerator
# and D_n a Laurent polynomial with lowest exponent 0 and positive top
# coefficient, gcd-reduced against all numerators.

_JW_LOCK = threading.Lock()
_JW_SCALED: dict[int, tuple[dict[tuple[int, ...], LaurentPoly], LaurentPoly]] = {}
_JW_ELEMENT: dict[int, TLElement] = {}


def _reduce_scaled(terms: dict, den: LaurentPoly):
    lo, dd = den.dense()
    g = dd
    for p in terms.values():
        if len(g) == 1 and abs(g[0]) == 1:
            break
        g = poly_gcd(g, p.dense()[1])
    den = LaurentPoly.from_dense(dd, 0)
    shift = -lo
    if len(g) > 1 or abs(g[0]) != 1:
        gp = LaurentPoly.from_dense(g, 0)
        den = den.exact_div(gp)
        terms = {m: p.exact_div(gp) for m, p in terms.items()}
    if den.coeff(den.max_exp()) < 0:
        den = -den
        shift_sign = -1
    else:
        shift_sign = 1
    terms = {m: p.shift(shift) * shift_sign for m, p in terms.items()}
    return terms, den


def _word_matching(n1: int, n: int) -> tuple[int, ...]:
    """Single matching of e_n e_(n-1) ... e_(n1) in TL_(n+1), read bottom to top."""
    m = _generator_pairing(n, n + 1)
    for i in range(n - 1, n1 - 1, -1):
        m, loops = kernels.compose_matchings(m, _generator_pairing(i, n + 1), n + 1, n + 1, n + 1)
        assert loops == 0
    return m


def jones_wenzl_scaled(n: int) -> tuple[dict[tuple[int, ...], LaurentPoly], LaurentPoly]:
    """(F_n, D_n) with f^(n) = F_n / D_n; memoized, thread-safe."""
    cached = _JW_SCALED.get(n)
    if cached is not None:
        return cached
    with _JW_LOCK:
        for k in range(len(_JW_SCALED), n + 1):
            if k in _JW_SCALED:
                continue
            if k <= 1:
                idm = tuple(2 * k - 1 - i for i in range(2 * k))
                _JW_SCALED[k] = ({idm: LaurentPoly(1)}, LaurentPoly(1))
                continue
            # f^(k) = P + sum_i (-1)^(m-i+1) (Delta_(i-1)/Delta_m) P e_m ... e_i,  m = k-1, P = f^(m) (x) id
            m = k - 1
            prev, den = _JW_SCALED[m]
            one = (1, 0)
            P = {_tensor_pairing(p, m, m, one, 1, 1): c for p, c in prev.items()}
            dm = delta_laurent(m)
            terms: dict[tuple[int, ...], LaurentPoly] = {}

            def acc(key, val):
                cur = terms.get(key)
                s = val if cur is None else cur + val
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s

            for p, c in P.items():
                acc(p, c * dm)
            for i in range(1, m + 1):
                w = _word_matching(i, m)
                scal = delta_laurent(i - 1) * (-1 if (m - i + 1) % 2 else 1)
                for p, c in P.items():
                    q, loops = kernels.compose_matchings(p, w, k, k, k)
                    v = c * scal
                    if loops:
                        v = v * _d_power(loops)
                    acc(q, v)
            _JW_SCALED[k] = _reduce_scaled(terms, den * dm)
    return _JW_SCALED[n]


def _jones_wenzl_wenzl(n: int) -> TLElement:
    """Literal Wenzl recursion f^(n+1) = P - (Delta_(n-1)/Delta_n) P e_n P (slow reference)."""
    if n <= 1:
        return identity(n)
    f = identity(1)
    for k in range(1, n):
        P = tensor(f, identity(1))
        corr = compose(compose(P, generator(k, k + 1)), P)
        ratio = RatFn.from_laurent(delta_laurent(k - 1)) / RatFn.from_laurent(delta_laurent(k))
        f = P - corr.scale(ratio)
    return f


def jones_wenzl(n: int, method: str = "fast") -> TLElement:
    """The Jones-Wenzl idempotent f^(n) in TL_n.

    ``method="wenzl"`` runs the two-sided recursion directly (reference);
    the default uses the equivalent one-sided expansion, memoized.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "wenzl":
        return _jones_wenzl_wenzl(n)
    el = _JW_ELEMENT.get(n)
    if el is None:
        terms, den = jones_wenzl_scaled(n)
        el = TLElement(n, n, {m: RatFn(c, den) for m, c in terms.items()})
        _JW_ELEMENT[n] = el
    return el
