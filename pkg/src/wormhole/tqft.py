"""TQFT layer: vector spaces of marked spheres, bases, Hermitian pairing, matrices.

A vector in V(S^2 with colored points s) is represented by a diagram (or a
formal combination of diagrams) with empty bottom and top boundary ``s``.  The
pairing glues the vertical reflection of the first vector, with conjugated
coefficients, on top of the second and takes the bracket; it is therefore
conjugate-linear in the first slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence, Union

from .diagram import Cup, Diagram, VertexMerge, VertexSplit, compose_vertical, flip
from .engine import bracket
from .errors import (
    BoundaryMismatch,
    NonLaurentResult,
    NotSingleWormhole,
    SingularBasis,
)
from .qring import LaurentPoly, RatFn
from .tl import Matching, catalan_matchings

__all__ = [
    "MarkedSphere",
    "Basis",
    "GramMatrix",
    "MorphismMatrix",
    "dim_v",
    "catalan_number",
    "catalan_basis",
    "catalan_vectors",
    "tree_basis",
    "basis_for",
    "pair_hermitian",
    "gram_matrix",
    "gram_det_in_d",
    "d_poly_pretty",
    "matching_vector",
    "tree_vector",
    "gram_det_degree_check",
    "morphism_matrix",
    "trace_morphism",
    "hp_projection",
    "matrix_to_json",
    "matrix_from_json",
]

Vector = Union[Diagram, Sequence[tuple[RatFn, Diagram]]]


@dataclass(frozen=True)
class MarkedSphere:
    colors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if any(c < 0 for c in self.colors):
            raise ValueError("colors are nonnegative")


def _sphere(s) -> MarkedSphere:
    return s if isinstance(s, MarkedSphere) else MarkedSphere(tuple(s))


def catalan_number(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _comb_paths(colors: Sequence[int]) -> list[tuple[int, ...]]:
    """Left-comb internal colorings (e_2, ..., e_{k-1}) with the last fusion landing on 0."""
    k = len(colors)
    if k == 0:
        return [()]
    if k == 1:
        return [()] if colors[0] == 0 else []
    out = []

    def rec(i: int, cur: int, acc: list[int]):
        if i == k - 1:
            if cur == colors[-1]:
                out.append(tuple(acc))
            return
        c = colors[i]
        rest = sum(colors[i + 1:])
        for e in range(abs(cur - c), cur + c + 1, 2):
            if e > rest:
                break
            acc.append(e)
            rec(i + 1, e, acc)
            acc.pop()

    rec(1, colors[0], [])
    return out


def dim_v(s) -> int:
    """Number of admissible colorings of the left-comb tree on the points of s."""
    colors = _sphere(s).colors
    k = len(colors)
    if k == 0:
        return 1
    if k == 1:
        return 1 if colors[0] == 0 else 0
    # counts[e] = number of admissible partial colorings with fused color e
    counts = {colors[0]: 1}
    for c in colors[1:-1]:
        nxt: dict[int, int] = {}
        for e, n in counts.items():
            for f in range(abs(e - c), e + c + 1, 2):
                nxt[f] = nxt.get(f, 0) + n
        counts = nxt
    return counts.get(colors[-1], 0)


# -- bases -----------------------------------------------------------------

@dataclass
class Basis:
    """Spanning vectors of V(s) with descriptive labels."""

    sphere: MarkedSphere
    kind: str
    labels: list
    vectors: list[Diagram]

    def __len__(self) -> int:
        return len(self.vectors)


def catalan_basis(n: int) -> list[Matching]:
    """Crossingless matchings of 2n points on the top of a ball, deterministic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    N = 2 * n
    out = []
    for p in catalan_matchings(N):
        # left-to-right pairing -> Matching encoding (top points right to left)
        out.append(Matching(0, N, tuple(N - 1 - p[N - 1 - i] for i in range(N))))
    return out


def _left_to_right(m: Matching) -> list[int]:
    N = m.n_top
    return [N - 1 - m.pairing[N - 1 - j] for j in range(N)]


def matching_vector(m: Matching, color: int = 1) -> Diagram:
    """The cups-only diagram realizing a top matching."""
    p = _left_to_right(m)
    slices: list = []

    def emit(lo: int, hi: int, base: int):
        i = lo
        while i < hi:
            j = p[i]
            slices.append(Cup(base + (i - lo), color))
            emit(i + 1, j, base + (i - lo) + 1)
            i = j + 1

    emit(0, len(p), 0)
    return Diagram(tuple(slices))


def catalan_vectors(n: int, color: int = 1) -> Basis:
    ms = catalan_basis(n)
    return Basis(MarkedSphere((color,) * (2 * n)), "catalan", ms, [matching_vector(m, color) for m in ms])


def tree_vector(colors: Sequence[int], path: Sequence[int]) -> Diagram:
    """Left-comb tree with leaves ``colors`` and internal colors ``path``."""
    k = len(colors)
    if k == 0:
        return Diagram(())
    if k == 1:
        return Diagram((Cup(0, 0), VertexMerge(0, 0, 0, 0)))
    fused = [colors[0]] + list(path) + [colors[-1]]
    # fused[i] is the color after merging leaves 0..i; fused[k-2] meets colors[k-1] in a plain arc
    slices: list = [Cup(0, colors[-1])]
    for i in range(k - 2, 0, -1):
        slices.append(VertexSplit(0, fused[i], fused[i - 1], colors[i]))
    return Diagram(tuple(slices))


def tree_basis(s) -> Basis:
    sph = _sphere(s)
    paths = _comb_paths(sph.colors)
    return Basis(sph, "tree", paths, [tree_vector(sph.colors, p) for p in paths])


def basis_for(s, kind: str = "auto") -> Basis:
    sph = _sphere(s)
    if kind == "auto":
        kind = "catalan" if sph.colors and all(c == 1 for c in sph.colors) else "tree"
    if kind == "catalan":
        if any(c != 1 for c in sph.colors) or len(sph.colors) % 2:
            raise BoundaryMismatch("the Catalan basis needs an even number of 1-colored points")
        return catalan_vectors(len(sph.colors) // 2)
    if kind == "tree":
        return tree_basis(sph)
    raise ValueError(f"unknown basis kind {kind!r}")


# -- pairing ---------------------------------------------------------------

def _combo(x: Vector) -> list[tuple[RatFn, Diagram]]:
    if isinstance(x, Diagram):
        return [(RatFn(1), x)]
    return [(RatFn(c) if isinstance(c, int) else c, d) for c, d in x]


def pair_hermitian(x: Vector, y: Vector) -> RatFn:
    """<x, y>: conjugate-linear in x, linear in y."""
    total = RatFn(0)
    for cx, dx in _combo(x):
        for cy, dy in _combo(y):
            if dx.bottom or dy.bottom:
                raise BoundaryMismatch("vectors must have empty bottom boundary")
            if tuple(dx.top) != tuple(dy.top):
                raise BoundaryMismatch(f"boundaries {tuple(dx.top)} and {tuple(dy.top)} differ")
            glued = compose_vertical(dy, flip(dx))
            total = total + cx.involute() * cy * bracket(glued)
    return total


@dataclass
class GramMatrix:
    basis: Basis
    entries: list[list[RatFn]]

    def is_hermitian(self) -> bool:
        n = len(self.entries)
        return all(self.entries[i][j] == self.entries[j][i].involute() for i in range(n) for j in range(n))

    def determinant(self) -> RatFn:
        return _det(self.entries)


def gram_matrix(basis: Basis | int) -> GramMatrix:
    """Pairwise pairings of a basis; an integer n means the Catalan basis on 2n points."""
    if isinstance(basis, int):
        basis = catalan_vectors(basis)
    vecs = basis.vectors
    n = len(vecs)
    entries: list[list[RatFn]] = [[RatFn(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = pair_hermitian(vecs[i], vecs[j])
            entries[i][j] = v
            entries[j][i] = v.involute()
    return GramMatrix(basis, entries)


# -- exact linear algebra ----------------------------------------------------

def _det(m: list[list[RatFn]]) -> RatFn:
    a = [row[:] for row in m]
    n = len(a)
    det = RatFn(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            return RatFn(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inverse()
        for r in range(c + 1, n):
            if a[r][c].is_zero():
                continue
            f = a[r][c] * inv
            a[r] = [a[r][k] - f * a[c][k] for k in range(n)]
    return det


def _solve(g: list[list[RatFn]], b: list[list[RatFn]]) -> list[list[RatFn]]:
    """Return X with g X = b by Gauss-Jordan elimination; SingularBasis if g is singular."""
    n = len(g)
    cols = len(b[0]) if b else 0
    a = [g[i][:] + b[i][:] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if piv is None:
            raise SingularBasis("Gram matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and not a[r][c].is_zero():
                f = a[r][c]
                a[r] = [a[r][k] - f * a[c][k] for k in range(n + cols)]
    return [row[n:] for row in a]


def _laurent_to_d(p: LaurentPoly) -> list[int]:
    """Write a bar-symmetric Laurent polynomial as a polynomial in d (low degree first)."""
    rest = p
    coeffs: dict[int, int] = {}
    while not rest.is_zero():
        top = rest.max_exp()
        if top < 0 or top % 2:
            raise ValueError(f"{p.pretty()} is not a polynomial in d")
        k = top // 2
        c = rest.coeff(top) * (-1 if k % 2 else 1)
        coeffs[k] = c
        rest = rest - LaurentPoly.monomial(0, c) * (LaurentPoly({2: -1, -2: -1}) ** k)
    if not coeffs:
        return []
    return [coeffs.get(i, 0) for i in range(max(coeffs) + 1)]


def _pmul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    while out and out[-1] == 0:
        out.pop()
    return out


def _psub(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _pdiv(f: list[int], g: list[int]) -> list[int]:
    """Exact division of integer polynomials."""
    f = f[:]
    if not f:
        return []
    out = [0] * (len(f) - len(g) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(f[i + len(g) - 1], g[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        for j, b in enumerate(g):
            f[i + j] -= q * b
    if any(f):
        raise ArithmeticError("inexact polynomial division")
    while out and out[-1] == 0:
        out.pop()
    return out


def _bareiss(m: list[list[list[int]]]) -> list[int]:
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return [1]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return []
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _pdiv(_psub(_pmul(a[i][j], a[k][k]), _pmul(a[i][k], a[k][j])), prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return [-c for c in det] if sign < 0 else det


def gram_det_in_d(n: int) -> list[int]:
    """Determinant of the Catalan Gram matrix as a polynomial in d (low degree first)."""
    g = gram_matrix(n)
    rows = []
    for row in g.entries:
        out = []
        for v in row:
            lp = v.as_laurent()
            if not lp and not v.is_zero():
                raise NonLaurentResult("Catalan Gram entries are Laurent polynomials")
            out.append(_laurent_to_d(lp if lp else LaurentPoly(0)))
        rows.append(out)
    return _bareiss(rows)


def gram_det_degree_check(n: int) -> bool:
    det = gram_det_in_d(n)
    return len(det) - 1 == n * catalan_number(n)


def d_poly_pretty(coeffs: Sequence[int]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


# -- morphisms ---------------------------------------------------------------

@dataclass
class MorphismMatrix:
    source: MarkedSphere
    target: MarkedSphere
    entries: list[list[RatFn]] = field(default_factory=list)

    def trace(self) -> RatFn:
        if self.source != self.target:
            raise BoundaryMismatch("trace needs an endomorphism")
        total = RatFn(0)
        for i in range(len(self.entries)):
            total = total + self.entries[i][i]
        return total

    def __matmul__(self, other: "MorphismMatrix") -> "MorphismMatrix":
        if other.target != self.source:
            raise BoundaryMismatch("matrix shapes do not compose")
        n, m, k = len(self.entries), len(other.entries), len(other.entries[0]) if other.entries else 0
        out = [[RatFn(0)] * k for _ in range(n)]
        for i in range(n):
            for j in range(k):
                acc = RatFn(0)
                for t in range(m):
                    acc = acc + self.entries[i][t] * other.entries[t][j]
                out[i][j] = acc
        return MorphismMatrix(other.source, self.target, out)


def morphism_matrix(m: Diagram, b1: Basis | None = None, b2: Basis | None = None) -> MorphismMatrix:
    """Matrix of the cobordism m in the given bases: column j is m(b1[j]) in coordinates of b2.

    Coordinates are obtained by solving against the Gram matrix of b2, so
    orthogonal and non-orthogonal spanning bases are both handled.
    """
    src, tgt = MarkedSphere(m.bottom), MarkedSphere(m.top)
    b1 = b1 if b1 is not None else basis_for(src)
    b2 = b2 if b2 is not None else basis_for(tgt)
    if b1.sphere != src or b2.sphere != tgt:
        raise BoundaryMismatch("basis boundaries do not match the tangle")
    if not b2.vectors:
        return MorphismMatrix(src, tgt, [])
    g = gram_matrix(b2).entries
    images = [compose_vertical(v, m) for v in b1.vectors]
    rhs = [[pair_hermitian(w, img) for img in images] for w in b2.vectors]
    if not images:
        return MorphismMatrix(src, tgt, [[] for _ in b2.vectors])
    return MorphismMatrix(src, tgt, _solve(g, rhs))


def trace_morphism(m: Diagram, basis: Basis | None = None) -> RatFn:
    if tuple(m.bottom) != tuple(m.top):
        raise BoundaryMismatch("trace needs identical source and target")
    return morphism_matrix(m, basis, basis).trace()


def hp_projection(d: Diagram) -> LaurentPoly:
    """<d> for a 1-colored link in one S^1 x S^2; always a Laurent polynomial."""
    if not d.is_closed:
        raise NotSingleWormhole("diagram must be closed")
    if len(d.gates()) != 1:
        raise NotSingleWormhole(f"expected exactly one disk gate, found {len(d.gates())}")
    if d.colors() - {1} or any(isinstance(s, (VertexMerge, VertexSplit)) for s in d.slices):
        raise NotSingleWormhole("all edges must be colored 1")
    value = bracket(d)
    if value.is_zero():
        return LaurentPoly(0)
    lp = value.as_laurent()
    if not lp:
        raise NonLaurentResult(f"bracket {value.pretty()} is not a Laurent polynomial")
    return lp


# -- serialization -------------------------------------------------------------

def matrix_to_json(entries: Iterable[Iterable[RatFn]]) -> list[list[dict]]:
    return [[v.to_json() for v in row] for row in entries]


def matrix_from_json(data) -> list[list[RatFn]]:
    return [[RatFn.from_json(v) for v in row] for row in data]
