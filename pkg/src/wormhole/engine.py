"""Evaluation of closed diagrams in S^3 and the wormhole reduction.

A colored diagram is cabled into an elementary program on 1-colored strands:
an edge of color n becomes n parallel strands, a colored crossing becomes a
grid of elementary crossings of the same sign, a vertex becomes nested
turnbacks, and every graph edge carries one Jones-Wenzl projector.  The
program is then evaluated either by the transfer-matrix sweep (production
path) or by the full state sum (oracle).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels
from .diagram import (
    Cap,
    CrossNeg,
    CrossPos,
    Cup,
    Diagram,
    DiskGate,
    Slice,
    VertexMerge,
    VertexSplit,
)
from .errors import HasDiskGates, NonLaurentResult, NotClosed
from .qring import LaurentPoly, RatFn
from .recoupling import delta_laurent, quantum_delta, theta_net
from .tl import jones_wenzl_scaled

__all__ = [
    "Program",
    "cable",
    "eval_s3",
    "eval_s3_transfer",
    "eval_s3_bruteforce",
    "WeightedDiagrams",
    "wormhole_reduce",
    "bracket",
]

CUP, CAP, CROSS, PROJ = kernels.CUP, kernels.CAP, kernels.CROSS, kernels.PROJ


@dataclass
class Program:
    """Elementary program plus the common denominator of its projectors."""

    ops: list = field(default_factory=list)
    denominator: LaurentPoly = field(default_factory=lambda: LaurentPoly(1))

    def crossings(self) -> int:
        return sum(op[0] == CROSS for op in self.ops)

    def max_width(self) -> int:
        w = best = 0
        for op in self.ops:
            if op[0] == CUP:
                w += 2
            elif op[0] == CAP:
                w -= 2
            best = max(best, w)
        return best


class _UF:
    def __init__(self):
        self.parent: list[int] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _projector_sites(d: Diagram) -> set[tuple[int, int]]:
    """Choose one creation site (slice index, output number) per graph edge."""
    uf = _UF()
    row: list[int] = []
    sites: list[tuple[tuple[int, int], int, int]] = []  # (site, edge, color)
    for k, s in enumerate(d.slices):
        p = s.position
        if isinstance(s, Cup):
            e = uf.new()
            row[p:p] = [e, e]
            sites.append(((k, 0), e, s.color))
        elif isinstance(s, Cap):
            uf.union(row[p], row[p + 1])
            del row[p:p + 2]
        elif isinstance(s, (CrossPos, CrossNeg)):
            row[p], row[p + 1] = row[p + 1], row[p]
        elif isinstance(s, VertexMerge):
            e = uf.new()
            row[p:p + 2] = [e]
            sites.append(((k, 0), e, s.c))
        elif isinstance(s, VertexSplit):
            e1, e2 = uf.new(), uf.new()
            row[p:p + 1] = [e1, e2]
            sites.append(((k, 0), e1, s.a))
            sites.append(((k, 1), e2, s.b))
    chosen: dict[int, tuple[int, int]] = {}
    for site, e, color in sites:
        if color < 2:
            continue
        chosen.setdefault(uf.find(e), site)
    return set(chosen.values())


def _proj_terms(n: int):
    terms, den = jones_wenzl_scaled(n)
    return tuple((m, dict(c.items())) for m, c in terms.items()), den


def cable(d: Diagram) -> Program:
    """Cable a closed, gate-free colored diagram into an elementary program."""
    if not d.is_closed:
        raise NotClosed("only closed diagrams can be evaluated")
    if d.has_gates():
        raise HasDiskGates("diagram has disk gates; apply the wormhole reduction first")
    sites = _projector_sites(d)
    prog = Program()
    ops = prog.ops
    den = LaurentPoly(1)
    row: list[int] = []  # colors

    def off(i: int) -> int:
        return sum(row[:i])

    def project(k: int, j: int, start: int, n: int):
        nonlocal den
        if (k, j) in sites:
            terms, dn = _proj_terms(n)
            ops.append((PROJ, start, n, terms))
            den = den * dn

    for k, s in enumerate(d.slices):
        p = s.position
        if isinstance(s, Cup):
            o = off(p)
            for i in range(s.color):
                ops.append((CUP, o + i))
            row[p:p] = [s.color, s.color]
            project(k, 0, o, s.color)
        elif isinstance(s, Cap):
            o = off(p)
            c = row[p]
            for i in range(c):
                ops.append((CAP, o + c - 1 - i))
            del row[p:p + 2]
        elif isinstance(s, (CrossPos, CrossNeg)):
            sign = 1 if isinstance(s, CrossPos) else -1
            o = off(p)
            a, b = row[p], row[p + 1]
            for i in range(a - 1, -1, -1):
                for t in range(b):
                    ops.append((CROSS, o + i + t, sign))
            row[p], row[p + 1] = b, a
        elif isinstance(s, VertexMerge):
            o = off(p)
            j = (s.a + s.b - s.c) // 2
            for i in range(j):
                ops.append((CAP, o + s.a - 1 - i))
            row[p:p + 2] = [s.c]
            project(k, 0, o, s.c)
        elif isinstance(s, VertexSplit):
            o = off(p)
            j = (s.a + s.b - s.c) // 2
            for i in range(j):
                ops.append((CUP, o + s.a - j + i))
            row[p:p + 1] = [s.a, s.b]
            project(k, 0, o, s.a)
            project(k, 1, o + s.a, s.b)
        else:
            raise HasDiskGates("unexpected disk gate")
    prog.denominator = den
    return prog


def _to_ratfn(num: dict, den: LaurentPoly) -> RatFn:
    return RatFn(LaurentPoly(num), den)


def eval_s3_transfer(d: Diagram) -> RatFn:
    """Bracket of a closed gate-free diagram via the transfer-matrix sweep."""
    prog = cable(d)
    return _to_ratfn(kernels.transfer_sweep(prog.ops), prog.denominator)


def eval_s3_bruteforce(d: Diagram, max_states: int = 2_000_000) -> RatFn:
    """Independent oracle: sum over every smoothing and every projector term."""
    prog = cable(d)
    uf = _UF()
    fixed: list[tuple[int, int]] = []
    choices: list[tuple[str, list]] = []
    row: list[int] = []
    for op in prog.ops:
        kind, p = op[0], op[1]
        if kind == CUP:
            a, b = uf.new(), uf.new()
            fixed.append((a, b))
            row[p:p] = [a, b]
        elif kind == CAP:
            fixed.append((row[p], row[p + 1]))
            del row[p:p + 2]
        elif kind == CROSS:
            s = op[2]
            lo = row[p:p + 2]
            hi = [uf.new(), uf.new()]
            ident = [(lo[0], hi[0]), (lo[1], hi[1])]
            turn = [(lo[0], lo[1]), (hi[0], hi[1])]
            choices.append(("x", [(ident, s), (turn, -s)]))
            row[p:p + 2] = hi
        else:
            n, terms = op[2], op[3]
            lo = row[p:p + n]
            hi = [uf.new() for _ in range(n)]
            pts = lo + hi[::-1]
            opts = []
            for tlm, coeff in terms:
                opts.append(([(pts[i], pts[tlm[i]]) for i in range(2 * n) if i < tlm[i]], coeff))
            choices.append(("p", opts))
            row[p:p + n] = hi
    total_states = 1
    for _, c in choices:
        total_states *= len(c)
    if total_states > max_states:
        raise ValueError(f"state sum has {total_states} states; too large for the oracle")

    # compress the fixed connections once, then enumerate projector terms
    # (outer) and smoothings (inner); crossing weights are plain exponents
    for a, b in fixed:
        uf.union(a, b)
    nodes = len(uf.parent)
    roots = sorted({uf.find(x) for x in range(nodes)})
    index = {r: i for i, r in enumerate(roots)}
    comp = [index[uf.find(x)] for x in range(nodes)]
    cross_opts = []
    proj_opts = []
    for kind, opts in choices:
        packed = [([(comp[a], comp[b]) for a, b in links], w) for links, w in opts]
        if kind == "x":
            cross_opts.append(packed)
        else:
            proj_opts.append([(links, LaurentPoly(c)) for links, c in packed])

    def find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    size = len(roots)
    one = LaurentPoly(1)

    def leaf(base: list[int], base_comps: int) -> dict[int, LaurentPoly]:
        if not cross_opts:
            return {base_comps: one}
        by_loops: dict[int, dict[int, int]] = {}
        for xcombo in itertools.product(*cross_opts):
            parent = base[:]
            comps = base_comps
            e = 0
            for links, s in xcombo:
                e += s
                for a, b in links:
                    ra, rb = find(parent, a), find(parent, b)
                    if ra != rb:
                        parent[ra] = rb
                        comps -= 1
            row = by_loops.setdefault(comps, {})
            row[e] = row.get(e, 0) + 1
        return {comps: LaurentPoly(row) for comps, row in by_loops.items()}

    def walk(level: int, base: list[int], base_comps: int) -> dict[int, LaurentPoly]:
        """Loop count -> summed weight over all choices from ``level`` on."""
        if level == len(proj_opts):
            return leaf(base, base_comps)
        out: dict[int, LaurentPoly] = {}
        for links, c in proj_opts[level]:
            parent = base[:]
            comps = base_comps
            for a, b in links:
                ra, rb = find(parent, a), find(parent, b)
                if ra != rb:
                    parent[ra] = rb
                    comps -= 1
            for k, v in walk(level + 1, parent, comps).items():
                term = c if v == one else c * v
                out[k] = out[k] + term if k in out else term
        return out

    result = LaurentPoly(0)
    for comps, poly in walk(0, list(range(size)), size).items():
        result = result + poly * delta_laurent(1) ** comps
    return RatFn(result, prog.denominator)


def eval_s3(d: Diagram, method: str = "transfer") -> RatFn:
    if method == "transfer":
        return eval_s3_transfer(d)
    if method == "bruteforce":
        return eval_s3_bruteforce(d)
    raise ValueError(f"unknown method {method!r}")


# -- wormhole reduction ----------------------------------------------------

@dataclass
class WeightedDiagrams:
    """Formal linear combination of gate-free closed diagrams."""

    terms: list[tuple[RatFn, Diagram]] = field(default_factory=list)

    def __iter__(self) -> Iterator[tuple[RatFn, Diagram]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, method: str = "transfer") -> RatFn:
        total = RatFn(0)
        for coeff, diag in self.terms:
            total = total + coeff * eval_s3(diag, method)
        return total


def _fusion_paths(colors: Sequence[int]) -> Iterator[tuple[list[int], RatFn]]:
    """Left-comb intermediate colors e_2..e_k with e_k = 0, and their coefficient."""
    k = len(colors)
    if k == 0:
        yield [], RatFn(1)
        return
    if k == 1:
        if colors[0] == 0:
            yield [], RatFn(1)
        return

    def rec(i: int, cur: int, acc: list[int], coeff: RatFn):
        # cur is the fused color of colors[0..i-1]
        if i == k:
            if cur == 0:
                yield list(acc), coeff
            return
        c = colors[i]
        rest = sum(colors[i + 1:])
        for e in range(abs(cur - c), cur + c + 1, 2):
            if e > rest:  # what remains must be able to cancel e
                break
            step = quantum_delta(e) / theta_net(cur, c, e)
            acc.append(e)
            yield from rec(i + 1, e, acc, coeff * step)
            acc.pop()

    yield from rec(1, colors[0], [], RatFn(1))


def _gadget(pos: int, colors: Sequence[int], path: Sequence[int], tree: str) -> list[Slice]:
    k = len(colors)
    if k <= 1:
        return []
    if tree == "left":
        fused = [colors[0]] + list(path)
        merges = [VertexMerge(pos, fused[i - 1], colors[i], fused[i]) for i in range(1, k)]
        splits = [VertexSplit(pos, fused[i], fused[i - 1], colors[i]) for i in range(k - 1, 0, -1)]
    elif tree == "right":
        # path was computed on the reversed colors; fused[i] covers colors[i..k-1]
        rev = list(colors[::-1])
        fr = [rev[0]] + list(path)
        fused = {k - 1 - j: fr[j] for j in range(k)}
        merges = [VertexMerge(pos + i, colors[i], fused[i + 1], fused[i]) for i in range(k - 2, -1, -1)]
        splits = [VertexSplit(pos + i, fused[i], colors[i], fused[i + 1]) for i in range(k - 1)]
    else:
        raise ValueError(f"unknown tree {tree!r}")
    return merges + splits


def wormhole_reduce(d: Diagram, tree: str = "left") -> WeightedDiagrams:
    """Replace every disk gate by its fusion expansion with total color 0.

    Each gate's strands are fused along a comb (``tree`` = "left" or "right");
    only the summands whose fused color is 0 survive the handle, and the gate
    is then removed.
    """
    if not d.is_closed:
        raise NotClosed("wormhole reduction needs a closed diagram")
    current: list[tuple[RatFn, tuple[Slice, ...]]] = [(RatFn(1), d.slices)]
    while True:
        nxt: list[tuple[RatFn, tuple[Slice, ...]]] = []
        done = True
        for coeff, slices in current:
            gate_at = next((i for i, s in enumerate(slices) if isinstance(s, DiskGate)), None)
            if gate_at is None:
                nxt.append((coeff, slices))
                continue
            done = False
            g = slices[gate_at]
            profile = Diagram(slices[:gate_at]).top
            colors = profile[g.position:g.position + g.span]
            src = colors if tree == "left" else colors[::-1]
            for path, c in _fusion_paths(src):
                body = slices[:gate_at] + tuple(_gadget(g.position, colors, path, tree)) + slices[gate_at + 1:]
                nxt.append((coeff * c, body))
        current = nxt
        if done:
            break
    return WeightedDiagrams([(c, Diagram(s)) for c, s in current if not c.is_zero()])


def bracket(d: Diagram, method: str = "transfer", tree: str = "left") -> RatFn:
    """The invariant <G> of a closed diagram in a connected sum of S^1 x S^2's."""
    if d.has_gates():
        return wormhole_reduce(d, tree).evaluate(method)
    return eval_s3(d, method)


def bracket_laurent(d: Diagram, method: str = "transfer") -> LaurentPoly:
    """Bracket of a gate-free diagram, which must be a Laurent polynomial."""
    val = eval_s3(d, method)
    lp = val.as_laurent()
    if not lp and not val.is_zero():
        raise NonLaurentResult(f"expected a Laurent polynomial, got {val.pretty()}")
    return lp if lp else LaurentPoly(0)
