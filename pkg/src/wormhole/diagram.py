"""Sliced diagrams of colored banded trivalent graphs in wormhole spaces.

A diagram is read bottom to top as a list of slices acting on the current row
of colored strands.  Each dotted component of the surgery unlink appears only
as a ``DiskGate``: the set of consecutive strands piercing its spanning disk.

Text format (one slice per line, ``#`` starts a comment, ``/`` may also
separate slices on one line)::

    bottom 1 1          # optional; omitted means empty
    cup 0 1             # insert two strands of color 1 at position 0
    cap 0               # join strands 0 and 1 (equal colors)
    x+ 1                # lower-left strand passes over to upper-right
    x- 1                # lower-right strand passes over to upper-left
    vmerge 0 1 1 2      # strands (1, 1) at 0, 1 meet in a vertex, leave as 2
    vsplit 0 2 1 1      # strand 2 at 0 splits into (1, 1)
    disk D1 0 2         # strands 0, 1 pierce the disk of dotted circle D1
    top 1 1             # optional; omitted means empty
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

from .errors import (
    BoundaryMismatch,
    ColorMismatch,
    DiagramError,
    DSLSyntaxError,
    DuplicateDiskId,
    InadmissibleVertex,
    PositionOutOfRange,
)
from .recoupling import is_admissible

__all__ = [
    "Cup",
    "Cap",
    "CrossPos",
    "CrossNeg",
    "VertexMerge",
    "VertexSplit",
    "DiskGate",
    "Diagram",
    "parse_dsl",
    "load",
    "validate",
    "mirror",
    "flip",
    "disjoint_union",
    "compose_vertical",
    "closure_of_tangle",
    "pretty",
    "strip_gates",
    "belt",
    "replace_gates_with_belts",
    "unknot",
    "kinked_unknot",
    "hopf",
    "theta_diagram",
    "z_power",
    "identity_tangle",
]


@dataclass(frozen=True)
class Cup:
    position: int
    color: int


@dataclass(frozen=True)
class Cap:
    position: int


@dataclass(frozen=True)
class CrossPos:
    position: int


@dataclass(frozen=True)
class CrossNeg:
    position: int


@dataclass(frozen=True)
class VertexMerge:
    position: int
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class VertexSplit:
    position: int
    c: int
    a: int
    b: int


@dataclass(frozen=True)
class DiskGate:
    disk_id: str
    position: int
    span: int


Slice = Union[Cup, Cap, CrossPos, CrossNeg, VertexMerge, VertexSplit, DiskGate]


def _apply(profile: list[int], s: Slice, line: int | None = None) -> list[int]:
    """Return the profile after slice ``s``; raise DiagramError on violations."""
    w = len(profile)
    p = s.position
    if p < 0:
        raise PositionOutOfRange(f"negative position {p}", line)
    if isinstance(s, Cup):
        if p > w:
            raise PositionOutOfRange(f"cup at {p} but width is {w}", line)
        if s.color < 0:
            raise ColorMismatch("negative color", line)
        return profile[:p] + [s.color, s.color] + profile[p:]
    if isinstance(s, Cap):
        if p + 1 >= w:
            raise PositionOutOfRange(f"cap at {p} needs strands {p},{p + 1} but width is {w}", line)
        if profile[p] != profile[p + 1]:
            raise ColorMismatch(f"cap joins colors {profile[p]} and {profile[p + 1]}", line)
        return profile[:p] + profile[p + 2:]
    if isinstance(s, (CrossPos, CrossNeg)):
        if p + 1 >= w:
            raise PositionOutOfRange(f"crossing at {p} but width is {w}", line)
        out = list(profile)
        out[p], out[p + 1] = out[p + 1], out[p]
        return out
    if isinstance(s, VertexMerge):
        if p + 1 >= w:
            raise PositionOutOfRange(f"vmerge at {p} but width is {w}", line)
        if not is_admissible(s.a, s.b, s.c):
            raise InadmissibleVertex(f"({s.a}, {s.b}, {s.c}) is not admissible", line)
        if (profile[p], profile[p + 1]) != (s.a, s.b):
            raise ColorMismatch(f"vmerge expects ({s.a}, {s.b}) but strands carry ({profile[p]}, {profile[p + 1]})", line)
        return profile[:p] + [s.c] + profile[p + 2:]
    if isinstance(s, VertexSplit):
        if p >= w:
            raise PositionOutOfRange(f"vsplit at {p} but width is {w}", line)
        if not is_admissible(s.a, s.b, s.c):
            raise InadmissibleVertex(f"({s.c}, {s.a}, {s.b}) is not admissible", line)
        if profile[p] != s.c:
            raise ColorMismatch(f"vsplit expects color {s.c} but strand carries {profile[p]}", line)
        return profile[:p] + [s.a, s.b] + profile[p + 1:]
    if isinstance(s, DiskGate):
        if s.span < 0 or p + s.span > w:
            raise PositionOutOfRange(f"disk {s.disk_id} spans {p}..{p + s.span - 1} but width is {w}", line)
        return profile
    raise TypeError(f"unknown slice {s!r}")


@dataclass(frozen=True)
class Diagram:
    """Immutable, validated sliced diagram.  Framing is the blackboard framing."""

    slices: tuple[Slice, ...] = ()
    bottom: tuple[int, ...] = ()
    top: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        profile = self._check()
        if self.top is None:
            object.__setattr__(self, "top", tuple(profile))
        elif tuple(self.top) != tuple(profile):
            raise ColorMismatch(f"top boundary {tuple(profile)} does not match declared {tuple(self.top)}")
        else:
            object.__setattr__(self, "top", tuple(self.top))

    def _check(self, lines: Sequence[int] | None = None) -> list[int]:
        profile = list(self.bottom)
        if any(c < 0 for c in profile):
            raise ColorMismatch("negative boundary color")
        ids = set()
        for k, s in enumerate(self.slices):
            line = lines[k] if lines else None
            if isinstance(s, DiskGate):
                if s.disk_id in ids:
                    raise DuplicateDiskId(f"disk id {s.disk_id!r} used twice", line)
                ids.add(s.disk_id)
            profile = _apply(profile, s, line)
        return profile

    @classmethod
    def unchecked(cls, slices: Iterable[Slice], bottom: Iterable[int] = (), top: Iterable[int] = ()) -> "Diagram":
        """Build without validation (for feeding deliberately broken input to ``validate``)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "slices", tuple(slices))
        object.__setattr__(obj, "bottom", tuple(bottom))
        object.__setattr__(obj, "top", tuple(top))
        return obj

    # -- inspection -------------------------------------------------------
    @property
    def is_closed(self) -> bool:
        return not self.bottom and not self.top

    def profiles(self) -> list[tuple[int, ...]]:
        """Color row before each slice, plus the final row."""
        rows = [tuple(self.bottom)]
        profile = list(self.bottom)
        for s in self.slices:
            profile = _apply(profile, s)
            rows.append(tuple(profile))
        return rows

    def gates(self) -> list[tuple[int, DiskGate]]:
        return [(k, s) for k, s in enumerate(self.slices) if isinstance(s, DiskGate)]

    @property
    def disk_ids(self) -> list[str]:
        return [s.disk_id for _, s in self.gates()]

    def has_gates(self) -> bool:
        return any(isinstance(s, DiskGate) for s in self.slices)

    def crossing_count(self) -> int:
        return sum(isinstance(s, (CrossPos, CrossNeg)) for s in self.slices)

    def max_width(self) -> int:
        return max(len(r) for r in self.profiles())

    def colors(self) -> set[int]:
        out = set(self.bottom)
        for row in self.profiles():
            out.update(row)
        return out

    def to_dsl(self) -> str:
        return pretty(self)

    def __str__(self):
        return pretty(self)


# -- text format -----------------------------------------------------------

_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*$")


def _ints(tokens: Sequence[str], line: int) -> list[int]:
    try:
        out = [int(t) for t in tokens]
    except ValueError:
        raise DSLSyntaxError(f"expected integers, got {' '.join(tokens)!r}", line) from None
    return out


_ARITY = {"cup": 2, "cap": 1, "x+": 1, "x-": 1, "vmerge": 4, "vsplit": 4}
_ALIASES = {"vertex_merge": "vmerge", "vertex_split": "vsplit"}


def parse_dsl(text: str) -> Diagram:
    """Parse the line-oriented diagram format; errors carry 1-based line numbers."""
    entries: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        for chunk in body.split("/"):
            if chunk.strip():
                entries.append((lineno, chunk.strip()))

    bottom: tuple[int, ...] = ()
    top: tuple[int, ...] | None = None
    top_line = None
    slices: list[Slice] = []
    lines: list[int] = []
    for idx, (lineno, chunk) in enumerate(entries):
        toks = chunk.split()
        word, args = _ALIASES.get(toks[0], toks[0]), toks[1:]
        if word == "bottom":
            if idx != 0:
                raise DSLSyntaxError("'bottom' must be the first statement", lineno)
            bottom = tuple(_ints(args, lineno))
            continue
        if word == "top":
            if idx != len(entries) - 1:
                raise DSLSyntaxError("'top' must be the last statement", lineno)
            top = tuple(_ints(args, lineno))
            top_line = lineno
            continue
        if word == "disk":
            if len(args) != 3:
                raise DSLSyntaxError("disk takes ID POS SPAN", lineno)
            if not _ID.match(args[0]):
                raise DSLSyntaxError(f"bad disk id {args[0]!r}", lineno)
            pos, span = _ints(args[1:], lineno)
            slices.append(DiskGate(args[0], pos, span))
        elif word in _ARITY:
            if len(args) != _ARITY[word]:
                raise DSLSyntaxError(f"{word} takes {_ARITY[word]} argument(s)", lineno)
            vals = _ints(args, lineno)
            if word == "cup":
                slices.append(Cup(*vals))
            elif word == "cap":
                slices.append(Cap(*vals))
            elif word == "x+":
                slices.append(CrossPos(*vals))
            elif word == "x-":
                slices.append(CrossNeg(*vals))
            elif word == "vmerge":
                slices.append(VertexMerge(*vals))
            else:
                slices.append(VertexSplit(*vals))
        else:
            raise DSLSyntaxError(f"unknown statement {word!r}", lineno)
        lines.append(lineno)

    probe = Diagram.unchecked(slices, bottom)
    if any(c < 0 for c in bottom):
        raise ColorMismatch("negative boundary color", entries[0][0] if entries else None)
    final = probe._check(lines)
    expected = top if top is not None else ()
    if tuple(final) != tuple(expected):
        where = top_line if top_line is not None else (entries[-1][0] if entries else None)
        raise ColorMismatch(f"final strands {tuple(final)} do not match declared top {tuple(expected)}", where)
    return Diagram(tuple(slices), bottom, tuple(final))


def load(path) -> Diagram:
    with open(path, encoding="utf-8") as fh:
        return parse_dsl(fh.read())


def _slice_text(s: Slice) -> str:
    if isinstance(s, Cup):
        return f"cup {s.position} {s.color}"
    if isinstance(s, Cap):
        return f"cap {s.position}"
    if isinstance(s, CrossPos):
        return f"x+ {s.position}"
    if isinstance(s, CrossNeg):
        return f"x- {s.position}"
    if isinstance(s, VertexMerge):
        return f"vmerge {s.position} {s.a} {s.b} {s.c}"
    if isinstance(s, VertexSplit):
        return f"vsplit {s.position} {s.c} {s.a} {s.b}"
    return f"disk {s.disk_id} {s.position} {s.span}"


def pretty(d: Diagram) -> str:
    out = []
    if d.bottom:
        out.append("bottom " + " ".join(map(str, d.bottom)))
    out.extend(_slice_text(s) for s in d.slices)
    if d.top:
        out.append("top " + " ".join(map(str, d.top)))
    return "\n".join(out) + "\n"


def validate(d: Diagram) -> list[DiagramError]:
    """Re-check every invariant; returns the (possibly empty) list of violations."""
    errors: list[DiagramError] = []
    try:
        final = d._check()
    except DiagramError as exc:
        errors.append(exc)
        return errors
    if tuple(final) != tuple(d.top):
        errors.append(ColorMismatch(f"top boundary {tuple(final)} does not match declared {tuple(d.top)}"))
    return errors


# -- operations ------------------------------------------------------------

def mirror(d: Diagram) -> Diagram:
    """Reverse ambient orientation: exchange the two crossing types."""
    def sw(s):
        if isinstance(s, CrossPos):
            return CrossNeg(s.position)
        if isinstance(s, CrossNeg):
            return CrossPos(s.position)
        return s

    return Diagram(tuple(sw(s) for s in d.slices), d.bottom, d.top)


def flip(d: Diagram) -> Diagram:
    """Reflect top-to-bottom (orientation reversing); used by the Hermitian pairing."""
    rows = d.profiles()
    out: list[Slice] = []
    for k in range(len(d.slices) - 1, -1, -1):
        s = d.slices[k]
        before = rows[k]
        if isinstance(s, Cup):
            out.append(Cap(s.position))
        elif isinstance(s, Cap):
            out.append(Cup(s.position, before[s.position]))
        elif isinstance(s, CrossPos):
            out.append(CrossNeg(s.position))
        elif isinstance(s, CrossNeg):
            out.append(CrossPos(s.position))
        elif isinstance(s, VertexMerge):
            out.append(VertexSplit(s.position, s.c, s.a, s.b))
        elif isinstance(s, VertexSplit):
            out.append(VertexMerge(s.position, s.a, s.b, s.c))
        else:
            out.append(s)
    return Diagram(tuple(out), d.top, d.bottom)


def _renamed(slices: Sequence[Slice], taken: set[str]) -> list[Slice]:
    out = []
    for s in slices:
        if isinstance(s, DiskGate) and s.disk_id in taken:
            k = 2
            while f"{s.disk_id}_{k}" in taken:
                k += 1
            s = replace(s, disk_id=f"{s.disk_id}_{k}")
        if isinstance(s, DiskGate):
            taken.add(s.disk_id)
        out.append(s)
    return out


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Closed diagrams side by side; d2 is drawn after d1 closes, disk ids renamed on collision."""
    if not (d1.is_closed and d2.is_closed):
        raise BoundaryMismatch("disjoint union is defined for closed diagrams")
    taken = set(d1.disk_ids)
    return Diagram(d1.slices + tuple(_renamed(d2.slices, taken)))


def compose_vertical(d1: Diagram, d2: Diagram) -> Diagram:
    """d2 stacked on top of d1."""
    if tuple(d1.top) != tuple(d2.bottom):
        raise BoundaryMismatch(f"top {tuple(d1.top)} does not match bottom {tuple(d2.bottom)}")
    taken = set(d1.disk_ids)
    return Diagram(d1.slices + tuple(_renamed(d2.slices, taken)), d1.bottom, d2.top)


def closure_of_tangle(d: Diagram, gate: str | None = None) -> Diagram:
    """Close bottom point i to top point i by nested arcs on the right.

    With ``gate`` set, the returning arcs all pierce one dotted disk of that id,
    turning the closure in S^3 into the closure in S^1 x S^2.
    """
    if tuple(d.bottom) != tuple(d.top):
        raise BoundaryMismatch("closure needs identical bottom and top colors")
    colors = d.bottom
    k = len(colors)
    pre: list[Slice] = [Cup(i, colors[i]) for i in range(k)]
    if gate is not None:
        if gate in d.disk_ids:
            raise DuplicateDiskId(f"disk id {gate!r} already used in the tangle")
        pre.append(DiskGate(gate, k, k))
    post: list[Slice] = [Cap(i) for i in range(k - 1, -1, -1)]
    return Diagram(tuple(pre) + d.slices + tuple(post))


def strip_gates(d: Diagram) -> Diagram:
    return Diagram(tuple(s for s in d.slices if not isinstance(s, DiskGate)), d.bottom, d.top)


def belt(position: int, span: int, color: int, positive: bool = True) -> list[Slice]:
    """An unknot of the given color encircling strands position..position+span-1.

    The front arc passes over the spanned strands and the back arc under them
    (``positive``); the mirrored belt swaps both.
    """
    X = CrossPos if positive else CrossNeg
    out: list[Slice] = [Cup(position, color)]
    out += [X(position + 1 + t) for t in range(span)]
    out += [X(position + span - t) for t in range(span)]
    out.append(Cap(position))
    return out


def replace_gates_with_belts(d: Diagram, belts: dict[str, Sequence[int]], positive: bool = True) -> Diagram:
    """Replace every gate by a stack of belts with the listed colors (empty list deletes it)."""
    out: list[Slice] = []
    for s in d.slices:
        if isinstance(s, DiskGate):
            for c in belts.get(s.disk_id, ()):
                out.extend(belt(s.position, s.span, c, positive))
        else:
            out.append(s)
    return Diagram(tuple(out), d.bottom, d.top)


# -- standard diagrams -----------------------------------------------------

def unknot(color: int = 1) -> Diagram:
    return Diagram((Cup(0, color), Cap(0)))


def kinked_unknot(color: int = 1, positive: bool = True) -> Diagram:
    """One-crossing unknot; with ``positive`` its crossing has writhe +1."""
    X = CrossPos if positive else CrossNeg
    return Diagram((Cup(0, color), Cup(2, color), X(1), Cap(0), Cap(0)))


def hopf(a: int = 1, b: int = 1, positive: bool = True) -> Diagram:
    """Two-crossing clasp of an a-colored and a b-colored unknot."""
    X = CrossPos if positive else CrossNeg
    return Diagram((Cup(0, a), Cup(2, b), X(1), X(1), Cap(2), Cap(0)))


def theta_diagram(a: int, b: int, c: int) -> Diagram:
    return Diagram((Cup(0, c), VertexSplit(0, c, a, b), VertexMerge(0, a, b, c), Cap(0)))


def z_power(m: int, color: int = 1, disk_id: str = "D1") -> Diagram:
    """m parallel standardly framed longitudes of S^1 x S^2 through one dotted disk."""
    cups = tuple(Cup(i, color) for i in range(m))
    caps = tuple(Cap(i) for i in range(m - 1, -1, -1))
    return Diagram(cups + (DiskGate(disk_id, 0, m),) + caps)


def identity_tangle(colors: Sequence[int]) -> Diagram:
    return Diagram((), tuple(colors), tuple(colors))
