from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import add_random_gates, random_closed
from wormhole.diagram import (
    Cap,
    CrossNeg,
    CrossPos,
    Cup,
    Diagram,
    DiskGate,
    VertexMerge,
    VertexSplit,
    closure_of_tangle,
    compose_vertical,
    disjoint_union,
    flip,
    hopf,
    identity_tangle,
    kinked_unknot,
    load,
    mirror,
    parse_dsl,
    pretty,
    theta_diagram,
    unknot,
    validate,
    z_power,
)
from wormhole.errors import (
    BoundaryMismatch,
    ColorMismatch,
    DSLSyntaxError,
    DuplicateDiskId,
    InadmissibleVertex,
    PositionOutOfRange,
)

FIXTURES = sorted((Path(__file__).parent.parent / "fixtures").glob("*.wh"))


def test_parse_unknot():
    d = parse_dsl("cup 0 1 / cap 0")
    assert d == unknot(1)
    assert d.is_closed


def test_parse_gate_slice():
    d = parse_dsl("cup 0 1 / disk D1 0 2 / cap 0")
    assert d.slices[1] == DiskGate("D1", 0, 2)
    assert d.disk_ids == ["D1"]


def test_parse_multiline_with_comments():
    text = """# hopf link
    cup 0 1
    cup 2 1   # second component
    x+ 1
    x+ 1
    cap 2
    cap 0
    """
    assert parse_dsl(text) == hopf(1, 1)


@pytest.mark.parametrize("word", ["vmerge", "vertex_merge"])
def test_inadmissible_vertex(word):
    with pytest.raises(InadmissibleVertex):
        parse_dsl(f"cup 0 1 / {word} 0 1 1 3 / cap 0")


def test_vertex_aliases():
    d = parse_dsl("cup 0 2 / vertex_split 0 2 1 1 / vertex_merge 0 1 1 2 / cap 0")
    assert d == theta_diagram(1, 1, 2)


@pytest.mark.parametrize(
    "text,exc,line",
    [
        ("cup 0 1\nfrobnicate 0\ncap 0", DSLSyntaxError, 2),
        ("cup 0 1\ncap x", DSLSyntaxError, 2),
        ("cup 0 1\ncap 0 1", DSLSyntaxError, 2),
        ("cup 0 1\ncap 1", PositionOutOfRange, 2),
        ("cup 0 1\ncup 0 2\ncap 1", ColorMismatch, 3),
        ("cup 0 1\ndisk D 0 2\ndisk D 0 2\ncap 0", DuplicateDiskId, 3),
        ("cup 0 1\ncup 2 2\nx+ 1\nvmerge 0 1 1 2\ncap 0", ColorMismatch, 4),
        ("cup 0 1\ndisk D 0 3\ncap 0", PositionOutOfRange, 2),
        ("cup 0 1\n\n\nbottom 1\ncap 0", DSLSyntaxError, 4),
        ("cup 0 1", ColorMismatch, 1),
    ],
)
def test_parse_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse_dsl(text)
    assert info.value.line == line


def test_open_tangle_header_footer():
    d = parse_dsl("bottom 1 1\nx+ 0\ntop 1 1")
    assert d.bottom == (1, 1) and d.top == (1, 1)
    with pytest.raises(ColorMismatch):
        parse_dsl("bottom 1 2\nx+ 0\ntop 1 2")


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    d = load(path)
    assert parse_dsl(pretty(d)) == d
    assert validate(d) == []
    # bit-exact printer: the fixture body equals its pretty form
    body = "".join(l for l in path.read_text().splitlines(keepends=True) if not l.startswith("#"))
    assert body == pretty(d)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_random_round_trip_and_profile(seed):
    rng = random.Random(seed)
    d = add_random_gates(rng, random_closed(rng), rng.randint(0, 2))
    assert parse_dsl(pretty(d)) == d
    assert validate(d) == []
    rows = d.profiles()
    assert rows[0] == () and rows[-1] == ()


def test_validate_unchecked():
    assert validate(unknot()) == []
    bad = Diagram.unchecked([Cup(0, 1), Cup(0, 2), Cap(1)])
    errs = validate(bad)
    assert len(errs) == 1 and isinstance(errs[0], ColorMismatch)
    dup = Diagram.unchecked([Cup(0, 1), DiskGate("D", 0, 2), DiskGate("D", 0, 2), Cap(0)])
    assert isinstance(validate(dup)[0], DuplicateDiskId)
    top = Diagram.unchecked([Cup(0, 1)], (), ())
    assert isinstance(validate(top)[0], ColorMismatch)


def test_constructor_validates():
    with pytest.raises(ColorMismatch):
        Diagram((Cup(0, 1), Cup(0, 2), Cap(1), Cap(0)))
    with pytest.raises(InadmissibleVertex):
        Diagram((Cup(0, 1), VertexMerge(0, 1, 1, 1)))
    with pytest.raises(InadmissibleVertex):
        Diagram((Cup(0, 2), VertexSplit(0, 2, 1, 2)))


def test_mirror():
    assert mirror(unknot()) == unknot()
    assert mirror(kinked_unknot(1, True)) == kinked_unknot(1, False)
    rng = random.Random(7)
    for _ in range(20):
        d = add_random_gates(rng, random_closed(rng), 1)
        assert mirror(mirror(d)) == d


def test_flip():
    d = parse_dsl("bottom 1 1\nx+ 0\ntop 1 1")
    assert flip(d).slices == (CrossNeg(0),)
    t = Diagram((Cup(0, 2), VertexSplit(0, 2, 1, 1)))
    f = flip(t)
    assert f.bottom == (1, 1, 2) and f.top == ()
    assert f.slices == (VertexMerge(0, 1, 1, 2), Cap(0))
    assert flip(flip(t)) == t


def test_disjoint_union():
    u = disjoint_union(unknot(), unknot())
    assert u.slices == (Cup(0, 1), Cap(0), Cup(0, 1), Cap(0))
    assert validate(disjoint_union(z_power(2), unknot())) == []
    zz = disjoint_union(z_power(2), z_power(2))
    assert len(set(zz.disk_ids)) == 2
    with pytest.raises(BoundaryMismatch):
        disjoint_union(identity_tangle([1]), unknot())


def test_compose_vertical():
    i2 = identity_tangle([1, 1])
    assert compose_vertical(i2, i2) == i2
    cup = Diagram((Cup(0, 1),))
    cap = Diagram((Cap(0),), (1, 1))
    assert compose_vertical(cup, cap) == unknot()
    with pytest.raises(BoundaryMismatch):
        compose_vertical(identity_tangle([1]), identity_tangle([2]))


def test_closure_of_tangle():
    assert closure_of_tangle(identity_tangle([1])) == unknot()
    c2 = closure_of_tangle(identity_tangle([1, 1]))
    assert c2.slices == (Cup(0, 1), Cup(1, 1), Cap(1), Cap(0))
    sm = Diagram((VertexMerge(0, 1, 1, 2), VertexSplit(0, 2, 1, 1)), (1, 1))
    cl = closure_of_tangle(sm)
    assert cl.is_closed and validate(cl) == []
    g = closure_of_tangle(identity_tangle([1, 1]), gate="W")
    assert g.disk_ids == ["W"] and g.slices[2] == DiskGate("W", 2, 2)
    with pytest.raises(BoundaryMismatch):
        closure_of_tangle(Diagram((Cup(0, 1),)))


def test_inspection_helpers():
    d = hopf(2, 1)
    assert d.crossing_count() == 2
    assert d.max_width() == 4
    assert d.colors() == {1, 2}
    assert not d.has_gates() and z_power(3).has_gates()
    assert isinstance(CrossPos(0), CrossPos)
