from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import random_oracle_diagram
from wormhole import _kernels_py, kernels
from wormhole.diagram import hopf, theta_diagram, z_power
from wormhole.engine import cable, wormhole_reduce
from wormhole.tl import catalan_matchings

BACKENDS = kernels.backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.skipif(
    "cython" not in BACKENDS or os.environ.get("WORMHOLE_PURE_PYTHON", "") not in ("", "0"),
    reason="extension not built or fallback forced",
)
def test_cython_selected_by_default():
    assert kernels.BACKEND == "cython"


def _programs():
    yield cable(hopf(2, 2)).ops
    yield cable(theta_diagram(3, 2, 3)).ops
    for _, dg in wormhole_reduce(z_power(6)).terms:
        yield cable(dg).ops


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_backends_agree_on_programs(name):
    impl = BACKENDS[name]
    for ops in _programs():
        assert impl.transfer_sweep(ops) == _kernels_py.transfer_sweep(ops)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_backends_agree_random(seed):
    ops = cable(random_oracle_diagram(random.Random(seed), limit=20_000)).ops
    ref = _kernels_py.transfer_sweep(ops)
    for impl in BACKENDS.values():
        assert impl.transfer_sweep(ops) == ref


@pytest.mark.parametrize("n", [2, 4, 6])
def test_state_primitives_agree(n):
    for impl in BACKENDS.values():
        for m in catalan_matchings(n):
            for p in range(n + 1):
                assert impl.state_cup(m, p) == _kernels_py.state_cup(m, p)
            for p in range(n - 1):
                assert impl.state_cap(m, p) == _kernels_py.state_cap(m, p)


def test_env_forces_pure_python():
    env = dict(os.environ, WORMHOLE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from wormhole import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
