"""Root-of-unity specialization and the surgery (omega-cabled) cross-check.

At A_r = exp(i pi / 2r) every dotted circle is replaced by an ordinary 0-framed
circle cabled with omega = sum_c Delta_c(A_r) * (color c), for c = 0..r-2.
The normalized ratio of the resulting S^3 evaluations is compared with the
generic invariant evaluated at A_r.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .diagram import Diagram, replace_gates_with_belts
from .engine import bracket, eval_s3
from .errors import ColorOutOfRange, DenominatorZero, NotClosed
from .qring import LaurentPoly, PoleAtPoint, RatFn
from .recoupling import delta_laurent

__all__ = [
    "RootSpec",
    "cyclotomic",
    "evaluate_at_root",
    "omega_weights",
    "chebyshev_coefficients",
    "wrt_ratio",
    "WrtRow",
    "ConvergenceReport",
    "convergence_check",
]


@dataclass(frozen=True)
class RootSpec:
    r: int

    def __post_init__(self):
        if self.r < 3:
            raise ValueError("r must be at least 3")

    @property
    def A(self) -> complex:
        return cmath.exp(1j * math.pi / (2 * self.r))

    @property
    def k(self) -> int:
        return self.r - 2


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for m in range(1, n):
        if n % m == 0:
            num = _divide(num, list(cyclotomic(m)))
    return tuple(num)


def _divide(f: list[int], g: list[int]) -> list[int]:
    f = f[:]
    out = [0] * (len(f) - len(g) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = f[i + len(g) - 1] // g[-1]
        out[i] = q
        for j, b in enumerate(g):
            f[i + j] -= q * b
    return out


def _reduce_mod(coeffs: list[int], phi: tuple[int, ...]) -> list[int]:
    f = coeffs[:]
    n = len(phi) - 1
    for i in range(len(f) - 1, n - 1, -1):
        q = f[i]  # phi is monic
        if q:
            for j in range(n + 1):
                f[i - n + j] -= q * phi[j]
    f = f[:n]
    while f and f[-1] == 0:
        f.pop()
    return f


def _eval_laurent(p: LaurentPoly, r: int) -> tuple[complex, bool]:
    """Value of p at A_r, computed after exact reduction modulo Phi_4r; flag is True if exactly 0."""
    if p.is_zero():
        return 0j, True
    low, dense = p.dense()
    red = _reduce_mod(dense, cyclotomic(4 * r))
    if not red:
        return 0j, True
    a = RootSpec(r).A
    acc = 0j
    for c in reversed(red):
        acc = acc * a + c
    return acc * a ** low, False


def evaluate_at_root(value: RatFn, r: int) -> complex:
    """Exact-then-float evaluation at A_r; raises PoleAtPoint when the denominator vanishes."""
    den, zero = _eval_laurent(value.den, r)
    if zero:
        raise PoleAtPoint(f"denominator vanishes at A_{r}")
    num, _ = _eval_laurent(value.num, r)
    return num / den


def omega_weights(spec: RootSpec) -> list[tuple[int, complex]]:
    return [(i, evaluate_at_root(RatFn.from_laurent(delta_laurent(i)), spec.r)) for i in range(spec.k + 1)]


@lru_cache(maxsize=None)
def _chebyshev(n: int) -> tuple[int, ...]:
    """S_n(z) with S_0 = 1, S_1 = z, S_{n+1} = z S_n - S_{n-1}; low degree first."""
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    a, b = _chebyshev(n - 1), _chebyshev(n - 2)
    out = [0] + list(a)
    for i, c in enumerate(b):
        out[i] -= c
    return tuple(out)


def chebyshev_coefficients(weights: list[tuple[int, complex]]) -> list[complex]:
    """Rewrite sum_c w_c S_c(z) as sum_m W_m z^m."""
    top = max(c for c, _ in weights)
    out = [0j] * (top + 1)
    for c, w in weights:
        for m, a in enumerate(_chebyshev(c)):
            out[m] += w * a
    return out


def _graph_colors(d: Diagram) -> set[int]:
    return d.colors()


def wrt_ratio(
    d: Diagram,
    spec: RootSpec | int,
    method: str = "chebyshev",
    weight_scale: complex = 1.0,
    positive_belt: bool = True,
) -> complex:
    """Normalized surgery evaluation of a closed diagram at A_r.

    ``method="chebyshev"`` expands omega in powers of a 1-colored belt (stacked
    parallel belts); ``method="colored"`` uses literally colored belts.
    """
    if isinstance(spec, int):
        spec = RootSpec(spec)
    if not d.is_closed:
        raise NotClosed("wrt_ratio needs a closed diagram")
    over = [c for c in _graph_colors(d) if c > spec.k]
    if over:
        raise ColorOutOfRange(f"colors {sorted(over)} exceed r - 2 = {spec.k}")
    weights = [(c, w * weight_scale) for c, w in omega_weights(spec)]
    deltas = dict(omega_weights(spec))
    gates = d.disk_ids
    unlink = sum(w * deltas[c] for c, w in weights)
    denominator = unlink ** len(gates)
    if abs(denominator) < 1e-12:
        raise DenominatorZero(f"omega-cabled unknot vanishes at r = {spec.r}")
    if not gates:
        return evaluate_at_root(eval_s3(d), spec.r)

    if method == "chebyshev":
        coeffs = chebyshev_coefficients(weights)
        labels = [(m, w) for m, w in enumerate(coeffs) if abs(w) > 1e-15]

        def belts(m):
            return [1] * m
    elif method == "colored":
        labels = weights

        def belts(c):
            return [c]
    else:
        raise ValueError(f"unknown method {method!r}")

    numerator = 0j
    for combo in itertools.product(labels, repeat=len(gates)):
        weight = 1 + 0j
        assignment = {}
        for gate, (lab, w) in zip(gates, combo):
            weight *= w
            assignment[gate] = belts(lab)
        diag = replace_gates_with_belts(d, assignment, positive_belt)
        numerator += weight * evaluate_at_root(eval_s3(diag), spec.r)
    return numerator / denominator


# -- convergence report ------------------------------------------------------

@dataclass
class WrtRow:
    r: int
    status: str
    lhs: complex | None = None
    rhs: complex | None = None
    abs_err: float | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        out = {
            "r": self.r,
            "lhs": None if self.lhs is None else [self.lhs.real, self.lhs.imag],
            "rhs": None if self.rhs is None else [self.rhs.real, self.rhs.imag],
            "abs_err": self.abs_err,
            "status": self.status,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class ConvergenceReport:
    rows: list[WrtRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.status != "fail" for row in self.rows)

    @property
    def threshold(self) -> int | None:
        """Smallest r from which every checked r in range passes (skips ignored)."""
        best = None
        for row in reversed(self.rows):
            if row.status == "fail":
                break
            if row.status == "pass":
                best = row.r
        return best

    def skipped(self) -> list[WrtRow]:
        return [row for row in self.rows if row.status == "skip"]

    def to_json(self) -> list[dict]:
        return [row.to_json() for row in self.rows]


def convergence_check(d: Diagram, r_lo: int, r_hi: int, tol: float = 1e-9, method: str = "chebyshev") -> ConvergenceReport:
    if r_lo < 3:
        raise ValueError("r_lo must be at least 3")
    value = bracket(d)
    report = ConvergenceReport()
    for r in range(r_lo, r_hi + 1):
        try:
            lhs = evaluate_at_root(value, r)
        except PoleAtPoint as exc:
            report.rows.append(WrtRow(r, "skip", reason=f"PoleAtPoint: {exc}"))
            continue
        try:
            rhs = wrt_ratio(d, r, method=method)
        except (DenominatorZero, ColorOutOfRange, PoleAtPoint) as exc:
            report.rows.append(WrtRow(r, "skip", lhs=lhs, reason=f"{type(exc).__name__}: {exc}"))
            continue
        err = abs(lhs - rhs)
        report.rows.append(WrtRow(r, "pass" if err < tol else "fail", lhs, rhs, err))
    return report
