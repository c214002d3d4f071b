"""Recoupling scalars: quantum dimensions, theta nets, fusion and twist coefficients.

Every closed form here has a diagrammatic oracle (``*_oracle`` functions) that
evaluates an explicit diagram with the engine; the test-suite pins the two
together.  Colors are unbounded nonnegative integers (generic ``A``).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InadmissibleTriple
from .qring import LaurentPoly, RatFn

__all__ = [
    "is_admissible",
    "quantum_integer",
    "quantum_delta",
    "delta_laurent",
    "theta_net",
    "fusion_coefficients",
    "twist_coefficient",
    "quantum_delta_oracle",
    "theta_net_oracle",
    "twist_coefficient_oracle",
    "merge_element",
    "split_element",
    "fusion_identity_defect",
]


def is_admissible(a: int, b: int, c: int) -> bool:
    """Parity and triangle test for a trivalent vertex."""
    if min(a, b, c) < 0:
        return False
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentPoly:
    """[n] = (A^2n - A^-2n) / (A^2 - A^-2)."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly({2 * n - 2 - 4 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def delta_laurent(n: int) -> LaurentPoly:
    """Delta_n = (-1)^n [n+1], the value of an unknot colored n."""
    q = quantum_integer(n + 1)
    return -q if n % 2 else q


def quantum_delta(n: int) -> RatFn:
    if n < 0:
        raise ValueError("colors are nonnegative")
    return RatFn.from_laurent(delta_laurent(n))


@lru_cache(maxsize=None)
def _qfact(n: int) -> LaurentPoly:
    out = LaurentPoly(1)
    for k in range(2, n + 1):
        out = out * quantum_integer(k)
    return out


@lru_cache(maxsize=None)
def _theta_cached(a: int, b: int, c: int) -> RatFn:
    m = (a + b - c) // 2
    n = (b + c - a) // 2
    p = (a + c - b) // 2
    num = _qfact(m + n + p + 1) * _qfact(m) * _qfact(n) * _qfact(p)
    den = _qfact(m + n) * _qfact(n + p) * _qfact(m + p)
    q = num.exact_div(den)
    value = RatFn.from_laurent(q) if q is not None else RatFn(num, den)
    return -value if (m + n + p) % 2 else value


def theta_net(a: int, b: int, c: int) -> RatFn:
    """Bracket of the theta graph with edges colored a, b, c."""
    if not is_admissible(a, b, c):
        raise InadmissibleTriple(f"({a}, {b}, {c}) is not admissible")
    key = tuple(sorted((a, b, c)))
    return _theta_cached(*key)


def fusion_coefficients(a: int, b: int) -> list[tuple[int, RatFn]]:
    """[(c, Delta_c / theta(a, b, c))] over all admissible c, increasing."""
    return [(c, quantum_delta(c) / theta_net(a, b, c)) for c in range(abs(a - b), a + b + 1, 2)]


def twist_coefficient(n: int) -> RatFn:
    """Factor contributed by one positive kink on an n-colored edge: (-1)^n A^(n(n+2))."""
    if n < 0:
        raise ValueError("colors are nonnegative")
    return RatFn.from_laurent(LaurentPoly.monomial(n * (n + 2), -1 if n % 2 else 1))


# -- oracles ---------------------------------------------------------------

def quantum_delta_oracle(n: int) -> RatFn:
    """Trace closure of the Jones-Wenzl projector f^(n)."""
    from .tl import closure_value, jones_wenzl

    return closure_value(jones_wenzl(n))


def theta_net_oracle(a: int, b: int, c: int, method: str = "transfer") -> RatFn:
    """Evaluate the explicit two-vertex theta diagram."""
    from .diagram import theta_diagram
    from .engine import eval_s3

    if not is_admissible(a, b, c):
        raise InadmissibleTriple(f"({a}, {b}, {c}) is not admissible")
    return eval_s3(theta_diagram(a, b, c), method)


def twist_coefficient_oracle(n: int, method: str = "transfer") -> RatFn:
    """Kinked n-colored unknot divided by Delta_n."""
    from .diagram import kinked_unknot
    from .engine import eval_s3

    if n == 0:
        return RatFn(1)
    return eval_s3(kinked_unknot(n, positive=True), method) / quantum_delta(n)


# -- vertices as Temperley-Lieb elements -------------------------------------

def _merge_pairing(a: int, b: int, c: int) -> tuple[int, ...]:
    j = (a + b - c) // 2
    n = a + b
    pairing = [0] * (n + c)
    capped = set()
    for t in range(j):
        lo, hi = a - 1 - t, a + t
        pairing[lo], pairing[hi] = hi, lo
        capped.update((lo, hi))
    pos = 0
    for i in range(n):
        if i in capped:
            continue
        top = n + (c - 1 - pos)
        pairing[i], pairing[top] = top, i
        pos += 1
    return tuple(pairing)


def merge_element(a: int, b: int, c: int):
    """The vertex (a, b) -> c as an element of TL from a+b points to c points."""
    from .tl import Matching, TLElement, compose, jones_wenzl, tensor

    if not is_admissible(a, b, c):
        raise InadmissibleTriple(f"({a}, {b}, {c}) is not admissible")
    m = TLElement.from_matching(Matching(a + b, c, _merge_pairing(a, b, c)))
    return compose(compose(tensor(jones_wenzl(a), jones_wenzl(b)), m), jones_wenzl(c))


def split_element(c: int, a: int, b: int):
    """The vertex c -> (a, b): the vertical reflection of :func:`merge_element`."""
    from .tl import Matching, TLElement, compose, jones_wenzl, tensor

    if not is_admissible(a, b, c):
        raise InadmissibleTriple(f"({a}, {b}, {c}) is not admissible")
    p = _merge_pairing(a, b, c)
    n, total = a + b, a + b + c
    # reflect top to bottom; both index sequences simply reverse
    def old_to_new(i):
        return total - 1 - i if i < n else c - 1 - (i - n)

    flipped = [0] * total
    for i in range(total):
        j = p[i]
        flipped[old_to_new(i)] = old_to_new(j)
    m = TLElement.from_matching(Matching(c, n, tuple(flipped)))
    return compose(compose(jones_wenzl(c), m), tensor(jones_wenzl(a), jones_wenzl(b)))


def fusion_identity_defect(a: int, b: int):
    """f^(a) (x) f^(b) minus its fusion expansion; the zero element when fusion holds."""
    from .tl import compose, jones_wenzl, tensor

    lhs = tensor(jones_wenzl(a), jones_wenzl(b))
    for c, coeff in fusion_coefficients(a, b):
        lhs = lhs - compose(merge_element(a, b, c), split_element(c, a, b)).scale(coeff)
    return lhs
