"""Pure-Python hot kernels: crossingless matchings and the transfer-matrix sweep.

This module is the reference implementation; ``_kernels.pyx`` is a typed
Cython twin with the same functions and semantics.  Polynomials here are plain
``dict`` objects mapping exponent -> nonzero int coefficient.

Matching encodings
------------------
* A *diagram matching* with ``nb`` bottom and ``nt`` top points is a tuple of
  length ``nb + nt``; bottom points are numbered left to right, then top
  points right to left.  Entry ``i`` holds the partner of point ``i``.
* A *state* is a matching of the ``w`` strands crossing a horizontal cut of a
  closed-below diagram: a tuple of length ``w`` pairing the strands through
  the part of the diagram already swept.
"""

BACKEND = "python"

CUP = 0
CAP = 1
CROSS = 2
PROJ = 3


def compose_matchings(lower, upper, nb, mid, nt):
    """Stack ``upper`` (mid -> nt) on ``lower`` (nb -> mid); return (matching, loops)."""
    res = [-1] * (nb + nt)
    seen = [False] * mid
    top_l = nb + mid - 1
    for start in range(nb + nt):
        if res[start] != -1:
            continue
        if start < nb:
            on_lower = True
            v = start
        else:
            on_lower = False
            v = mid + (start - nb)
        while True:
            if on_lower:
                w = lower[v]
                if w < nb:
                    end = w
                    break
                j = top_l - w
                seen[j] = True
                on_lower = False
                v = j
            else:
                w = upper[v]
                if w >= mid:
                    end = nb + (w - mid)
                    break
                seen[w] = True
                on_lower = True
                v = top_l - w
        res[start] = end
        res[end] = start
    loops = 0
    for j in range(mid):
        if seen[j]:
            continue
        k = j
        while True:
            seen[k] = True
            k2 = upper[k]
            seen[k2] = True
            k = top_l - lower[top_l - k2]
            if k == j:
                break
        loops += 1
    return tuple(res), loops


def state_cup(m, p):
    w = len(m)
    res = [0] * (w + 2)
    for i in range(w):
        t = m[i]
        res[i if i < p else i + 2] = t if t < p else t + 2
    res[p] = p + 1
    res[p + 1] = p
    return tuple(res)


def state_cap(m, p):
    """Join strands p, p+1 of state m; return (new_state, loops)."""
    a = m[p]
    if a == p + 1:
        loops = 1
        res = [0] * (len(m) - 2)
        for i in range(len(m)):
            if i == p or i == p + 1:
                continue
            t = m[i]
            res[i if i < p else i - 2] = t if t < p else t - 2
        return tuple(res), loops
    b = m[p + 1]
    res = [0] * (len(m) - 2)
    for i in range(len(m)):
        if i == p or i == p + 1:
            continue
        t = m[i]
        if i == a:
            t = b
        elif i == b:
            t = a
        res[i if i < p else i - 2] = t if t < p else t - 2
    return tuple(res), 0


def state_apply_tl(m, p, tlm, n):
    """Apply a TL_n matching ``tlm`` on strands p..p+n-1 of state m; return (state, loops)."""
    w = len(m)
    res = [-1] * w
    seen = [False] * n
    hi = p + n
    top = 2 * n - 1
    for start in range(w):
        if res[start] != -1:
            continue
        if p <= start < hi:
            b = tlm[top - (start - p)]
            in_t = True
        else:
            o = m[start]
            if o < p or o >= hi:
                res[start] = o
                res[o] = start
                continue
            b = o - p
            in_t = False
        # b is a bottom point of tlm (if in_t, b may be a top point instead)
        while True:
            if in_t:
                if b >= n:
                    end = p + (top - b)
                    break
                seen[b] = True
                o = m[p + b]
                if o < p or o >= hi:
                    end = o
                    break
                b = o - p
                in_t = False
            else:
                seen[b] = True
                b = tlm[b]
                in_t = True
        res[start] = end
        res[end] = start
    loops = 0
    for j in range(n):
        if seen[j]:
            continue
        k = j
        while True:
            seen[k] = True
            k2 = tlm[k]
            seen[k2] = True
            k = m[p + k2] - p
            if k == j:
                break
        loops += 1
    return tuple(res), loops


# -- polynomial helpers on dicts -------------------------------------------

def _add_into(target, key, poly):
    cur = target.get(key)
    if cur is None:
        target[key] = dict(poly)
        return
    for e, c in poly.items():
        c += cur.get(e, 0)
        if c:
            cur[e] = c
        else:
            del cur[e]
    if not cur:
        del target[key]


def _shift(poly, k):
    return {e + k: c for e, c in poly.items()}


def _mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _mul_d(poly, times):
    # d = -A^2 - A^-2
    for _ in range(times):
        out = {}
        for e, c in poly.items():
            out[e + 2] = out.get(e + 2, 0) - c
            out[e - 2] = out.get(e - 2, 0) - c
        poly = {e: c for e, c in out.items() if c}
    return poly


def transfer_sweep(ops):
    """Evaluate a closed elementary program; return its bracket numerator as a dict.

    ``ops`` entries: ``(CUP, p)``, ``(CAP, p)``, ``(CROSS, p, sign)`` with
    sign +1/-1, ``(PROJ, p, n, terms)`` where terms is a sequence of
    ``(tl_matching, poly_dict)``.
    """
    state = {(): {0: 1}}
    for op in ops:
        kind = op[0]
        p = op[1]
        if kind == CUP:
            state = {state_cup(m, p): c for m, c in state.items()}
        elif kind == CAP:
            new = {}
            for m, c in state.items():
                m2, loops = state_cap(m, p)
                _add_into(new, m2, _mul_d(c, loops) if loops else c)
            state = new
        elif kind == CROSS:
            s = op[2]
            new = {}
            for m, c in state.items():
                _add_into(new, m, _shift(c, s))
                m2, loops = state_cap(m, p)
                m2 = state_cup(m2, p)
                c2 = _shift(c, -s)
                _add_into(new, m2, _mul_d(c2, loops) if loops else c2)
            state = new
        elif kind == PROJ:
            n = op[2]
            terms = op[3]
            new = {}
            for m, c in state.items():
                for tlm, tc in terms:
                    m2, loops = state_apply_tl(m, p, tlm, n)
                    c2 = _mul(c, tc)
                    if loops:
                        c2 = _mul_d(c2, loops)
                    _add_into(new, m2, c2)
            state = new
        else:
            raise ValueError(f"unknown op kind {kind}")
    if set(state) - {()}:
        raise ValueError("program is not closed")
    return state.get((), {})
