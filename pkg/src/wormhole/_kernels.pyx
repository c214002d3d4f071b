# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled twin of ``_kernels_py``: same functions, same encodings, same results.

Coefficients stay Python integers (they can grow beyond 64 bits); only the
index arithmetic on matchings is typed.
"""

BACKEND = "cython"

CUP = 0
CAP = 1
CROSS = 2
PROJ = 3


def compose_matchings(tuple lower, tuple upper, int nb, int mid, int nt):
    cdef int total = nb + nt
    cdef list res = [-1] * total
    cdef list seen = [False] * mid
    cdef int top_l = nb + mid - 1
    cdef int start, v, w, j, end, k, k2, loops
    cdef bint on_lower
    for start in range(total):
        if <int>res[start] != -1:
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
            k = top_l - <int>lower[top_l - k2]
            if k == j:
                break
        loops += 1
    return tuple(res), loops


def state_cup(tuple m, int p):
    cdef int w = len(m)
    cdef list res = [0] * (w + 2)
    cdef int i, t
    for i in range(w):
        t = m[i]
        res[i if i < p else i + 2] = t if t < p else t + 2
    res[p] = p + 1
    res[p + 1] = p
    return tuple(res)


def state_cap(tuple m, int p):
    cdef int w = len(m)
    cdef int a = m[p]
    cdef int b = m[p + 1]
    cdef list res = [0] * (w - 2)
    cdef int i, t
    if a == p + 1:
        for i in range(w):
            if i == p or i == p + 1:
                continue
            t = m[i]
            res[i if i < p else i - 2] = t if t < p else t - 2
        return tuple(res), 1
    for i in range(w):
        if i == p or i == p + 1:
            continue
        t = m[i]
        if i == a:
            t = b
        elif i == b:
            t = a
        res[i if i < p else i - 2] = t if t < p else t - 2
    return tuple(res), 0


def state_apply_tl(tuple m, int p, tuple tlm, int n):
    cdef int w = len(m)
    cdef list res = [-1] * w
    cdef list seen = [False] * n
    cdef int hi = p + n
    cdef int top = 2 * n - 1
    cdef int start, b, o, end, j, k, k2, loops
    cdef bint in_t
    for start in range(w):
        if <int>res[start] != -1:
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
            k = <int>m[p + k2] - p
            if k == j:
                break
        loops += 1
    return tuple(res), loops


cdef void _add_into(dict target, tuple key, dict poly):
    cdef dict cur = target.get(key)
    if cur is None:
        target[key] = dict(poly)
        return
    for e, c in poly.items():
        c = c + cur.get(e, 0)
        if c:
            cur[e] = c
        else:
            del cur[e]
    if not cur:
        del target[key]


cdef dict _shift(dict poly, long k):
    return {e + k: c for e, c in poly.items()}


cdef dict _mul(dict p, dict q):
    cdef dict out = {}
    cdef long e
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


cdef dict _mul_d(dict poly, int times):
    cdef dict out
    cdef int t
    for t in range(times):
        out = {}
        for e, c in poly.items():
            out[e + 2] = out.get(e + 2, 0) - c
            out[e - 2] = out.get(e - 2, 0) - c
        poly = {e: c for e, c in out.items() if c}
    return poly


def transfer_sweep(ops):
    cdef dict state = {(): {0: 1}}
    cdef dict new, c, c2
    cdef tuple m, m2, tlm
    cdef int kind, p, s, loops, n
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
