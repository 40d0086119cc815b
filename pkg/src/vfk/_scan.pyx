# cython: boundscheck=False, wraparound=False
"""Compiled scan kernel; _scan_py holds the reference semantics."""
from array import array


def kernel_kind():
    return "compiled"


cdef int _max_push(int[:] po):
    cdef int best = 1, j, seg
    for j in range(po.shape[0] - 1):
        seg = po[j + 1] - po[j]
        if seg > best:
            best = seg
    return best


def scan(push_off, push_flat, next_rep, partner, codes):
    cdef int[:] po = push_off
    cdef int[:] pf = push_flat
    cdef int[:] nr = next_rep
    cdef int[:] pt = partner
    cdef int m = pt.shape[0]
    cdef int rep = 0
    cdef int c, k, i, d
    cdef int nl = 0
    buf_a = array("i", bytes(4 * (4 * len(codes) * _max_push(po) + 8)))
    cdef int[:] buf = buf_a
    for obj in codes:
        c = obj
        k = rep * m + c
        for i in range(po[k], po[k + 1]):
            d = pf[i]
            if nl > 0 and buf[nl - 1] == pt[d]:
                nl -= 1
            else:
                buf[nl] = d
                nl += 1
        rep = nr[k]
    return [buf[i] for i in range(nl)], rep


def agree_words(push_off, push_flat, next_rep, partner, m_, depth_, o_next, o_acc):
    cdef int[:] po = push_off
    cdef int[:] pf = push_flat
    cdef int[:] nr = next_rep
    cdef int[:] pt = partner
    cdef int[:] on = o_next
    cdef int[:] oa = o_acc
    cdef int m = m_
    cdef int depth = depth_
    # the empty word: the scan accepts, so the oracle must as well
    if oa[0] == 0:
        return []
    if depth <= 0:
        return None
    cdef int smax = depth * _max_push(po) + 4
    stk_a = array("i", bytes(4 * (depth + 1) * smax))
    lens_a = array("i", bytes(4 * (depth + 1)))
    reps_a = array("i", bytes(4 * (depth + 1)))
    osts_a = array("i", bytes(4 * (depth + 1)))
    idx_a = array("i", bytes(4 * (depth + 1)))
    word_a = array("i", bytes(4 * (depth + 1)))
    cdef int[:] stk = stk_a
    cdef int[:] lens = lens_a
    cdef int[:] reps = reps_a
    cdef int[:] osts = osts_a
    cdef int[:] idx = idx_a
    cdef int[:] word = word_a
    cdef int level = 0, c, k, i, d, L, nl, rep, ost, base, nbase, acc
    lens[0] = 0
    reps[0] = 0
    osts[0] = 0
    idx[0] = 0
    while level >= 0:
        c = idx[level]
        if c == m:
            level -= 1
            continue
        idx[level] = c + 1
        k = reps[level] * m + c
        L = lens[level]
        base = level * smax
        nbase = (level + 1) * smax
        for i in range(L):
            stk[nbase + i] = stk[base + i]
        nl = L
        for i in range(po[k], po[k + 1]):
            d = pf[i]
            if nl > 0 and stk[nbase + nl - 1] == pt[d]:
                nl -= 1
            else:
                stk[nbase + nl] = d
                nl += 1
        rep = nr[k]
        ost = on[osts[level] * m + c]
        word[level] = c
        acc = 1 if (nl == 0 and rep == 0) else 0
        if acc != oa[ost]:
            return [word[i] for i in range(level + 1)]
        if level + 1 < depth:
            level += 1
            lens[level] = nl
            reps[level] = rep
            osts[level] = ost
            idx[level] = 0
    return None


def ball(push_off, push_flat, next_rep, partner, m_, radius_, cap_):
    cdef int[:] po = push_off
    cdef int[:] pf = push_flat
    cdef int[:] nr = next_rep
    cdef int[:] pt = partner
    cdef int m = m_
    cdef int radius = radius_
    cdef long cap = cap_
    cdef int smax = radius * _max_push(po) + 8
    buf_a = bytearray(smax)
    cdef unsigned char[:] buf = buf_a
    cdef int r, c, k, i, d, rep, nl, L, u
    cdef bytes stk, key_s
    states = [(b"", 0)]
    dist = [0]
    index = {(b"", 0): 0}
    frontier = [0]
    for r in range(1, radius + 1):
        nxt = []
        for u in frontier:
            stk, rep = states[u]
            L = len(stk)
            for c in range(m):
                k = rep * m + c
                for i in range(L):
                    buf[i] = stk[i]
                nl = L
                for i in range(po[k], po[k + 1]):
                    d = pf[i]
                    if nl > 0 and buf[nl - 1] == <unsigned char> pt[d]:
                        nl -= 1
                    else:
                        buf[nl] = <unsigned char> d
                        nl += 1
                key = (bytes(buf_a[:nl]), nr[k])
                if key not in index:
                    if len(states) >= cap:
                        return None
                    index[key] = len(states)
                    states.append(key)
                    dist.append(r)
                    nxt.append(index[key])
        frontier = nxt
    edges = []
    for u in range(len(states)):
        stk, rep = states[u]
        L = len(stk)
        for c in range(m):
            k = rep * m + c
            for i in range(L):
                buf[i] = stk[i]
            nl = L
            for i in range(po[k], po[k + 1]):
                d = pf[i]
                if nl > 0 and buf[nl - 1] == <unsigned char> pt[d]:
                    nl -= 1
                else:
                    buf[nl] = <unsigned char> d
                    nl += 1
            v = index.get((bytes(buf_a[:nl]), nr[k]))
            if v is not None:
                edges.append((u, c, v))
    return states, dist, edges
