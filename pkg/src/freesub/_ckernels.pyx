# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels; same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef inline long pmod(long a, long n) nogil:
    cdef long r = a % n
    if r < 0:
        r += n
    return r


cdef long cgcd(long a, long b) nogil:
    cdef long t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef long find(long v, long* parent, long* pot, long n) nogil:
    cdef long r = v, total = 0, u, nxt, old
    while parent[r] != r:
        total += pot[r]
        r = parent[r]
    total = pmod(total, n)
    u = v
    while parent[u] != u:
        nxt = parent[u]
        old = pot[u]
        pot[u] = total
        parent[u] = r
        total = pmod(total - old, n)
        u = nxt
    return r


cdef long* _alloc(Py_ssize_t size, long fill) except NULL:
    cdef long* p = <long*> malloc((size if size > 0 else 1) * sizeof(long))
    cdef Py_ssize_t i
    if p == NULL:
        raise MemoryError()
    for i in range(size):
        p[i] = fill
    return p


def fold(long n_vertices, long base, src, tgt, lab, volt, long modulus, long rank):
    cdef long n = modulus
    cdef Py_ssize_t ne = len(src)
    cdef long* S = _alloc(ne, 0)
    cdef long* T = _alloc(ne, 0)
    cdef long* L = _alloc(ne, 0)
    cdef long* C = _alloc(ne, 0)
    cdef long* parent = _alloc(n_vertices, 0)
    cdef long* pot = _alloc(n_vertices, 0)
    cdef long* head = _alloc(n_vertices, -1)
    cdef long* count = _alloc(n_vertices, 0)
    cdef long* nxt = _alloc(2 * ne, -1)
    cdef char* alive = <char*> malloc(ne + 1)
    cdef long* stack = _alloc(n_vertices + 2 * ne + 2, 0)
    cdef long* seen = _alloc(2 * rank, -1)
    cdef long* touched = _alloc(2 * rank, 0)
    cdef long* buf = _alloc(2 * ne, 0)
    cdef long* roots = _alloc(n_vertices, -1)
    cdef long sp = 0, d = n, v, e, end, key, f, ntouched, nlive, conflict_f, conflict_e
    cdef long incoming, sf, tf, cf, se, te, ce, a, b, shift, tmp, start, i, r, nroots
    cdef Py_ssize_t k
    try:
        for k in range(ne):
            S[k] = src[k]
            T[k] = tgt[k]
            L[k] = lab[k]
            C[k] = pmod(volt[k], n)
            alive[k] = 1
            if not (0 <= S[k] < n_vertices and 0 <= T[k] < n_vertices and 0 <= L[k] < rank):
                raise ValueError(f"edge {k} has a bad endpoint or label")
        for v in range(n_vertices):
            parent[v] = v
        for end in range(2 * ne):
            v = S[end >> 1] if (end & 1) == 0 else T[end >> 1]
            if head[v] == -1:
                head[v] = end
                nxt[end] = end
            else:
                nxt[end] = nxt[head[v]]
                nxt[head[v]] = end
            count[v] += 1
        for v in range(n_vertices - 1, -1, -1):
            stack[sp] = v
            sp += 1
        while sp > 0:
            sp -= 1
            v = stack[sp]
            if parent[v] != v or head[v] == -1:
                continue
            ntouched = 0
            nlive = 0
            conflict_e = -1
            start = head[v]
            end = start
            while True:
                e = end >> 1
                if alive[e]:
                    buf[nlive] = end
                    nlive += 1
                    key = 2 * L[e] + (end & 1)
                    if seen[key] == -1:
                        seen[key] = e
                        touched[ntouched] = key
                        ntouched += 1
                    else:
                        conflict_f = seen[key]
                        conflict_e = e
                        incoming = end & 1
                        break
                end = nxt[end]
                if end == start:
                    break
            for i in range(ntouched):
                seen[touched[i]] = -1
            if conflict_e == -1:
                # relink the live ends only
                if nlive == 0:
                    head[v] = -1
                else:
                    for i in range(nlive - 1):
                        nxt[buf[i]] = buf[i + 1]
                    nxt[buf[nlive - 1]] = buf[0]
                    head[v] = buf[0]
                count[v] = nlive
                continue
            f = conflict_f
            e = conflict_e
            sf = find(S[f], parent, pot, n)
            tf = find(T[f], parent, pot, n)
            cf = pmod(C[f] + pot[T[f]] - pot[S[f]], n)
            se = find(S[e], parent, pot, n)
            te = find(T[e], parent, pot, n)
            ce = pmod(C[e] + pot[T[e]] - pot[S[e]], n)
            if incoming:
                a = sf
                b = se
                shift = pmod(ce - cf, n)
            else:
                a = tf
                b = te
                shift = pmod(cf - ce, n)
            alive[e] = 0
            if a == b:
                d = cgcd(d, pmod(cf - ce, n))
            else:
                if count[a] < count[b]:
                    tmp = a
                    a = b
                    b = tmp
                    shift = pmod(-shift, n)
                parent[b] = a
                pot[b] = shift
                if head[b] != -1:
                    if head[a] == -1:
                        head[a] = head[b]
                    else:
                        tmp = nxt[head[a]]
                        nxt[head[a]] = nxt[head[b]]
                        nxt[head[b]] = tmp
                head[b] = -1
                count[a] += count[b]
                stack[sp] = a
                sp += 1
            stack[sp] = find(v, parent, pot, n)
            sp += 1

        nroots = 0
        for v in range(n_vertices):
            r = find(v, parent, pot, n)
            if roots[r] == -1:
                roots[r] = nroots
                nroots += 1
        out_src, out_tgt, out_lab, out_volt = [], [], [], []
        for e in range(ne):
            if alive[e]:
                sf = find(S[e], parent, pot, n)
                tf = find(T[e], parent, pot, n)
                cf = pmod(C[e] + pot[T[e]] - pot[S[e]], n)
                out_src.append(roots[sf])
                out_tgt.append(roots[tf])
                out_lab.append(L[e])
                out_volt.append(cf % d)
        return (nroots, roots[find(base, parent, pot, n)],
                out_src, out_tgt, out_lab, out_volt, d)
    finally:
        free(S); free(T); free(L); free(C); free(parent); free(pot)
        free(head); free(count); free(nxt); free(alive); free(stack)
        free(seen); free(touched); free(buf); free(roots)


def prune(long n_vertices, long base, src, tgt):
    cdef Py_ssize_t ne = len(src)
    cdef long* S = _alloc(ne, 0)
    cdef long* T = _alloc(ne, 0)
    cdef long* deg = _alloc(n_vertices, 0)
    cdef long* first = _alloc(n_vertices + 1, 0)
    cdef long* inc = _alloc(2 * ne, 0)
    cdef long* fill = _alloc(n_vertices, 0)
    cdef long* todo = _alloc(n_vertices + 2 * ne + 1, 0)
    cdef char* vk = <char*> malloc(n_vertices + 1)
    cdef char* ek = <char*> malloc(ne + 1)
    cdef long sp = 0, v, w, e, j
    cdef Py_ssize_t k
    try:
        for k in range(ne):
            S[k] = src[k]
            T[k] = tgt[k]
            if not (0 <= S[k] < n_vertices and 0 <= T[k] < n_vertices):
                raise ValueError(f"edge {k} has a bad endpoint")
            first[S[k] + 1] += 1
            first[T[k] + 1] += 1
        for v in range(n_vertices):
            first[v + 1] += first[v]
            vk[v] = 0
        for k in range(ne):
            inc[first[S[k]] + fill[S[k]]] = k
            fill[S[k]] += 1
            inc[first[T[k]] + fill[T[k]]] = k
            fill[T[k]] += 1
        vk[base] = 1
        todo[sp] = base
        sp += 1
        while sp > 0:
            sp -= 1
            v = todo[sp]
            for j in range(first[v], first[v + 1]):
                e = inc[j]
                w = T[e] if S[e] == v else S[e]
                if not vk[w]:
                    vk[w] = 1
                    todo[sp] = w
                    sp += 1
        for k in range(ne):
            ek[k] = vk[S[k]]
            if ek[k]:
                deg[S[k]] += 1
                deg[T[k]] += 1
        for v in range(n_vertices):
            if vk[v] and v != base and deg[v] <= 1:
                todo[sp] = v
                sp += 1
        while sp > 0:
            sp -= 1
            v = todo[sp]
            if not vk[v]:
                continue
            vk[v] = 0
            for j in range(first[v], first[v + 1]):
                e = inc[j]
                if ek[e]:
                    ek[e] = 0
                    w = T[e] if S[e] == v else S[e]
                    deg[v] -= 1
                    deg[w] -= 1
                    if w != base and vk[w] and deg[w] <= 1:
                        todo[sp] = w
                        sp += 1
        return [bool(vk[v]) for v in range(n_vertices)], [bool(ek[k]) for k in range(ne)]
    finally:
        free(S); free(T); free(deg); free(first); free(inc); free(fill)
        free(todo); free(vk); free(ek)


cdef int _tables(long nv, src, tgt, lab, volt, long rank,
                  long* out, long* outv, long* inn, long* innv) except -1:
    cdef Py_ssize_t e
    cdef long s, t, g, c
    for e in range(nv * rank):
        out[e] = -1
        inn[e] = -1
        outv[e] = 0
        innv[e] = 0
    for e in range(len(src)):
        s = src[e]
        t = tgt[e]
        g = lab[e]
        c = volt[e]
        if not (0 <= s < nv and 0 <= t < nv and 0 <= g < rank):
            raise ValueError(f"edge {e} has a bad endpoint or label")
        out[s * rank + g] = t
        outv[s * rank + g] = c
        inn[t * rank + g] = s
        innv[t * rank + g] = c
    return 0


def product(long rank, a, b, long modulus):
    cdef long na = a[0], abase = a[1], nb = b[0], bbase = b[1], m = modulus
    cdef long total = na * nb * m
    cdef long* aout = _alloc(na * rank, -1)
    cdef long* aoutv = _alloc(na * rank, 0)
    cdef long* ain = _alloc(na * rank, -1)
    cdef long* ainv = _alloc(na * rank, 0)
    cdef long* bout = _alloc(nb * rank, -1)
    cdef long* boutv = _alloc(nb * rank, 0)
    cdef long* bin_ = _alloc(nb * rank, -1)
    cdef long* binv = _alloc(nb * rank, 0)
    cdef long* ids = _alloc(total, -1)
    cdef long* state = _alloc(total, 0)
    cdef long nstates = 0, i = 0, key, u, v, delta, g, ua, vb, ca, j, nkey
    src, tgt, lab, volt = [], [], [], []
    try:
        _tables(na, a[2], a[3], a[4], a[5], rank, aout, aoutv, ain, ainv)
        _tables(nb, b[2], b[3], b[4], b[5], rank, bout, boutv, bin_, binv)
        key = (abase * nb + bbase) * m
        ids[key] = 0
        state[0] = key
        nstates = 1
        while i < nstates:
            key = state[i]
            delta = key % m
            v = (key // m) % nb
            u = key // (m * nb)
            for g in range(rank):
                ua = aout[u * rank + g]
                vb = bout[v * rank + g]
                if ua >= 0 and vb >= 0:
                    ca = aoutv[u * rank + g]
                    nkey = (ua * nb + vb) * m + pmod(delta + ca - boutv[v * rank + g], m)
                    j = ids[nkey]
                    if j == -1:
                        j = nstates
                        ids[nkey] = j
                        state[nstates] = nkey
                        nstates += 1
                    src.append(i)
                    tgt.append(j)
                    lab.append(g)
                    volt.append(ca)
                ua = ain[u * rank + g]
                vb = bin_[v * rank + g]
                if ua >= 0 and vb >= 0:
                    nkey = (ua * nb + vb) * m + pmod(
                        delta - ainv[u * rank + g] + binv[v * rank + g], m)
                    if ids[nkey] == -1:
                        ids[nkey] = nstates
                        state[nstates] = nkey
                        nstates += 1
            i += 1
        return nstates, src, tgt, lab, volt
    finally:
        free(aout); free(aoutv); free(ain); free(ainv)
        free(bout); free(boutv); free(bin_); free(binv)
        free(ids); free(state)
