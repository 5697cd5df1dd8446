"""Pure-Python graph kernels.

Mirror of ``_ckernels.pyx``; both expose the same three functions and are
interchangeable.  Graphs are passed as parallel integer lists: ``src``,
``tgt``, ``lab`` (generator index ``0..rank-1``) and ``volt`` (residue).
"""

from math import gcd

BACKEND = "python"


def _check(n_vertices, src, tgt, lab=None, rank=0):
    for e in range(len(src)):
        if not (0 <= src[e] < n_vertices and 0 <= tgt[e] < n_vertices) or (
            lab is not None and not 0 <= lab[e] < rank
        ):
            raise ValueError(f"edge {e} has a bad endpoint or label")


def fold(n_vertices, base, src, tgt, lab, volt, modulus, rank):
    """Stallings folding with residues in ``Z/modulus``.

    Folding two same-labelled edges at a vertex first regauges the class of
    the far endpoint so both edges carry equal residues; if the far endpoints
    already coincide the residue difference joins the defect subgroup.

    Returns ``(n, base, src, tgt, lab, volt, defect)`` where vertices are
    renumbered ``0..n-1`` and ``defect`` is the divisor ``d`` of ``modulus``
    generating the defect subgroup (``d == modulus`` means trivial).
    Residues in the output are reduced mod ``d``.
    """
    _check(n_vertices, src, tgt, lab, rank)
    n = modulus
    parent = list(range(n_vertices))
    pot = [0] * n_vertices
    ends = [[] for _ in range(n_vertices)]
    ne = len(src)
    for e in range(ne):
        ends[src[e]].append(2 * e)
        ends[tgt[e]].append(2 * e + 1)
    alive = [True] * ne
    d = n

    def find(v):
        path = []
        while parent[v] != v:
            path.append(v)
            v = parent[v]
        acc = 0
        for u in reversed(path):
            acc = (acc + pot[u]) % n
            pot[u] = acc
            parent[u] = v
        return v

    def canon(e):
        s = find(src[e])
        t = find(tgt[e])
        return s, t, (volt[e] + pot[tgt[e]] - pot[src[e]]) % n

    stack = list(range(n_vertices - 1, -1, -1))
    while stack:
        v = stack.pop()
        if parent[v] != v:
            continue
        seen = {}
        live = []
        conflict = None
        for end in ends[v]:
            e = end >> 1
            if not alive[e]:
                continue
            live.append(end)
            key = (lab[e], end & 1)
            f = seen.get(key)
            if f is None:
                seen[key] = e
            else:
                conflict = (f, e, end & 1)
                break
        if conflict is None:
            ends[v] = live
            continue
        f, e, incoming = conflict
        sf, tf, cf = canon(f)
        se, te, ce = canon(e)
        if incoming:
            a, b, shift = sf, se, (ce - cf) % n
        else:
            a, b, shift = tf, te, (cf - ce) % n
        alive[e] = False
        if a == b:
            d = gcd(d, (cf - ce) % n)
        else:
            if len(ends[a]) < len(ends[b]):
                a, b, shift = b, a, (-shift) % n
            parent[b] = a
            pot[b] = shift
            ends[a].extend(ends[b])
            ends[b] = []
            stack.append(a)
        stack.append(find(v))

    roots = {}
    for v in range(n_vertices):
        r = find(v)
        if r not in roots:
            roots[r] = len(roots)
    out_src, out_tgt, out_lab, out_volt = [], [], [], []
    for e in range(ne):
        if alive[e]:
            s, t, c = canon(e)
            out_src.append(roots[s])
            out_tgt.append(roots[t])
            out_lab.append(lab[e])
            out_volt.append(c % d)
    return len(roots), roots[find(base)], out_src, out_tgt, out_lab, out_volt, d


def prune(n_vertices, base, src, tgt):
    """Core a graph: drop the component missing ``base`` and hanging trees.

    Returns ``(vertex_keep, edge_keep)`` boolean lists.  The base vertex is
    always kept.
    """
    _check(n_vertices, src, tgt)
    ne = len(src)
    adj = [[] for _ in range(n_vertices)]
    for e in range(ne):
        adj[src[e]].append(e)
        adj[tgt[e]].append(e)
    # restrict to the base component
    vkeep = [False] * n_vertices
    vkeep[base] = True
    todo = [base]
    while todo:
        v = todo.pop()
        for e in adj[v]:
            w = tgt[e] if src[e] == v else src[e]
            if not vkeep[w]:
                vkeep[w] = True
                todo.append(w)
    ekeep = [vkeep[src[e]] for e in range(ne)]
    deg = [0] * n_vertices
    for e in range(ne):
        if ekeep[e]:
            deg[src[e]] += 1
            deg[tgt[e]] += 1
    todo = [v for v in range(n_vertices) if vkeep[v] and v != base and deg[v] <= 1]
    while todo:
        v = todo.pop()
        if not vkeep[v]:
            continue
        vkeep[v] = False
        for e in adj[v]:
            if ekeep[e]:
                ekeep[e] = False
                w = tgt[e] if src[e] == v else src[e]
                deg[v] -= 1
                deg[w] -= 1
                if w != base and vkeep[w] and deg[w] <= 1:
                    todo.append(w)
    return vkeep, ekeep


def _tables(n_vertices, src, tgt, lab, volt, rank):
    _check(n_vertices, src, tgt, lab, rank)
    out = [-1] * (n_vertices * rank)
    outv = [0] * (n_vertices * rank)
    inn = [-1] * (n_vertices * rank)
    innv = [0] * (n_vertices * rank)
    for e in range(len(src)):
        out[src[e] * rank + lab[e]] = tgt[e]
        outv[src[e] * rank + lab[e]] = volt[e]
        inn[tgt[e] * rank + lab[e]] = src[e]
        innv[tgt[e] * rank + lab[e]] = volt[e]
    return out, outv, inn, innv


def product(rank, a, b, modulus):
    """Based component of the product of two folded graphs.

    ``a`` and ``b`` are ``(n_vertices, base, src, tgt, lab, volt)``.  States
    are triples ``(u, v, delta)`` with ``delta`` the running difference of
    residues mod ``modulus``.  Returns ``(n_states, src, tgt, lab, volt)``
    with state 0 the base; product edges carry the residue of the ``a`` edge.
    """
    na, abase = a[0], a[1]
    nb, bbase = b[0], b[1]
    m = modulus
    aout, aoutv, ain, ainv = _tables(na, *a[2:], rank)
    bout, boutv, bin_, binv = _tables(nb, *b[2:], rank)
    ids = {}
    states = []

    def visit(u, v, delta):
        key = (u * nb + v) * m + delta
        sid = ids.get(key)
        if sid is None:
            sid = ids[key] = len(states)
            states.append((u, v, delta))
        return sid

    visit(abase, bbase, 0)
    src, tgt, lab, volt = [], [], [], []
    i = 0
    while i < len(states):
        u, v, delta = states[i]
        for g in range(rank):
            ua, vb = aout[u * rank + g], bout[v * rank + g]
            if ua >= 0 and vb >= 0:
                ca = aoutv[u * rank + g]
                j = visit(ua, vb, (delta + ca - boutv[v * rank + g]) % m)
                src.append(i)
                tgt.append(j)
                lab.append(g)
                volt.append(ca)
            ua, vb = ain[u * rank + g], bin_[v * rank + g]
            if ua >= 0 and vb >= 0:
                visit(ua, vb, (delta - ainv[u * rank + g] + binv[v * rank + g]) % m)
        i += 1
    return len(states), src, tgt, lab, volt
