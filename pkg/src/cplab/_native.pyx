# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels on 64-bit rows.

Same algorithms and visiting order as ``_purepy``; orders are capped at 64
and sweeps at 11 vertices (an edge mask must fit one word).
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

cdef enum:
    MAXV = 64
    SWEEP_CAP = 11


cdef struct Prep:
    int k
    int order[MAXV]
    int pdeg[MAXV]
    int nback[MAXV]
    int back[MAXV][MAXV]
    int nfwd[MAXV]
    int fwd[MAXV][MAXV]


cdef struct State:
    const uint64_t* host
    int n
    uint64_t degok[MAXV]
    int mp[MAXV]
    uint64_t used
    bint twins
    uint64_t vcm[MAXV]


cdef inline uint64_t bit(int i) nogil:
    return (<uint64_t>1) << i


cdef void prep_init(Prep* P, const uint64_t* prow, int k, order) except *:
    cdef int i, v, w
    cdef int pos[MAXV]
    P.k = k
    for i in range(k):
        v = order[i]
        P.order[i] = v
        pos[v] = i
    for v in range(k):
        P.pdeg[v] = popcount64(prow[v])
        P.nback[v] = 0
        P.nfwd[v] = 0
        for w in range(k):
            if prow[v] >> w & 1:
                if pos[w] < pos[v]:
                    P.back[v][P.nback[v]] = w
                    P.nback[v] += 1
                else:
                    P.fwd[v][P.nfwd[v]] = w
                    P.nfwd[v] += 1


cdef bint forward_ok(const Prep* P, State* S, int v) noexcept nogil:
    cdef int i, j, q, hw
    cdef uint64_t c
    for i in range(P.nfwd[v]):
        q = P.fwd[v][i]
        c = S.degok[q] & ~S.used
        for j in range(P.nback[q]):
            hw = S.mp[P.back[q][j]]
            if hw >= 0:
                c &= S.host[hw]
        if c == 0:
            return 0
    return 1


cdef bint rec_embed(const Prep* P, State* S, int d) noexcept nogil:
    cdef int v, j, h
    cdef uint64_t c, low
    if d == P.k:
        return 1
    v = P.order[d]
    c = S.degok[v] & ~S.used
    for j in range(P.nback[v]):
        c &= S.host[S.mp[P.back[v][j]]]
    while c:
        low = c & (~c + 1)
        c ^= low
        h = ctz64(low)
        if S.twins and (S.vcm[h] & ~S.used & (low - 1)):
            continue
        S.mp[v] = h
        S.used |= low
        if forward_ok(P, S, v) and rec_embed(P, S, d + 1):
            return 1
        S.mp[v] = -1
        S.used ^= low
    return 0


cdef bint search(const Prep* P, State* S, const uint64_t* host, int n,
                 const int* fixed, int nfixed) noexcept nogil:
    """Run one embedding search; S.twins / S.vcm must be set by the caller."""
    cdef int i, j, v, h
    cdef int hdeg[MAXV]
    cdef uint64_t m
    if P.k > n:
        return 0
    S.host = host
    S.n = n
    S.used = 0
    for h in range(n):
        hdeg[h] = popcount64(host[h])
    for v in range(P.k):
        m = 0
        for h in range(n):
            if hdeg[h] >= P.pdeg[v]:
                m |= bit(h)
        S.degok[v] = m
        S.mp[v] = -1
    for i in range(nfixed):
        v = P.order[i]
        h = fixed[i]
        if not (S.degok[v] >> h & 1) or (S.used >> h & 1):
            return 0
        for j in range(P.nback[v]):
            if not (host[S.mp[P.back[v][j]]] >> h & 1):
                return 0
        S.mp[v] = h
        S.used |= bit(h)
    for i in range(nfixed):
        if not forward_ok(P, S, P.order[i]):
            return 0
    return rec_embed(P, S, nfixed)


cdef int load_rows(rows, uint64_t* out, int cap) except -1:
    cdef int n = len(rows)
    cdef int i
    if n > cap:
        raise ValueError(f"order {n} exceeds native cap {cap}")
    for i in range(n):
        out[i] = <uint64_t>rows[i]
    return n


cdef void load_classes(State* S, classes, int n) except *:
    cdef int h, g
    S.twins = 0
    if classes is None:
        return
    S.twins = 1
    cls = list(classes)
    for h in range(n):
        S.vcm[h] = 0
        for g in range(n):
            if cls[g] == cls[h]:
                S.vcm[h] |= bit(g)


cdef Prep* make_preps(const uint64_t* prow, int k, edge_orders) except NULL:
    cdef int m = len(edge_orders)
    cdef Prep* preps = <Prep*>malloc(sizeof(Prep) * (m if m > 0 else 1))
    cdef int i
    if preps == NULL:
        raise MemoryError()
    for i in range(m):
        prep_init(&preps[i], prow, k, edge_orders[i])
    return preps


def embed(host, pattern, order, classes, fixed):
    cdef uint64_t hrow[MAXV]
    cdef uint64_t prow[MAXV]
    cdef int fx[MAXV]
    cdef int n = load_rows(host, hrow, MAXV)
    cdef int k = load_rows(pattern, prow, MAXV)
    cdef int i, nf = len(fixed)
    cdef bint ok
    cdef Prep* P = <Prep*>malloc(sizeof(Prep))
    cdef State* S = <State*>malloc(sizeof(State))
    if P == NULL or S == NULL:
        free(P)
        free(S)
        raise MemoryError()
    try:
        prep_init(P, prow, k, order)
        for i in range(nf):
            fx[i] = fixed[i]
        load_classes(S, classes, n)
        with nogil:
            ok = search(P, S, hrow, n, fx, nf)
        if not ok:
            return None
        return [S.mp[i] for i in range(k)]
    finally:
        free(P)
        free(S)


def embed_through(host, pattern, edge_orders, classes, int x, int y):
    cdef uint64_t hrow[MAXV]
    cdef uint64_t prow[MAXV]
    cdef int fx[2]
    cdef int n = load_rows(host, hrow, MAXV)
    cdef int k = load_rows(pattern, prow, MAXV)
    cdef int i, m = len(edge_orders)
    cdef bint ok = 0
    cdef Prep* preps = make_preps(prow, k, edge_orders)
    cdef State* S = <State*>malloc(sizeof(State))
    if S == NULL:
        free(preps)
        raise MemoryError()
    fx[0] = x
    fx[1] = y
    try:
        load_classes(S, classes, n)
        with nogil:
            for i in range(m):
                if search(&preps[i], S, hrow, n, fx, 2):
                    ok = 1
                    break
        if not ok:
            return None
        return [S.mp[i] for i in range(k)]
    finally:
        free(preps)
        free(S)


# ------------------------------------------------------------- colouring

cdef struct Colour:
    int n
    int k
    uint64_t rows[MAXV]
    int deg[MAXV]
    int color[MAXV]
    uint64_t cls[MAXV]


cdef int pick(Colour* C, int ncol) noexcept nogil:
    cdef int v, c, sat, best = -1, bs = -1, bd = -1
    cdef uint64_t r
    for v in range(C.n):
        if C.color[v] >= 0:
            continue
        r = C.rows[v]
        sat = 0
        for c in range(ncol):
            if C.cls[c] & r:
                sat += 1
        if sat > bs or (sat == bs and C.deg[v] > bd):
            best = v
            bs = sat
            bd = C.deg[v]
    return best


cdef bint rec_colour(Colour* C, int done, int ncol) noexcept nogil:
    cdef int v, c, top
    cdef uint64_t r
    if done == C.n:
        return 1
    v = pick(C, ncol)
    r = C.rows[v]
    top = ncol + 1 if ncol < C.k else C.k
    for c in range(top):
        if C.cls[c] & r:
            continue
        C.color[v] = c
        C.cls[c] |= bit(v)
        if rec_colour(C, done + 1, ncol + 1 if c == ncol else ncol):
            return 1
        C.cls[c] ^= bit(v)
        C.color[v] = -1
    return 0


def k_coloring(rows, int k):
    cdef int n = len(rows)
    cdef int v
    cdef bint ok
    if n == 0:
        return []
    if k <= 0:
        return None
    cdef Colour* C = <Colour*>malloc(sizeof(Colour))
    if C == NULL:
        raise MemoryError()
    try:
        load_rows(rows, C.rows, MAXV)
        C.n = n
        C.k = k if k < MAXV else MAXV
        for v in range(n):
            C.deg[v] = popcount64(C.rows[v])
            C.color[v] = -1
            C.cls[v] = 0
        with nogil:
            ok = rec_colour(C, 0, 0)
        if not ok:
            return None
        return [C.color[v] for v in range(n)]
    finally:
        free(C)


# ------------------------------------------------------------- sweeps

cdef struct Sweep:
    int n
    int total
    int su[64]
    int sv[64]
    uint64_t rows[SWEEP_CAP]
    Prep* preps
    int npreps
    bint big
    State S
    int best
    int npending
    int pending[64]


cdef bint creates(Sweep* W, int u, int v) noexcept nogil:
    cdef int i
    cdef int fx[2]
    if W.big:
        return 0
    fx[0] = u
    fx[1] = v
    for i in range(W.npreps):
        if search(&W.preps[i], &W.S, W.rows, W.n, fx, 2):
            return 1
    return 0


cdef inline void set_edge(Sweep* W, int u, int v) noexcept nogil:
    W.rows[u] |= bit(v)
    W.rows[v] |= bit(u)


cdef inline void clear_edge(Sweep* W, int u, int v) noexcept nogil:
    W.rows[u] &= ~bit(v)
    W.rows[v] &= ~bit(u)


cdef int sweep_init(Sweep* W, int n, pattern, edge_orders) except -1:
    cdef uint64_t prow[MAXV]
    cdef int i, j, s = 0
    if n > SWEEP_CAP:
        raise ValueError(f"sweep order {n} exceeds native cap {SWEEP_CAP}")
    cdef int k = load_rows(pattern, prow, MAXV)
    W.n = n
    for j in range(1, n):
        for i in range(j):
            W.su[s] = i
            W.sv[s] = j
            s += 1
    W.total = s
    for i in range(n):
        W.rows[i] = 0
    W.big = k > n
    W.npreps = len(edge_orders)
    W.preps = make_preps(prow, k, edge_orders)
    W.S.twins = 0
    W.npending = 0
    return 0


cdef int rec_max(Sweep* W, int s, int edges, uint64_t mask, list found) except -1:
    cdef int u, v
    if edges + (W.total - s) < W.best:
        return 0
    if s == W.total:
        if edges > W.best:
            W.best = edges
            del found[:]
        found.append(mask)
        return 0
    u = W.su[s]
    v = W.sv[s]
    set_edge(W, u, v)
    if not creates(W, u, v):
        rec_max(W, s + 1, edges + 1, mask | bit(s), found)
    clear_edge(W, u, v)
    rec_max(W, s + 1, edges, mask, found)
    return 0


def sweep_max(int n, pattern, edge_orders, int lower=0):
    cdef Sweep* W = <Sweep*>malloc(sizeof(Sweep))
    if W == NULL:
        raise MemoryError()
    W.preps = NULL
    found = []
    try:
        sweep_init(W, n, pattern, edge_orders)
        W.best = lower
        rec_max(W, 0, 0, 0, found)
        return W.best, found
    finally:
        free(W.preps)
        free(W)


cdef int rec_maximal(Sweep* W, int s, uint64_t mask, list found) except -1:
    cdef int u, v, q, i
    cdef bint blocked
    if s == W.total:
        for i in range(W.npending):
            q = W.pending[i]
            u = W.su[q]
            v = W.sv[q]
            set_edge(W, u, v)
            blocked = creates(W, u, v)
            clear_edge(W, u, v)
            if not blocked:
                return 0
        found.append(mask)
        return 0
    u = W.su[s]
    v = W.sv[s]
    set_edge(W, u, v)
    if creates(W, u, v):
        clear_edge(W, u, v)
        rec_maximal(W, s + 1, mask, found)
        return 0
    rec_maximal(W, s + 1, mask | bit(s), found)
    clear_edge(W, u, v)
    W.pending[W.npending] = s
    W.npending += 1
    rec_maximal(W, s + 1, mask, found)
    W.npending -= 1
    return 0


def sweep_maximal(int n, pattern, edge_orders):
    cdef Sweep* W = <Sweep*>malloc(sizeof(Sweep))
    if W == NULL:
        raise MemoryError()
    W.preps = NULL
    found = []
    try:
        sweep_init(W, n, pattern, edge_orders)
        rec_maximal(W, 0, 0, found)
        return found
    finally:
        free(W.preps)
        free(W)
