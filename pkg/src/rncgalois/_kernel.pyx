# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels.

Exact mirror of ``_kernel_py``; see that module for the conventions
(packed elements, form/polynomial layouts, point order).  Both backends
must produce bit-identical results.
"""

from libc.stdlib cimport malloc, free


cdef class _Ctx:
    cdef long long p, k, q
    cdef bint prime
    cdef long long[::1] ex, lg, zc


cdef _Ctx _ctx(tuple ctx):
    cdef _Ctx c = _Ctx.__new__(_Ctx)
    c.p = ctx[0]
    c.k = ctx[1]
    c.q = ctx[2]
    c.prime = ctx[1] == 1
    if not c.prime:
        c.ex = ctx[3]
        c.lg = ctx[4]
        c.zc = ctx[5]
    return c


cdef inline long long c_add(_Ctx c, long long a, long long b):
    cdef long long s, la, t, z
    if c.prime:
        s = a + b
        if s >= c.p:
            s -= c.p
        return s
    if a == 0:
        return b
    if b == 0:
        return a
    la = c.lg[a]
    t = c.lg[b] - la
    if t < 0:
        t += c.q - 1
    z = c.zc[t]
    if z < 0:
        return 0
    t = la + z
    if t >= c.q - 1:
        t -= c.q - 1
    return c.ex[t]


cdef inline long long c_neg(_Ctx c, long long a):
    cdef long long t
    if c.prime:
        if a == 0:
            return 0
        return c.p - a
    if a == 0:
        return 0
    t = c.lg[a] + (c.q - 1) / 2
    if t >= c.q - 1:
        t -= c.q - 1
    return c.ex[t]


cdef inline long long c_sub(_Ctx c, long long a, long long b):
    cdef long long s
    if c.prime:
        s = a - b
        if s < 0:
            s += c.p
        return s
    return c_add(c, a, c_neg(c, b))


cdef inline long long c_mul(_Ctx c, long long a, long long b):
    cdef long long t
    if c.prime:
        return (a * b) % c.p
    if a == 0 or b == 0:
        return 0
    t = c.lg[a] + c.lg[b]
    if t >= c.q - 1:
        t -= c.q - 1
    return c.ex[t]


cdef inline long long c_powll(_Ctx c, long long a, long long e):
    cdef long long r = 1, b = a
    if c.prime:
        while e:
            if e & 1:
                r = (r * b) % c.p
            b = (b * b) % c.p
            e >>= 1
        return r
    if a == 0:
        return 1 if e == 0 else 0
    return c.ex[(c.lg[a] * (e % (c.q - 1))) % (c.q - 1)]


cdef inline long long c_inv(_Ctx c, long long a) except? -1:
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    if c.prime:
        return c_powll(c, a, c.p - 2)
    return c.ex[(c.q - 1 - c.lg[a]) % (c.q - 1)]


# ---------------------------------------------------------------------------
# scalar API


def f_add(ctx, a, b):
    return c_add(_ctx(ctx), a, b)


def f_neg(ctx, a):
    return c_neg(_ctx(ctx), a)


def f_sub(ctx, a, b):
    return c_sub(_ctx(ctx), a, b)


def f_mul(ctx, a, b):
    return c_mul(_ctx(ctx), a, b)


def f_inv(ctx, a):
    return c_inv(_ctx(ctx), a)


def f_pow(ctx, a, e):
    cdef _Ctx c = _ctx(ctx)
    if c.prime:
        return pow(a, e, ctx[0])
    if a == 0:
        return 1 if e == 0 else 0
    return c.ex[(c.lg[a] * (e % (c.q - 1))) % (c.q - 1)]


def inv_table(ctx):
    cdef _Ctx c = _ctx(ctx)
    cdef long long a
    tab = [0] * c.q
    if c.prime:
        if c.q > 1:
            tab[1] = 1
        for a in range(2, c.q):
            tab[a] = (c.p - (c.p / a) * <long long>tab[c.p % a]) % c.p
    else:
        for a in range(1, c.q):
            tab[a] = c.ex[(c.q - 1 - c.lg[a]) % (c.q - 1)]
    return tab


# ---------------------------------------------------------------------------
# helpers: list <-> C buffer


cdef long long* _to_buf(list A, Py_ssize_t* n) except NULL:
    cdef Py_ssize_t i, ln = len(A)
    cdef long long* buf = <long long*>malloc((ln if ln > 0 else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    for i in range(ln):
        buf[i] = A[i]
    n[0] = ln
    return buf


cdef list _to_list(long long* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    out = []
    for i in range(n):
        out.append(buf[i])
    return out


# ---------------------------------------------------------------------------
# binary forms


def form_mul(ctx, A, B):
    cdef _Ctx c = _ctx(ctx)
    cdef Py_ssize_t na, nb, i, j
    cdef long long* a = _to_buf(A, &na)
    cdef long long* b = _to_buf(B, &nb)
    cdef long long* out = <long long*>malloc((na + nb - 1) * sizeof(long long))
    if out == NULL:
        free(a); free(b)
        raise MemoryError()
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        if a[i] == 0:
            continue
        for j in range(nb):
            if b[j] != 0:
                out[i + j] = c_add(c, out[i + j], c_mul(c, a[i], b[j]))
    res = _to_list(out, na + nb - 1)
    free(a); free(b); free(out)
    return res


def form_eval(ctx, C, a, c):
    cdef _Ctx cx = _ctx(ctx)
    cdef Py_ssize_t n, i
    cdef long long* buf = _to_buf(C, &n)
    cdef long long av = a, cv = c, acc, pw
    acc = buf[0]
    pw = 1
    for i in range(1, n):
        acc = c_mul(cx, acc, av)
        pw = c_mul(cx, pw, cv)
        if buf[i] != 0:
            acc = c_add(cx, acc, c_mul(cx, buf[i], pw))
    free(buf)
    return acc


cdef long long* _subst(_Ctx c, long long* C, Py_ssize_t n,
                       long long m00, long long m01,
                       long long m10, long long m11) except NULL:
    """F(m00 x + m01 y, m10 x + m11 y); caller frees the result."""
    cdef Py_ssize_t d = n - 1, i, j
    cdef long long* res = <long long*>malloc(n * sizeof(long long))
    cdef long long* vp = <long long*>malloc(n * sizeof(long long))
    cdef long long* nxt = <long long*>malloc(n * sizeof(long long))
    cdef long long* nvp = <long long*>malloc(n * sizeof(long long))
    if res == NULL or vp == NULL or nxt == NULL or nvp == NULL:
        raise MemoryError()
    res[0] = C[0]
    vp[0] = 1
    cdef Py_ssize_t rlen = 1
    cdef long long ci
    for i in range(1, d + 1):
        for j in range(i + 1):
            nxt[j] = 0
            nvp[j] = 0
        for j in range(rlen):
            if res[j] != 0:
                nxt[j] = c_add(c, nxt[j], c_mul(c, res[j], m00))
                nxt[j + 1] = c_add(c, nxt[j + 1], c_mul(c, res[j], m01))
        for j in range(i):
            if vp[j] != 0:
                nvp[j] = c_add(c, nvp[j], c_mul(c, vp[j], m10))
                nvp[j + 1] = c_add(c, nvp[j + 1], c_mul(c, vp[j], m11))
        ci = C[i]
        for j in range(i + 1):
            vp[j] = nvp[j]
        if ci != 0:
            for j in range(i + 1):
                if vp[j] != 0:
                    nxt[j] = c_add(c, nxt[j], c_mul(c, ci, vp[j]))
        for j in range(i + 1):
            res[j] = nxt[j]
        rlen = i + 1
    free(vp); free(nxt); free(nvp)
    return res


def form_substitute(ctx, C, m00, m01, m10, m11):
    cdef _Ctx c = _ctx(ctx)
    cdef Py_ssize_t n
    cdef long long* buf = _to_buf(C, &n)
    cdef long long* res = _subst(c, buf, n, m00, m01, m10, m11)
    out = _to_list(res, n)
    free(buf); free(res)
    return out


cdef bint _identity_holds(_Ctx c, long long* P, long long* Q,
                          Py_ssize_t np_, Py_ssize_t nq,
                          long long m00, long long m01,
                          long long m10, long long m11) except? -1:
    cdef long long* Ps = _subst(c, P, np_, m00, m01, m10, m11)
    cdef long long* Qs = _subst(c, Q, nq, m00, m01, m10, m11)
    cdef Py_ssize_t prod_len = np_ + nq - 1, i, j
    cdef long long* L = <long long*>malloc(prod_len * sizeof(long long))
    cdef long long* R = <long long*>malloc(prod_len * sizeof(long long))
    if L == NULL or R == NULL:
        raise MemoryError()
    for i in range(prod_len):
        L[i] = 0
        R[i] = 0
    for i in range(np_):
        if Ps[i] != 0:
            for j in range(nq):
                if Q[j] != 0:
                    L[i + j] = c_add(c, L[i + j], c_mul(c, Ps[i], Q[j]))
    for i in range(nq):
        if Qs[i] != 0:
            for j in range(np_):
                if P[j] != 0:
                    R[i + j] = c_add(c, R[i + j], c_mul(c, Qs[i], P[j]))
    cdef bint ok = True
    for i in range(prod_len):
        if L[i] != R[i]:
            ok = False
            break
    free(Ps); free(Qs); free(L); free(R)
    return ok


def deck_identity_holds(ctx, P, Q, m00, m01, m10, m11):
    cdef _Ctx c = _ctx(ctx)
    cdef Py_ssize_t np_, nq
    cdef long long* pb = _to_buf(P, &np_)
    cdef long long* qb = _to_buf(Q, &nq)
    ok = _identity_holds(c, pb, qb, np_, nq, m00, m01, m10, m11)
    free(pb); free(qb)
    return bool(ok)


cdef long long _eval_affine(_Ctx c, long long* C, Py_ssize_t n, long long r):
    cdef long long acc = 0
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        acc = c_add(c, c_mul(c, acc, r), C[i])
    return acc


def roots_scan(ctx, C):
    cdef _Ctx c = _ctx(ctx)
    cdef Py_ssize_t n, i
    cdef long long* work = _to_buf(C, &n)
    cdef long long r, mult
    cdef long long* h
    out = []
    mult = 0
    while n > 1 and work[n - 1] == 0:
        n -= 1
        mult += 1
    if mult:
        out.append((0, 1, <object>mult))
    for r in range(c.q):
        if n == 1:
            break
        if _eval_affine(c, work, n, r) != 0:
            continue
        mult = 0
        while n > 1 and _eval_affine(c, work, n, r) == 0:
            # divide by (r x - y): backward recurrence
            h = <long long*>malloc((n - 1) * sizeof(long long))
            if h == NULL:
                free(work)
                raise MemoryError()
            h[n - 2] = c_neg(c, work[n - 1])
            for i in range(n - 2, 0, -1):
                h[i - 1] = c_sub(c, c_mul(c, r, h[i]), work[i])
            free(work)
            work = h
            n -= 1
            mult += 1
        out.append((1, <object>r, <object>mult))
    free(work)
    return out


# ---------------------------------------------------------------------------
# univariate polynomials (ascending Python lists, trimmed)


def pu_trim(A):
    while A and A[len(A) - 1] == 0:
        A.pop()
    return A


def pu_mul(ctx, A, B):
    if not A or not B:
        return []
    return pu_trim(form_mul(ctx, A, B))


def pu_divmod(ctx, A, B):
    cdef _Ctx c = _ctx(ctx)
    if not B:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(A)
    cdef Py_ssize_t db = len(B) - 1, i, j
    if len(r) - 1 < db:
        return [], pu_trim(r)
    quo = [0] * (len(r) - db)
    cdef long long binv = c_inv(c, B[db])
    cdef long long cc, fac
    for i in range(len(r) - 1, db - 1, -1):
        cc = r[i]
        if cc == 0:
            continue
        fac = c_mul(c, cc, binv)
        quo[i - db] = fac
        for j in range(db + 1):
            r[i - db + j] = c_sub(c, <long long>r[i - db + j], c_mul(c, fac, <long long>B[j]))
    return pu_trim(quo), pu_trim(r)


def pu_gcd(ctx, A, B):
    cdef _Ctx c = _ctx(ctx)
    a, b = list(A), list(B)
    while b:
        a, b = b, pu_divmod(ctx, a, b)[1]
    cdef long long ainv
    if a:
        ainv = c_inv(c, a[len(a) - 1])
        a = [c_mul(c, ainv, v) for v in a]
    return a


def pu_mulmod(ctx, A, B, M):
    return pu_divmod(ctx, pu_mul(ctx, A, B), M)[1]


def pu_powmod(ctx, A, e, M):
    result = pu_divmod(ctx, [1], M)[1]
    base = pu_divmod(ctx, list(A), M)[1]
    while e:
        if e & 1:
            result = pu_mulmod(ctx, result, base, M)
        base = pu_mulmod(ctx, base, base, M)
        e >>= 1
    return result


def pu_powmod_t(ctx, e, M):
    return pu_powmod(ctx, [0, 1], e, M)


def is_split(ctx, C):
    cdef _Ctx c = _ctx(ctx)
    ft = list(C)
    ft.reverse()
    while ft and ft[len(ft) - 1] == 0:
        ft.pop()
    if not ft:
        raise ValueError("zero form")
    cdef Py_ssize_t e = len(ft) - 1
    if e <= 1:
        return True
    h = pu_powmod_t(ctx, ctx[2], ft)
    while len(h) < 2:
        h.append(0)
    h[1] = c_sub(c, <long long>h[1], 1)
    h = pu_trim(h)
    z = pu_powmod(ctx, h, e, ft)
    return z == []


# ---------------------------------------------------------------------------
# linear algebra


def rref(ctx, rows):
    cdef _Ctx c = _ctx(ctx)
    mat = [list(row_) for row_ in rows]
    if not mat:
        return mat, []
    cdef Py_ssize_t nrows = len(mat), ncols = len(mat[0])
    cdef Py_ssize_t col, r, rank = 0, sel, j
    cdef long long inv, fac
    pivots = []
    for col in range(ncols):
        sel = -1
        for r in range(rank, nrows):
            if mat[r][col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = c_inv(c, mat[rank][col])
        mat[rank] = [c_mul(c, inv, v) for v in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col] != 0:
                fac = mat[r][col]
                rowr = mat[r]
                rowp = mat[rank]
                for j in range(ncols):
                    rowr[j] = c_sub(c, <long long>rowr[j], c_mul(c, fac, <long long>rowp[j]))
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return mat, pivots


def nullspace(ctx, rows):
    cdef _Ctx c = _ctx(ctx)
    if not rows:
        return []
    cdef Py_ssize_t ncols = len(rows[0])
    mat, pivots = rref(ctx, rows)
    pivset = set(pivots)
    basis = []
    cdef Py_ssize_t free_col, r
    for free_col in range(ncols):
        if free_col in pivset:
            continue
        vec = [0] * ncols
        vec[free_col] = 1
        for r in range(len(pivots)):
            vec[pivots[r]] = c_neg(c, mat[r][free_col])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# deck searches


def std_matrix(ctx, p0, p1, p2):
    cdef _Ctx c = _ctx(ctx)
    cdef long long lam = c_sub(c, c_mul(c, p2[0], p1[1]), c_mul(c, p2[1], p1[0]))
    cdef long long mu = c_sub(c, c_mul(c, p0[0], p2[1]), c_mul(c, p0[1], p2[0]))
    return (
        c_mul(c, lam, p0[0]),
        c_mul(c, mu, p1[0]),
        c_mul(c, lam, p0[1]),
        c_mul(c, mu, p1[1]),
    )


cdef inline long long _pkey(_Ctx c, long long a, long long cc, long long* itab):
    if a == 0:
        return c.q
    if a == 1:
        return cc
    return c_mul(c, cc, itab[a])


def deck_search(ctx, P, Q, f0, f1, f2):
    cdef _Ctx c = _ctx(ctx)
    cdef Py_ssize_t np_, nq, i
    cdef long long* pb = _to_buf(P, &np_)
    cdef long long* qb = _to_buf(Q, &nq)
    cdef long long q = c.q
    # inverse table
    cdef long long* itab = <long long*>malloc(q * sizeof(long long))
    if itab == NULL:
        free(pb); free(qb)
        raise MemoryError()
    itab[0] = 0
    if c.prime:
        if q > 1:
            itab[1] = 1
        for i in range(2, q):
            itab[i] = (c.p - (c.p / i) * itab[c.p % i]) % c.p
    else:
        for i in range(1, q):
            itab[i] = c.ex[(c.q - 1 - c.lg[i]) % (c.q - 1)]
    cdef Py_ssize_t n0 = len(f0), n1 = len(f1), n2 = len(f2)
    cdef long long* a0 = <long long*>malloc(2 * n0 * sizeof(long long))
    cdef long long* a1 = <long long*>malloc(2 * n1 * sizeof(long long))
    cdef long long* a2 = <long long*>malloc(2 * n2 * sizeof(long long))
    cdef unsigned char* mem0 = <unsigned char*>malloc(q + 1)
    cdef unsigned char* mem1 = <unsigned char*>malloc(q + 1)
    if a0 == NULL or a1 == NULL or a2 == NULL or mem0 == NULL or mem1 == NULL:
        raise MemoryError()
    for i in range(q + 1):
        mem0[i] = 0
        mem1[i] = 0
    for i in range(n0):
        a0[2 * i] = f0[i][0]
        a0[2 * i + 1] = f0[i][1]
        mem0[_pkey(c, a0[2 * i], a0[2 * i + 1], itab)] = 1
    for i in range(n1):
        a1[2 * i] = f1[i][0]
        a1[2 * i + 1] = f1[i][1]
        mem1[_pkey(c, a1[2 * i], a1[2 * i + 1], itab)] = 1
    for i in range(n2):
        a2[2 * i] = f2[i][0]
        a2[2 * i + 1] = f2[i][1]
    cdef long long r0a = a0[0], r0c = a0[1]
    cdef long long r1a = a1[0], r1c = a1[1]
    cdef long long r2a = a2[0], r2c = a2[1]
    # source matrix and its adjugate
    cdef long long slam = c_sub(c, c_mul(c, r2a, r1c), c_mul(c, r2c, r1a))
    cdef long long smu = c_sub(c, c_mul(c, r0a, r2c), c_mul(c, r0c, r2a))
    cdef long long s00 = c_mul(c, slam, r0a), s01 = c_mul(c, smu, r1a)
    cdef long long s10 = c_mul(c, slam, r0c), s11 = c_mul(c, smu, r1c)
    cdef long long i00 = s11, i01 = c_neg(c, s01), i10 = c_neg(c, s10), i11 = s00
    # prune points
    cdef bint use_p3 = n0 > 1, use_p4 = n1 > 1
    cdef long long p3a = 0, p3c = 0, p4a = 0, p4c = 0
    if use_p3:
        p3a = a0[2]; p3c = a0[3]
    if use_p4:
        p4a = a1[2]; p4c = a1[3]
    out = []
    cdef Py_ssize_t i0, i1, i2
    cdef long long s0a, s0c, s1a, s1c, s2a, s2c
    cdef long long lam, mu, d00, d01, d10, d11
    cdef long long m00, m01, m10, m11, ia, ic, inv0
    for i0 in range(n0):
        s0a = a0[2 * i0]; s0c = a0[2 * i0 + 1]
        for i1 in range(n1):
            s1a = a1[2 * i1]; s1c = a1[2 * i1 + 1]
            for i2 in range(n2):
                s2a = a2[2 * i2]; s2c = a2[2 * i2 + 1]
                lam = c_sub(c, c_mul(c, s2a, s1c), c_mul(c, s2c, s1a))
                mu = c_sub(c, c_mul(c, s0a, s2c), c_mul(c, s0c, s2a))
                d00 = c_mul(c, lam, s0a); d01 = c_mul(c, mu, s1a)
                d10 = c_mul(c, lam, s0c); d11 = c_mul(c, mu, s1c)
                m00 = c_add(c, c_mul(c, d00, i00), c_mul(c, d01, i10))
                m01 = c_add(c, c_mul(c, d00, i01), c_mul(c, d01, i11))
                m10 = c_add(c, c_mul(c, d10, i00), c_mul(c, d11, i10))
                m11 = c_add(c, c_mul(c, d10, i01), c_mul(c, d11, i11))
                if use_p3:
                    ia = c_add(c, c_mul(c, m00, p3a), c_mul(c, m01, p3c))
                    ic = c_add(c, c_mul(c, m10, p3a), c_mul(c, m11, p3c))
                    if not mem0[_pkey(c, ia, ic, itab)]:
                        continue
                if use_p4:
                    ia = c_add(c, c_mul(c, m00, p4a), c_mul(c, m01, p4c))
                    ic = c_add(c, c_mul(c, m10, p4a), c_mul(c, m11, p4c))
                    if not mem1[_pkey(c, ia, ic, itab)]:
                        continue
                if not _identity_holds(c, pb, qb, np_, nq, m00, m01, m10, m11):
                    continue
                # canonical scaling
                if m00 != 0:
                    inv0 = c_inv(c, m00)
                elif m01 != 0:
                    inv0 = c_inv(c, m01)
                elif m10 != 0:
                    inv0 = c_inv(c, m10)
                else:
                    inv0 = c_inv(c, m11)
                out.append((
                    c_mul(c, inv0, m00), c_mul(c, inv0, m01),
                    c_mul(c, inv0, m10), c_mul(c, inv0, m11),
                ))
    free(pb); free(qb); free(itab)
    free(a0); free(a1); free(a2); free(mem0); free(mem1)
    return out


def pgl2_deck_scan(ctx, P, Q):
    cdef _Ctx c = _ctx(ctx)
    cdef Py_ssize_t np_, nq
    cdef long long* pb = _to_buf(P, &np_)
    cdef long long* qb = _to_buf(Q, &nq)
    cdef long long q = c.q
    cdef long long p0 = _eval_affine_pair(c, pb, np_, 1, 0)
    cdef long long q0 = _eval_affine_pair(c, qb, nq, 1, 0)
    out = []
    cdef long long b, cc, d, bc, ia, ic, lhs, rhs
    for cc in range(1, q):
        for d in range(q):
            _consider(c, pb, qb, np_, nq, 0, 1, cc, d, p0, q0, out)
    for b in range(q):
        for cc in range(q):
            bc = c_mul(c, b, cc)
            for d in range(q):
                if d == bc:
                    continue
                _consider(c, pb, qb, np_, nq, 1, b, cc, d, p0, q0, out)
    free(pb); free(qb)
    return out


cdef long long _eval_affine_pair(_Ctx c, long long* C, Py_ssize_t n,
                                 long long a, long long cc):
    cdef long long acc = C[0], pw = 1
    cdef Py_ssize_t i
    for i in range(1, n):
        acc = c_mul(c, acc, a)
        pw = c_mul(c, pw, cc)
        if C[i] != 0:
            acc = c_add(c, acc, c_mul(c, C[i], pw))
    return acc


cdef int _consider(_Ctx c, long long* pb, long long* qb,
                   Py_ssize_t np_, Py_ssize_t nq,
                   long long m00, long long m01, long long m10, long long m11,
                   long long p0, long long q0, list out) except -1:
    # x0 = (1, 0): image is the first matrix column
    cdef long long ia = m00, ic = m10
    cdef long long lhs = c_mul(c, _eval_affine_pair(c, pb, np_, ia, ic), q0)
    cdef long long rhs = c_mul(c, _eval_affine_pair(c, qb, nq, ia, ic), p0)
    if lhs != rhs:
        return 0
    if not _identity_holds(c, pb, qb, np_, nq, m00, m01, m10, m11):
        return 0
    out.append((m00, m01, m10, m11))
    return 0
