"""Pure-Python arithmetic kernels.

Mirror of the compiled extension ``_kernel.pyx``; selected by
``rncgalois._backend`` when the compiled module is unavailable or when
``RNCGALOIS_BACKEND=pure`` is set.  Both backends must produce
bit-identical results.

Shared conventions:

* ``ctx`` is the tuple ``(p, k, q, exp, log, zech)`` from
  ``FieldHandle.kernel_ctx()``.  Field elements are packed integers in
  ``[0, q)``: the value ``sum(c_i p**i)`` of the coefficient vector.
  For ``k == 1`` the three tables are ``None``; for ``k > 1`` they are
  discrete-log tables over the canonical generator (the handle enforces
  ``q <= 2**20`` before building them).
* A binary form of degree d is a list of d+1 packed coefficients
  ``[c_0, ..., c_d]`` representing ``sum c_i x^(d-i) y^i``.
* A univariate polynomial is an ascending coefficient list with no
  trailing zeros; ``[]`` is the zero polynomial.
* Points of P^1 are packed pairs ``(a, c)`` normalized so the first
  nonzero coordinate is 1; the canonical scan order is ``(0, 1)`` then
  ``(1, t)`` for ``t = 0, 1, ...``.
"""


# ---------------------------------------------------------------------------
# scalar field operations


def f_add(ctx, a, b):
    p, k, q, ex, lg, zc = ctx
    if k == 1:
        return (a + b) % p
    if a == 0:
        return b
    if b == 0:
        return a
    la = lg[a]
    s = zc[(lg[b] - la) % (q - 1)]
    if s < 0:
        return 0
    return ex[(la + s) % (q - 1)]


def f_neg(ctx, a):
    p, k, q, ex, lg, zc = ctx
    if k == 1:
        return (-a) % p
    if a == 0:
        return 0
    return ex[(lg[a] + (q - 1) // 2) % (q - 1)]


def f_sub(ctx, a, b):
    return f_add(ctx, a, f_neg(ctx, b))


def f_mul(ctx, a, b):
    p, k, q, ex, lg, zc = ctx
    if k == 1:
        return (a * b) % p
    if a == 0 or b == 0:
        return 0
    return ex[(lg[a] + lg[b]) % (q - 1)]


def f_inv(ctx, a):
    p, k, q, ex, lg, zc = ctx
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    if k == 1:
        return pow(a, p - 2, p)
    return ex[(q - 1 - lg[a]) % (q - 1)]


def f_pow(ctx, a, e):
    p, k, q, ex, lg, zc = ctx
    if k == 1:
        return pow(a, e, p)
    if a == 0:
        if e == 0:
            return 1
        return 0
    return ex[(lg[a] * e) % (q - 1)]


def inv_table(ctx):
    """Table t with t[a] = a^-1 for a in [1, q); t[0] = 0."""
    p, k, q, ex, lg, zc = ctx
    tab = [0] * q
    if k == 1:
        tab[1] = 1
        for a in range(2, q):
            tab[a] = (p - (p // a) * tab[p % a]) % p
    else:
        for a in range(1, q):
            tab[a] = ex[(q - 1 - lg[a]) % (q - 1)]
    return tab


# ---------------------------------------------------------------------------
# binary forms (fixed-length coefficient vectors)


def form_mul(ctx, A, B):
    out = [0] * (len(A) + len(B) - 1)
    for i, ai in enumerate(A):
        if ai == 0:
            continue
        for j, bj in enumerate(B):
            if bj == 0:
                continue
            out[i + j] = f_add(ctx, out[i + j], f_mul(ctx, ai, bj))
    return out


def form_eval(ctx, C, a, c):
    acc = C[0]
    pw = 1
    for i in range(1, len(C)):
        acc = f_mul(ctx, acc, a)
        pw = f_mul(ctx, pw, c)
        if C[i]:
            acc = f_add(ctx, acc, f_mul(ctx, C[i], pw))
    return acc


def form_substitute(ctx, C, m00, m01, m10, m11):
    """Coefficients of F(m00 x + m01 y, m10 x + m11 y)."""
    d = len(C) - 1
    res = [C[0]]
    vp = [1]
    u = (m00, m01)
    v = (m10, m11)
    for i in range(1, d + 1):
        nxt = [0] * (i + 1)
        for j, rj in enumerate(res):
            if rj == 0:
                continue
            nxt[j] = f_add(ctx, nxt[j], f_mul(ctx, rj, u[0]))
            nxt[j + 1] = f_add(ctx, nxt[j + 1], f_mul(ctx, rj, u[1]))
        nvp = [0] * (i + 1)
        for j, pj in enumerate(vp):
            if pj == 0:
                continue
            nvp[j] = f_add(ctx, nvp[j], f_mul(ctx, pj, v[0]))
            nvp[j + 1] = f_add(ctx, nvp[j + 1], f_mul(ctx, pj, v[1]))
        vp = nvp
        ci = C[i]
        if ci:
            for j, pj in enumerate(vp):
                if pj:
                    nxt[j] = f_add(ctx, nxt[j], f_mul(ctx, ci, pj))
        res = nxt
    return res


def deck_identity_holds(ctx, P, Q, m00, m01, m10, m11):
    """Exact check of (P o sigma) * Q == (Q o sigma) * P."""
    Ps = form_substitute(ctx, P, m00, m01, m10, m11)
    Qs = form_substitute(ctx, Q, m00, m01, m10, m11)
    return form_mul(ctx, Ps, Q) == form_mul(ctx, Qs, P)


def _divide_linear(ctx, C, r):
    """Quotient of the form by (r*x - y); caller guarantees divisibility."""
    d = len(C) - 1
    h = [0] * d
    h[d - 1] = f_neg(ctx, C[d])
    for i in range(d - 1, 0, -1):
        h[i - 1] = f_sub(ctx, f_mul(ctx, r, h[i]), C[i])
    return h


def _eval_affine(ctx, C, r):
    """Value of sum C_i t^i at t = r (the form at the point (1, r))."""
    acc = 0
    for c in reversed(C):
        acc = f_add(ctx, f_mul(ctx, acc, r), c)
    return acc


def roots_scan(ctx, C):
    """All rational roots with multiplicities, in canonical point order.

    Returns a list of (a, c, mult) triples.  Cost O(q * d); the caller
    enforces q <= 2**20.
    """
    q = ctx[2]
    work = list(C)
    out = []
    mult = 0
    while len(work) > 1 and work[-1] == 0:
        work.pop()  # divide by x; root at [0:1]
        mult += 1
    if mult:
        out.append((0, 1, mult))
    for r in range(q):
        if len(work) == 1:
            break
        if _eval_affine(ctx, work, r) != 0:
            continue
        mult = 0
        while len(work) > 1 and _eval_affine(ctx, work, r) == 0:
            work = _divide_linear(ctx, work, r)
            mult += 1
        out.append((1, r, mult))
    return out


def is_split(ctx, C):
    """True iff the form is a product of linear factors over the field.

    Frobenius-based: with f the dehomogenization (reversed coefficients,
    roots at [1:0] drop the degree and are rational), the form splits
    iff f divides (t^q - t)^deg(f).
    """
    q = ctx[2]
    ft = list(reversed(C))
    while ft and ft[-1] == 0:
        ft.pop()
    if not ft:
        raise ValueError("zero form")
    e = len(ft) - 1
    if e <= 1:
        return True
    h = pu_powmod_t(ctx, q, ft)
    # h - t mod ft
    while len(h) < 2:
        h.append(0)
    h[1] = f_sub(ctx, h[1], 1)
    h = pu_trim(h)
    z = pu_powmod(ctx, h, e, ft)
    return z == []


# ---------------------------------------------------------------------------
# univariate polynomials (ascending, trimmed)


def pu_trim(A):
    while A and A[-1] == 0:
        A.pop()
    return A


def pu_mul(ctx, A, B):
    if not A or not B:
        return []
    out = [0] * (len(A) + len(B) - 1)
    for i, ai in enumerate(A):
        if ai == 0:
            continue
        for j, bj in enumerate(B):
            if bj == 0:
                continue
            out[i + j] = f_add(ctx, out[i + j], f_mul(ctx, ai, bj))
    return pu_trim(out)


def pu_divmod(ctx, A, B):
    if not B:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(A)
    db = len(B) - 1
    if len(r) - 1 < db:
        return [], pu_trim(r)
    quo = [0] * (len(r) - db)
    binv = f_inv(ctx, B[-1])
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        fac = f_mul(ctx, c, binv)
        quo[i - db] = fac
        for j in range(db + 1):
            r[i - db + j] = f_sub(ctx, r[i - db + j], f_mul(ctx, fac, B[j]))
    return pu_trim(quo), pu_trim(r)


def pu_gcd(ctx, A, B):
    a, b = list(A), list(B)
    while b:
        a, b = b, pu_divmod(ctx, a, b)[1]
    if a:
        ainv = f_inv(ctx, a[-1])
        a = [f_mul(ctx, c, ainv) for c in a]
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
    """t^e mod M."""
    return pu_powmod(ctx, [0, 1], e, M)


# ---------------------------------------------------------------------------
# linear algebra


def rref(ctx, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = -1
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = f_inv(ctx, mat[rank][col])
        mat[rank] = [f_mul(ctx, v, inv) for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                fac = mat[r][col]
                mat[r] = [
                    f_sub(ctx, mat[r][j], f_mul(ctx, fac, mat[rank][j]))
                    for j in range(ncols)
                ]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat, pivots


def nullspace(ctx, rows):
    """Canonical kernel basis: one vector per free column, ascending."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat, pivots = rref(ctx, rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = f_neg(ctx, mat[r][free])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# deck-transformation searches


def _point_key(ctx, a, c, itab):
    q = ctx[2]
    if a == 0:
        return q
    if a == 1:
        return c
    return f_mul(ctx, c, itab[a])


def std_matrix(ctx, p0, p1, p2):
    """Matrix sending [1:0], [0:1], [1:1] to the three points (projective)."""
    lam = f_sub(ctx, f_mul(ctx, p2[0], p1[1]), f_mul(ctx, p2[1], p1[0]))
    mu = f_sub(ctx, f_mul(ctx, p0[0], p2[1]), f_mul(ctx, p0[1], p2[0]))
    return (
        f_mul(ctx, lam, p0[0]),
        f_mul(ctx, mu, p1[0]),
        f_mul(ctx, lam, p0[1]),
        f_mul(ctx, mu, p1[1]),
    )


def _canon_matrix(ctx, m):
    for v in m:
        if v != 0:
            inv = f_inv(ctx, v)
            return tuple(f_mul(ctx, x, inv) for x in m)
    raise ValueError("zero matrix")


def deck_search(ctx, P, Q, f0, f1, f2):
    """Enumerate Moebius maps sending the reference triple into the fibers.

    The fibers are lists of simple points; candidates are pruned through
    up to two extra fiber points before the exact zero-form identity is
    checked.  Returns canonically scaled survivor matrices in triple
    order.
    """
    q = ctx[2]
    itab = inv_table(ctx)
    r0, r1, r2 = f0[0], f1[0], f2[0]
    src = std_matrix(ctx, r0, r1, r2)
    # projective inverse (adjugate)
    inv = (src[3], f_neg(ctx, src[1]), f_neg(ctx, src[2]), src[0])
    prunes = []
    if len(f0) > 1:
        keys = set(_point_key(ctx, a, c, itab) for a, c in f0)
        prunes.append((f0[1], keys))
    if len(f1) > 1:
        keys = set(_point_key(ctx, a, c, itab) for a, c in f1)
        prunes.append((f1[1], keys))
    out = []
    for s0 in f0:
        for s1 in f1:
            for s2 in f2:
                lam = f_sub(
                    ctx, f_mul(ctx, s2[0], s1[1]), f_mul(ctx, s2[1], s1[0])
                )
                mu = f_sub(
                    ctx, f_mul(ctx, s0[0], s2[1]), f_mul(ctx, s0[1], s2[0])
                )
                d00 = f_mul(ctx, lam, s0[0])
                d01 = f_mul(ctx, mu, s1[0])
                d10 = f_mul(ctx, lam, s0[1])
                d11 = f_mul(ctx, mu, s1[1])
                m00 = f_add(ctx, f_mul(ctx, d00, inv[0]), f_mul(ctx, d01, inv[2]))
                m01 = f_add(ctx, f_mul(ctx, d00, inv[1]), f_mul(ctx, d01, inv[3]))
                m10 = f_add(ctx, f_mul(ctx, d10, inv[0]), f_mul(ctx, d11, inv[2]))
                m11 = f_add(ctx, f_mul(ctx, d10, inv[1]), f_mul(ctx, d11, inv[3]))
                ok = True
                for (pa, pc), keys in prunes:
                    ia = f_add(ctx, f_mul(ctx, m00, pa), f_mul(ctx, m01, pc))
                    ic = f_add(ctx, f_mul(ctx, m10, pa), f_mul(ctx, m11, pc))
                    if _point_key(ctx, ia, ic, itab) not in keys:
                        ok = False
                        break
                if not ok:
                    continue
                if deck_identity_holds(ctx, P, Q, m00, m01, m10, m11):
                    out.append(_canon_matrix(ctx, (m00, m01, m10, m11)))
    return out


def pgl2_deck_scan(ctx, P, Q):
    """Brute-force deck transformations over all of PGL2(F_q).

    Canonical enumeration order: matrices scaled so the first nonzero
    entry is 1, ordered by the packed entry tuple.
    """
    q = ctx[2]
    x0 = (1, 0)
    p0 = form_eval(ctx, P, x0[0], x0[1])
    q0 = form_eval(ctx, Q, x0[0], x0[1])
    out = []

    def consider(m00, m01, m10, m11):
        ia = f_add(ctx, f_mul(ctx, m00, x0[0]), f_mul(ctx, m01, x0[1]))
        ic = f_add(ctx, f_mul(ctx, m10, x0[0]), f_mul(ctx, m11, x0[1]))
        lhs = f_mul(ctx, form_eval(ctx, P, ia, ic), q0)
        rhs = f_mul(ctx, form_eval(ctx, Q, ia, ic), p0)
        if lhs != rhs:
            return
        if deck_identity_holds(ctx, P, Q, m00, m01, m10, m11):
            out.append((m00, m01, m10, m11))

    for c in range(1, q):
        for d in range(q):
            consider(0, 1, c, d)
    for b in range(q):
        for c in range(q):
            bc = f_mul(ctx, b, c)
            for d in range(q):
                if d == bc:
                    continue
                consider(1, b, c, d)
    return out
