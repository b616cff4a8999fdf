# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; identical semantics, typed loops.

Coordinates stay Python integers (coefficients routinely exceed 64 bits), so
the gain comes from typed indexing and avoided iterator overhead.
"""


cpdef tuple reduce_poly(list c, tuple nz, Py_ssize_t phi):
    cdef Py_ssize_t i, j, base, n = len(c), nnz = len(nz)
    cdef object top
    for i in range(n - 1, phi - 1, -1):
        top = c[i]
        if top:
            base = i - phi
            for j in range(nnz):
                c[base + <Py_ssize_t>nz[j][0]] -= top * nz[j][1]
    return tuple(c[:phi])


cpdef tuple mulmod(tuple a, tuple b, tuple nz, Py_ssize_t phi):
    cdef Py_ssize_t s, t
    cdef object x, y
    cdef list c
    if phi == 1:
        return (a[0] * b[0],)
    c = [0] * (2 * phi - 1)
    for s in range(phi):
        x = a[s]
        if x:
            for t in range(phi):
                y = b[t]
                if y:
                    c[s + t] += x * y
    return reduce_poly(c, nz, phi)


cdef list _support(tuple vec):
    cdef Py_ssize_t s
    cdef list out = []
    for s in range(len(vec)):
        if vec[s]:
            out.append((s, vec[s]))
    return out


def convolve(list ak, list av, list bk, list bv, tuple nz, Py_ssize_t phi, kcap):
    cdef dict acc = {}
    cdef Py_ssize_t i, j, p, r, na = len(ak), nb = len(bk), width, ns, nt
    cdef Py_ssize_t ka, kb, k, lim, s_idx, t_idx
    cdef object y
    cdef bint capped = kcap is not None
    cdef object x
    cdef list c, asup, bs, keys, vecs
    cdef list bsparse
    cdef tuple v
    cdef Py_ssize_t cap = kcap if capped else 0

    if phi == 1:
        for i in range(na):
            ka = ak[i]
            x = av[i][0]
            lim = cap - ka
            for j in range(nb):
                kb = bk[j]
                if capped and kb >= lim:
                    break
                k = ka + kb
                acc[k] = acc.get(k, 0) + x * bv[j][0]
        keys = sorted([k2 for k2, v2 in acc.items() if v2])
        return keys, [(acc[k2],) for k2 in keys]

    width = 2 * phi - 1
    bsparse = [_support(vec) for vec in bv]
    for i in range(na):
        ka = ak[i]
        asup = _support(av[i])
        ns = len(asup)
        lim = cap - ka
        for j in range(nb):
            kb = bk[j]
            if capped and kb >= lim:
                break
            k = ka + kb
            c = acc.get(k)
            if c is None:
                c = [0] * width
                acc[k] = c
            bs = bsparse[j]
            nt = len(bs)
            for p in range(ns):
                s_idx, x = asup[p]
                for r in range(nt):
                    t_idx, y = bs[r]
                    c[s_idx + t_idx] += x * y
    keys = []
    vecs = []
    for k2 in sorted(acc):
        v = reduce_poly(acc[k2], nz, phi)
        if any(v):
            keys.append(k2)
            vecs.append(v)
    return keys, vecs


def inverse_unit(list tk, list tv, tuple nz, Py_ssize_t phi, Py_ssize_t kcap):
    cdef tuple one = (1,) + (0,) * (phi - 1)
    cdef dict out = {0: one}
    cdef Py_ssize_t width = 2 * phi - 1, n, i, p, t, nt = len(tk), ki, ns
    cdef list c, tsparse = [_support(vec) for vec in tv], sup
    cdef bint hit
    cdef object prev, x, y
    cdef Py_ssize_t s_idx
    cdef tuple v
    for n in range(1, kcap):
        c = [0] * width
        hit = False
        for i in range(nt):
            ki = tk[i]
            if ki > n:
                break
            prev = out.get(n - ki)
            if prev is None:
                continue
            hit = True
            sup = tsparse[i]
            ns = len(sup)
            for p in range(ns):
                s_idx, x = sup[p]
                for t in range(phi):
                    y = prev[t]
                    if y:
                        c[s_idx + t] -= x * y
        if hit:
            v = reduce_poly(c, nz, phi)
            if any(v):
                out[n] = v
    keys = sorted([k for k in out if k < kcap])
    return keys, [out[k] for k in keys]
