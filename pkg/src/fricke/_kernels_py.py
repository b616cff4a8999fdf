"""Pure-Python exact convolution kernels.

Coefficients are integer coordinate vectors (tuples of ``int``) on the power
basis of a cyclotomic field, reduced modulo a monic integer polynomial
``x**phi + sum(p_j x**j)``.  ``nz`` lists the nonzero ``(j, p_j)`` pairs of the
low part.  Exponent keys are integer numerators over a shared denominator and
must be sorted ascending.  The compiled module ``_kernels_c`` exposes the same
functions with the same semantics.
"""


def reduce_poly(c, nz, phi):
    """Reduce the dense integer list ``c`` in place; return the low ``phi`` coords."""
    for i in range(len(c) - 1, phi - 1, -1):
        top = c[i]
        if top:
            base = i - phi
            for j, p in nz:
                c[base + j] -= top * p
    return tuple(c[:phi])


def mulmod(a, b, nz, phi):
    if phi == 1:
        return (a[0] * b[0],)
    c = [0] * (2 * phi - 1)
    for s, x in enumerate(a):
        if x:
            for t, y in enumerate(b):
                if y:
                    c[s + t] += x * y
    return reduce_poly(c, nz, phi)


def convolve(ak, av, bk, bv, nz, phi, kcap):
    """Sparse product of two series, dropping exponents ``>= kcap``."""
    acc = {}
    nb = len(bk)
    if phi == 1:
        for i in range(len(ak)):
            ka = ak[i]
            x = av[i][0]
            lim = None if kcap is None else kcap - ka
            for j in range(nb):
                kb = bk[j]
                if lim is not None and kb >= lim:
                    break
                k = ka + kb
                acc[k] = acc.get(k, 0) + x * bv[j][0]
        keys = sorted(k for k, v in acc.items() if v)
        return keys, [(acc[k],) for k in keys]

    width = 2 * phi - 1
    # Drop zero coordinates once so the inner loops only touch support.
    bsparse = [[(t, y) for t, y in enumerate(vec) if y] for vec in bv]
    for i in range(len(ak)):
        ka = ak[i]
        asup = [(s, x) for s, x in enumerate(av[i]) if x]
        lim = None if kcap is None else kcap - ka
        for j in range(nb):
            kb = bk[j]
            if lim is not None and kb >= lim:
                break
            k = ka + kb
            c = acc.get(k)
            if c is None:
                c = acc[k] = [0] * width
            bs = bsparse[j]
            for s, x in asup:
                for t, y in bs:
                    c[s + t] += x * y
    keys = []
    vecs = []
    for k in sorted(acc):
        v = reduce_poly(acc[k], nz, phi)
        if any(v):
            keys.append(k)
            vecs.append(v)
    return keys, vecs


def inverse_unit(tk, tv, nz, phi, kcap):
    """Coefficients of ``1/(1 + t)`` below ``kcap``; ``t`` has positive keys."""
    one = (1,) + (0,) * (phi - 1)
    out = {0: one}
    width = 2 * phi - 1
    tsparse = [[(s, x) for s, x in enumerate(vec) if x] for vec in tv]
    nt = len(tk)
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
            for s, x in tsparse[i]:
                for t, y in enumerate(prev):
                    if y:
                        c[s + t] -= x * y
        if hit:
            v = reduce_poly(c, nz, phi)
            if any(v):
                out[n] = v
    keys = sorted(k for k in out if k < kcap)
    return keys, [out[k] for k in keys]
