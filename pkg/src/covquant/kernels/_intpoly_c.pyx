# cython: language_level=3, boundscheck=False
"""Compiled twin of _intpoly_py: same LP representation, same contract.

Coefficients stay Python ints (arbitrary precision is required); the
speedup comes from typed loops and reduced call overhead.
"""

from math import gcd

LP_ZERO = (0, ())


cpdef lp_trim(Py_ssize_t offset, coeffs):
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return LP_ZERO
    return (offset + lo, tuple(coeffs[lo:hi]))


cpdef lp_const(c):
    if c == 0:
        return LP_ZERO
    return (0, (c,))


cpdef lp_monomial(c, e):
    if c == 0:
        return LP_ZERO
    return (e, (c,))


cpdef bint lp_is_zero(a):
    return not a[1]


cpdef lp_valuation(a):
    if not a[1]:
        return None
    return a[0]


cpdef lp_degree(a):
    if not a[1]:
        return None
    return a[0] + len(a[1]) - 1


cpdef lp_add(a, b):
    cdef Py_ssize_t t
    if not a[1]:
        return b
    if not b[1]:
        return a
    cdef Py_ssize_t ao = a[0]
    cdef Py_ssize_t bo = b[0]
    ca = a[1]
    cb = b[1]
    cdef Py_ssize_t off = ao if ao < bo else bo
    cdef Py_ssize_t hi_a = ao + len(ca)
    cdef Py_ssize_t hi_b = bo + len(cb)
    cdef Py_ssize_t hi = hi_a if hi_a > hi_b else hi_b
    out = [0] * (hi - off)
    for t in range(len(ca)):
        out[ao - off + t] = out[ao - off + t] + ca[t]
    for t in range(len(cb)):
        out[bo - off + t] = out[bo - off + t] + cb[t]
    return lp_trim(off, out)


cpdef lp_neg(a):
    cdef Py_ssize_t t
    ca = a[1]
    out = []
    for t in range(len(ca)):
        out.append(-ca[t])
    return (a[0], tuple(out))


cpdef lp_sub(a, b):
    return lp_add(a, lp_neg(b))


cpdef lp_mul(a, b):
    cdef Py_ssize_t s, t
    if not a[1] or not b[1]:
        return LP_ZERO
    ca = a[1]
    cb = b[1]
    out = [0] * (len(ca) + len(cb) - 1)
    for s in range(len(ca)):
        xa = ca[s]
        if xa:
            for t in range(len(cb)):
                out[s + t] = out[s + t] + xa * cb[t]
    return lp_trim(a[0] + b[0], out)


cpdef lp_scale(a, c):
    cdef Py_ssize_t t
    if c == 0 or not a[1]:
        return LP_ZERO
    ca = a[1]
    out = []
    for t in range(len(ca)):
        out.append(c * ca[t])
    return (a[0], tuple(out))


cpdef lp_shift(a, k):
    if not a[1]:
        return LP_ZERO
    return (a[0] + k, a[1])


cpdef lp_monomial_mul(a, c, e):
    cdef Py_ssize_t t
    if c == 0 or not a[1]:
        return LP_ZERO
    ca = a[1]
    out = []
    for t in range(len(ca)):
        out.append(c * ca[t])
    return (a[0] + e, tuple(out))


cpdef lp_divexact(a, b):
    cdef Py_ssize_t k, t, qlen
    if not b[1]:
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if not a[1]:
        return LP_ZERO
    num = list(a[1])
    den = b[1]
    qlen = len(num) - len(den) + 1
    if qlen <= 0:
        raise ValueError("inexact Laurent division")
    lead = den[-1]
    quot = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        top = num[k + len(den) - 1]
        if top % lead:
            raise ValueError("inexact Laurent division")
        q = top // lead
        quot[k] = q
        if q:
            for t in range(len(den)):
                num[k + t] = num[k + t] - q * den[t]
    for t in range(len(num)):
        if num[t]:
            raise ValueError("inexact Laurent division")
    return lp_trim(a[0] - b[0], quot)


cpdef lp_content(a):
    g = 0
    for c in a[1]:
        g = gcd(g, c)
    return g


cpdef row_primitive(row):
    cdef Py_ssize_t m_set = 0
    cdef Py_ssize_t m = 0
    cdef Py_ssize_t t
    g = 0
    for a in row:
        if a[1]:
            g = gcd(g, lp_content(a))
            if not m_set or a[0] < m:
                m = a[0]
                m_set = 1
    if g == 0:
        return list(row)
    sign = 1
    for a in row:
        if a[1]:
            if a[1][-1] < 0:
                sign = -1
            break
    g = g * sign
    out = []
    for a in row:
        if not a[1]:
            out.append(LP_ZERO)
        else:
            ca = a[1]
            cs = []
            for t in range(len(ca)):
                cs.append(ca[t] // g)
            out.append((a[0] - m, tuple(cs)))
    return out


cdef bint _row_nonzero(row):
    for a in row:
        if a[1]:
            return True
    return False


cpdef echelon(rows, Py_ssize_t ncols):
    cdef Py_ssize_t col, idx, j
    cdef Py_ssize_t pick
    work = []
    for r in rows:
        if _row_nonzero(r):
            work.append(row_primitive(r))
    out = []
    pivots = []
    for col in range(ncols):
        pick = -1
        for idx in range(len(work)):
            if work[idx][col][1]:
                pick = idx
                break
        if pick < 0:
            continue
        piv = work.pop(pick)
        lead = piv[col]
        rest = []
        for r in work:
            if r[col][1]:
                f = r[col]
                r2 = []
                for j in range(ncols):
                    r2.append(lp_sub(lp_mul(lead, r[j]), lp_mul(f, piv[j])))
                r2 = row_primitive(r2)
                if not _row_nonzero(r2):
                    continue
                rest.append(r2)
            else:
                rest.append(r)
        work = rest
        out.append(piv)
        pivots.append(col)
    return out, pivots


cpdef vec_reduce(rows, pivot_cols, vec):
    cdef Py_ssize_t j, n
    vec = list(vec)
    n = len(vec)
    for r, col in zip(rows, pivot_cols):
        if vec[col][1]:
            f = vec[col]
            lead = r[col]
            new = []
            for j in range(n):
                new.append(lp_sub(lp_mul(lead, vec[j]), lp_mul(f, r[j])))
            vec = new
    return vec


cpdef det_bareiss(m):
    cdef Py_ssize_t n = len(m)
    cdef Py_ssize_t i, j, k, swap
    if n == 0:
        return lp_const(1)
    rows = []
    for r in m:
        rows.append(list(r))
    m = rows
    sign = 1
    prev = lp_const(1)
    for k in range(n - 1):
        if not m[k][k][1]:
            swap = -1
            for i in range(k + 1, n):
                if m[i][k][1]:
                    swap = i
                    break
            if swap < 0:
                return LP_ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            fik = row_i[k]
            fkk = row_k[k]
            for j in range(k + 1, n):
                num = lp_sub(lp_mul(row_i[j], fkk), lp_mul(fik, row_k[j]))
                row_i[j] = lp_divexact(num, prev)
            row_i[k] = LP_ZERO
        prev = m[k][k]
    return lp_scale(m[n - 1][n - 1], sign)
