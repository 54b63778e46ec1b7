# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense row reduction over GF(p), compiled hot kernel.

Same contract as ``koszulkit._modkernel_py``: reduced row echelon form with
deterministic pivoting (leftmost nonzero column, rows scanned in order).
Requires p < 2**31 so that products fit in 64 bits; larger characteristics
are routed to the pure twin by the backend selector.
"""

from libc.stdlib cimport free, malloc

KERNEL_KIND = "compiled"


cdef unsigned long long _inv_mod(unsigned long long a, unsigned long long p):
    # extended Euclid; p prime, 0 < a < p
    cdef long long t = 0, newt = 1
    cdef long long r = <long long> p, newr = <long long> a
    cdef long long q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <long long> p
    return <unsigned long long> t


def rref_mod(rows, Py_ssize_t ncols, unsigned long long p):
    """Reduced row echelon form of ``rows`` (lists of ints) over GF(p).

    Returns ``(reduced_rows, pivot_cols)`` with zero rows dropped and rows
    ordered by pivot column.
    """
    cdef Py_ssize_t nrows = len(rows)
    if p >= (1 << 31):
        raise ValueError("compiled kernel requires p < 2**31")
    if nrows == 0 or ncols == 0:
        return [], []
    cdef unsigned long long *m = <unsigned long long *> malloc(
        nrows * ncols * sizeof(unsigned long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, r, c, rr
    cdef unsigned long long v, piv_inv, factor
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = <unsigned long long> (row[j] % p)
        pivots = []
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            rr = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    rr = i
                    break
            if rr < 0:
                continue
            if rr != r:
                for j in range(c, ncols):
                    v = m[r * ncols + j]
                    m[r * ncols + j] = m[rr * ncols + j]
                    m[rr * ncols + j] = v
            piv_inv = _inv_mod(m[r * ncols + c], p)
            if piv_inv != 1:
                for j in range(c, ncols):
                    m[r * ncols + j] = (m[r * ncols + j] * piv_inv) % p
            for i in range(nrows):
                if i == r:
                    continue
                factor = m[i * ncols + c]
                if factor == 0:
                    continue
                for j in range(c, ncols):
                    m[i * ncols + j] = (
                        m[i * ncols + j] + (p - factor) * m[r * ncols + j]) % p
            pivots.append(c)
            r += 1
        out = []
        for i in range(r):
            out.append([m[i * ncols + j] for j in range(ncols)])
        return out, pivots
    finally:
        free(m)
