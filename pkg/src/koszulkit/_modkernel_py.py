"""Pure-Python twin of the compiled dense GF(p) row-reduction kernel.

Selected at import time when the compiled extension is unavailable or when
``KOSZULKIT_PURE`` is set.  Handles any prime modulus (Python ints do not
overflow), at interpreter speed.
"""

from __future__ import annotations

KERNEL_KIND = "pure"


def rref_mod(rows, ncols, p):
    """Reduced row echelon form of ``rows`` (lists of ints) over GF(p).

    Returns ``(reduced_rows, pivot_cols)`` with zero rows dropped and rows
    ordered by pivot column.  Deterministic: leftmost nonzero pivot, rows
    scanned in order.
    """
    m = [[v % p for v in row] for row in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        rr = -1
        for i in range(r, nrows):
            if m[i][c]:
                rr = i
                break
        if rr < 0:
            continue
        if rr != r:
            m[r], m[rr] = m[rr], m[r]
        piv_inv = pow(m[r][c], p - 2, p)
        if piv_inv != 1:
            row_r = m[r]
            for j in range(c, ncols):
                row_r[j] = (row_r[j] * piv_inv) % p
        row_r = m[r]
        for i in range(nrows):
            if i == r:
                continue
            factor = m[i][c]
            if not factor:
                continue
            row_i = m[i]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] - factor * row_r[j]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots
