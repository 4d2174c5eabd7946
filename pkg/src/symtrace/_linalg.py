"""Small exact dense linear algebra over FieldElem matrices."""

from __future__ import annotations

from .errors import PathDisagreement


def det_cofactor(m):
    """Laplace expansion along the first row; intended for k <= 4."""
    k = len(m)
    if k == 0:
        return 1
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for c, x in enumerate(m[0]):
        if not x:
            continue
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = x * det_cofactor(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] * 0
    return total


def det_bareiss(m):
    """Fraction-free (Bareiss) elimination; every division is exact."""
    k = len(m)
    if k == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = None
    for c in range(k - 1):
        if not a[c][c]:
            for r in range(c + 1, k):
                if a[r][c]:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return a[0][0] * 0
        piv = a[c][c]
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                v = a[i][j] * piv - a[i][c] * a[c][j]
                a[i][j] = v if prev is None else v / prev
        prev = piv
    d = a[k - 1][k - 1]
    return d if sign == 1 else -d


def minor_det(m):
    """Determinant by cofactors below size 5, Bareiss from 5 on.

    At size exactly 5 both are computed and must agree.
    """
    k = len(m)
    if k < 5:
        return det_cofactor(m)
    d = det_bareiss(m)
    if k == 5:
        check = det_cofactor(m)
        if check != d:
            raise PathDisagreement(f"Bareiss {d} != cofactor {check}")
    return d


def kernel_vector(m, zero):
    """A nonzero vector v with m v = 0, or None if m is invertible."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    v = [zero] * cols
    v[f] = zero + 1
    for i, c in enumerate(pivots):
        v[c] = -a[i][f]
    return v


def matmul(x, y):
    n, k, m = len(x), len(y), len(y[0]) if y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = None
            for t in range(k):
                if x[i][t] and y[t][j]:
                    term = x[i][t] * y[t][j]
                    s = term if s is None else s + term
            row.append(s if s is not None else x[i][0] * 0)
        out.append(row)
    return out


def transpose(x):
    return [list(col) for col in zip(*x)]


def det_cofactor_mod(m, p):
    """Laplace expansion on integer residues mod p."""
    k = len(m)
    if k == 0:
        return 1
    if k == 1:
        return m[0][0] % p
    if k == 2:
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p
    total = 0
    for c, x in enumerate(m[0]):
        if x:
            minor = [row[:c] + row[c + 1:] for row in m[1:]]
            term = x * det_cofactor_mod(minor, p)
            total += -term if c % 2 else term
    return total % p


def det_bareiss_mod(m, p):
    """Bareiss elimination on integer residues mod p (p prime)."""
    k = len(m)
    if k == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev_inv = 1
    for c in range(k - 1):
        if not a[c][c]:
            for r in range(c + 1, k):
                if a[r][c]:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        rc = a[c]
        for i in range(c + 1, k):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, k):
                    row[j] = (row[j] * piv - f * rc[j]) * prev_inv % p
            else:
                for j in range(c + 1, k):
                    row[j] = row[j] * piv * prev_inv % p
        prev_inv = pow(piv, -1, p)
    return sign * a[k - 1][k - 1] % p


def minor_det_mod(m, p):
    """Residue counterpart of :func:`minor_det`, with the same size-5 cross-check."""
    k = len(m)
    if k < 5:
        return det_cofactor_mod(m, p)
    d = det_bareiss_mod(m, p)
    if k == 5:
        check = det_cofactor_mod(m, p)
        if check != d:
            raise PathDisagreement(f"Bareiss {d} != cofactor {check} mod {p}")
    return d
