"""Exact integer-lattice linear algebra.

Row-style echelon reduction over the integers with a unimodular transform,
used for lattice membership, solving t = sum c_i v_i over Z, and left-kernel
computation.  Matrices are lists of lists of Python ints; sizes here are
tiny (a handful of rows, single-digit dimensions), so no attempt is made to
control coefficient growth beyond plain Euclidean reduction.
"""


def _swap(mat, i, j):
    mat[i], mat[j] = mat[j], mat[i]


def row_echelon(rows):
    """Integer row echelon form with transform.

    Returns (H, U) where U is unimodular, U @ rows == H, and H is in
    echelon form: pivots strictly move right, pivot entries positive,
    zero rows at the bottom.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        # clear column c below row r down to a single nonzero entry
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(H[i][c]))
            i0, i1 = nz[0], nz[1]
            q = H[i1][c] // H[i0][c]
            H[i1] = [a - q * b for a, b in zip(H[i1], H[i0])]
            U[i1] = [a - q * b for a, b in zip(U[i1], U[i0])]
        nz = [i for i in range(r, m) if H[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        _swap(H, r, i0)
        _swap(U, r, i0)
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        r += 1
    return H, U


def left_kernel(rows):
    """Basis (list of int vectors x) of {x : x @ rows == 0}."""
    if not rows:
        return []
    H, U = row_echelon(rows)
    return [U[i] for i in range(len(rows)) if all(a == 0 for a in H[i])]


def solve_combination(rows, target):
    """Integer coefficients c with sum c_i rows[i] == target, or None.

    ``rows`` may be empty, in which case only the zero target is solvable.
    """
    if all(a == 0 for a in target):
        return [0] * len(rows)
    if not rows:
        return None
    H, U = row_echelon(rows)
    t = list(target)
    coeffs = [0] * len(rows)
    for i, h in enumerate(H):
        piv = next((c for c, a in enumerate(h) if a != 0), None)
        if piv is None:
            break
        if t[piv] % h[piv] != 0:
            return None
        q = t[piv] // h[piv]
        if q:
            t = [a - q * b for a, b in zip(t, h)]
            coeffs = [a + q * b for a, b in zip(coeffs, U[i])]
    if any(a != 0 for a in t):
        return None
    return coeffs


def rank(rows):
    """Rank of an integer matrix."""
    if not rows:
        return 0
    H, _ = row_echelon(rows)
    return sum(1 for h in H if any(a != 0 for a in h))


def pivot_columns(rows):
    """Pivot column indices of the echelon form (left to right)."""
    if not rows:
        return []
    H, _ = row_echelon(rows)
    cols = []
    for h in H:
        piv = next((c for c, a in enumerate(h) if a != 0), None)
        if piv is not None:
            cols.append(piv)
    return sorted(cols)
