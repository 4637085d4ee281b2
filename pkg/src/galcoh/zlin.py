"""Small exact integer linear algebra: Hermite forms, kernels, membership.

Everything here is plain big-int arithmetic; matrices are sequences of row
sequences.  Sizes are tiny (ranks up to ~10), so clarity wins over speed.
"""


def _sweep(aug, ncols, width):
    """In-place echelon sweep on the first `ncols` columns of `aug` rows of
    total width `width`.  Returns the rank."""
    m = len(aug)
    rank = 0
    for col in range(ncols):
        live = [i for i in range(rank, m) if aug[i][col]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda i: abs(aug[i][col]))
            piv = live[0]
            for i in live[1:]:
                q = aug[i][col] // aug[piv][col]
                if q:
                    for k in range(width):
                        aug[i][k] -= q * aug[piv][k]
            live = [i for i in range(rank, m) if aug[i][col]]
        piv = live[0]
        aug[rank], aug[piv] = aug[piv], aug[rank]
        if aug[rank][col] < 0:
            for k in range(width):
                aug[rank][k] = -aug[rank][k]
        for i in range(rank):
            q = aug[i][col] // aug[rank][col]
            if q:
                for k in range(width):
                    aug[i][k] -= q * aug[rank][k]
        rank += 1
    return rank


def row_hnf(mat):
    """Canonical row Hermite normal form of an integer matrix.

    Returns a tuple of the nonzero rows in echelon form: pivots positive,
    entries above each pivot reduced into [0, pivot).  This is the unique
    canonical basis of the row span, so spans compare by equality of forms.
    """
    rows = [list(r) for r in mat if any(r)]
    if not rows:
        return ()
    ncols = len(rows[0])
    rank = _sweep(rows, ncols, ncols)
    return tuple(tuple(r) for r in rows[:rank])


def hnf_with_transform(mat):
    """Row HNF H of mat with a unimodular U: U*mat = [H; zero rows].

    Returns (H, U, rank) where U is m x m and H has `rank` rows.
    """
    rows = [list(r) for r in mat]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [rows[i] + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    rank = _sweep(aug, ncols, ncols + m)
    h = tuple(tuple(r[:ncols]) for r in aug[:rank])
    u = tuple(tuple(r[ncols:]) for r in aug)
    return h, u, rank


def kernel(mat):
    """Basis (tuple of coefficient rows) of {c : c * mat = 0} over ZZ."""
    _, u, rank = hnf_with_transform(mat)
    return tuple(u[rank:])


def solve_membership(basis_rows, vec):
    """Integer coefficients c with sum(c_i * basis_i) = vec, or None.

    basis_rows must be an echelon (HNF-style) basis.
    """
    rows = [list(r) for r in basis_rows]
    v = list(vec)
    if rows and len(v) != len(rows[0]):
        raise ValueError("dimension mismatch")
    coeffs = [0] * len(rows)
    ncols = len(v)
    order = sorted(
        range(len(rows)),
        key=lambda i: next((j for j, x in enumerate(rows[i]) if x), ncols),
    )
    for i in order:
        j = next((k for k, x in enumerate(rows[i]) if x), None)
        if j is None:
            continue
        if v[j] % rows[i][j] != 0:
            return None
        q = v[j] // rows[i][j]
        coeffs[i] = q
        for k in range(ncols):
            v[k] -= q * rows[i][k]
    if any(v):
        return None
    return tuple(coeffs)


def det(mat):
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
