"""Twisted forms over finite field towers: matrix groups with the
Frobenius action, tensor stabilizers, form classification, Hilbert 90.

Matrices over F_(q^m) are flat tuples of encoded field elements
(row-major).  The Galois group is the cyclic group generated by the
Frobenius x -> x^q acting entrywise.
"""

import itertools
from dataclasses import dataclass

from .cohomology import Cocycle, enumerate_h1
from .errors import EnumerationBoundExceeded, NotStable
from .groups import GroupAction

DEFAULT_GROUP_BOUND = 10**6


# matrix helpers -------------------------------------------------------------

def mat_identity(n):
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mat_mul(tower, n, a, b):
    mul = tower.mul
    add = tower.add
    out = []
    for i in range(n):
        row = i * n
        for j in range(n):
            s = 0
            for k in range(n):
                s = add(s, mul(a[row + k], b[k * n + j]))
            out.append(s)
    return tuple(out)


def mat_det(tower, n, a):
    if n == 0:
        return 1
    if n == 1:
        return a[0]
    if n == 2:
        return tower.sub(tower.mul(a[0], a[3]), tower.mul(a[1], a[2]))
    if n == 3:
        m = tower.mul
        t1 = m(a[0], tower.sub(m(a[4], a[8]), m(a[5], a[7])))
        t2 = m(a[1], tower.sub(m(a[3], a[8]), m(a[5], a[6])))
        t3 = m(a[2], tower.sub(m(a[3], a[7]), m(a[4], a[6])))
        return tower.add(tower.sub(t1, t2), t3)
    raise EnumerationBoundExceeded("matrix dimension above 3 not supported")


def mat_inv(tower, n, a):
    d = mat_det(tower, n, a)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    di = tower.inv(d)
    m = tower.mul
    if n == 1:
        return (di,)
    if n == 2:
        return (
            m(di, a[3]),
            m(di, tower.neg(a[1])),
            m(di, tower.neg(a[2])),
            m(di, a[0]),
        )
    if n == 3:
        # adjugate
        def cof(i, j):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            v = tower.sub(
                m(a[rows[0] * 3 + cols[0]], a[rows[1] * 3 + cols[1]]),
                m(a[rows[0] * 3 + cols[1]], a[rows[1] * 3 + cols[0]]),
            )
            return v if (i + j) % 2 == 0 else tower.neg(v)

        return tuple(m(di, cof(j, i)) for i in range(3) for j in range(3))
    raise EnumerationBoundExceeded("matrix dimension above 3 not supported")


def mat_frob(tower, a, j=1):
    j %= tower.ext_degree if tower.ext_degree else 1
    for _ in range(j):
        fr = tower.frobenius
        a = tuple(fr[x] for x in a)
    return a


def mat_transpose(n, a):
    return tuple(a[j * n + i] for i in range(n) for j in range(n))


def gl_order(q_size, n):
    order = 1
    for i in range(n):
        order *= q_size**n - q_size**i
    return order


class MatrixGroupK:
    """An explicit group of invertible matrices over the top field,
    stable under the entrywise Frobenius."""

    def __init__(self, tower, n, elements, name="", check_stability=True):
        self.tower = tower
        self.n = n
        self.elements = tuple(sorted(elements))
        self.name = name
        self._index = {m: i for i, m in enumerate(self.elements)}
        self.identity = mat_identity(n)
        assert self.identity in self._index, "identity missing"
        if check_stability:
            els = set(self.elements)
            for m in self.elements:
                if mat_frob(tower, m) not in els:
                    raise NotStable("group not stable under Frobenius")

    def mul(self, a, b):
        return mat_mul(self.tower, self.n, a, b)

    def inv(self, a):
        return mat_inv(self.tower, self.n, a)

    def index_of(self, x):
        return self._index[x]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"MatrixGroupK({self.name or 'group'}, order={len(self)})"


def gl_group(tower, n, bound=DEFAULT_GROUP_BOUND, name="GL"):
    order = gl_order(tower.size, n)
    if order > bound:
        raise EnumerationBoundExceeded(
            f"|GL_{n}(F_{tower.size})| = {order} exceeds bound {bound}"
        )
    els = [
        m
        for m in itertools.product(range(tower.size), repeat=n * n)
        if mat_det(tower, n, m) != 0
    ]
    assert len(els) == order
    return MatrixGroupK(tower, n, els, name=name, check_stability=False)


def gl_subfield_elements(tower, n, bound=DEFAULT_GROUP_BOUND):
    order = gl_order(tower.q, n)
    if order > bound:
        raise EnumerationBoundExceeded(f"|GL_{n}(F_{tower.q})| = {order}")
    return [
        m
        for m in itertools.product(tower.subfield, repeat=n * n)
        if mat_det(tower, n, m) != 0
    ]


def gl_generators(tower, n, subfield=False):
    """Transvections plus one dilation: a generating set of GL_n."""
    gens = []
    gen_scalar = tower.subfield_generator() if subfield else tower.generator
    if tower.size == 2 or (subfield and tower.q == 2):
        gen_scalar = 1
    d = list(mat_identity(n))
    d[0] = gen_scalar
    gens.append(tuple(d))
    for i in range(n):
        for j in range(n):
            if i != j:
                t = list(mat_identity(n))
                t[i * n + j] = 1
                gens.append(tuple(t))
    return gens


def galois_action(group):
    """The Galois action of Gal(K/k) on a Frobenius-stable matrix group."""
    tower = group.tower
    gam = tower.galois_group()

    def apply_fn(g, a):
        return mat_frob(tower, a, tower.frob_exponent(g))

    return GroupAction(gam, group, apply_fn, check=False)


# tensors --------------------------------------------------------------------

@dataclass(frozen=True)
class Tensor:
    """A map V^(x l) -> V^(x m) given by its coefficient array.

    coeffs has length n^(l+m); the entry for output multi-index a and
    input multi-index b sits at a * n^l + b (multi-indices enumerated
    lexicographically).
    """

    arity_in: int
    arity_out: int
    coeffs: tuple


@dataclass(frozen=True)
class TensorFamily:
    space_dim: int
    tensors: tuple

    def key(self):
        return tuple(t.coeffs for t in self.tensors)

    def defined_over_base(self, tower):
        return all(
            tower.in_subfield(c) for t in self.tensors for c in t.coeffs
        )


def kron_power(tower, n, mat, r):
    """The r-fold Kronecker power as a list of rows (size n^r)."""
    size = n**r
    out = []
    for a in range(size):
        arow = []
        ai = [(a // n**(r - 1 - t)) % n for t in range(r)]
        for b in range(size):
            bi = [(b // n**(r - 1 - t)) % n for t in range(r)]
            v = 1
            for t in range(r):
                v = tower.mul(v, mat[ai[t] * n + bi[t]])
                if v == 0:
                    break
            arow.append(v)
        out.append(arow)
    return out


def apply_to_tensor(tower, n, g, tensor):
    """The standard action g(tau) = g^(x m) o tau o (g^(x l))^(-1)."""
    l, m = tensor.arity_in, tensor.arity_out
    ginv = mat_inv(tower, n, g)
    k_out = kron_power(tower, n, g, m)
    k_in = kron_power(tower, n, ginv, l)
    size_out, size_in = n**m, n**l
    coeffs = []
    for a in range(size_out):
        for b in range(size_in):
            s = 0
            for c in range(size_out):
                row = k_out[a]
                if row[c] == 0:
                    continue
                for d in range(size_in):
                    v = tower.mul(
                        row[c],
                        tower.mul(tensor.coeffs[c * size_in + d], k_in[d][b]),
                    )
                    s = tower.add(s, v)
            coeffs.append(s)
    return Tensor(l, m, tuple(coeffs))


def apply_to_family(tower, fam, g):
    return TensorFamily(
        fam.space_dim,
        tuple(apply_to_tensor(tower, fam.space_dim, g, t) for t in fam.tensors),
    )


def frob_family(tower, fam, j=1):
    return TensorFamily(
        fam.space_dim,
        tuple(
            Tensor(t.arity_in, t.arity_out, mat_frob(tower, t.coeffs, j))
            for t in fam.tensors
        ),
    )


def stabilizer_of_family(gl, fam, name="H"):
    """The subgroup of gl fixing every tensor of the family."""
    tower, n = gl.tower, gl.n
    keep = []
    for g in gl.elements:
        if all(
            apply_to_tensor(tower, n, g, t) == t for t in fam.tensors
        ):
            keep.append(g)
    sub = MatrixGroupK(
        tower, n, keep, name=name,
        check_stability=fam.defined_over_base(tower),
    )
    return sub


# form classification --------------------------------------------------------

@dataclass(frozen=True)
class FormsClassification:
    """Both sides of the twisted-form count, with the explicit matching.

    orbit_reps: base-field orbit representatives of the invariant points of
    the extension-field orbit of the family; classes[i] is the H^1 class
    matched to orbit i; the matching is verified to be a bijection.
    """

    family: TensorFamily
    orbit_reps: tuple
    classes: tuple
    h1: object
    stabilizer: MatrixGroupK


def classify_forms(tower, fam, bound=DEFAULT_GROUP_BOUND):
    """Classify the base-field forms of a tensor family, two ways.

    Computes the invariant points of the GL_K-orbit of the family modulo
    GL_k, computes H^1(Gamma, H_K) for the stabilizer H_K independently,
    and matches orbits to classes through the coset cocycle g -> b^-1 b^g.
    """
    n = fam.space_dim
    if not fam.defined_over_base(tower):
        raise NotStable("family must be defined over the base field")
    gl = gl_group(tower, n, bound)

    # orbit of the family under GL_K, with a transversal witness per point
    gens = gl_generators(tower, n)
    start = fam.key()
    transversal = {start: mat_identity(n)}
    frontier = [fam]
    fam_by_key = {start: fam}
    while frontier:
        new = []
        for cur in frontier:
            b_cur = transversal[cur.key()]
            for g in gens:
                nxt = apply_to_family(tower, cur, g)
                k = nxt.key()
                if k not in transversal:
                    transversal[k] = mat_mul(tower, n, g, b_cur)
                    fam_by_key[k] = nxt
                    new.append(nxt)
        frontier = new

    invariant = sorted(
        k for k in transversal
        if frob_family(tower, fam_by_key[k]).key() == k
    )

    # base-field orbits on the invariant points
    sub_gens = gl_generators(tower, n, subfield=True)
    remaining = set(invariant)
    orbit_reps = []
    orbit_of = {}
    for k in invariant:
        if k not in remaining:
            continue
        orb = {k}
        frontier = [fam_by_key[k]]
        while frontier:
            new = []
            for cur in frontier:
                for g in sub_gens:
                    nxt = apply_to_family(tower, cur, g)
                    nk = nxt.key()
                    if nk not in orb:
                        orb.add(nk)
                        fam_by_key.setdefault(nk, nxt)
                        new.append(nxt)
            frontier = new
        assert orb <= set(invariant), "base-field action left the invariants"
        rep = min(orb)
        orbit_reps.append(rep)
        for x in orb:
            orbit_of[x] = rep
        remaining -= orb

    stab = stabilizer_of_family(gl, fam, name="H_K")
    action = galois_action(stab)
    h1 = enumerate_h1(action)

    gam = action.actor
    classes = []
    for rep in orbit_reps:
        b = transversal[rep]
        binv = mat_inv(tower, n, b)
        vals = []
        for g in gam.elements:
            j = tower.frob_exponent(g)
            val = mat_mul(tower, n, binv, mat_frob(tower, b, j))
            if val not in stab:
                raise NotStable("coset cocycle left the stabilizer")
            vals.append(val)
        coc = Cocycle(action, tuple(vals))
        assert coc.is_valid()
        classes.append(h1.classify(coc))

    assert len(set(classes)) == len(orbit_reps), "orbit -> class not injective"
    assert len(orbit_reps) == len(h1), "orbit count differs from |H^1|"
    return FormsClassification(fam, tuple(orbit_reps), tuple(classes), h1, stab)


# Hilbert 90 ------------------------------------------------------------------

def hilbert90_check(tower, n, bound=DEFAULT_GROUP_BOUND):
    """Enumerate H^1(Gamma, GL_n(K)) for the Frobenius action and report
    (is_single_class, class_count).

    Dedicated scan: cocycles for the cyclic Galois group are the matrices
    of twisted norm one, and the class of the trivial cocycle is the set
    of c^-1 * c^phi.  Everything is enumerated, nothing assumed.
    """
    order = gl_order(tower.size, n)
    if order > bound:
        raise EnumerationBoundExceeded(
            f"|GL_{n}(F_{tower.size})| = {order} exceeds bound {bound}"
        )
    m = tower.ext_degree
    size = tower.size

    def norm_one(a):
        acc = a
        cur = a
        for _ in range(m - 1):
            cur = mat_frob(tower, cur, 1)
            acc = mat_mul(tower, n, acc, cur)
        return acc == ident

    ident = mat_identity(n)
    cocycles = set()
    for a in itertools.product(range(size), repeat=n * n):
        if mat_det(tower, n, a) != 0 and norm_one(a):
            cocycles.add(a)

    classified = set()
    count = 0
    remaining = set(cocycles)
    while remaining:
        seed = min(remaining)
        orbit = set()
        for c in itertools.product(range(size), repeat=n * n):
            if mat_det(tower, n, c) == 0:
                continue
            cinv = mat_inv(tower, n, c)
            tw = mat_mul(
                tower, n, cinv, mat_mul(tower, n, seed, mat_frob(tower, c, 1))
            )
            orbit.add(tw)
        assert orbit <= cocycles, "twist left the cocycle set"
        remaining -= orbit
        count += 1
    return count == 1, count


# quadratic form oracle -------------------------------------------------------

def _congruence(tower, n, g, m):
    gt = mat_transpose(n, g)
    return mat_mul(tower, n, gt, mat_mul(tower, n, m, g))


def _isometry_search(tower, n, m1, m2, domain, find_all=False):
    """Matrices g over `domain` with g^T m1 g = m2, by column backtracking.

    Columns are chosen left to right; the partial Gram constraints
    col_i^T m1 col_j = m2[i][j] prune the search.  Returns the first
    solution (or all of them if find_all).
    """
    vectors = list(itertools.product(domain, repeat=n))

    def bilinear(u, v):
        s = 0
        for i in range(n):
            if u[i] == 0:
                continue
            row = i * n
            for j in range(n):
                s = tower.add(s, tower.mul(u[i], tower.mul(m1[row + j], v[j])))
        return s

    results = []
    cols = []

    def backtrack(j):
        if j == n:
            g = tuple(cols[c][r] for r in range(n) for c in range(n))
            if mat_det(tower, n, g) != 0:
                results.append(g)
                return not find_all
            return False
        for v in vectors:
            if bilinear(v, v) != m2[j * n + j]:
                continue
            ok = True
            for i in range(j):
                if bilinear(cols[i], v) != m2[i * n + j] or bilinear(
                    v, cols[i]
                ) != m2[j * n + i]:
                    ok = False
                    break
            if not ok:
                continue
            cols.append(v)
            if backtrack(j + 1):
                return True
            cols.pop()
        return False

    backtrack(0)
    if find_all:
        return results
    return results[0] if results else None


def symmetric_invertible_forms(tower, n):
    """All invertible symmetric matrices with base-field entries."""
    ut_positions = [(i, j) for i in range(n) for j in range(i, n)]
    forms = []
    for assign in itertools.product(tower.subfield, repeat=len(ut_positions)):
        m = [[0] * n for _ in range(n)]
        for (i, j), v in zip(ut_positions, assign):
            m[i][j] = v
            m[j][i] = v
        flat = tuple(m[i][j] for i in range(n) for j in range(n))
        if mat_det(tower, n, flat) != 0:
            forms.append(flat)
    return forms


@dataclass(frozen=True)
class QuadraticFormTable:
    """Base-field classes of nonsingular quadratic forms, bucketed by
    extension-field equivalence, with the per-bucket H^1 count check."""

    n: int
    base_classes: tuple  # representatives of GL_n(F_q)-congruence classes
    buckets: tuple  # tuples of base-class indices equivalent over K
    h1_orders: tuple  # |H^1(Gamma, O(M)_K)| per bucket
    consistent: bool


def quadratic_form_oracle(tower, n, bound=DEFAULT_GROUP_BOUND):
    """Brute-force classify nonsingular quadratic forms over the base
    field and check each extension-equivalence bucket has exactly
    |H^1(Gamma, O(Q)_K)| base classes.
    """
    if tower.ext_degree != 2:
        raise EnumerationBoundExceeded("oracle requires a quadratic tower")
    if tower.p == 2:
        raise EnumerationBoundExceeded(
            "characteristic 2 quadratic forms are out of scope"
        )
    if n == 0:
        return QuadraticFormTable(0, ((),), ((0,),), (1,), True)
    if gl_order(tower.size, n) > bound:
        raise EnumerationBoundExceeded("extension GL too large")

    forms = symmetric_invertible_forms(tower, n)
    sub_gens = gl_generators(tower, n, subfield=True)

    remaining = set(forms)
    base_classes = []
    for f in sorted(forms):
        if f not in remaining:
            continue
        orb = {f}
        frontier = [f]
        while frontier:
            new = []
            for cur in frontier:
                for g in sub_gens:
                    nxt = _congruence(tower, n, g, cur)
                    if nxt not in orb:
                        orb.add(nxt)
                        new.append(nxt)
            frontier = new
        assert orb <= set(forms)
        base_classes.append(min(orb))
        remaining -= orb

    # bucket base classes by extension-field equivalence
    buckets = []
    assigned = [False] * len(base_classes)
    full_domain = range(tower.size)
    for i, fi in enumerate(base_classes):
        if assigned[i]:
            continue
        bucket = [i]
        assigned[i] = True
        for j in range(i + 1, len(base_classes)):
            if assigned[j]:
                continue
            if _isometry_search(tower, n, fi, base_classes[j], full_domain):
                bucket.append(j)
                assigned[j] = True
        buckets.append(tuple(bucket))

    h1_orders = []
    consistent = True
    for bucket in buckets:
        m = base_classes[bucket[0]]
        stab_els = _isometry_search(tower, n, m, m, full_domain, find_all=True)
        stab = MatrixGroupK(tower, n, stab_els, name="O(Q)_K")
        h1 = enumerate_h1(galois_action(stab))
        h1_orders.append(len(h1))
        if len(h1) != len(bucket):
            consistent = False
    return QuadraticFormTable(
        n, tuple(base_classes), tuple(buckets), tuple(h1_orders), consistent
    )
