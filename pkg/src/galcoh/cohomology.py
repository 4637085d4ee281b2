"""Twisted one-cocycles, H^1 class sets, induced maps and exact sequences.

A one-cocycle for an action of Gamma on A is a map g -> a_g with

    a_(hg) = a_h * (a_g)^h,

and two cocycles are equivalent when a_g = c^-1 * b_g * c^g for a single
witness c in A.  Both conventions match the action law (a^g)^h = a^(hg)
fixed in `groups`; changing any one of the three breaks associativity.

Cocycles are stored as full value tables over the actor's element list, so
every identity below is checked exhaustively, and every equivalence comes
with an explicit witness.
"""

import itertools
from dataclasses import dataclass

from .errors import (
    ActionMismatch,
    EnumerationBoundExceeded,
    EquivarianceViolation,
    NotAbelian,
    NotCentral,
    NotNormal,
    NotStable,
)
from .groups import FiniteGroup, GroupAction, TableGroup

DEFAULT_COCYCLE_BOUND = 10**7


@dataclass(frozen=True)
class Cocycle:
    """A one-cocycle stored as a tuple of values over actor.elements."""

    action: GroupAction
    values: tuple

    def value(self, gamma):
        return self.values[self.action.actor.index_of(gamma)]

    def is_valid(self):
        gam = self.action.actor
        a_group = self.action.coefficient
        for h in gam.elements:
            vh = self.value(h)
            for g in gam.elements:
                lhs = self.value(gam.mul(h, g))
                rhs = a_group.mul(vh, self.action.apply(h, self.value(g)))
                if lhs != rhs:
                    return False
        return self.value(gam.identity) == a_group.identity

    def twisted_by(self, a):
        """The equivalent cocycle g -> a^-1 * value(g) * a^g."""
        gam = self.action.actor
        grp = self.action.coefficient
        ainv = grp.inv(a)
        vals = tuple(
            grp.mul(ainv, grp.mul(v, self.action.apply(g, a)))
            for g, v in zip(gam.elements, self.values)
        )
        return Cocycle(self.action, vals)


def trivial_cocycle(action):
    ident = action.coefficient.identity
    return Cocycle(action, tuple(ident for _ in action.actor.elements))


def _word_tree(group):
    """BFS parent structure: for each non-identity element x, a pair
    (parent, generator) with x = parent * generator."""
    tree = {group.identity: None}
    order = [group.identity]
    frontier = [group.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in group.generators:
                xg = group.mul(x, g)
                if xg not in tree:
                    tree[xg] = (x, g)
                    order.append(xg)
                    new.append(xg)
        frontier = new
    assert len(tree) == len(group), "generators do not generate"
    return tree, order


class H1Set:
    """Computed H^1(Gamma, A): class representatives, a classifier, and the
    distinguished class of the trivial cocycle."""

    def __init__(self, action, representatives, class_of, base_point, cocycle_count):
        self.action = action
        self.representatives = tuple(representatives)
        self._class_of = class_of  # values-tuple -> class index
        self.base_point = base_point
        self.cocycle_count = cocycle_count

    def __len__(self):
        return len(self.representatives)

    def classify(self, cocycle):
        if isinstance(cocycle, Cocycle):
            key = cocycle.values
        else:
            key = tuple(cocycle)
        if key not in self._class_of:
            raise ActionMismatch("not an enumerated cocycle for this action")
        return self._class_of[key]

    def all_cocycle_tables(self):
        return sorted(self._class_of)

    def witness_to_representative(self, cocycle):
        """Explicit a in A twisting the class representative into `cocycle`."""
        rep = self.representatives[self.classify(cocycle)]
        return cohomologous(cocycle, rep)


def enumerate_h1(action, bound=DEFAULT_COCYCLE_BOUND):
    """Enumerate H^1 for the given action.

    Assigns candidate values on the actor's generators, extends along a BFS
    word tree, then keeps the assignments satisfying the cocycle identity.
    For a cyclic actor the identity reduces to the single twisted-norm
    condition, which is checked in place of the full table scan.
    """
    gam = action.actor
    a_group = action.coefficient
    gens = gam.generators
    n_candidates = len(a_group.elements) ** len(gens)
    if n_candidates > bound:
        raise EnumerationBoundExceeded(
            f"|A|^(#generators) = {n_candidates} exceeds bound {bound}"
        )
    tree, order = _word_tree(gam)
    # For a cyclic actor the word chain a, a*a^s, ... closes back at the
    # identity, and the single twisted-norm condition at the closing step
    # is equivalent to the full cocycle identity; skip the table scan then.
    cyclic = len(gens) == 1 and gam.mul(order[-1], gens[0]) == gam.identity

    tables = []
    for assignment in itertools.product(a_group.elements, repeat=len(gens)):
        gen_val = dict(zip(gens, assignment))
        table = {gam.identity: a_group.identity}
        for x in order[1:]:
            parent, g = tree[x]
            # a_(parent*g) = a_parent * (a_g)^parent
            table[x] = a_group.mul(
                table[parent], action.apply(parent, gen_val[g])
            )
        if cyclic:
            last = order[-1]
            closing = a_group.mul(
                table[last], action.apply(last, gen_val[gens[0]])
            )
            ok = closing == a_group.identity
        else:
            ok = _full_check(gam, a_group, action, table)
        if ok:
            tables.append(tuple(table[g] for g in gam.elements))

    return _partition_into_classes(action, tables)


def _full_check(gam, a_group, action, table):
    for h in gam.elements:
        vh = table[h]
        for g in gam.elements:
            if table[gam.mul(h, g)] != a_group.mul(
                vh, action.apply(h, table[g])
            ):
                return False
    return True


def _partition_into_classes(action, tables):
    gam = action.actor
    a_group = action.coefficient
    # canonical total order on value tables: compare coefficient indices,
    # which works for any element type (perms, matrices, cosets)
    key = lambda tab: tuple(a_group.index_of(v) for v in tab)
    remaining = set(tables)
    class_of = {}
    representatives = []
    for tab in sorted(tables, key=key):
        if tab not in remaining:
            continue
        base = Cocycle(action, tab)
        orbit = {base.twisted_by(a).values for a in a_group.elements}
        cls = len(representatives)
        rep = min(orbit, key=key)
        representatives.append(Cocycle(action, rep))
        for t in orbit:
            class_of[t] = cls
        remaining -= orbit
    trivial = trivial_cocycle(action).values
    base_point = class_of[trivial]
    return H1Set(action, representatives, class_of, base_point, len(tables))


def naive_h1_classes(action, bound=10**6):
    """Independent oracle: enumerate ALL maps Gamma -> A, filter by the
    cocycle identity, partition by twisting.  Exponential; test use only.
    """
    gam = action.actor
    a_group = action.coefficient
    total = len(a_group.elements) ** len(gam.elements)
    if total > bound:
        raise EnumerationBoundExceeded(f"|A|^|Gamma| = {total} > {bound}")
    ident_pos = gam.index_of(gam.identity)
    tables = []
    for values in itertools.product(a_group.elements, repeat=len(gam.elements)):
        if values[ident_pos] != a_group.identity:
            continue
        if _full_check(gam, a_group, action, dict(zip(gam.elements, values))):
            tables.append(values)
    return _partition_into_classes(action, tables)


def cohomologous(alpha, beta):
    """A witness a with alpha_g = a^-1 * beta_g * a^g for all g, or None."""
    if alpha.action is not beta.action and (
        alpha.action.actor.elements != beta.action.actor.elements
        or alpha.action.coefficient.elements != beta.action.coefficient.elements
    ):
        raise ActionMismatch("cocycles live over different actions")
    for a in alpha.action.coefficient.elements:
        if beta.twisted_by(a).values == alpha.values:
            return a
    return None


# coefficient maps and induced maps ----------------------------------------

class CoefficientMap:
    """A map of coefficients along a subgroup of the actor.

    Combines restriction to `subgroup` (a subgroup of the source actor)
    with an equivariant group map A -> B, where B carries an action of
    `subgroup` (the target action).  Equivariance is checked exhaustively.
    """

    def __init__(self, subgroup, group_map, target_action, check=True):
        self.subgroup = subgroup
        self.group_map = group_map
        self.target_action = target_action
        if check:
            self.verify(None)

    def apply(self, a):
        return self.group_map.apply(a)

    def verify(self, source_action):
        if self.target_action.actor.elements != self.subgroup.elements:
            raise EquivarianceViolation(
                "target action actor must be the chosen subgroup"
            )

    def verify_equivariance(self, source_action):
        src = source_action.coefficient
        for g in self.subgroup.elements:
            for a in src.elements:
                lhs = self.apply(source_action.apply(g, a))
                rhs = self.target_action.apply(g, self.apply(a))
                if lhs != rhs:
                    raise EquivarianceViolation(
                        f"f(a^g) != f(a)^g at g={g}, a={a}"
                    )


class _CallableMap:
    """Adapter giving a bare function the .apply protocol of GroupHom."""

    def __init__(self, fn):
        self._fn = fn

    def apply(self, a):
        return self._fn(a)


def inclusion_map(subgroup_of_actor, target_action):
    """CoefficientMap along a coefficient inclusion A <= B."""
    return CoefficientMap(
        subgroup_of_actor, _CallableMap(lambda a: a), target_action, check=False
    )


@dataclass(frozen=True)
class InducedMap:
    source: H1Set
    target: H1Set
    index_map: tuple  # class index in source -> class index in target
    kernel: frozenset  # preimage of the target base point

    def compose(self, other):
        """other after self; other.source must be self.target."""
        return InducedMap(
            self.source,
            other.target,
            tuple(other.index_map[i] for i in self.index_map),
            frozenset(
                i for i, j in enumerate(self.index_map)
                if other.index_map[j] == other.target.base_point
            ),
        )


def induced_map(h1, cmap, target_h1=None, bound=DEFAULT_COCYCLE_BOUND):
    """The map of H^1 class sets induced by a CoefficientMap.

    Restricts each representative to the subgroup, pushes values through
    the group map, classifies in the target H^1, and reports the kernel
    (the preimage of the target base point).
    """
    src_action = h1.action
    cmap.verify_equivariance(src_action)
    if target_h1 is None:
        target_h1 = enumerate_h1(cmap.target_action, bound)
    sub = cmap.subgroup
    index_map = []
    for rep in h1.representatives:
        vals = tuple(cmap.apply(rep.value(g)) for g in sub.elements)
        cand = Cocycle(cmap.target_action, vals)
        assert cand.is_valid(), "induced table is not a cocycle"
        index_map.append(target_h1.classify(cand))
    kernel = frozenset(
        i for i, j in enumerate(index_map) if j == target_h1.base_point
    )
    return InducedMap(h1, target_h1, tuple(index_map), kernel)


# subgroup machinery: invariant cosets, connecting maps ---------------------

def _check_stable_subgroup(action, sub):
    b_group = action.coefficient
    if not set(sub.elements) <= set(b_group.elements):
        raise NotStable("A is not a subset of B")
    sub_set = set(sub.elements)
    for g in action.actor.elements:
        if {action.apply(g, a) for a in sub.elements} != sub_set:
            raise NotStable("subgroup is not action-stable")


def _left_cosets(b_group, sub):
    seen = set()
    cosets = []
    for b in b_group.elements:
        coset = frozenset(b_group.mul(b, a) for a in sub.elements)
        if coset not in seen:
            seen.add(coset)
            cosets.append(coset)
    return sorted(cosets, key=lambda c: sorted(c))


@dataclass(frozen=True)
class CosetOrbitBijection:
    """Result of the invariant-coset computation for A <= B.

    orbit_reps[i] is an invariant coset, classes[i] the H^1(Gamma, A) class
    of its cocycle g -> b^-1 * b^g, and the two are in verified bijection
    with the kernel of H^1(Gamma, A) -> H^1(Gamma, B).
    """

    action_b: GroupAction
    subgroup: FiniteGroup
    invariant_cosets: tuple
    orbit_reps: tuple
    orbits: tuple
    classes: tuple
    h1_sub: H1Set
    kernel: frozenset
    cocycles: tuple


def classifier_orbits(action_b, sub, bound=DEFAULT_COCYCLE_BOUND):
    """Invariant cosets of B/A modulo B^Gamma, matched with the kernel of
    H^1(Gamma, A) -> H^1(Gamma, B).

    Computes both sides independently and verifies the matching is a
    bijection element by element before returning.
    """
    _check_stable_subgroup(action_b, sub)
    gam = action_b.actor
    b_group = action_b.coefficient
    cosets = _left_cosets(b_group, sub)
    invariant = [
        c
        for c in cosets
        if all(
            frozenset(action_b.apply(g, x) for x in c) == c
            for g in gam.elements
        )
    ]
    fixed = [
        b
        for b in b_group.elements
        if all(action_b.apply(g, b) == b for g in gam.elements)
    ]
    # orbits of B^Gamma acting by left multiplication
    remaining = set(invariant)
    orbits = []
    for c in invariant:
        if c not in remaining:
            continue
        orb = {frozenset(b_group.mul(u, x) for x in c) for u in fixed}
        assert orb <= set(invariant), "fixed elements must preserve invariance"
        orbits.append(tuple(sorted(orb, key=sorted)))
        remaining -= orb
    orbit_reps = tuple(min(orb, key=sorted) for orb in orbits)

    sub_action = action_b.restrict_coefficient(sub)
    h1_sub = enumerate_h1(sub_action, bound)
    h1_b = enumerate_h1(action_b, bound)
    incl = inclusion_map(gam, action_b)
    kernel = induced_map(h1_sub, incl, target_h1=h1_b).kernel

    classes = []
    cocycles = []
    for coset in orbit_reps:
        b = min(coset)
        binv = b_group.inv(b)
        vals = tuple(
            b_group.mul(binv, action_b.apply(g, b)) for g in gam.elements
        )
        for v in vals:
            if v not in sub:
                raise NotStable("coset cocycle left the subgroup")
        coc = Cocycle(sub_action, vals)
        assert coc.is_valid()
        cocycles.append(coc)
        classes.append(h1_sub.classify(coc))

    assert len(set(classes)) == len(classes), "coset map not injective"
    assert set(classes) == set(kernel), "coset map does not hit the kernel"
    return CosetOrbitBijection(
        action_b,
        sub,
        tuple(invariant),
        orbit_reps,
        tuple(orbits),
        tuple(classes),
        h1_sub,
        kernel,
        tuple(cocycles),
    )


@dataclass(frozen=True)
class ConnectingData:
    invariant_cosets: tuple
    classes: tuple  # class in H^1(Gamma, A) per invariant coset
    h1_sub: H1Set
    kernel: frozenset
    exact: bool


def connecting_invariants(action_b, sub, bound=DEFAULT_COCYCLE_BOUND):
    """The connecting map (B/A)^Gamma -> H^1(Gamma, A) for A normal in B,
    with the exactness check image = ker(H^1(Gamma,A) -> H^1(Gamma,B))."""
    _check_stable_subgroup(action_b, sub)
    b_group = action_b.coefficient
    sub_set = set(sub.elements)
    for b in b_group.elements:
        for a in sub.elements:
            if b_group.mul(b, b_group.mul(a, b_group.inv(b))) not in sub_set:
                raise NotNormal("subgroup is not normal")
    gam = action_b.actor
    cosets = _left_cosets(b_group, sub)
    invariant = [
        c
        for c in cosets
        if all(
            frozenset(action_b.apply(g, x) for x in c) == c
            for g in gam.elements
        )
    ]
    sub_action = action_b.restrict_coefficient(sub)
    h1_sub = enumerate_h1(sub_action, bound)
    h1_b = enumerate_h1(action_b, bound)
    kernel = induced_map(h1_sub, inclusion_map(gam, action_b), target_h1=h1_b).kernel
    classes = []
    for coset in invariant:
        b = min(coset)
        binv = b_group.inv(b)
        vals = tuple(
            b_group.mul(binv, action_b.apply(g, b)) for g in gam.elements
        )
        coc = Cocycle(sub_action, vals)
        assert coc.is_valid()
        classes.append(h1_sub.classify(coc))
    exact = set(classes) == set(kernel)
    return ConnectingData(
        tuple(invariant), tuple(classes), h1_sub, kernel, exact
    )


# abelian H^2 and the central connecting map --------------------------------

class H2Group:
    """H^2(Gamma, A) for abelian A: normalized 2-cocycle classes under
    pointwise product, realized as a finite abelian group."""

    def __init__(self, action, pairs, representatives, class_of):
        self.action = action
        self.pairs = pairs  # ordered (h, g) pairs indexing the tables
        self.representatives = tuple(representatives)
        self._class_of = class_of

    def __len__(self):
        return len(self.representatives)

    def classify(self, table):
        return self._class_of[tuple(table)]

    def group(self):
        """The class group as an abstract TableGroup on class indices."""
        a_group = self.action.coefficient
        mul = {}
        for i, ri in enumerate(self.representatives):
            for j, rj in enumerate(self.representatives):
                prod = tuple(
                    a_group.mul(x, y) for x, y in zip(ri, rj)
                )
                mul[i, j] = self._class_of[prod]
        ident = self._class_of[
            tuple(a_group.identity for _ in self.pairs)
        ]
        return TableGroup(range(len(self.representatives)), mul, ident)


def h2_abelian(action, bound=DEFAULT_COCYCLE_BOUND):
    """Enumerate H^2(Gamma, A) with normalized 2-cocycles, abelian A.

    The 2-cocycle identity used is

        c(f,h) * c(fh,g) = c(h,g)^f * c(f,hg),

    the one produced by measuring the failure of a set-theoretic lift
    of a 1-cocycle under this library's composition law.
    """
    gam = action.actor
    a_group = action.coefficient
    for a in a_group.elements:
        for b in a_group.elements:
            if a_group.mul(a, b) != a_group.mul(b, a):
                raise NotAbelian("H^2 requires abelian coefficients")
    nontriv = [g for g in gam.elements if g != gam.identity]
    pairs = [(h, g) for h in nontriv for g in nontriv]
    n_candidates = len(a_group.elements) ** len(pairs)
    if n_candidates > bound:
        raise EnumerationBoundExceeded(
            f"normalized 2-cocycle space {n_candidates} exceeds {bound}"
        )

    def full_table(assign):
        tab = {}
        for h in gam.elements:
            for g in gam.elements:
                if h == gam.identity or g == gam.identity:
                    tab[h, g] = a_group.identity
        tab.update(dict(zip(pairs, assign)))
        return tab

    cocycles = []
    for assign in itertools.product(a_group.elements, repeat=len(pairs)):
        tab = full_table(assign)
        if _is_2cocycle(gam, a_group, action, tab):
            cocycles.append(tuple(tab[p] for p in pairs))

    # 2-coboundaries: du(h,g) = u(h) * u(g)^h * u(hg)^-1 with u(1) = 1
    coboundaries = set()
    for assign in itertools.product(
        a_group.elements, repeat=len(nontriv)
    ):
        u = {gam.identity: a_group.identity}
        u.update(dict(zip(nontriv, assign)))
        tab = []
        for h, g in pairs:
            val = a_group.mul(
                u[h],
                a_group.mul(
                    action.apply(h, u[g]), a_group.inv(u[gam.mul(h, g)])
                ),
            )
            tab.append(val)
        coboundaries.add(tuple(tab))

    key = lambda tab: tuple(a_group.index_of(v) for v in tab)
    class_of = {}
    representatives = []
    remaining = set(cocycles)
    for tab in sorted(cocycles, key=key):
        if tab not in remaining:
            continue
        orbit = set()
        for cb in coboundaries:
            orbit.add(tuple(a_group.mul(x, y) for x, y in zip(tab, cb)))
        cls = len(representatives)
        representatives.append(min(orbit, key=key))
        for t in orbit:
            class_of[t] = cls
        remaining -= orbit
    return H2Group(action, tuple(pairs), representatives, class_of)


def _is_2cocycle(gam, a_group, action, tab):
    for f in gam.elements:
        for h in gam.elements:
            for g in gam.elements:
                lhs = a_group.mul(tab[f, h], tab[gam.mul(f, h), g])
                rhs = a_group.mul(
                    action.apply(f, tab[h, g]), tab[f, gam.mul(h, g)]
                )
                if lhs != rhs:
                    return False
    return True


@dataclass(frozen=True)
class CentralConnectingData:
    h1_quotient: H1Set
    h2: H2Group
    index_map: tuple  # H^1(Gamma, B/A) class -> H^2(Gamma, A) class
    kernel: frozenset
    image_from_b: frozenset
    exact: bool


def central_connecting(action_b, sub, bound=DEFAULT_COCYCLE_BOUND):
    """The connecting map H^1(Gamma, B/A) -> H^2(Gamma, A) for A central
    in B, with the exactness check at H^1(Gamma, B/A).

    Lifts each quotient cocycle set-theoretically and returns the class of
    the resulting failure 2-cocycle c(h,g) = b_h * (b_g)^h * (b_hg)^-1.
    """
    _check_stable_subgroup(action_b, sub)
    b_group = action_b.coefficient
    for a in sub.elements:
        for b in b_group.elements:
            if b_group.mul(a, b) != b_group.mul(b, a):
                raise NotCentral("subgroup is not central")
    gam = action_b.actor
    cosets = _left_cosets(b_group, sub)
    coset_of = {}
    for c in cosets:
        for x in c:
            coset_of[x] = c
    mul_table = {}
    for c1 in cosets:
        for c2 in cosets:
            mul_table[c1, c2] = coset_of[b_group.mul(min(c1), min(c2))]
    quotient = TableGroup(cosets, mul_table, coset_of[b_group.identity])

    def q_apply(g, c):
        return coset_of[action_b.apply(g, min(c))]

    action_q = GroupAction(gam, quotient, q_apply, check=True)
    h1_q = enumerate_h1(action_q, bound)
    sub_action = action_b.restrict_coefficient(sub)
    h2 = h2_abelian(sub_action, bound)

    index_map = []
    for rep in h1_q.representatives:
        lift = {}
        for g in gam.elements:
            coset = rep.value(g)
            lift[g] = b_group.identity if g == gam.identity else min(coset)
        tab = []
        for h, g in h2.pairs:
            val = b_group.mul(
                lift[h],
                b_group.mul(
                    action_b.apply(h, lift[g]),
                    b_group.inv(lift[gam.mul(h, g)]),
                ),
            )
            assert val in sub, "lift failure left the central subgroup"
            tab.append(val)
        index_map.append(h2.classify(tab))

    h2_base = h2.classify(
        tuple(sub.identity for _ in h2.pairs)
    )
    kernel = frozenset(
        i for i, j in enumerate(index_map) if j == h2_base
    )
    # image of H^1(Gamma, B) -> H^1(Gamma, B/A)
    h1_b = enumerate_h1(action_b, bound)
    proj = CoefficientMap(
        gam, _CallableMap(lambda b: coset_of[b]), action_q, check=False
    )
    image = frozenset(
        induced_map(h1_b, proj, target_h1=h1_q).index_map
    )
    return CentralConnectingData(
        h1_q, h2, tuple(index_map), kernel, image, kernel == image
    )


# the abstract genus kernel --------------------------------------------------

def genus_kernel(h1, cmaps, bound=DEFAULT_COCYCLE_BOUND):
    """Intersection of the kernels of the induced maps of `cmaps`.

    This is the abstract kernel of a product of localization/restriction
    maps: classes indistinguishable from the base point by every given
    coefficient map.
    """
    classes = frozenset(range(len(h1.representatives)))
    for cmap in cmaps:
        classes &= induced_map(h1, cmap, bound=bound).kernel
    return classes
