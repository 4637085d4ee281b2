"""Finite groups as explicit permutation groups, homomorphisms and actions.

Conventions used across the library:

* permutation product: ``mul(p, q) = p o q`` (apply q first);
* a group acting on anything is written exponentially, ``x ^ g``, and the
  composition rule is ``(x^g)^h = x^(hg)``;
* with those two choices the natural action of a permutation group on its
  points, ``x^g = g[x]``, satisfies the composition rule on the nose.

All objects are immutable after construction and safe to share between
threads; every enumeration below is deterministic.
"""

import itertools
from dataclasses import dataclass, field

from . import perm
from .errors import (
    ClosureBoundExceeded,
    EnumerationBoundExceeded,
    InconsistentAction,
    MismatchedHoms,
)

DEFAULT_CLOSURE_BOUND = 10**6


def mulclose(gens, identity_el, mul, bound=DEFAULT_CLOSURE_BOUND):
    """Closure of `gens` under `mul`, BFS order, as a set."""
    els = {identity_el}
    els.update(gens)
    frontier = sorted(els)
    while frontier:
        new = []
        for a in gens:
            for b in frontier:
                c = mul(a, b)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > bound:
                        raise ClosureBoundExceeded(
                            f"closure exceeds bound {bound}"
                        )
        frontier = new
    return els


class FiniteGroup:
    """A fully enumerated permutation group on {0..degree-1}.

    Stores the sorted element tuple plus the generating set it was built
    from.  Multiplication is permutation composition; there is no hidden
    state, so instances are safe for concurrent reads.
    """

    def __init__(self, degree, elements, generators=(), check=True):
        self.degree = degree
        self.elements = tuple(sorted(set(elements)))
        self.generators = tuple(generators)
        self.identity = perm.identity(degree)
        self._index = {g: i for i, g in enumerate(self.elements)}
        if check:
            self._check_closure()
        if not self.generators:
            self.generators = self._greedy_generators()

    def _check_closure(self):
        for g in self.elements:
            perm.check_perm(g, self.degree)
        if self.identity not in self._index:
            raise ClosureBoundExceeded("identity missing from element set")
        els = set(self.elements)
        for g in self.elements:
            if perm.inverse(g) not in els:
                raise ClosureBoundExceeded(f"not closed under inverse: {g}")
            for h in self.elements:
                if perm.compose(g, h) not in els:
                    raise ClosureBoundExceeded(
                        f"not closed under product: {g} * {h}"
                    )

    def _greedy_generators(self):
        gens = []
        span = {self.identity}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = mulclose(gens, self.identity, perm.compose)
                if len(span) == len(self.elements):
                    break
        return tuple(gens)

    # group protocol ----------------------------------------------------
    def mul(self, x, y):
        return perm.compose(x, y)

    def inv(self, x):
        return perm.inverse(x)

    def index_of(self, x):
        return self._index[x]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.degree == other.degree
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return f"FiniteGroup(degree={self.degree}, order={len(self)})"

    # conveniences -------------------------------------------------------
    def element_order(self, x):
        return perm.perm_order(x)

    def is_abelian(self):
        return all(
            perm.compose(a, b) == perm.compose(b, a)
            for a in self.generators
            for b in self.generators
        )

    def is_cyclic_by_generators(self):
        return len(self.generators) == 1

    def is_subgroup_of(self, other):
        return self.degree == other.degree and set(self.elements) <= set(
            other.elements
        )

    def subgroup(self, elements, generators=()):
        return FiniteGroup(self.degree, elements, generators)

    def is_transitive(self, points=None):
        pts = range(self.degree) if points is None else points
        orb = {next(iter(pts))}
        frontier = list(orb)
        while frontier:
            new = []
            for x in frontier:
                for g in self.generators:
                    y = g[x]
                    if y not in orb:
                        orb.add(y)
                        new.append(y)
            frontier = new
        return orb == set(pts)


class TableGroup:
    """A finite group given by an abstract multiplication table.

    Elements are arbitrary hashable, comparable objects (used for coset
    spaces and class groups).  Implements the same protocol as FiniteGroup
    where it matters: elements / identity / mul / inv / index_of.
    """

    def __init__(self, elements, mul_table, identity_el):
        self.elements = tuple(elements)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self._mul = dict(mul_table)  # (a, b) -> ab
        self.identity = identity_el
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self._mul[a, b] == identity_el:
                    self._inv[a] = b
        assert len(self._inv) == len(self.elements), "table has no inverses"

    def mul(self, x, y):
        return self._mul[x, y]

    def inv(self, x):
        return self._inv[x]

    def index_of(self, x):
        return self._index[x]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def regular_permutation_group(self):
        """The left regular representation as a FiniteGroup."""
        n = len(self.elements)
        perms = []
        gens = []
        for a in self.elements:
            p = tuple(self._index[self._mul[a, b]] for b in self.elements)
            perms.append(p)
        return FiniteGroup(n, perms)


# constructors ------------------------------------------------------------

def group_from_generators(degree, gens, bound=DEFAULT_CLOSURE_BOUND):
    """The group generated by `gens` inside Sym({0..degree-1})."""
    gens = tuple(perm.check_perm(g, degree) for g in gens)
    els = mulclose(gens, perm.identity(degree), perm.compose, bound)
    return FiniteGroup(degree, els, gens, check=False)


def trivial_group(degree=1):
    return FiniteGroup(degree, [perm.identity(degree)], ())


def cyclic_group(n):
    """C_n acting on n points, generated by the n-cycle (0 1 .. n-1)."""
    if n == 1:
        return trivial_group(1)
    gen = tuple((i + 1) % n for i in range(n))
    return group_from_generators(n, [gen])


def symmetric_group(n):
    if n <= 1:
        return trivial_group(max(n, 1))
    gens = [perm.from_cycles(((0, 1),), n)]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return group_from_generators(n, gens)


def dihedral_group(n):
    """Symmetries of the n-gon on n points (order 2n), n >= 3."""
    rot = tuple((i + 1) % n for i in range(n))
    refl = tuple((n - i) % n for i in range(n))
    return group_from_generators(n, [rot, refl])


def direct_product(g, h):
    """G x H acting on the disjoint union of the two point sets."""
    dg, dh = g.degree, h.degree
    gens = [tuple(p) + tuple(dg + i for i in range(dh)) for p in g.generators]
    gens += [tuple(range(dg)) + tuple(dg + p[i] for i in range(dh)) for p in h.generators]
    return group_from_generators(dg + dh, gens)


def quaternion_group():
    """Q8 via its regular representation on 8 points."""
    # elements 1,-1,i,-i,j,-j,k,-k encoded 0..7; table from the usual relations
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    sign = lambda s, x: x ^ 1 if s else x  # toggle sign bit

    def q_mul(a, b):
        sa, ia = a % 2, a // 2
        sb, ib = b % 2, b // 2
        # units: index 0 = 1, 1 = i, 2 = j, 3 = k
        table = {
            (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
            (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
            (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
            (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
        }
        s, i = table[ia, ib]
        return ((sa + sb + s) % 2) + 2 * i

    perms = []
    for a in range(8):
        perms.append(tuple(q_mul(a, b) for b in range(8)))
    gens = [perms[2], perms[4]]  # i and j
    return group_from_generators(8, gens)


def groups_of_order_up_to(n):
    """A catalog of all isomorphism types of groups of order <= n (n <= 8)."""
    if n > 8:
        raise EnumerationBoundExceeded("catalog stops at order 8")
    cat = [("C1", trivial_group())]
    pool = {
        2: [("C2", cyclic_group(2))],
        3: [("C3", cyclic_group(3))],
        4: [("C4", cyclic_group(4)), ("C2xC2", direct_product(cyclic_group(2), cyclic_group(2)))],
        5: [("C5", cyclic_group(5))],
        6: [("C6", cyclic_group(6)), ("S3", symmetric_group(3))],
        7: [("C7", cyclic_group(7))],
        8: [
            ("C8", cyclic_group(8)),
            ("C4xC2", direct_product(cyclic_group(4), cyclic_group(2))),
            ("C2xC2xC2", direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2))),
            ("D4", dihedral_group(4)),
            ("Q8", quaternion_group()),
        ],
    }
    for k in range(2, n + 1):
        cat.extend(pool.get(k, []))
    return cat


# homomorphisms -----------------------------------------------------------

class GroupHom:
    """A verified homomorphism between two FiniteGroups, stored as a full map."""

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            self._verify()

    def _verify(self):
        if set(self.mapping) != set(self.source.elements):
            raise MismatchedHoms("mapping does not cover the source")
        for x in self.source.elements:
            if self.mapping[x] not in self.target:
                raise MismatchedHoms("image outside the target group")
        for x in self.source.elements:
            for y in self.source.elements:
                if self.mapping[self.source.mul(x, y)] != self.target.mul(
                    self.mapping[x], self.mapping[y]
                ):
                    raise MismatchedHoms(
                        f"not a homomorphism at ({x}, {y})"
                    )

    def apply(self, x):
        return self.mapping[x]

    def key(self):
        return tuple(self.mapping[x] for x in self.source.elements)

    def image_elements(self):
        return sorted(set(self.mapping.values()))

    def image_group(self):
        return group_from_generators(
            self.target.degree, self.image_elements()
        )

    def is_bijective(self):
        return len(set(self.mapping.values())) == len(self.source)

    def is_trivial(self):
        return all(v == self.target.identity for v in self.mapping.values())

    def compose_with(self, other):
        """other o self (apply self first); other.source must be self.target."""
        assert other.source.elements == self.target.elements
        return GroupHom(
            self.source,
            other.target,
            {x: other.apply(self.apply(x)) for x in self.source.elements},
            check=False,
        )

    @classmethod
    def from_generator_images(cls, source, target, gen_images, check=True):
        """Extend generator images to a full map; None if inconsistent."""
        mapping = {source.identity: target.identity}
        gi = dict(gen_images)
        frontier = [source.identity]
        while frontier:
            new = []
            for x in frontier:
                for g in source.generators:
                    xg = source.mul(x, g)
                    val = target.mul(mapping[x], gi[g])
                    if xg in mapping:
                        if mapping[xg] != val:
                            return None
                    else:
                        mapping[xg] = val
                        new.append(xg)
            frontier = new
        hom = cls(source, target, mapping, check=False)
        if check:
            for x in source.elements:
                for y in source.elements:
                    if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]):
                        return None
        return hom

    def __repr__(self):
        return f"GroupHom({self.source!r} -> {self.target!r})"


def all_homs(source, target, bound=10**6):
    """Every homomorphism source -> target, by generator-image search.

    Candidate images of a generator are pruned to elements whose order
    divides the generator's order; every surviving assignment is verified
    against the full multiplication table.
    """
    gens = source.generators
    if not gens:
        return [
            GroupHom(
                source,
                target,
                {source.identity: target.identity},
                check=False,
            )
        ]
    candidate_sets = []
    for g in gens:
        og = source.element_order(g)
        cands = [t for t in target.elements if _order_divides(target, t, og)]
        candidate_sets.append(cands)
    total = 1
    for c in candidate_sets:
        total *= len(c)
        if total > bound:
            raise EnumerationBoundExceeded(
                f"{total} candidate assignments exceed bound {bound}"
            )
    homs = []
    for images in itertools.product(*candidate_sets):
        hom = GroupHom.from_generator_images(
            source, target, dict(zip(gens, images))
        )
        if hom is not None:
            homs.append(hom)
    return homs


def _order_divides(group, x, n):
    acc = group.identity
    for _ in range(n):
        acc = group.mul(acc, x)
    return acc == group.identity


def conjugacy_merge(homs, by):
    """Partition homs into orbits under post-composition with inner
    automorphisms b(.)b^-1 for b in `by` (a subgroup of the common target).

    Returns a list of lists of GroupHom; each class is sorted by key and
    classes are ordered by their minimal key, so output is canonical.
    """
    if not homs:
        return []
    src, tgt = homs[0].source, homs[0].target
    for h in homs:
        if h.source.elements != src.elements or h.target.elements != tgt.elements:
            raise MismatchedHoms("homs do not share source and target")
    if not set(by.elements) <= set(tgt.elements):
        raise MismatchedHoms("`by` is not a subgroup of the target")
    by_key = {}
    for h in homs:
        by_key[h.key()] = h
    classes = []
    unassigned = set(by_key)
    for key in sorted(unassigned):
        if key not in unassigned:
            continue
        orbit = set()
        for b in by.elements:
            binv = tgt.inv(b)
            twisted = tuple(
                tgt.mul(b, tgt.mul(v, binv)) for v in key
            )
            orbit.add(twisted)
        orbit &= set(by_key)
        cls = sorted(orbit)
        classes.append([by_key[k] for k in cls])
        unassigned -= orbit
    classes.sort(key=lambda c: c[0].key())
    return classes


# actions ------------------------------------------------------------------

class GroupAction:
    """An action of Gamma on a group A by automorphisms, a |-> a^gamma.

    `apply_fn(gamma, a)` evaluates the action.  The composition law checked
    here is (a^g)^h = a^(hg), which is the one that makes the twisted
    cocycle identity associative.
    """

    def __init__(self, actor, coefficient, apply_fn, check=True):
        self.actor = actor
        self.coefficient = coefficient
        self._apply = apply_fn
        if check:
            self.verify()

    def apply(self, gamma, a):
        return self._apply(gamma, a)

    def verify(self):
        gam = self.actor
        a_group = self.coefficient
        for a in a_group.elements:
            if self._apply(gam.identity, a) != a:
                raise InconsistentAction("identity does not act trivially")
        for g in gam.elements:
            seen = set()
            for a in a_group.elements:
                img = self._apply(g, a)
                if img not in a_group:
                    raise InconsistentAction("action leaves the group")
                seen.add(img)
            if len(seen) != len(a_group):
                raise InconsistentAction("action map is not a bijection")
            for a in a_group.elements:
                for b in a_group.elements:
                    if self._apply(g, a_group.mul(a, b)) != a_group.mul(
                        self._apply(g, a), self._apply(g, b)
                    ):
                        raise InconsistentAction("action map is not a hom")
        for g in gam.elements:
            for h in gam.elements:
                hg = gam.mul(h, g)
                for a in a_group.elements:
                    if self._apply(h, self._apply(g, a)) != self._apply(hg, a):
                        raise InconsistentAction(
                            "composition law (a^g)^h = a^(hg) fails"
                        )

    def restrict(self, subgroup):
        """Restriction to a subgroup of the actor (same coefficient)."""
        return GroupAction(subgroup, self.coefficient, self._apply, check=False)

    def restrict_coefficient(self, sub_coefficient):
        """Same actor acting on a stable subgroup of the coefficient."""
        return GroupAction(self.actor, sub_coefficient, self._apply, check=False)


def trivial_action(actor, coefficient):
    return GroupAction(actor, coefficient, lambda g, a: a, check=False)


def conjugation_action(actor, coefficient, ambient):
    """gamma acting on A <= B by a^gamma = gamma a gamma^-1 (all inside B)."""
    def apply_fn(g, a):
        return ambient.mul(g, ambient.mul(a, ambient.inv(g)))

    return GroupAction(actor, coefficient, apply_fn)


def action_from_generator_automorphisms(actor, coefficient, gen_maps, check=True):
    """Build an action from automorphisms attached to the actor's generators.

    gen_maps: {generator: dict a -> a^gen}.  Extension follows the word
    structure of the actor with the library composition law; the result is
    verified exhaustively unless check=False.
    """
    maps = {actor.identity: {a: a for a in coefficient.elements}}
    frontier = [actor.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in actor.generators:
                xg = actor.mul(x, g)
                if xg in maps:
                    continue
                gmap = gen_maps[g]
                # law: a^(x g) = (a^g)^x
                maps[xg] = {a: maps[x][gmap[a]] for a in coefficient.elements}
                new.append(xg)
        frontier = new
    action = GroupAction(
        actor, coefficient, lambda g, a: maps[g][a], check=False
    )
    if check:
        action.verify()
    return action


def automorphism_group(group, bound=10**6):
    """Aut(group) as a permutation group on the element list of `group`.

    Returns (aut_group, perms_to_maps) where perms_to_maps recovers the
    automorphism dict from a permutation of element indices.
    """
    auts = [h for h in all_homs(group, group, bound) if h.is_bijective()]
    perms = []
    maps = {}
    for h in auts:
        p = tuple(group.index_of(h.apply(x)) for x in group.elements)
        perms.append(p)
        maps[p] = dict(h.mapping)
    aut = FiniteGroup(len(group), perms)
    return aut, maps


def anti_homs_to_automorphisms(actor, coefficient, bound=10**6):
    """All actions of `actor` on `coefficient` satisfying (a^g)^h = a^(hg).

    Such actions correspond to homomorphisms actor -> Aut(coefficient)
    composed with inversion; used to generate test pools.
    """
    aut, maps = automorphism_group(coefficient, bound)
    actions = []
    for h in all_homs(actor, aut, bound):
        def apply_fn(g, a, h=h):
            p = h.apply(actor.inv(g))
            return maps[p][a]

        actions.append(GroupAction(actor, coefficient, apply_fn, check=False))
    return actions


# orbits -------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitData:
    orbits: tuple
    stabilizer: object = field(compare=False)


def orbits_and_stabilizer(group, apply_fn, points, point):
    """Orbit partition of `points` under x^g = apply_fn(g, x), and the
    stabilizer subgroup of `point`.

    The action is validated against the composition law (x^g)^h = x^(hg)
    before use.
    """
    pts = list(points)
    pset = set(pts)
    for g in group.elements:
        for x in pts:
            y = apply_fn(g, x)
            if y not in pset:
                raise InconsistentAction("action leaves the point set")
    for x in pts:
        if apply_fn(group.identity, x) != x:
            raise InconsistentAction("identity moves a point")
    for g in group.elements:
        for h in group.elements:
            hg = group.mul(h, g)
            for x in pts:
                if apply_fn(h, apply_fn(g, x)) != apply_fn(hg, x):
                    raise InconsistentAction(
                        "composition law (x^g)^h = x^(hg) fails"
                    )
    remaining = set(pts)
    orbits = []
    for x in pts:
        if x not in remaining:
            continue
        orb = {x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for g in group.generators:
                    z = apply_fn(g, y)
                    if z not in orb:
                        orb.add(z)
                        new.append(z)
            frontier = new
        orbits.append(tuple(sorted(orb)))
        remaining -= orb
    stab = [g for g in group.elements if apply_fn(g, point) == point]
    stab_group = FiniteGroup(group.degree, stab, check=False)
    return OrbitData(tuple(orbits), stab_group)
