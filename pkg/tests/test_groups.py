import pytest

from galcoh import perm
from galcoh.errors import (
    ClosureBoundExceeded,
    InconsistentAction,
    InvalidPermutation,
    MismatchedHoms,
)
from galcoh.groups import (
    all_homs,
    anti_homs_to_automorphisms,
    automorphism_group,
    conjugacy_merge,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_generators,
    groups_of_order_up_to,
    orbits_and_stabilizer,
    quaternion_group,
    symmetric_group,
    trivial_group,
)


def test_parse_and_format_cycles():
    p = perm.parse_cycles("(0 1)(2 3)", 4)
    assert p == (1, 0, 3, 2)
    assert perm.parse_cycles("()", 3) == (0, 1, 2)
    assert perm.parse_cycles("(0 1 2)", 3) == (1, 2, 0)
    assert perm.format_cycles((1, 0, 3, 2)) == "(0 1)(2 3)"
    assert perm.parse_cycles(perm.format_cycles((1, 2, 0)), 3) == (1, 2, 0)


def test_group_from_generators_cyclic3():
    g = group_from_generators(3, [(1, 2, 0)])
    assert len(g) == 3


def test_group_from_generators_s3():
    g = group_from_generators(3, [(1, 0, 2), (1, 2, 0)])
    assert len(g) == 6


def test_group_from_generators_empty():
    g = group_from_generators(2, [])
    assert len(g) == 1


def test_group_from_generators_rejects_bad_perm():
    with pytest.raises(InvalidPermutation):
        group_from_generators(3, [(0, 0, 1)])


def test_closure_bound():
    with pytest.raises(ClosureBoundExceeded):
        group_from_generators(5, symmetric_group(5).generators, bound=10)


def test_catalog_orders():
    orders = sorted(len(g) for _, g in groups_of_order_up_to(8))
    assert orders == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]
    assert len(quaternion_group()) == 8
    assert not quaternion_group().is_abelian()
    assert len(dihedral_group(4)) == 8


def test_all_homs_counts():
    c2 = cyclic_group(2)
    assert len(all_homs(c2, symmetric_group(2))) == 2
    assert len(all_homs(c2, symmetric_group(3))) == 4
    assert len(all_homs(trivial_group(), symmetric_group(5))) == 1


def test_all_homs_invariant_under_generating_set():
    # same group, two generating sets
    s3a = group_from_generators(3, [(1, 0, 2), (1, 2, 0)])
    s3b = group_from_generators(3, [(0, 2, 1), (2, 1, 0)])
    assert s3a.elements == s3b.elements
    t = symmetric_group(4)
    assert len(all_homs(s3a, t)) == len(all_homs(s3b, t))


def test_conjugacy_merge():
    c2 = cyclic_group(2)
    s3 = symmetric_group(3)
    homs = all_homs(c2, s3)
    classes = conjugacy_merge(homs, s3)
    assert len(classes) == 2
    s2 = symmetric_group(2)
    homs2 = all_homs(c2, s2)
    assert len(conjugacy_merge(homs2, s2)) == 2
    triv = all_homs(trivial_group(), s3)
    assert len(conjugacy_merge(triv, s3)) == 1


def test_conjugacy_merge_matches_naive_all_pairs():
    c2 = cyclic_group(2)
    for target in (symmetric_group(3), symmetric_group(4)):
        homs = all_homs(c2, target)
        classes = conjugacy_merge(homs, target)
        # naive: quadratic pairwise conjugacy test
        naive = []
        for h in homs:
            for cls in naive:
                other = cls[0]
                if any(
                    all(
                        h.apply(x)
                        == target.mul(b, target.mul(other.apply(x), target.inv(b)))
                        for x in c2.elements
                    )
                    for b in target.elements
                ):
                    cls.append(h)
                    break
            else:
                naive.append([h])
        assert len(classes) == len(naive)


def test_orbits_and_stabilizer_natural():
    s3 = symmetric_group(3)
    data = orbits_and_stabilizer(s3, lambda g, x: g[x], range(3), 0)
    assert data.orbits == ((0, 1, 2),)
    assert len(data.stabilizer) == 2


def test_orbits_and_stabilizer_trivial_group():
    t = trivial_group(4)
    data = orbits_and_stabilizer(t, lambda g, x: g[x], range(4), 2)
    assert data.orbits == ((0,), (1,), (2,), (3,))
    assert len(data.stabilizer) == 1


def test_orbits_and_stabilizer_subgroup():
    sub = group_from_generators(3, [(0, 2, 1)])  # <(1 2)> inside S3
    data = orbits_and_stabilizer(sub, lambda g, x: g[x], range(3), 0)
    assert data.orbits == ((0,), (1, 2))
    assert len(data.stabilizer) == 2


def test_orbit_stabilizer_theorem():
    for grp in (symmetric_group(3), symmetric_group(4), dihedral_group(4)):
        for x in range(grp.degree):
            data = orbits_and_stabilizer(grp, lambda g, p: g[p], range(grp.degree), x)
            orbit = next(o for o in data.orbits if x in o)
            assert len(orbit) * len(data.stabilizer) == len(grp)


def test_inconsistent_action_rejected():
    s3 = symmetric_group(3)
    with pytest.raises(InconsistentAction):
        orbits_and_stabilizer(s3, lambda g, x: perm.inverse(g)[x] if g[0] == 1 else g[x], range(3), 0)


def test_mismatched_homs():
    c2 = cyclic_group(2)
    homs = all_homs(c2, symmetric_group(2)) + all_homs(c2, symmetric_group(3))
    with pytest.raises(MismatchedHoms):
        conjugacy_merge(homs, symmetric_group(3))


def test_automorphism_group_sizes():
    aut_c3, _ = automorphism_group(cyclic_group(3))
    assert len(aut_c3) == 2
    aut_s3, _ = automorphism_group(symmetric_group(3))
    assert len(aut_s3) == 6
    aut_v4, _ = automorphism_group(direct_product(cyclic_group(2), cyclic_group(2)))
    assert len(aut_v4) == 6


def test_action_pool_all_valid():
    c2 = cyclic_group(2)
    c3 = cyclic_group(3)
    actions = anti_homs_to_automorphisms(c2, c3)
    assert len(actions) == 2  # trivial and inversion
    for act in actions:
        act.verify()
