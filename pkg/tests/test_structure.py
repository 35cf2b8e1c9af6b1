"""Subloops, nuclei, center, normality, quotients, nilpotency."""

import pytest

from loopkit import perms, structure
from loopkit.core import isomorphic
from loopkit.errors import NotASubloop, NotNormal
from loopkit.structure import SubloopSet
from loopkit.tables import chein_double, cyclic, dihedral


def members(s):
    return set(s.members())


def test_subloop_set_basics():
    s = SubloopSet.from_members(6, [0, 3])
    assert 3 in s
    assert 1 not in s
    assert len(s) == 2
    assert members(s) == {0, 3}
    assert s <= SubloopSet.from_members(6, [0, 1, 3])
    with pytest.raises(ValueError):
        SubloopSet.from_members(4, [5])


def test_is_subloop(z6):
    assert structure.is_subloop(z6, SubloopSet.from_members(6, [0, 3]))
    assert structure.is_subloop(z6, SubloopSet.from_members(6, [0, 2, 4]))
    assert not structure.is_subloop(z6, SubloopSet.from_members(6, [0, 1]))
    assert not structure.is_subloop(z6, SubloopSet.from_members(6, [1, 2]))


def test_group_nuclei_are_everything(s3):
    assert members(structure.left_nucleus(s3)) == set(range(6))
    assert members(structure.middle_nucleus(s3)) == set(range(6))
    assert members(structure.right_nucleus(s3)) == set(range(6))
    assert members(structure.nucleus(s3)) == set(range(6))


def test_q5_has_trivial_nuclei(q5):
    assert members(structure.nucleus(q5)) == {0}
    assert members(structure.left_nucleus(q5)) == {0}
    assert members(structure.middle_nucleus(q5)) == {0}
    assert members(structure.right_nucleus(q5)) == {0}


def test_center_of_groups(z6, s3):
    assert members(structure.center(z6)) == set(range(6))
    assert members(structure.center(s3)) == {0}


def test_center_of_dihedral8():
    # D8 has center {1, r^2}; rotation r^2 has id 2.
    d8 = dihedral(4)
    assert members(structure.center(d8)) == {0, 2}


def test_moufang_double_has_trivial_center(m12):
    assert members(structure.center(m12)) == {0}
    assert members(structure.nucleus(m12)) == {0}


def test_nuclei_from_inner_mappings_match_scans(q5, s3, cc6, m12, classes6):
    sample = [q5, s3, cc6, m12] + [q for _id, q in classes6[:20]]
    for q in sample:
        left, middle, right = structure.nuclei_from_inner_mappings(q)
        assert left == structure.left_nucleus(q)
        assert middle == structure.middle_nucleus(q)
        assert right == structure.right_nucleus(q)


def test_subloop_generated(z6, s3):
    assert members(structure.subloop_generated(z6, [2])) == {0, 2, 4}
    assert members(structure.subloop_generated(z6, [1])) == set(range(6))
    assert members(structure.subloop_generated(s3, [3])) == {0, 3}
    assert members(structure.subloop_generated(s3, [1])) == {0, 1, 2}
    assert members(structure.subloop_generated(s3, ())) == {0}


def test_subloop_table_extracts_cyclic_part(z6):
    s = SubloopSet.from_members(6, [0, 2, 4])
    sub = structure.subloop_table(z6, s)
    assert sub.order == 3
    assert isomorphic(sub, cyclic(3))
    with pytest.raises(NotASubloop):
        structure.subloop_table(z6, SubloopSet.from_members(6, [0, 1]))


def test_all_subloops_of_cyclic_group(z6):
    # One subgroup per divisor of 6.
    subs = structure.all_subloops(z6)
    assert [len(s) for s in subs] == [1, 2, 3, 6]


def test_all_subloops_of_s3(s3):
    subs = structure.all_subloops(s3)
    assert [len(s) for s in subs] == [1, 2, 2, 2, 3, 6]


def test_q5_subloops(q5):
    # 1*1 = 0, so {0, 1} is the one proper subloop.
    subs = structure.all_subloops(q5)
    assert [len(s) for s in subs] == [1, 2, 5]
    assert members(subs[1]) == {0, 1}


def test_normality_in_s3(s3):
    rotations = SubloopSet.from_members(6, [0, 1, 2])
    reflection = SubloopSet.from_members(6, [0, 3])
    assert structure.is_normal_subloop(s3, rotations)
    assert not structure.is_normal_subloop(s3, reflection)


def test_standard_generator_invariant_matches_normality(corpus5, s3, cc6):
    # Invariance under the generator families alone is formally weaker
    # than normality; on this corpus the two judgements coincide.
    loops = [q for _id, q in corpus5] + [s3, cc6]
    for q in loops:
        for s in structure.all_subloops(q):
            assert structure.standard_generator_invariant(q, s) == structure.is_normal_subloop(q, s)


def test_quotient_of_z6(z6):
    by3 = SubloopSet.from_members(6, [0, 2, 4])
    qt, coset_of = structure.quotient(z6, by3)
    assert qt.order == 2
    assert isomorphic(qt, cyclic(2))
    for x in range(6):
        for y in range(6):
            assert coset_of[z6.mul(x, y)] == qt.mul(coset_of[x], coset_of[y])


def test_quotient_of_s3(s3):
    rotations = SubloopSet.from_members(6, [0, 1, 2])
    qt, _ = structure.quotient(s3, rotations)
    assert isomorphic(qt, cyclic(2))
    with pytest.raises(NotNormal):
        structure.quotient(s3, SubloopSet.from_members(6, [0, 3]))


def test_quotient_by_trivial_subloop(m12):
    qt, coset_of = structure.quotient(m12, SubloopSet.from_members(12, [0]))
    assert qt.order == 12
    assert isomorphic(qt, m12)
    assert list(coset_of) == list(range(12))


def test_nilpotency_classes_of_groups(z6, s3):
    assert structure.nilpotency_class(z6) == 1
    assert structure.nilpotency_class(s3) is None
    assert structure.nilpotency_class(dihedral(4)) == 2
    assert structure.nilpotency_class(dihedral(8)) == 3
    assert structure.nilpotency_class(cyclic(1)) == 0


def test_moufang_double_not_nilpotent(m12):
    assert structure.nilpotency_class(m12) is None


def test_chein_double_of_d8_is_nilpotent():
    m16 = chein_double(dihedral(4))
    cls = structure.nilpotency_class(m16)
    assert cls is not None
    assert cls >= 2
