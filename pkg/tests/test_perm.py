import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup

from polymoment.monodromy.perm import (Permutation, group_order, is_doubly_transitive, is_primitive, is_transitive,
                                       minimal_block_system, nontrivial_block_systems, product_in_path_order)


@st.composite
def perms(draw, n):
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def groups_with_cycle(draw):
    n = draw(st.integers(2, 7))
    extra = draw(st.lists(perms(n), min_size=0, max_size=2))
    return n, [Permutation.cycle(n)] + extra


def _sym(gens, n):
    return PermutationGroup([SymPerm(list(g.images)) for g in gens])


def test_basic_notation():
    p = Permutation.from_cycles(6, [(0, 1), (2, 5), (3, 4)])
    assert str(p) == "(0 1)(2 5)(3 4)"
    assert str(Permutation.identity(3)) == "()"
    assert Permutation.cycle(4).is_full_cycle()
    assert p.cycle_type() == (2, 2, 2)
    assert p.order() == 2
    assert p.cycle_of(2) == (2, 5)


def test_composition_convention():
    p = Permutation([1, 0, 2])
    q = Permutation([0, 2, 1])
    # q acts first
    assert (p * q)(1) == p(q(1)) == 2
    assert product_in_path_order([q, p], 3) == p * q


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_relabel_conjugates():
    p = Permutation.from_cycles(4, [(0, 1, 2)])
    r = p.relabel([3, 2, 1, 0])
    assert r == Permutation.from_cycles(4, [(3, 2, 1)])


def test_groups_by_hand():
    s3 = [Permutation.from_cycles(3, [(0, 1)]), Permutation.cycle(3)]
    assert group_order(s3, 3) == 6 and is_doubly_transitive(s3, 3)
    d6 = [Permutation.cycle(6), Permutation.from_cycles(6, [(1, 5), (2, 4)])]
    assert group_order(d6, 6) == 12
    assert not is_primitive(d6, 6)
    assert nontrivial_block_systems(d6, 6) == [
        [(0, 3), (1, 4), (2, 5)],
        [(0, 2, 4), (1, 3, 5)],
    ]
    c5 = [Permutation.cycle(5)]
    assert is_primitive(c5, 5) and not is_doubly_transitive(c5, 5)
    assert not is_transitive([Permutation.from_cycles(4, [(0, 1)])], 4)


def test_group_order_cap():
    s7 = [Permutation.cycle(7), Permutation.from_cycles(7, [(0, 1)])]
    assert group_order(s7, 7, cap=100) is None
    assert group_order(s7, 7) == 5040


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_group_laws(pqr):
    p, q, r = pqr
    n = p.n
    assert (p * q) * r == p * (q * r)
    assert p * p.inverse() == Permutation.identity(n)
    assert p ** p.order() == Permutation.identity(n)
    assert p ** -1 == p.inverse()
    assert Permutation.from_cycles(n, p.cycles()) == p


@given(groups_with_cycle())
def test_properties_match_sympy(ng):
    n, gens = ng
    G = _sym(gens, n)
    assert group_order(gens, n) == G.order()
    assert is_transitive(gens, n) == G.is_transitive()
    assert is_primitive(gens, n) == G.is_primitive()
    stab = G.stabilizer(0)
    doubly = G.is_transitive() and (n <= 2 or len(stab.orbit(1)) == n - 1)
    assert is_doubly_transitive(gens, n) == doubly


@given(groups_with_cycle())
def test_block_systems_are_blocks(ng):
    n, gens = ng
    G = _sym(gens, n)
    systems = nontrivial_block_systems(gens, n)
    for system in systems:
        blocks = [set(b) for b in system]
        for g in gens:
            for b in blocks:
                assert {g(i) for i in b} in blocks
    # every minimal block system appears
    for mb in G.minimal_blocks():
        classes = {}
        for i, rep in enumerate(mb):
            classes.setdefault(rep, []).append(i)
        system = sorted(tuple(c) for c in classes.values())
        if 1 < len(system[0]) < n:
            assert system in systems


@given(groups_with_cycle())
def test_minimal_block_contains_pair(ng):
    n, gens = ng
    for j in range(1, n):
        system = minimal_block_system(gens, n, 0, j)
        assert any(0 in b and j in b for b in system)
        assert len({len(b) for b in system}) == 1
