from __future__ import annotations

import pytest

from conftest import all_pairs, context
from knotlattice.irrstates import (
    construct_irreducible_state,
    level_partition,
    successor_closure,
    verify_level_patterns,
)
from knotlattice.states import KauffmanState


def test_closure_of_12(link7):
    d = link7.diagram
    assert successor_closure(d, link7.min_state, {12}, d.segments) == {3, 8, 9, 11, 12}


def test_closure_respects_the_allowed_set(link7):
    d = link7.diagram
    got = successor_closure(d, link7.min_state, {12}, {12, 9, 11})
    assert got == {9, 11, 12}


def test_levels_for_8_2(link7):
    lv = level_partition(link7.diagram, link7.min_state, 8, 2, i=6)
    assert lv.layer(2) == {8}
    assert lv.layer(1) == {2, 3, 7, 9, 11, 12}
    assert lv.level[5] == 0 and lv.level[6] == 0


def test_S_12_1(link7):
    d = link7.diagram
    lv = level_partition(d, link7.min_state, 12, 1, i=6)
    s = construct_irreducible_state(d, link7.regions, link7.min_state, lv, i=6)
    assert s == KauffmanState((0, 3, 1, 1, 3, 3, 1))
    L = link7.state_lattice
    assert L.dim_vectors[L.index[s]] == link7.M[(12, 1)]
    support = {j for j, x in zip(d.segments, link7.M[(12, 1)]) if x}
    assert support == {3, 8, 9, 11, 12}


def test_S_8_2(link7):
    lv, s = link7.irreducible_states[(8, 2)]
    assert s == KauffmanState((0, 3, 2, 0, 2, 2, 1))
    L = link7.state_lattice
    e = dict(zip(link7.diagram.segments, L.dim_vectors[L.index[s]]))
    assert e[5] == 0 and e[8] == 2


def test_level_requires_positive_k(link7):
    with pytest.raises(ValueError):
        level_partition(link7.diagram, link7.min_state, 8, 0)


def test_trefoil_pairs():
    for i in range(1, 7):
        ctx = context("trefoil", i)
        built = ctx.irreducible_states
        assert len(built) == 2
        for jk, (lv, s) in built.items():
            L = ctx.state_lattice
            assert L.dim_vectors[L.index[s]] == ctx.M[jk]


@pytest.mark.parametrize("name, i", all_pairs())
def test_levels_match_generated_submodules(name, i):
    ctx = context(name, i)
    d = ctx.diagram
    for (j, k), (lv, s) in ctx.irreducible_states.items():
        assert tuple(lv.level[x] for x in d.segments) == ctx.M[(j, k)]
        assert lv.level[i] == 0
        ok, wit = verify_level_patterns(d, ctx.min_state, lv)
        assert ok, wit


def test_level_patterns_can_fail(link7):
    # a hand-made level function that drops twice at one crossing
    d = link7.diagram
    lv = level_partition(d, link7.min_state, 8, 2, i=6)
    broken = dict(lv.level)
    broken[d.crossings[0].cw[0]] = 5
    bad = type(lv)(broken, 8, 2)
    ok, wit = verify_level_patterns(d, link7.min_state, bad)
    assert not ok and wit
