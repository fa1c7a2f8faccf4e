"""Tests for the quotient cell category and its quiver."""
from __future__ import annotations

import itertools
import math

import pytest

from tdual import cells
from tdual.cells import CellObject, DeckElement, HomElement


def all_cells(n):
    for level in range(-n - 1, 0):
        for offset in itertools.product(range(-n, 1), repeat=n):
            yield CellObject(level, offset)


def test_cell_object_validation():
    with pytest.raises(ValueError):
        CellObject(-3, (0,))  # level below -n-1 for n=1
    with pytest.raises(ValueError):
        CellObject(0, (0,))
    with pytest.raises(ValueError):
        CellObject(-1, (1, 0))
    with pytest.raises(ValueError):
        CellObject(-1, (-3, 0))


def test_hom_element_validation():
    with pytest.raises(ValueError):
        HomElement(-2, -1, (1,))  # positive step
    with pytest.raises(ValueError):
        HomElement(-2, -1, (-2,))  # sum below source - target
    with pytest.raises(ValueError):
        HomElement(-1, -2, (0,))  # backward morphisms need sum >= 1, impossible
    e = HomElement(-2, -1, (-1, 0))
    assert e.n == 2
    assert e.label == (-1, 0)


def test_containment_basic_examples():
    assert cells.cell_contains(CellObject(-2, (0, 0)), CellObject(-1, (0, 0)))
    assert not cells.cell_contains(CellObject(-2, (-1, 0)), CellObject(-1, (0, 0)))
    # every cell contains itself
    for c in all_cells(2):
        assert cells.cell_contains(c, c)


def test_containment_wraps_around_the_torus():
    # n = 1: big cell with corner -1 contains the small cell with corner 0
    # only through the translated lift 0 - 2 = -2
    outer = CellObject(-2, (-1,))
    inner = CellObject(-1, (0,))
    lifts = cells.containment_lifts(outer, inner)
    assert lifts == [(-2,)]
    hom = cells.hom_from_cells(outer, inner)
    assert hom == HomElement(-2, -1, (-1,))


def test_containment_reverses_levels_only_one_way():
    # strictly smaller level cells are never contained in bigger-level cells
    for n in (1, 2):
        for outer in all_cells(n):
            for inner in all_cells(n):
                if inner.level < outer.level:
                    assert not cells.cell_contains(outer, inner)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_containment_lift_is_unique(n):
    """Even with a widened search window there is at most one valid lift.

    For n = 3 the outer corner stays at the origin: translating both cells
    by a deck element shifts every lift by the same amount, so the count
    only depends on the offset difference.
    """
    outer_cells = (
        all_cells(n)
        if n <= 2
        else (CellObject(level, (0,) * n) for level in range(-n - 1, 0))
    )
    for outer in outer_cells:
        for inner in all_cells(n):
            lifts = cells.containment_lifts(outer, inner, window=2)
            assert len(lifts) <= 1, (outer, inner, lifts)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_hom_dimensions_binomial(n):
    for i in range(-n - 1, 0):
        for j in range(-n - 1, 0):
            dim = len(cells.hom_basis(i, j, n))
            if j < i:
                assert dim == 0
            else:
                assert dim == math.comb(j - i + n, n)


def test_hom_dimension_pinned_example():
    assert len(cells.hom_basis(-2, -1, 2)) == 3
    assert [e.steps for e in cells.hom_basis(-2, -1, 2)] == [(-1, 0), (0, -1), (0, 0)]


@pytest.mark.parametrize("n", [1, 2])
def test_hom_basis_matches_containments(n):
    """Basis elements out of a fixed outer cell = cells it contains, one each."""
    for i in range(-n - 1, 0):
        outer = CellObject(i, (0,) * n)
        for j in range(-n - 1, 0):
            basis = cells.hom_basis(i, j, n)
            # each basis element is realized by the inner cell at its steps
            realized = set()
            for e in basis:
                inner = CellObject(j, e.steps)
                assert cells.hom_from_cells(outer, inner) == e
                realized.add(inner)
            assert len(realized) == len(basis)
            # and no other inner cell of that level is contained in outer
            contained = {
                inner
                for inner in all_cells(n)
                if inner.level == j and cells.cell_contains(outer, inner)
            }
            assert contained == realized


def test_compose_adds_steps():
    f = HomElement(-3, -2, (0, -1))
    g = HomElement(-2, -1, (-1, 0))
    gf = cells.compose(g, f)
    assert gf == HomElement(-3, -1, (-1, -1))
    with pytest.raises(ValueError):
        cells.compose(f, g)  # not composable in this order


def test_compose_matches_nested_containments():
    """Composition via the table equals the direct containment morphism."""
    n = 2
    big = CellObject(-3, (0, 0))
    for mid in all_cells(n):
        if not cells.cell_contains(big, mid):
            continue
        for small in all_cells(n):
            if not cells.cell_contains(mid, small):
                continue
            f = cells.hom_from_cells(big, mid)
            g = cells.hom_from_cells(mid, small)
            direct = cells.hom_from_cells(big, small)
            assert direct is not None
            assert cells.compose(g, f) == direct


@pytest.mark.parametrize("n", [1, 2])
def test_composition_associative_exhaustive(n):
    levels = range(-n - 1, 0)
    for i, j, k, l in itertools.product(levels, repeat=4):
        if not (i <= j <= k <= l):
            continue
        for f in cells.hom_basis(i, j, n):
            for g in cells.hom_basis(j, k, n):
                for h in cells.hom_basis(k, l, n):
                    left = cells.compose(h, cells.compose(g, f))
                    right = cells.compose(cells.compose(h, g), f)
                    assert left == right


def test_composition_associative_sampled_n3():
    f = HomElement(-4, -3, (0, -1, 0))
    g = HomElement(-3, -2, (-1, 0, 0))
    h = HomElement(-2, -1, (0, 0, -1))
    assert cells.compose(h, cells.compose(g, f)) == cells.compose(
        cells.compose(h, g), f
    )


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_units(n):
    for i in range(-n - 1, 0):
        e = cells.identity_hom(i, n)
        assert e.steps == (0,) * n
        for j in range(i, 0):
            for f in cells.hom_basis(i, j, n):
                assert cells.compose(f, e) == f
                ej = cells.identity_hom(j, n)
                assert cells.compose(ej, f) == f


def test_deck_group_laws():
    n = 2
    a = DeckElement((1, 2))
    b = DeckElement((2, 2))
    assert a.modulus == 3
    assert a.compose(a.inverse()) == DeckElement.identity(n)
    assert a.compose(b).shift == ((1 + 2) % 3, (2 + 2) % 3)
    # the generator has order n+1
    g = DeckElement((1, 0))
    power = DeckElement.identity(n)
    for _ in range(3):
        power = power.compose(g)
    assert power == DeckElement.identity(n)


def test_deck_translate_cell():
    c = CellObject(-2, (0, -2))
    t = cells.deck_translate(DeckElement((1, 1)), c)
    assert t.level == -2
    assert t.offset == (-2, -1)  # 0+1 -> 1 ~ -2, -2+1 -> -1 (mod 3)


def test_deck_translate_preserves_containment_and_homs():
    n = 2
    shifts = [DeckElement(s) for s in itertools.product(range(3), repeat=2)]
    pairs = [
        (outer, inner)
        for outer in all_cells(n)
        for inner in all_cells(n)
        if outer.level <= inner.level
    ]
    for alpha in shifts:
        for outer, inner in pairs:
            t_outer = cells.deck_translate(alpha, outer)
            t_inner = cells.deck_translate(alpha, inner)
            assert cells.cell_contains(outer, inner) == cells.cell_contains(
                t_outer, t_inner
            )
            assert cells.hom_from_cells(outer, inner) == cells.hom_from_cells(
                t_outer, t_inner
            )


def test_deck_translate_fixes_morphisms():
    e = HomElement(-2, -1, (-1, 0))
    assert cells.deck_translate(DeckElement((1, 2)), e) == e
    with pytest.raises(TypeError):
        cells.deck_translate(DeckElement((1,)), "nonsense")


@pytest.mark.parametrize("n", [1, 2])
def test_generation_by_consecutive_levels(n):
    """Every morphism over more than one level factors through the next level."""
    levels = range(-n - 1, 0)
    for i in levels:
        for j in levels:
            if j <= i + 1:
                continue
            step_homs = cells.hom_basis(i, i + 1, n)
            rest_homs = cells.hom_basis(i + 1, j, n)
            products = {cells.compose(g, f) for f in step_homs for g in rest_homs}
            assert products == set(cells.hom_basis(i, j, n))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_quotient_quiver_strong_exceptional(n):
    q = cells.quotient_quiver(n)
    assert cells.is_strong_exceptional(q)


def test_quiver_dims_and_hom_access():
    q = cells.quotient_quiver(2)
    dims = q.dims()
    assert dims[(-3, -1)] == 6
    assert dims[(-2, -1)] == 3
    assert (-1, -3) not in dims
    assert q.hom(-1, -3) == []
    assert q.hom(-2, -1, degree=1) == []
    assert len(q.hom(-3, -2)) == 3


def test_strong_exceptionality_rejects_backward_hom():
    q = cells.quotient_quiver(1)
    q.hom_bases[(-1, -2)] = [cells.identity_hom(-1, 1)]  # planted junk
    assert not cells.is_strong_exceptional(q)


def test_strong_exceptionality_rejects_fat_endomorphisms():
    q = cells.quotient_quiver(1)
    q.hom_bases[(-1, -1)] = q.hom_bases[(-1, -1)] * 2
    assert not cells.is_strong_exceptional(q)


def test_strong_exceptionality_rejects_broken_unit():
    q = cells.quotient_quiver(1)
    e = q.hom_bases[(-1, -1)][0]
    f = q.hom_bases[(-2, -1)][0]
    other = q.hom_bases[(-2, -1)][1]
    q.composition[(e, f)] = other  # unit no longer acts as identity
    assert not cells.is_strong_exceptional(q)


def test_quiver_to_dict_schema():
    q = cells.quotient_quiver(1)
    d = cells.quiver_to_dict(q, "U")
    assert d["n"] == 1
    assert d["objects"] == ["U(-2)", "U(-1)"]
    hom_index = {(h["i"], h["j"]): h["basis"] for h in d["homs"]}
    assert hom_index[(-2, -1)] == [[-1], [0]]
    assert len(d["compositions"]) == len(q.composition)
    sample = d["compositions"][0]
    assert set(sample) == {"i", "j", "k", "f", "g", "gf"}


def test_quiver_to_dot_counts():
    q = cells.quotient_quiver(1)
    dot = cells.quiver_to_dot(q, "U", "cells")
    assert dot.count('"U(-2)" -> "U(-1)"') == 2
    assert dot.strip().startswith("digraph cells {")
    # n = 2: three generators between consecutive levels, twice
    dot2 = cells.quiver_to_dot(cells.quotient_quiver(2), "U")
    assert dot2.count("->") == 6
