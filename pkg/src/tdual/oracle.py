"""Exact rational cohomology oracle for pairs of torus cells (n = 1 or 2).

For two cells on the covering torus (R/(n+1)Z)^n this module computes the
relative rational cohomology of the pair

    X = closure(outer) ∩ inner,      A = boundary(outer) ∩ inner,

by purely combinatorial means, independent of the quiver calculus in
:mod:`tdual.cells`:

1.  Both cells are unions of open faces of the integer-grid triangulation of
    R^n whose 2-dimensional cells are unit squares split along anti-diagonals
    (the bounding hyperplane families are g_l = const and sum g = const, so
    this triangulation is compatible with every region in play).  The inner
    open cell embeds in the torus and is lifted once; the outer cell's closure
    is unioned over lattice translates of its standard lift.  Cell membership
    is decided exactly by evaluating the defining inequalities on rational
    barycenters.

2.  The locally closed X is replaced by a compact deformation retract: the
    inner cell's strict inequalities are tightened by a rational margin
    epsilon < 1/4 (every grid face keeps its barycenter, with slack >= 1/3, so
    no piece degenerates).  Clipping each grid face against the tightened
    halfspaces yields a polytopal complex, triangulated by fanning each
    polygon from its lexicographically smallest vertex; the A-faces form a
    subcomplex.

3.  Ranks of the relative simplicial cochain complex over Q are computed by
    fraction-free (Bareiss) elimination on the integer coboundary matrices.

Summing the resulting Betti profiles over one cell per translation orbit of
the inner offset gives the hom-space dimensions that `oracle_hom_dim` reports;
they land in degree 0 only and match the binomial counts of the quiver side.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .cells import CellObject

# A halfspace {x : coeffs . x (<|<=) rhs}; `strict` picks the comparison.
Constraint = tuple[tuple[int, ...], Fraction, bool]

# Largest admissible shrink margin: a quarter of the arrangement's vertex gap.
MAX_EPSILON = Fraction(1, 4)

_EDGE_KINDS_2D = ("EH", "EV", "ED")


def _simplex_constraints(level: int, offset: Sequence[int], strict: bool) -> list[Constraint]:
    """Halfspace description of a cell's standard lift (open or closed).

    The region is {g_l < offset_l for all l, sum(g - offset) > level}; the sum
    constraint is stored negated so every constraint reads coeffs . x < rhs.
    """
    n = len(offset)
    cons: list[Constraint] = []
    for l in range(n):
        coeffs = tuple(1 if i == l else 0 for i in range(n))
        cons.append((coeffs, Fraction(offset[l]), strict))
    cons.append(
        ((-1,) * n, Fraction(-(level + sum(offset))), strict)
    )
    return cons


def _translate_constraints(cons: Iterable[Constraint], shift: Sequence[int]) -> list[Constraint]:
    return [
        (coeffs, rhs + sum(c * s for c, s in zip(coeffs, shift)), strict)
        for coeffs, rhs, strict in cons
    ]


def _dot(coeffs: Sequence[int], point: Sequence[Fraction]) -> Fraction:
    return sum((c * p for c, p in zip(coeffs, point)), start=Fraction(0))


def _satisfies(point: Sequence[Fraction], cons: Iterable[Constraint]) -> bool:
    for coeffs, rhs, strict in cons:
        val = _dot(coeffs, point)
        if strict:
            if not val < rhs:
                return False
        elif not val <= rhs:
            return False
    return True


# --- the integer-grid triangulation ---------------------------------------

GridCell = tuple[str, tuple[int, ...]]


def cell_vertices(cell: GridCell) -> tuple[tuple[int, ...], ...]:
    kind, m = cell
    if kind == "V":
        return (m,)
    if kind == "E":  # n = 1 unit interval
        return (m, (m[0] + 1,))
    x, y = m
    if kind == "EH":
        return ((x, y), (x + 1, y))
    if kind == "EV":
        return ((x, y), (x, y + 1))
    if kind == "ED":  # anti-diagonal of the unit square at m
        return ((x + 1, y), (x, y + 1))
    if kind == "TL":  # triangle below the anti-diagonal
        return ((x, y), (x + 1, y), (x, y + 1))
    if kind == "TU":  # triangle above the anti-diagonal
        return ((x + 1, y), (x + 1, y + 1), (x, y + 1))
    raise ValueError(f"unknown cell kind {kind!r}")


def cell_dim(cell: GridCell) -> int:
    kind = cell[0]
    if kind == "V":
        return 0
    if kind in ("E",) + _EDGE_KINDS_2D:
        return 1
    return 2


def cell_barycenter(cell: GridCell) -> tuple[Fraction, ...]:
    verts = cell_vertices(cell)
    k = len(verts)
    return tuple(
        sum((Fraction(v[i]) for v in verts), start=Fraction(0)) / k
        for i in range(len(verts[0]))
    )


def _grid_cells(n: int, lo: Sequence[int], hi: Sequence[int]) -> Iterator[GridCell]:
    """All grid cells whose base point lies in the box [lo-1, hi] per axis."""
    kinds = ("V", "E") if n == 1 else ("V", "EH", "EV", "ED", "TL", "TU")
    ranges = [range(lo[i] - 1, hi[i] + 1) for i in range(n)]
    for base in itertools.product(*ranges):
        for kind in kinds:
            yield (kind, base)


def cells_in_region(
    n: int, cons: Sequence[Constraint], lo: Sequence[int], hi: Sequence[int]
) -> set[GridCell]:
    """Grid cells lying inside a region, decided on exact barycenters.

    Valid because every constraint hyperplane is a union of grid faces, so no
    open grid cell crosses one.
    """
    return {
        cell
        for cell in _grid_cells(n, lo, hi)
        if _satisfies(cell_barycenter(cell), cons)
    }


# --- regions and pairs ------------------------------------------------------

@dataclass(frozen=True)
class PolyhedralRegion:
    """A finite union of relatively open faces of the grid triangulation.

    Coordinates are standard lifts to R^n of a region of the covering torus
    (R/(n+1)Z)^n; the lift is injective on everything stored here.
    """

    n: int
    cells: frozenset[GridCell]

    def is_empty(self) -> bool:
        return not self.cells

    def counts_by_dim(self) -> tuple[int, ...]:
        out = [0] * (self.n + 1)
        for cell in self.cells:
            out[cell_dim(cell)] += 1
        return tuple(out)


@dataclass(frozen=True)
class RegionPair:
    """The pair (X, A) for an outer/inner cell, plus the inner cell's halfspaces.

    `inner_constraints` are the strict halfspaces of the (lifted) inner cell;
    the shrink step tightens exactly these.  Iterating yields (X, A).
    """

    X: PolyhedralRegion
    A: PolyhedralRegion
    inner_constraints: tuple[Constraint, ...]

    def __iter__(self):
        return iter((self.X, self.A))


def region_pair(outer: CellObject, inner: CellObject) -> RegionPair:
    """Compute X = closure(outer) ∩ inner and A = boundary(outer) ∩ inner.

    Both cells live on the covering torus; the computation lifts the inner
    cell once and runs over every lattice translate of the outer cell that can
    meet it.  Only n = 1 and n = 2 are supported.
    """
    n = outer.n
    if inner.n != n:
        raise ValueError("cells must share a dimension")
    if n not in (1, 2):
        raise ValueError("the cohomology oracle supports n = 1 and n = 2 only")
    period = n + 1
    inner_cons = tuple(_simplex_constraints(inner.level, inner.offset, strict=True))
    lo = [inner.offset[l] + inner.level for l in range(n)]
    hi = [inner.offset[l] for l in range(n)]
    inner_cells = cells_in_region(n, inner_cons, lo, hi)
    x_cells: set[GridCell] = set()
    a_cells: set[GridCell] = set()
    closed = _simplex_constraints(outer.level, outer.offset, strict=False)
    opened = _simplex_constraints(outer.level, outer.offset, strict=True)
    for steps in itertools.product(range(-3, 4), repeat=n):
        shift = tuple(period * s for s in steps)
        # outer lift occupies [offset + level + shift, offset + shift]
        if any(
            outer.offset[l] + shift[l] < lo[l] or outer.offset[l] + outer.level + shift[l] > hi[l]
            for l in range(n)
        ):
            continue
        closed_cells = cells_in_region(n, _translate_constraints(closed, shift), lo, hi)
        open_cells = cells_in_region(n, _translate_constraints(opened, shift), lo, hi)
        x_cells |= closed_cells & inner_cells
        a_cells |= (closed_cells - open_cells) & inner_cells
    return RegionPair(
        X=PolyhedralRegion(n, frozenset(x_cells)),
        A=PolyhedralRegion(n, frozenset(a_cells)),
        inner_constraints=inner_cons,
    )


# --- shrink and triangulate -------------------------------------------------

@dataclass(frozen=True)
class SimplicialPair:
    """A finite simplicial complex with a subcomplex, over exact coordinates.

    Simplices are tuples of vertex indices, sorted increasingly; that fixed
    vertex order also orients every simplex.  `simplices` is closed under
    taking faces, and `sub` is a face-closed subset of it.
    """

    n: int
    vertices: tuple[tuple[Fraction, ...], ...]
    simplices: frozenset[tuple[int, ...]]
    sub: frozenset[tuple[int, ...]]

    def counts_by_dim(self, relative: bool = False) -> tuple[int, ...]:
        out = [0] * (self.n + 1)
        for s in self.simplices:
            if relative and s in self.sub:
                continue
            out[len(s) - 1] += 1
        return tuple(out)

    def validate(self) -> None:
        for group, name in ((self.simplices, "complex"), (self.sub, "subcomplex")):
            for s in group:
                if list(s) != sorted(set(s)):
                    raise AssertionError(f"malformed simplex {s} in {name}")
                for k in range(1, len(s)):
                    for face in itertools.combinations(s, k):
                        if face not in group:
                            raise AssertionError(f"{name} not closed under faces at {s}")
        if not self.sub <= self.simplices:
            raise AssertionError("subcomplex not contained in complex")


def _clip_segment(
    p: tuple[Fraction, ...], q: tuple[Fraction, ...], cons: Sequence[Constraint]
) -> tuple[tuple[Fraction, ...], ...] | None:
    lo, hi = Fraction(0), Fraction(1)
    for coeffs, rhs, _ in cons:
        fp, fq = _dot(coeffs, p), _dot(coeffs, q)
        if fp == fq:
            if fp > rhs:
                return None
            continue
        t = (rhs - fp) / (fq - fp)
        if fq > fp:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
    if lo > hi:
        return None
    def at(t: Fraction) -> tuple[Fraction, ...]:
        return tuple(a + t * (b - a) for a, b in zip(p, q))
    return (at(lo),) if lo == hi else (at(lo), at(hi))


def _clip_polygon(
    points: list[tuple[Fraction, ...]], cons: Sequence[Constraint]
) -> list[tuple[Fraction, ...]]:
    poly = points
    for coeffs, rhs, _ in cons:
        if not poly:
            return []
        out: list[tuple[Fraction, ...]] = []
        k = len(poly)
        for idx in range(k):
            cur, nxt = poly[idx], poly[(idx + 1) % k]
            fc, fn = _dot(coeffs, cur), _dot(coeffs, nxt)
            if fc <= rhs:
                out.append(cur)
            if (fc <= rhs) != (fn <= rhs):
                t = (rhs - fc) / (fn - fc)
                out.append(tuple(a + t * (b - a) for a, b in zip(cur, nxt)))
        poly = []
        for pt in out:  # drop consecutive duplicates (wraparound included)
            if not poly or pt != poly[-1]:
                poly.append(pt)
        if len(poly) > 1 and poly[0] == poly[-1]:
            poly.pop()
    return poly


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _piece_simplices(
    cell: GridCell, shrink: Sequence[Constraint]
) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Top simplices of one grid face clipped against the shrink halfspaces."""
    verts = [tuple(Fraction(c) for c in v) for v in cell_vertices(cell)]
    dim = cell_dim(cell)
    if dim == 0:
        return [tuple(verts)] if _satisfies(verts[0], shrink) else []
    if dim == 1:
        seg = _clip_segment(verts[0], verts[1], shrink)
        if seg is None:
            return []
        return [seg]
    poly = _clip_polygon(verts, shrink)
    if len(poly) < 3:
        return [tuple(poly)] if poly else []
    anchor = min(range(len(poly)), key=lambda i: poly[i])
    out = []
    for s in range(1, len(poly) - 1):
        a = poly[anchor]
        b = poly[(anchor + s) % len(poly)]
        c = poly[(anchor + s + 1) % len(poly)]
        if _cross(a, b, c) != 0:
            out.append((a, b, c))
    return out


def shrink_and_triangulate(pair: RegionPair, epsilon: Fraction | int | str) -> SimplicialPair:
    """Compact model of the pair: tighten the inner halfspaces, clip, fan.

    `epsilon` must be a positive rational below 1/4 (a quarter of the grid's
    vertex gap); halving it never changes the result's cohomology.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < MAX_EPSILON:
        raise ValueError(f"epsilon must lie strictly between 0 and {MAX_EPSILON}")
    n = pair.X.n
    shrink = [
        (coeffs, rhs - eps, False) for coeffs, rhs, _ in pair.inner_constraints
    ]
    vertex_index: dict[tuple[Fraction, ...], int] = {}
    vertices: list[tuple[Fraction, ...]] = []
    simplices: set[tuple[int, ...]] = set()
    sub: set[tuple[int, ...]] = set()

    def register(simplex_pts: tuple[tuple[Fraction, ...], ...], into: set) -> None:
        idx = []
        for pt in simplex_pts:
            if pt not in vertex_index:
                vertex_index[pt] = len(vertices)
                vertices.append(pt)
            idx.append(vertex_index[pt])
        idx = tuple(sorted(set(idx)))
        for k in range(1, len(idx) + 1):
            for face in itertools.combinations(idx, k):
                into.add(face)

    for cell in sorted(pair.X.cells):
        for piece in _piece_simplices(cell, shrink):
            register(piece, simplices)
    for cell in sorted(pair.A.cells):
        for piece in _piece_simplices(cell, shrink):
            register(piece, sub)
    simplices |= sub
    return SimplicialPair(
        n=n,
        vertices=tuple(vertices),
        simplices=frozenset(simplices),
        sub=frozenset(sub),
    )


# --- exact linear algebra and Betti numbers ---------------------------------

def matrix_rank_exact(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in rows if any(row)]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(nc):
        pivot_row = next((r for r in range(rank, nr) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        for r in range(rank + 1, nr):
            for c in range(col + 1, nc):
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == nr:
            break
    return rank


BettiProfile = tuple[int, ...]


def relative_cohomology(sp: SimplicialPair) -> BettiProfile:
    """Betti numbers of the relative cochain complex over Q, degrees 0..n.

    Cochains live on simplices outside the subcomplex; the coboundary uses the
    orientation induced by sorted vertex order.
    """
    rel = sorted(
        (s for s in sp.simplices if s not in sp.sub), key=lambda s: (len(s), s)
    )
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in rel:
        by_dim.setdefault(len(s) - 1, []).append(s)
    index = {
        dim: {s: i for i, s in enumerate(group)} for dim, group in by_dim.items()
    }

    def coboundary_rank(dim: int) -> int:
        lower = by_dim.get(dim, [])
        upper = by_dim.get(dim + 1, [])
        if not lower or not upper:
            return 0
        rows = []
        for tau in upper:
            row = [0] * len(lower)
            for p in range(len(tau)):
                face = tau[:p] + tau[p + 1 :]
                col = index[dim].get(face)
                if col is not None:
                    row[col] = 1 if p % 2 == 0 else -1
            rows.append(row)
        return matrix_rank_exact(rows)

    ranks = {dim: coboundary_rank(dim) for dim in range(-1, sp.n + 1)}
    betti = []
    for dim in range(sp.n + 1):
        count = len(by_dim.get(dim, []))
        betti.append(count - ranks[dim] - ranks.get(dim - 1, 0))
    return tuple(betti)


def pair_cohomology(
    outer: CellObject, inner: CellObject, epsilon: Fraction | int | str = Fraction(1, 8)
) -> BettiProfile:
    """Relative cohomology of (closure(outer) ∩ inner, boundary(outer) ∩ inner)."""
    return relative_cohomology(shrink_and_triangulate(region_pair(outer, inner), epsilon))


def offset_window(n: int) -> list[tuple[int, ...]]:
    """One corner offset per translation orbit: the window {-n, ..., 0}^n."""
    return list(itertools.product(range(-n, 1), repeat=n))


def oracle_hom_dim(
    i: int, j: int, n: int, epsilon: Fraction | int | str = Fraction(1, 8)
) -> BettiProfile:
    """Graded hom-space dimensions from level i to level j, by cohomology.

    Sums the relative Betti profiles of (closure(U), U') over one inner cell
    U' per translation orbit, with the outer cell fixed at offset 0.  The
    result is concentrated in degree 0, where it equals the binomial count of
    the quiver calculus.
    """
    if n not in (1, 2):
        raise ValueError("the cohomology oracle supports n = 1 and n = 2 only")
    outer = CellObject(i, (0,) * n)
    total = [0] * (n + 1)
    for offset in offset_window(n):
        betti = pair_cohomology(outer, CellObject(j, offset), epsilon)
        total = [t + b for t, b in zip(total, betti)]
    return tuple(total)


def hom_dim_detail(
    i: int, j: int, n: int, epsilon: Fraction | int | str = Fraction(1, 8)
) -> list[dict]:
    """Per-inner-cell summary used by the command-line oracle report."""
    if n not in (1, 2):
        raise ValueError("the cohomology oracle supports n = 1 and n = 2 only")
    outer = CellObject(i, (0,) * n)
    entries = []
    for offset in offset_window(n):
        inner = CellObject(j, offset)
        pair = region_pair(outer, inner)
        sp = shrink_and_triangulate(pair, epsilon)
        entries.append(
            {
                "i": i,
                "j": j,
                "b": list(offset),
                "betti": list(relative_cohomology(sp)),
                "cells": {
                    "X": list(pair.X.counts_by_dim()),
                    "A": list(pair.A.counts_by_dim()),
                },
            }
        )
    return entries
