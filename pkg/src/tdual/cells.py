"""Combinatorics of covering-torus cells and their quotient quiver.

The cells of level k in {-n-1, ..., -1} with corner offsets a in
{-n, ..., 0}^n tile the covering torus (R/(n+1)Z)^n; the lattice (Z/(n+1))^n
acts by translating offsets.  Between two cells there is at most one morphism
(the inclusion of the inner cell into the outer one), and after dividing by
the translation action the morphisms from level i to level j are indexed by
multi-indices b with

    b_l <= 0 for all l,    sum_l b_l >= i - j,

recording the offset of the inner cell relative to the outer one.  There are
binomial(j - i + n, n) of these for j >= i and none otherwise; they compose by
adding multi-indices.  The resulting finite quiver, with one object per level,
has one-dimensional endomorphism spaces, no morphisms towards lower levels,
and everything in a single degree.

Multi-index containment arithmetic is exact integer arithmetic throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class CellObject:
    """A cell of the covering torus: level `level`, corner offset `offset`.

    The cell is the open region {g : g_l < offset_l, sum (g - offset) > level}
    on (R/(n+1)Z)^n, where n = len(offset).
    """

    level: int
    offset: tuple[int, ...]

    def __post_init__(self) -> None:
        off = tuple(int(v) for v in self.offset)
        n = len(off)
        if n < 1:
            raise ValueError("offset must be nonempty")
        if not (-n - 1 <= self.level <= -1):
            raise ValueError(f"level {self.level} outside {{-n-1, ..., -1}} for n={n}")
        if any(not (-n <= v <= 0) for v in off):
            raise ValueError(f"offset entries must lie in {{-n, ..., 0}}: {off}")
        object.__setattr__(self, "offset", off)

    @property
    def n(self) -> int:
        return len(self.offset)


@dataclass(frozen=True)
class HomElement:
    """Quotient morphism from level `source` to level `target`.

    The multi-index `steps` has nonpositive entries with
    sum(steps) >= source - target; it records the corner offset of the inner
    cell relative to the outer cell realizing the morphism on the cover.
    """

    source: int
    target: int
    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        st = tuple(int(v) for v in self.steps)
        if not st:
            raise ValueError("steps must be nonempty")
        if any(v > 0 for v in st):
            raise ValueError(f"step entries must be nonpositive: {st}")
        if sum(st) < self.source - self.target:
            raise ValueError(
                f"sum of steps {sum(st)} below source - target = "
                f"{self.source - self.target}"
            )
        object.__setattr__(self, "steps", st)

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def label(self) -> tuple[int, ...]:
        """Identifier of this element within its hom space (used by exports)."""
        return self.steps


@dataclass(frozen=True)
class DeckElement:
    """A translation of the covering torus: shift in (Z/(n+1))^n.

    Entries are stored reduced to {0, ..., n}.
    """

    shift: tuple[int, ...]

    def __post_init__(self) -> None:
        sh = tuple(int(v) for v in self.shift)
        if not sh:
            raise ValueError("shift must be nonempty")
        mod = len(sh) + 1
        object.__setattr__(self, "shift", tuple(v % mod for v in sh))

    @property
    def n(self) -> int:
        return len(self.shift)

    @property
    def modulus(self) -> int:
        return self.n + 1

    @classmethod
    def identity(cls, n: int) -> "DeckElement":
        return cls((0,) * n)

    def compose(self, other: "DeckElement") -> "DeckElement":
        if self.n != other.n:
            raise ValueError("deck elements must share a dimension")
        return DeckElement(tuple(a + b for a, b in zip(self.shift, other.shift)))

    def inverse(self) -> "DeckElement":
        return DeckElement(tuple(-v for v in self.shift))


def _reduce_offset(value: int, modulus: int) -> int:
    """Reduce an integer to its representative in {-(modulus-1), ..., 0}."""
    return -((-value) % modulus)


def containment_lifts(
    outer: CellObject, inner: CellObject, window: int = 1
) -> list[tuple[int, ...]]:
    """Integer lifts of the inner offset realizing containment in the outer cell.

    A lift b' = inner.offset + (n+1) m (entries of m in [-window, window])
    realizes containment iff b'_l <= a_l componentwise and
    sum(b' - a) >= outer.level - inner.level.  For valid labels at most one
    lift can succeed; a wider `window` is accepted so that uniqueness can be
    probed beyond the default enumeration range.
    """
    if outer.n != inner.n:
        raise ValueError("cells must share a dimension")
    n = outer.n
    period = n + 1
    a = outer.offset
    found = []
    for m in itertools.product(range(-window, window + 1), repeat=n):
        lift = tuple(b + period * mi for b, mi in zip(inner.offset, m))
        if all(bp <= ai for bp, ai in zip(lift, a)) and (
            sum(lift) - sum(a) >= outer.level - inner.level
        ):
            found.append(lift)
    return found


def cell_contains(outer: CellObject, inner: CellObject) -> bool:
    """Whether the inner cell sits inside the outer cell on the covering torus.

    >>> cell_contains(CellObject(-2, (0, 0)), CellObject(-1, (0, 0)))
    True
    >>> cell_contains(CellObject(-2, (-1, 0)), CellObject(-1, (0, 0)))
    False
    """
    return bool(containment_lifts(outer, inner))


def hom_from_cells(outer: CellObject, inner: CellObject) -> Union[HomElement, None]:
    """The quotient morphism realized by a containment of cells, if any.

    Translating both cells by a common deck element leaves the result
    unchanged, which is what makes the quotient quiver well defined.
    """
    lifts = containment_lifts(outer, inner)
    if not lifts:
        return None
    lift = lifts[0]
    return HomElement(
        outer.level, inner.level, tuple(b - a for b, a in zip(lift, outer.offset))
    )


def _step_vectors(n: int, lower: int) -> Iterator[tuple[int, ...]]:
    """All multi-indices with nonpositive entries and sum >= lower, lex order."""
    if n == 0:
        yield ()
        return
    for first in range(lower, 1):
        for rest in _step_vectors(n - 1, lower - first):
            yield (first,) + rest


def hom_basis(i: int, j: int, n: int) -> list[HomElement]:
    """Basis of the quotient hom space from level i to level j.

    Empty for j < i; for j >= i the basis has binomial(j - i + n, n) elements,
    one per multi-index b <= 0 with sum(b) >= i - j.

    >>> [e.steps for e in hom_basis(-2, -1, 2)]
    [(-1, 0), (0, -1), (0, 0)]
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if j < i:
        return []
    return [HomElement(i, j, steps) for steps in _step_vectors(n, i - j)]


def compose(g: HomElement, f: HomElement) -> HomElement:
    """Composite of f followed by g; multi-indices add.

    >>> f = HomElement(-3, -2, (0, -1))
    >>> g = HomElement(-2, -1, (-1, 0))
    >>> compose(g, f).steps
    (-1, -1)
    """
    if g.source != f.target:
        raise ValueError(
            f"morphisms not composable: f targets {f.target}, g starts at {g.source}"
        )
    if g.n != f.n:
        raise ValueError("morphisms must share a dimension")
    return HomElement(f.source, g.target, tuple(b + c for b, c in zip(f.steps, g.steps)))


def identity_hom(level: int, n: int) -> HomElement:
    """The identity morphism at a level: the zero multi-index."""
    return HomElement(level, level, (0,) * n)


def deck_translate(
    alpha: DeckElement, x: Union[CellObject, HomElement]
) -> Union[CellObject, HomElement]:
    """Translate by a deck element.

    Cells translate by adding the shift to their corner offset (reduced back
    to the representative window {-n, ..., 0}); quotient morphisms are fixed,
    because their multi-index records a difference of offsets, which a common
    translation preserves — see `hom_from_cells`.
    """
    if isinstance(x, CellObject):
        if alpha.n != x.n:
            raise ValueError("deck element and cell must share a dimension")
        period = x.n + 1
        return CellObject(
            x.level,
            tuple(_reduce_offset(o + s, period) for o, s in zip(x.offset, alpha.shift)),
        )
    if isinstance(x, HomElement):
        if alpha.n != x.n:
            raise ValueError("deck element and morphism must share a dimension")
        return x
    raise TypeError(f"cannot translate object of type {type(x).__name__}")


@dataclass
class Quiver:
    """A finite graded quiver with chosen hom bases and a composition table.

    `hom_bases` maps (source_level, target_level) to the list of basis
    elements; `composition` maps composable basis pairs (g, f) — f first,
    then g — to the basis element equal to g after f.  All stored morphisms
    sit in degree 0; other degrees are empty.
    """

    n: int
    levels: tuple[int, ...]
    hom_bases: dict = field(default_factory=dict)
    composition: dict = field(default_factory=dict)

    def hom(self, i: int, j: int, degree: int = 0) -> list:
        if degree != 0:
            return []
        return list(self.hom_bases.get((i, j), []))

    def dims(self) -> dict[tuple[int, int], int]:
        return {key: len(basis) for key, basis in sorted(self.hom_bases.items())}


def quotient_quiver(n: int) -> Quiver:
    """The quiver of quotient cells for given n: levels -n-1, ..., -1.

    Hom bases come from `hom_basis` and the composition table from `compose`,
    tabulated over every composable pair of basis elements.
    """
    levels = tuple(range(-n - 1, 0))
    bases = {}
    for i in levels:
        for j in levels:
            basis = hom_basis(i, j, n)
            if basis:
                bases[(i, j)] = basis
    table = {}
    for (i, j), fs in bases.items():
        for (j2, k), gs in bases.items():
            if j2 != j:
                continue
            for f in fs:
                for g in gs:
                    table[(g, f)] = compose(g, f)
    return Quiver(n=n, levels=levels, hom_bases=bases, composition=table)


def is_strong_exceptional(q: Quiver) -> bool:
    """Check the strong-exceptionality conditions on a quiver.

    Requires: every endomorphism space is one-dimensional and its element acts
    as a two-sided unit through the composition table; no nonzero homs from a
    higher to a lower level; all morphisms in degree 0 (structural here, since
    nonzero degrees are empty by construction).
    """
    for (i, j), basis in q.hom_bases.items():
        if j < i and basis:
            return False
    for level in q.levels:
        endo = q.hom(level, level)
        if len(endo) != 1:
            return False
        e = endo[0]
        for (i, j), basis in q.hom_bases.items():
            for f in basis:
                if j == level and q.composition.get((e, f)) != f:
                    return False
                if i == level and q.composition.get((f, e)) != f:
                    return False
    return True


def quiver_to_dict(q: Quiver, prefix: str = "U") -> dict:
    """JSON-ready description: objects, hom bases, and the composition table.

    The same schema is used for the cell quiver and the line-bundle quiver, so
    the two exports can be diffed directly.
    """
    homs = [
        {"i": i, "j": j, "basis": [list(el.label) for el in basis]}
        for (i, j), basis in sorted(q.hom_bases.items())
    ]
    comps = []
    for (g, f), gf in q.composition.items():
        comps.append(
            {
                "i": f.source,
                "j": f.target,
                "k": g.target,
                "f": list(f.label),
                "g": list(g.label),
                "gf": list(gf.label),
            }
        )
    comps.sort(key=lambda e: (e["i"], e["j"], e["k"], e["f"], e["g"]))
    return {
        "n": q.n,
        "objects": [f"{prefix}({level})" for level in q.levels],
        "homs": homs,
        "compositions": comps,
    }


def quiver_to_dot(q: Quiver, prefix: str = "U", name: str = "cells") -> str:
    """Graphviz DOT export: objects as nodes, consecutive-level generators as edges."""
    lines = [f"digraph {name} {{"]
    for level in q.levels:
        lines.append(f'  "{prefix}({level})";')
    for (i, j), basis in sorted(q.hom_bases.items()):
        if j != i + 1:
            continue
        for el in basis:
            label = ",".join(str(v) for v in el.label)
            lines.append(f'  "{prefix}({i})" -> "{prefix}({j})" [label="({label})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
