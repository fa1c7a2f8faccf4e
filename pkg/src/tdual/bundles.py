"""Monomial hom spaces between line bundles, and the comparison functor.

Morphisms from the line bundle of level i to the one of level j on projective
n-space are the degree j - i monomials in the n+1 homogeneous coordinates
(none for j < i); they compose by multiplying, i.e. adding exponent vectors,
and the dimension of each hom space is the binomial coefficient
binomial(j - i + n, n).

The cell quiver of :mod:`tdual.cells` maps onto this monomial quiver: the
quotient morphism with multi-index b from level i to level j corresponds to
the monomial with exponents

    (j - i + sum(b), -b_1, ..., -b_n),

which is degree j - i with nonnegative entries.  `verify_equivalence` checks
exhaustively that this assignment is a bijection on every hom space and turns
composition of multi-indices into multiplication of monomials.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .cells import HomElement, Quiver, quotient_quiver
from .report import CheckReport


@dataclass(frozen=True)
class Monomial:
    """A monomial hom between line-bundle levels.

    `exponents` has n+1 nonnegative entries summing to target - source.
    """

    source: int
    target: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(int(v) for v in self.exponents)
        if len(exps) < 2:
            raise ValueError("need at least two exponents")
        if any(v < 0 for v in exps):
            raise ValueError(f"exponents must be nonnegative: {exps}")
        if sum(exps) != self.target - self.source:
            raise ValueError(
                f"total degree {sum(exps)} must equal target - source = "
                f"{self.target - self.source}"
            )
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.exponents) - 1

    @property
    def label(self) -> tuple[int, ...]:
        """Identifier of this element within its hom space (used by exports)."""
        return self.exponents


def monomial_hom_basis(i: int, j: int, n: int) -> list[Monomial]:
    """All degree j - i monomials in n+1 variables, as morphisms from i to j.

    Empty for j < i.  Ordered lexicographically by exponent vector.

    >>> [m.exponents for m in monomial_hom_basis(-2, -1, 1)]
    [(0, 1), (1, 0)]
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if j < i:
        return []
    degree = j - i
    out = []
    for head in itertools.combinations_with_replacement(range(n + 1), degree):
        exps = [0] * (n + 1)
        for v in head:
            exps[v] += 1
        out.append(Monomial(i, j, tuple(exps)))
    out.sort(key=lambda m: m.exponents)
    return out


def monomial_compose(g: Monomial, f: Monomial) -> Monomial:
    """Composite of f followed by g: exponents add."""
    if g.source != f.target:
        raise ValueError(
            f"monomials not composable: f targets {f.target}, g starts at {g.source}"
        )
    if g.n != f.n:
        raise ValueError("monomials must share a dimension")
    return Monomial(
        f.source, g.target, tuple(a + b for a, b in zip(f.exponents, g.exponents))
    )


def to_monomial(e: HomElement) -> Monomial:
    """The monomial corresponding to a quotient cell morphism.

    Steps b from level i to level j map to exponents
    (j - i + sum(b), -b_1, ..., -b_n).

    >>> to_monomial(HomElement(-2, -1, (-1, 0))).exponents
    (0, 1, 0)
    """
    total = e.target - e.source + sum(e.steps)
    return Monomial(e.source, e.target, (total,) + tuple(-b for b in e.steps))


def euler_pairing(i: int, j: int, n: int) -> int:
    """Dimension of the hom space from level i to level j: binomial(j-i+n, n).

    Requires j >= i (backward hom spaces vanish rather than pair).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if j < i:
        raise ValueError(f"euler_pairing requires j >= i, got i={i}, j={j}")
    return math.comb(j - i + n, n)


def line_bundle_quiver(n: int) -> Quiver:
    """The monomial quiver on levels -n-1, ..., -1 with its composition table."""
    levels = tuple(range(-n - 1, 0))
    bases = {}
    for i in levels:
        for j in levels:
            basis = monomial_hom_basis(i, j, n)
            if basis:
                bases[(i, j)] = basis
    table = {}
    for (i, j), fs in bases.items():
        for (j2, k), gs in bases.items():
            if j2 != j:
                continue
            for f in fs:
                for g in gs:
                    table[(g, f)] = monomial_compose(g, f)
    return Quiver(n=n, levels=levels, hom_bases=bases, composition=table)


def verify_equivalence(n: int, quiver: Quiver | None = None) -> CheckReport:
    """Exhaustively compare the cell quiver against the monomial quiver.

    Checks, for every pair of levels, that the monomial assignment is a
    bijection from the cell hom basis onto the monomial basis (with both
    dimensions equal to the binomial count), and that every entry of the cell
    quiver's composition table is sent to the product of the images.  A
    prebuilt (possibly corrupted) cell quiver may be passed in; by default the
    canonical one for `n` is built.
    """
    if quiver is None:
        quiver = quotient_quiver(n)
    pairs_checked = 0
    elements_checked = 0
    compositions_checked = 0
    witness = None
    ok = True
    levels = quiver.levels
    for i in levels:
        for j in levels:
            cell_side = quiver.hom(i, j)
            bundle_side = monomial_hom_basis(i, j, n)
            pairs_checked += 1
            if j < i:
                if cell_side:
                    ok = False
                    witness = {"kind": "backward_hom", "i": i, "j": j}
                continue
            expected = euler_pairing(i, j, n)
            images = {to_monomial(e).exponents for e in cell_side}
            elements_checked += len(cell_side)
            if (
                len(cell_side) != expected
                or len(bundle_side) != expected
                or len(images) != len(cell_side)
                or images != {m.exponents for m in bundle_side}
            ):
                ok = False
                witness = witness or {
                    "kind": "bijection",
                    "i": i,
                    "j": j,
                    "cell_dim": len(cell_side),
                    "bundle_dim": len(bundle_side),
                    "expected": expected,
                }
    for (g, f), gf in quiver.composition.items():
        compositions_checked += 1
        image = monomial_compose(to_monomial(g), to_monomial(f))
        if to_monomial(gf) != image:
            ok = False
            witness = witness or {
                "kind": "composition",
                "f": {"source": f.source, "target": f.target, "steps": list(f.steps)},
                "g": {"source": g.source, "target": g.target, "steps": list(g.steps)},
                "table_result": list(gf.steps),
                "expected_exponents": list(image.exponents),
            }
    return CheckReport(
        check="equivalence.quiver",
        parameters={
            "n": n,
            "pairs_checked": pairs_checked,
            "elements_checked": elements_checked,
            "compositions_checked": compositions_checked,
        },
        max_deviation=None,
        witness=witness,
        passed=ok,
    )
