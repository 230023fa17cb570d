"""Laplacian spectra: exact integer certification and a numeric fallback.

The exact engine never rounds.  A graph is first collapsed along classes
of vertices with matching neighborhoods (iterated, weighted): each
collapse step splits off eigenvalues carried by difference vectors
inside a class, all of them integers read off class degrees, and leaves
the spectrum of a small integer quotient matrix.  Integer eigenvalue
multiplicities then come from the quotient's exact characteristic
polynomial (or exact elimination), so an "Exact" spectrum is a proof,
not an approximation.  When the certified multiplicities do not exhaust
the vertex count, the residual eigenvalues are computed numerically and
reported as a "Mixed" spectrum.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, twin_partition
from .linalg import (
    charpoly_exact,
    integer_root_multiplicities,
    jacobi_eigenvalues,
    rational_nullity,
)

__all__ = [
    "RationalMatrix",
    "FactoredCharPoly",
    "Spectrum",
    "CharPolyContradiction",
    "laplacian",
    "integer_eigenvalue_multiplicity",
    "spectrum",
    "algebraic_connectivity",
    "spectral_radius",
    "spectral_radius_multiplicity",
    "clique_charpoly",
    "union_charpoly",
    "join_charpoly",
    "complement_spectrum",
    "max_component_radius",
    "dense_nullity",
    "dense_numeric_eigenvalues",
]

ABSORB_TOL = 1e-6


class CharPolyContradiction(ValueError):
    """A factored-polynomial identity required a root that is absent."""


# ---------------------------------------------------------------------------
# exact matrices


@dataclass(frozen=True)
class RationalMatrix:
    """Dense square matrix over the rationals; exact arithmetic only."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def minus_scaled_identity(self, lam: int | Fraction) -> "RationalMatrix":
        lam = Fraction(lam)
        return RationalMatrix(
            tuple(
                tuple(x - lam if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(self.entries)
            )
        )

    def nullity(self) -> int:
        return rational_nullity(self.entries)


def laplacian(g: Graph) -> RationalMatrix:
    """Laplacian L = D - A as an exact rational matrix."""
    rows = []
    for v in range(g.n):
        deg = Fraction(g.degree(v))
        row = tuple(
            deg if u == v else Fraction(-1 if g.adjacent(u, v) else 0)
            for u in range(g.n)
        )
        rows.append(row)
    return RationalMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# factored characteristic polynomials


@dataclass(frozen=True)
class FactoredCharPoly:
    """Product of (x - root)^mult factors with non-negative integer roots.

    The constant polynomial 1 is the empty product (the null-graph
    convention).
    """

    factors: tuple[tuple[int, int], ...]  # (root, multiplicity), roots ascending

    def __post_init__(self):
        last = -1
        for root, mult in self.factors:
            if root < 0:
                raise ValueError(f"negative root {root}")
            if mult < 1:
                raise ValueError(f"non-positive multiplicity for root {root}")
            if root <= last:
                raise ValueError("roots must be strictly ascending")
            last = root

    @staticmethod
    def from_counts(counts: dict[int, int] | Counter) -> "FactoredCharPoly":
        items = tuple(sorted((r, m) for r, m in counts.items() if m))
        return FactoredCharPoly(items)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def multiplicity(self, root: int) -> int:
        for r, m in self.factors:
            if r == root:
                return m
        return 0

    def as_counter(self) -> Counter:
        return Counter({r: m for r, m in self.factors})

    def roots_descending(self) -> list[tuple[int, int]]:
        return sorted(self.factors, reverse=True)

    def shifted(self, delta: int) -> "FactoredCharPoly":
        return FactoredCharPoly(tuple((r + delta, m) for r, m in self.factors))

    def __mul__(self, other: "FactoredCharPoly") -> "FactoredCharPoly":
        return FactoredCharPoly.from_counts(self.as_counter() + other.as_counter())

    def remove_root(self, root: int) -> "FactoredCharPoly":
        counts = self.as_counter()
        if counts[root] < 1:
            raise CharPolyContradiction(
                f"required root {root} is absent from {self.text()}"
            )
        counts[root] -= 1
        return FactoredCharPoly.from_counts(counts)

    def eigenvalues_ascending(self) -> list[int]:
        out: list[int] = []
        for r, m in self.factors:
            out.extend([r] * m)
        return out

    def text(self) -> str:
        """Factored form like ``x^1 (x-8)^7``, nonzero roots descending."""
        if not self.factors:
            return "1"
        parts = []
        zero = self.multiplicity(0)
        if zero:
            parts.append(f"x^{zero}")
        for r, m in self.roots_descending():
            if r != 0:
                parts.append(f"(x-{r})^{m}")
        return " ".join(parts)

    def to_json_list(self) -> list[list[int]]:
        return [[r, m] for r, m in self.roots_descending()]


def clique_charpoly(k: int) -> FactoredCharPoly:
    """Laplacian characteristic polynomial of the complete graph on k vertices."""
    if k < 0:
        raise ValueError("clique size must be non-negative")
    if k == 0:
        return FactoredCharPoly(())
    if k == 1:
        return FactoredCharPoly(((0, 1),))
    return FactoredCharPoly(((0, 1), (k, k - 1)))


def union_charpoly(parts: Iterable[FactoredCharPoly]) -> FactoredCharPoly:
    """Characteristic polynomial of a disjoint union: multiplicities add."""
    counts: Counter = Counter()
    for p in parts:
        counts += p.as_counter()
    return FactoredCharPoly.from_counts(counts)


def join_charpoly(p1: FactoredCharPoly, n1: int, p2: FactoredCharPoly, n2: int) -> FactoredCharPoly:
    """Characteristic polynomial of a join of disjoint graphs.

    Shift the first polynomial's roots by n2 and the second's by n1,
    merge, add roots 0 and n1+n2, then cancel one occurrence each of n1
    and n2.  A missing cancellation root means the inputs were not
    Laplacian characteristic polynomials of graphs of the stated sizes.
    """
    for p, n, name in ((p1, n1, "first"), (p2, n2, "second")):
        if n < 0:
            raise ValueError("vertex counts must be non-negative")
        if p.degree != n:
            raise ValueError(
                f"{name} polynomial has degree {p.degree}, expected {n}"
            )
        if p.factors and p.factors[-1][0] > n:
            raise ValueError(
                f"{name} polynomial has a root above its vertex count {n}"
            )
    counts = p1.shifted(n2).as_counter() + p2.shifted(n1).as_counter()
    counts[0] += 1
    counts[n1 + n2] += 1
    for r in (n1, n2):
        if counts[r] < 1:
            raise CharPolyContradiction(
                f"join formula needs root {r} but it is absent"
            )
        counts[r] -= 1
    return FactoredCharPoly.from_counts(counts)


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Spectrum:
    """Certified integer eigenvalues plus (possibly) numeric residuals.

    ``exact`` holds every integer eigenvalue with its exact multiplicity.
    For an exact spectrum the multiplicities sum to n and ``numeric`` is
    empty; otherwise ``numeric`` lists the remaining, certified
    non-integer eigenvalues as floats, sorted descending.
    """

    n: int
    exact: FactoredCharPoly
    numeric: tuple[float, ...] = ()
    tolerance: float = ABSORB_TOL

    def __post_init__(self):
        if self.exact.degree + len(self.numeric) != self.n:
            raise ValueError("multiplicities plus numeric count must equal n")
        if any(v < -1e-8 for v in self.numeric):
            raise ValueError("numeric eigenvalue below zero beyond tolerance")
        certified = [r for r, _ in self.exact.factors]
        for v in self.numeric:
            if any(abs(v - r) < self.tolerance for r in certified):
                raise ValueError(
                    f"numeric eigenvalue {v} within tolerance of a certified integer"
                )

    @property
    def is_exact(self) -> bool:
        return not self.numeric

    @property
    def kind(self) -> str:
        return "exact" if self.is_exact else "mixed"

    def eigenvalues_ascending(self) -> list[int | float]:
        vals: list[int | float] = self.exact.eigenvalues_ascending()
        vals.extend(self.numeric)
        return sorted(vals, key=float)

    def eigenvalues_descending(self) -> list[int | float]:
        return list(reversed(self.eigenvalues_ascending()))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "exact": self.exact.to_json_list(),
            "numeric": [round(v, 10) for v in self.numeric],
            "is_laplacian_integral": self.is_exact,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def table_text(self) -> str:
        """Two-row value/multiplicity table, values ascending."""
        cols: list[tuple[str, str]] = [
            (str(r), str(m)) for r, m in self.exact.factors
        ]
        cols.extend((f"{v:.8f}", "1") for v in sorted(self.numeric))
        if not cols:
            return "eigenvalue   (none)\nmultiplicity (none)"
        widths = [max(len(a), len(b)) for a, b in cols]
        top = "  ".join(a.rjust(w) for (a, _), w in zip(cols, widths))
        bot = "  ".join(b.rjust(w) for (_, b), w in zip(cols, widths))
        return f"eigenvalue    {top}\nmultiplicity  {bot}"


# ---------------------------------------------------------------------------
# the collapse engine


@dataclass(frozen=True)
class _CollapsedGraph:
    """Result of the iterated neighborhood collapse of a graph.

    ``extracted`` are eigenvalues split off with their multiplicities;
    the rest of the spectrum is exactly the spectrum of the quotient
    matrix diag(degrees) - counts.
    """

    n: int
    sizes: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    extracted: tuple[tuple[int, int], ...]  # (eigenvalue, multiplicity)

    @property
    def core_size(self) -> int:
        return len(self.sizes)

    def quotient_rows(self) -> list[list[int]]:
        m = self.core_size
        return [
            [
                (self.degrees[i] if i == j else 0) - self.counts[i][j]
                for j in range(m)
            ]
            for i in range(m)
        ]

    def symmetrized(self) -> np.ndarray:
        """Symmetric matrix similar to the quotient (same eigenvalues)."""
        m = self.core_size
        if m == 0:
            return np.zeros((0, 0))
        k = np.array(self.sizes, dtype=float)
        q = np.array(self.quotient_rows(), dtype=float)
        scale = np.sqrt(k)
        s = q * scale[:, None] / scale[None, :]
        return (s + s.T) / 2.0


def _collapse(g: Graph) -> _CollapsedGraph:
    tp = twin_partition(g)
    extracted: Counter = Counter()
    sizes = [len(c) for c in tp.classes]
    counts = [list(row) for row in tp.counts]
    degrees = list(tp.degrees)
    for i, c in enumerate(tp.classes):
        if len(c) >= 2:
            lam = degrees[i] + (1 if tp.is_clique[i] else 0)
            extracted[lam] += len(c) - 1

    while True:
        merged = _merge_pass(sizes, counts, degrees, extracted)
        if not merged:
            break

    return _CollapsedGraph(
        n=g.n,
        sizes=tuple(sizes),
        counts=tuple(tuple(row) for row in counts),
        degrees=tuple(degrees),
        extracted=tuple(sorted(extracted.items())),
    )


def _merge_pass(sizes: list[int], counts: list[list[int]], degrees: list[int],
                extracted: Counter) -> bool:
    """One pass of weighted twin merging; returns True if anything merged.

    Classes i, j of equal size merge when their count rows agree outside
    positions i, j and the within/cross counts match; the difference of
    their indicator vectors is then a Laplacian eigenvector with
    eigenvalue degree - within + cross.
    """
    m = len(sizes)
    by_key: dict[tuple[int, int, int], list[int]] = {}
    for i in range(m):
        by_key.setdefault((sizes[i], counts[i][i], degrees[i]), []).append(i)

    chunks: list[list[int]] = []
    for group in by_key.values():
        if len(group) < 2:
            continue
        remaining = list(group)
        while remaining:
            seed = remaining.pop(0)
            cand = [j for j in remaining if _mergeable(counts, seed, j)]
            if not cand:
                continue
            # classes mergeable with the seed split by their cross count;
            # only classes with equal cross counts merge with each other
            by_cross: dict[int, list[int]] = {}
            for j in cand:
                by_cross.setdefault(counts[seed][j], []).append(j)
            low = min(by_cross)
            chunks.append([seed] + by_cross.pop(low))
            for grp in by_cross.values():
                if len(grp) >= 2:
                    chunks.append(grp)
            remaining = [j for j in remaining if j not in cand]
    if not chunks:
        return False

    drop: set[int] = set()
    for chunk in chunks:
        i = chunk[0]
        cross = counts[i][chunk[1]]
        lam = degrees[i] - counts[i][i] + cross
        extracted[lam] += len(chunk) - 1
        # fold the chunk into its first member
        for j in chunk[1:]:
            drop.add(j)
        for l in range(len(sizes)):
            if l in drop or l == i:
                continue
            counts[l][i] = sum(counts[l][j] for j in chunk)
        counts[i][i] = counts[i][i] + (len(chunk) - 1) * cross
        sizes[i] *= len(chunk)

    keep = [i for i in range(len(sizes)) if i not in drop]
    new_counts = [[counts[i][j] for j in keep] for i in keep]
    sizes[:] = [sizes[i] for i in keep]
    degrees[:] = [degrees[i] for i in keep]
    counts[:] = new_counts
    return True


def _mergeable(counts: list[list[int]], i: int, j: int) -> bool:
    if counts[i][j] != counts[j][i]:
        return False
    row_i = counts[i]
    row_j = counts[j]
    for l in range(len(row_i)):
        if l == i or l == j:
            continue
        if row_i[l] != row_j[l]:
            return False
    return True


@lru_cache(maxsize=256)
def _collapse_cached(g: Graph) -> _CollapsedGraph:
    return _collapse(g)


@lru_cache(maxsize=256)
def _core_charpoly(g: Graph) -> tuple[int, ...]:
    core = _collapse_cached(g)
    return tuple(charpoly_exact(core.quotient_rows()))


# ---------------------------------------------------------------------------
# spectrum computation


def integer_eigenvalue_multiplicity(g: Graph, lam: int) -> int:
    """Exact algebraic multiplicity of the integer lam in the Laplacian spectrum.

    Computed as the exact rational nullity of (quotient - lam*I) on the
    collapsed graph plus the multiplicities split off by the collapse.
    """
    if not 0 <= lam <= g.n:
        raise ValueError(f"eigenvalue candidate {lam} outside 0..{g.n}")
    core = _collapse_cached(g)
    from_extracted = dict(core.extracted).get(lam, 0)
    rows = [
        [Fraction(x - lam) if i == j else Fraction(x) for j, x in enumerate(row)]
        for i, row in enumerate(core.quotient_rows())
    ]
    return from_extracted + rational_nullity(rows)


def spectrum(g: Graph) -> Spectrum:
    """Full Laplacian spectrum with exact integer certification.

    Every integer 0..n is certified through the exact engine; when the
    certified multiplicities sum to n the spectrum is Exact, otherwise
    the residual eigenvalues come from the Jacobi eigensolver and the
    result is Mixed.
    """
    core = _collapse_cached(g)
    counts: Counter = Counter(dict(core.extracted))
    coeffs = list(_core_charpoly(g))
    for root, mult in integer_root_multiplicities(coeffs, 0, g.n).items():
        counts[root] += mult
    exact = FactoredCharPoly.from_counts(counts)
    certified = exact.degree
    if certified > g.n:
        raise AssertionError("certified multiplicities exceed vertex count")
    if certified == g.n:
        return Spectrum(n=g.n, exact=exact)

    numeric = jacobi_eigenvalues(core.symmetrized())
    residual = _absorb_integer_roots(list(numeric), core, coeffs, g.n)
    if len(residual) != g.n - certified:
        raise AssertionError("numeric residual does not match certified deficit")
    return Spectrum(
        n=g.n,
        exact=exact,
        numeric=tuple(sorted((float(v) for v in residual), reverse=True)),
    )


def _absorb_integer_roots(values: list[float], core: _CollapsedGraph,
                          coeffs: list[int], n: int) -> list[float]:
    """Remove the quotient's certified integer roots from its numeric spectrum."""
    for root, mult in integer_root_multiplicities(coeffs, 0, n).items():
        for _ in range(mult):
            idx = min(range(len(values)), key=lambda i: abs(values[i] - root))
            if abs(values[idx] - root) > ABSORB_TOL:
                raise AssertionError(
                    f"certified root {root} not matched by the numeric solver"
                )
            values.pop(idx)
    return values


# ---------------------------------------------------------------------------
# derived quantities


def algebraic_connectivity(s: Spectrum) -> int | float:
    """Second-smallest Laplacian eigenvalue; an int when certified exactly."""
    if s.n < 2:
        raise ValueError("algebraic connectivity requires at least 2 vertices")
    return s.eigenvalues_ascending()[1]


def spectral_radius(s: Spectrum) -> int | float:
    if s.n < 1:
        raise ValueError("spectral radius requires a nonempty graph")
    return s.eigenvalues_descending()[0]


def spectral_radius_multiplicity(s: Spectrum) -> int:
    """Multiplicity of the largest Laplacian eigenvalue."""
    if s.n < 1:
        raise ValueError("spectral radius requires a nonempty graph")
    top = s.eigenvalues_descending()[0]
    if isinstance(top, int):
        return s.exact.multiplicity(top)
    return sum(1 for v in s.numeric if abs(v - top) <= s.tolerance)


def complement_spectrum(s: Spectrum) -> Spectrum:
    """Spectrum of the complement graph, from an exact spectrum.

    One zero eigenvalue stays; every other eigenvalue maps to n - value.
    """
    if not s.is_exact:
        raise ValueError("complement mapping requires an exact spectrum")
    if s.n == 0:
        return s
    counts = s.exact.as_counter()
    if counts[0] < 1:
        raise ValueError("an exact Laplacian spectrum must contain 0")
    counts[0] -= 1
    mapped: Counter = Counter()
    for r, m in counts.items():
        if m:
            if r > s.n:
                raise ValueError(f"eigenvalue {r} above vertex count {s.n}")
            mapped[s.n - r] += m
    mapped[0] += 1
    return Spectrum(n=s.n, exact=FactoredCharPoly.from_counts(mapped))


def max_component_radius(parts: Sequence[Spectrum]) -> int | float:
    """Largest spectral radius across component spectra."""
    if not parts:
        raise ValueError("max_component_radius requires at least one component")
    return max((spectral_radius(p) for p in parts), key=float)


# ---------------------------------------------------------------------------
# dense oracles (independent of the collapse engine)


def dense_nullity(g: Graph, lam: int) -> int:
    """Nullity of L - lam*I by exact elimination on the full matrix."""
    mat = laplacian(g).minus_scaled_identity(lam)
    return mat.nullity()


def dense_numeric_eigenvalues(g: Graph) -> np.ndarray:
    """All Laplacian eigenvalues by Jacobi iteration on the full matrix."""
    a = np.zeros((g.n, g.n))
    for v in range(g.n):
        a[v, v] = g.degree(v)
        for u in g.neighbors(v):
            a[v, u] = -1.0
    return jacobi_eigenvalues(a)
