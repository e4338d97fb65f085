"""Kodaira-Spencer cocycles of locally trivial one-parameter deformations.

For a one-parameter admissible decomposition of the slice at a point P in
which every row has a summand that is a lattice translate of its tail cone,
the deformation is locally trivial and its Kodaira-Spencer image has an
explicit Cech representative over a standard affine cover: chart i carries
a sign a_i and a lattice vector lambda_i, and the entry over the pair
(i, j) is

    d_{ij} = (a_i - a_j)/2 * d/dy_P
             + y_P^{-1} * sum_k <a_i lambda_i - a_j lambda_j, e_k*> chi^{e_k*} d/dchi^{e_k*}.

In the toric case the same data, read in a basis adapted to the degree
vector R (kernel basis of R followed by a section z), gives the cocycle of
degree -R with entries a_i lambda_i' - a_j lambda_j' where
lambda_i' = (lambda_i, 1/2); entries live in one half of the big lattice.

Cocycles are stored as full antisymmetric entry tables; the derivation
formulas above are their semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .divisors import INF, P1Point, ZERO
from .errors import AssumptionViolated, DomainError, NoTrivialSummand
from .linalg import as_fractions, vadd, vscale, vsub, vzero

NEAR_P = "NEAR_P"
AWAY_P = "AWAY_P"
COMPLETE = "COMPLETE"


@dataclass(frozen=True)
class Chart:
    pdiv: int
    tag: str


@dataclass
class ChartCover:
    """Standard affine cover used for the Cech computation.

    Charts 1..l0 restrict the affine-locus divisors near P, the next
    l1 - l0 are the complete-locus divisors themselves, and the final l0
    charts are the affine-locus divisors away from P.
    """

    point: P1Point
    charts: tuple
    l0: int
    l1: int


def opposite_point(p: P1Point) -> P1Point:
    """The second distinguished point: infinity, or zero when P is infinity."""
    return ZERO if p.is_infinity else INF


def build_cover(xi, point) -> ChartCover:
    """Deterministic chart cover; order within each block follows xi.pdivs.

    Requires every complete-locus divisor to have nontrivial coefficients
    only at P and at the opposite point, and every maximal divisor to have a
    full-dimensional slice somewhere.
    """
    point = P1Point.parse(point)
    other = opposite_point(point)
    full_affine = []
    full_complete = []
    for i, d in enumerate(xi.pdivs):
        full_dim = any(not c.empty and c.dim == xi.rank for c in
                       [d.coeff(q) for q in set(d.coeffs) | {point, other}])
        if not d.has_affine_locus:
            bad = [q for q in d.coeffs if q not in (point, other)]
            if bad:
                raise AssumptionViolated(
                    f"divisor {i} has a nontrivial coefficient at {bad[0]}, "
                    f"allowed points are {point} and {other}"
                )
        if not full_dim:
            if xi.maximal[i]:
                raise AssumptionViolated(f"maximal divisor {i} has no full-dimensional slice")
            continue
        (full_affine if d.has_affine_locus else full_complete).append(i)
    charts = [Chart(i, NEAR_P) for i in full_affine]
    charts += [Chart(i, COMPLETE) for i in full_complete]
    charts += [Chart(i, AWAY_P) for i in full_affine]
    return ChartCover(point, tuple(charts), len(full_affine), len(full_affine) + len(full_complete))


def row_translation(target, col0, col1):
    """Sign and translation vector of one decomposition row.

    Returns (a, lambda) with target = lambda + col0 when a = +1 and
    target = lambda + col1 when a = -1.  A row whose columns are both
    lattice translates of the tail prefers the branch with zero
    translation (sign -1 on hit rows of moving-star decompositions, which
    matches the graph-indicator description of these cocycles); remaining
    ties go to the +1 branch.
    """
    if target.empty:
        return 1, None
    tail = target.tail
    t_plus = col1.lattice_translate_of(tail)
    t_minus = col0.lattice_translate_of(tail)
    candidates = []
    if t_plus is not None:
        candidates.append((1, t_plus))
    if t_minus is not None:
        candidates.append((-1, t_minus))
    if not candidates:
        return None
    zero = [c for c in candidates if not any(c[1])]
    if zero:
        return max(zero)  # (+1, 0) beats (-1, 0) when both columns are the tail
    return candidates[0]


@dataclass
class TranslationData:
    """Per-chart signs and translations aligned with a ChartCover."""

    entries: tuple

    def __iter__(self):
        return iter(self.entries)


def translation_data(sd, cover: ChartCover, xi) -> TranslationData:
    """Signs and translations for each chart of the cover."""
    if sd.columns != 2:
        raise DomainError("a one-parameter decomposition is required")
    entries = []
    for chart in cover.charts:
        if chart.tag == AWAY_P:
            entries.append((1, vzero(xi.rank)))
            continue
        target = xi.pdivs[chart.pdiv].coeff(cover.point)
        row = sd.rows[chart.pdiv]
        res = row_translation(target, row[0], row[1])
        if res is None:
            raise NoTrivialSummand(chart.pdiv)
        a, lam = res
        entries.append((a, vzero(xi.rank) if lam is None else lam))
    return TranslationData(tuple(entries))


@dataclass
class CechCocycle:
    """Antisymmetric entry table over an ordered chart list.

    kind 'general': entries (i, j) -> (b, c) with b rational and c a vector
    in the acting lattice; semantics as in the module docstring.

    kind 'toric': entries (i, j) -> c in adapted coordinates (all entries in
    half the lattice); degree is the actual deformation degree -R and frame
    maps adapted coordinates back to the big lattice.
    """

    kind: str
    charts: tuple
    entries: dict
    point: object = None
    degree: tuple = ()
    frame: tuple = ()

    def entry(self, i, j):
        if i == j:
            zero = self.entries[next(iter(self.entries))] if self.entries else None
            if self.kind == "general":
                n = len(zero[1]) if zero else 0
                return (Fraction(0), vzero(n))
            return vzero(len(zero) if zero else 0)
        if (i, j) in self.entries:
            return self.entries[(i, j)]
        flipped = self.entries[(j, i)]
        if self.kind == "general":
            return (-flipped[0], vscale(-1, flipped[1]))
        return vscale(-1, flipped)

    def validate(self):
        """Antisymmetry holds by construction; check the cocycle identity."""
        m = len(self.charts)
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    if self.kind == "general":
                        bij, cij = self.entry(i, j)
                        bjk, cjk = self.entry(j, k)
                        bik, cik = self.entry(i, k)
                        if bij + bjk != bik or vadd(cij, cjk) != cik:
                            return False
                    else:
                        if vadd(self.entry(i, j), self.entry(j, k)) != self.entry(i, k):
                            return False
        return True

    def is_zero(self):
        if self.kind == "general":
            return all(b == 0 and not any(c) for b, c in self.entries.values())
        return all(not any(c) for c in self.entries.values())

    def to_standard(self, c):
        """Map an adapted-coordinate entry to big-lattice coordinates."""
        out = tuple(Fraction(0) for _ in self.frame[0])
        for coef, vec in zip(c, self.frame):
            out = vadd(out, vscale(coef, vec))
        return out

    def table_vector(self):
        """Flattened upper-triangle entry list in big-lattice coordinates."""
        m = len(self.charts)
        flat = []
        for i in range(m):
            for j in range(i + 1, m):
                flat.extend(self.to_standard(self.entry(i, j)))
        return tuple(flat)

    def __eq__(self, other):
        if not isinstance(other, CechCocycle) or self.kind != other.kind:
            return False
        if self.charts != other.charts or self.degree != other.degree:
            return False
        m = len(self.charts)
        return all(
            self.entry(i, j) == other.entry(i, j)
            for i in range(m)
            for j in range(i + 1, m)
        )


def ks_cocycle_tvar(xi, point, sd) -> CechCocycle:
    """General-case Kodaira-Spencer representative over the standard cover."""
    cover = build_cover(xi, point)
    td = translation_data(sd, cover, xi)
    entries = {}
    data = list(td)
    for i in range(len(data)):
        for j in range(i + 1, len(data)):
            ai, li = data[i]
            aj, lj = data[j]
            b = Fraction(ai - aj, 2)
            c = vsub(vscale(ai, as_fractions(li)), vscale(aj, as_fractions(lj)))
            entries[(i, j)] = (b, c)
    return CechCocycle("general", cover.charts, entries, point=cover.point)


def ks_cocycle_toric(dg, sd) -> CechCocycle:
    """Toric Kodaira-Spencer representative, one chart per maximal cone.

    dg is a DowngradeResult whose section z was used to express sd (the
    one-parameter decomposition of the slice at 0); entries are stored in
    the adapted frame (kernel basis then z), where the last coordinate of
    a_i lambda_i' is a_i/2.
    """
    if sd.columns != 2:
        raise DomainError("a one-parameter decomposition is required")
    xi = dg.dfan
    point = P1Point.parse(sd.point)
    xdata = []
    for k, pdiv_index in enumerate(dg.cone_pdivs):
        target = xi.pdivs[pdiv_index].coeff(point)
        row = sd.rows[pdiv_index]
        res = row_translation(target, row[0], row[1])
        if res is None:
            raise NoTrivialSummand(pdiv_index)
        a, lam = res
        lam = vzero(xi.rank) if lam is None else lam
        xdata.append(vscale(a, as_fractions(lam) + (Fraction(1, 2),)))
    entries = {}
    m = len(xdata)
    for i in range(m):
        for j in range(i + 1, m):
            entries[(i, j)] = vsub(xdata[i], xdata[j])
    charts = tuple(range(m))
    degree = tuple(-x for x in dg.degree_vector)
    return CechCocycle("toric", charts, entries, degree=degree, frame=dg.frame)


def phi(fan, R, rho, values) -> CechCocycle:
    """Cech cocycle of a component cochain on the deformation graph of rho.

    values maps each connected component (frozenset of ray indices) to a
    rational; a maximal cone missing the graph contributes the value 1.
    Entries are (f(sigma_i) - f(sigma_j))/2 * rho in the frame adapted to
    z = rho, i.e. a multiple of the last frame vector.
    """
    from .linalg import as_ints, dot, kernel_lattice_basis
    from .t1 import build_graph

    graph = build_graph(fan, rho, R)
    comp_of = {}
    for comp in graph.components:
        for v in comp:
            comp_of[v] = comp
    fvals = []
    for idx in fan.max_cones:
        comps_here = {frozenset(comp_of[i]) for i in idx if i in comp_of}
        if not comps_here:
            fvals.append(Fraction(1))
        elif len(comps_here) > 1:
            raise DomainError("cone meets two components; the cochain value is ill defined")
        else:
            fvals.append(Fraction(values[next(iter(comps_here))]))
    n = fan.rank
    z = as_ints(fan.rays[rho])
    basis = tuple(kernel_lattice_basis(as_ints(R), z))
    frame = basis + (z,)
    entries = {}
    m = len(fvals)
    for i in range(m):
        for j in range(i + 1, m):
            half = (fvals[i] - fvals[j]) / 2
            entries[(i, j)] = tuple(Fraction(0) for _ in range(n - 1)) + (half,)
    degree = tuple(-x for x in as_ints(R))
    return CechCocycle("toric", tuple(range(m)), entries, degree=degree, frame=frame)


def indicator_values(graph, component):
    """The cochain that is -1 on the given component and +1 on the others."""
    return {
        frozenset(c): Fraction(-1) if frozenset(c) == frozenset(component) else Fraction(1)
        for c in graph.components
    }
