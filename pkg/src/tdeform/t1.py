"""Graph machinery spanning the infinitesimal deformations of a smooth
complete toric variety in a fixed degree.

For a degree vector R and a ray rho with <rho, R> = 1, the deformation
graph has as vertices the other rays pairing positively with R, with edges
between rays spanning a common cone.  Rescaling embeds the graph into the
slice at 0 of the downgrade taken with section z = rho; moving the cells
that meet one connected component yields an admissible one-parameter
decomposition, and these decompositions span the degree -R part of the
space of infinitesimal deformations.  The dimension of that space is the
sum over qualifying rays of (number of components - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decompose import SliceDecomposition
from .divisors import ZERO, downgrade
from .errors import DomainError
from .fans import require_smooth_complete
from .geometry import Polyhedron
from .kodaira import indicator_values, ks_cocycle_toric, phi
from .linalg import as_ints, dot, matrix_rank_fraction


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return [frozenset(v) for v in out.values()]


@dataclass
class DeformationGraph:
    rho: int
    degree_vector: tuple
    vertices: tuple
    edges: tuple
    components: tuple  # frozensets of ray indices, sorted by min element


def build_graph(fan, rho, R) -> DeformationGraph:
    """Deformation graph of the ray rho in degree -R."""
    R = as_ints(R)
    if dot(fan.rays[rho], R) != 1:
        raise DomainError(f"ray {rho} does not pair to 1 with {R}")
    verts = [i for i, ray in enumerate(fan.rays) if i != rho and dot(ray, R) > 0]
    uf = _UnionFind(verts)
    edges = []
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            i, j = verts[a], verts[b]
            if any(i in c and j in c for c in fan.max_cones):
                edges.append((i, j))
                uf.union(i, j)
    components = tuple(sorted(uf.groups(), key=min))
    return DeformationGraph(rho, tuple(R), tuple(verts), tuple(edges), components)


def omega(fan, R) -> tuple:
    """Rays pairing to 1 with R whose deformation graph is nonempty."""
    R = as_ints(R)
    out = []
    for i, ray in enumerate(fan.rays):
        if dot(ray, R) != 1:
            continue
        if any(j != i and dot(r, R) > 0 for j, r in enumerate(fan.rays)):
            g = build_graph(fan, i, R)
            if g.vertices:
                out.append(i)
    return tuple(out)


def t1_dimension(fan, R) -> int:
    """Dimension of the degree -R infinitesimal deformations (smooth complete)."""
    require_smooth_complete(fan)
    total = 0
    for rho in omega(fan, R):
        total += len(build_graph(fan, rho, R).components) - 1
    return total


def embedded_vertices(dg, component):
    """Slice positions of a component: s(tau / <tau, R>) in kernel coordinates."""
    out = []
    for i in sorted(component):
        ray = dg.fan.rays[i]
        pairing = dot(ray, dg.degree_vector)
        scaled = tuple(Fraction(x, pairing) for x in ray)
        out.append(dg.to_subcoords(scaled))
    return out


def span_decomposition(fan, R, rho, component, dg=None) -> SliceDecomposition:
    """One-parameter decomposition moving the cells that meet the component.

    The downgrade must use section z = rho; rows whose coefficient at 0
    contains an embedded vertex of the component put the whole coefficient
    into column 1 with the tail in column 0, all other rows do the
    opposite.
    """
    if dg is None:
        dg = downgrade(fan, R, z=fan.rays[rho])
    marks = embedded_vertices(dg, component)
    rows = {}
    for i, d in enumerate(dg.dfan.pdivs):
        c = d.coeff(ZERO)
        if c.empty:
            rows[i] = (c, c)
            continue
        trivial = Polyhedron.trivial(d.tail)
        hit = any(c.contains_point(v) for v in marks)
        rows[i] = (trivial, c) if hit else (c, trivial)
    return SliceDecomposition(ZERO, rows, 2)


@dataclass
class SpanGenerator:
    rho: int
    component: frozenset
    decomposition: SliceDecomposition
    cocycle: object


@dataclass
class SpanReport:
    degree_vector: tuple
    omega: tuple
    graphs: dict
    generators: tuple
    rank: int
    t1_dim: int


def span_report(fan, R) -> SpanReport:
    """All spanning deformations in degree -R with their cocycles.

    The rank of the spanned space is computed by exact linear algebra on
    the entry tables: the per-ray column sums of the generator tables are
    exactly the tables of constant cochains, which map to zero classes, so
    the spanned dimension is rank(all tables) - rank(column sums).
    """
    require_smooth_complete(fan)
    R = as_ints(R)
    om = omega(fan, R)
    graphs = {rho: build_graph(fan, rho, R) for rho in om}
    generators = []
    tables = []
    kernel_tables = []
    for rho in om:
        dg = downgrade(fan, R, z=fan.rays[rho])
        per_rho = []
        for comp in graphs[rho].components:
            sd = span_decomposition(fan, R, rho, comp, dg=dg)
            cc = ks_cocycle_toric(dg, sd)
            generators.append(SpanGenerator(rho, comp, sd, cc))
            per_rho.append(cc.table_vector())
            tables.append(cc.table_vector())
        ksum = tuple(sum(col) for col in zip(*per_rho))
        kernel_tables.append(ksum)
    rank = matrix_rank_fraction(tables) - matrix_rank_fraction(kernel_tables)
    return SpanReport(
        degree_vector=tuple(R),
        omega=om,
        graphs=graphs,
        generators=tuple(generators),
        rank=rank,
        t1_dim=t1_dimension(fan, R),
    )


def indicator_cocycle(fan, R, rho, component):
    """phi of the component indicator; equals the cocycle of the matching
    span decomposition entry for entry."""
    graph = build_graph(fan, rho, R)
    return phi(fan, R, rho, indicator_values(graph, component))
