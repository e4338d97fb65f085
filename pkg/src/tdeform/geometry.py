"""Exact rational cones and polyhedra.

A ``Cone`` stores two canonical integer vector lists: ``rays`` generates the
cone and ``facets`` generates its dual, so dualizing is a swap and
structural equality is list equality.  Lineality is encoded inside the
generator list as +-pairs of a canonical subspace basis together with the
extreme rays of the pointed part ``C âˆ© lineality(C)^perp``.

A ``Polyhedron`` is conv(vertices) + tail with a pointed tail cone; the
empty polyhedron is a distinguished value.  All canonicalization funnels
through the homogenization cone in rank + 1, whose extreme rays at height
one are exactly the vertices and at height zero exactly the tail rays.

Double description runs by enumerating (d-1)-subsets of the constraints
and taking generalized cross products; at desk scale (rank <= 5 after
homogenization) this is fast, integer-exact and easy to trust.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import (
    EmptyInput,
    NonPointedTail,
    NotAVertex,
    RankMismatch,
    UnboundedBelow,
)
from .linalg import (
    as_fractions,
    cross_kernel,
    dot,
    is_integral,
    kernel_basis,
    max_minor_gcd,
    primitive,
    rank as mat_rank,
    row_basis,
    unit,
    vadd,
    vsub,
    vzero,
)


_DUAL_CACHE = {}


def _dual_generator_list(gens, n):
    """Canonical generator list of {u : <g, u> >= 0 for all g in gens}.

    gens are arbitrary rational vectors; the result is a sorted tuple of
    primitive integer vectors: a +-basis of the lineality space followed by
    the extreme rays of the pointed part, merged and sorted.  Results are
    cached on the cleaned generator set (everything is immutable).
    """
    cleaned = []
    seen = set()
    for g in gens:
        p = primitive(g)
        if any(p) and p not in seen:
            seen.add(p)
            cleaned.append(p)
    key = (tuple(sorted(cleaned)), n)
    hit = _DUAL_CACHE.get(key)
    if hit is not None:
        return hit
    result = _dual_generator_core(cleaned, n)
    _DUAL_CACHE[key] = result
    return result


def _dual_generator_core(cleaned, n):
    if not cleaned:
        out = []
        for i in range(n):
            e = unit(i, n)
            out.append(e)
            out.append(tuple(-x for x in e))
        return tuple(sorted(out))

    lin = kernel_basis(cleaned, n)
    span = row_basis(cleaned)
    d = len(span)
    rays = set()
    if d > 0:
        m = [[dot(g, b) for b in span] for g in cleaned]
        if d == 1:
            for cand in ((1,), (-1,)):
                if all(row[0] * cand[0] >= 0 for row in m):
                    rays.add(cand)
        else:
            for subset in combinations(range(len(m)), d - 1):
                v = cross_kernel([m[i] for i in subset], d)
                if not any(v):
                    continue
                pairings = [dot(row, v) for row in m]
                if all(p >= 0 for p in pairings):
                    rays.add(primitive(v))
                elif all(p <= 0 for p in pairings):
                    rays.add(primitive(tuple(-x for x in v)))
    out = []
    for b in lin:
        out.append(b)
        out.append(tuple(-x for x in b))
    for v in rays:
        u = tuple(sum(v[k] * span[k][i] for k in range(d)) for i in range(n))
        out.append(primitive(u))
    return tuple(sorted(set(out)))


_CONE_CACHE = {}


class Cone:
    """Rational polyhedral cone with canonical double description."""

    __slots__ = ("rank", "rays", "facets")

    def __init__(self, rank, rays, facets):
        self.rank = rank
        self.rays = tuple(rays)
        self.facets = tuple(facets)

    @staticmethod
    def from_rays(rank, vectors):
        key = ("R", rank, tuple(sorted({primitive(v) for v in vectors if any(primitive(v))})))
        hit = _CONE_CACHE.get(key)
        if hit is None:
            facets = _dual_generator_list(list(vectors), rank)
            rays = _dual_generator_list(facets, rank)
            hit = Cone(rank, rays, facets)
            _CONE_CACHE[key] = hit
        return hit

    @staticmethod
    def from_facets(rank, vectors):
        key = ("F", rank, tuple(sorted({primitive(v) for v in vectors if any(primitive(v))})))
        hit = _CONE_CACHE.get(key)
        if hit is None:
            rays = _dual_generator_list(list(vectors), rank)
            facets = _dual_generator_list(rays, rank)
            hit = Cone(rank, rays, facets)
            _CONE_CACHE[key] = hit
        return hit

    @staticmethod
    def zero(rank):
        return Cone.from_rays(rank, [])

    @staticmethod
    def full(rank):
        return Cone.from_facets(rank, [])

    def dual(self):
        return Cone(self.rank, self.facets, self.rays)

    @property
    def dim(self):
        return mat_rank(list(self.rays))

    @property
    def pointed(self):
        rayset = set(self.rays)
        return not any(tuple(-x for x in r) in rayset for r in self.rays)

    @property
    def is_zero(self):
        return not self.rays

    def contains(self, v):
        return all(dot(v, f) >= 0 for f in self.facets)

    def relint_contains(self, v):
        facetset = set(self.facets)
        for f in self.facets:
            p = dot(v, f)
            if tuple(-x for x in f) in facetset:
                if p != 0:
                    return False
            elif p <= 0:
                return False
        return True

    def dual_contains(self, u):
        """Whether u lies in the dual cone."""
        return all(dot(r, u) >= 0 for r in self.rays)

    def face(self, u):
        """The face on which u (an element of the dual) vanishes."""
        if not self.dual_contains(u):
            raise UnboundedBelow(f"{u} is not in the dual cone")
        iu = primitive(u)
        if not any(iu):
            return self
        return Cone.from_facets(self.rank, list(self.facets) + [iu, tuple(-x for x in iu)])

    def intersect(self, other):
        self._check_rank(other)
        return Cone.from_facets(self.rank, list(self.facets) + list(other.facets))

    def sum(self, other):
        self._check_rank(other)
        return Cone.from_rays(self.rank, list(self.rays) + list(other.rays))

    def is_face_of(self, other):
        """Whether this cone is a face (possibly improper) of other."""
        if self.rank != other.rank:
            return False
        if not all(other.contains(r) for r in self.rays):
            return False
        tight = [f for f in other.facets if all(dot(r, f) == 0 for r in self.rays)]
        extra = []
        for f in tight:
            extra.append(f)
            extra.append(tuple(-x for x in f))
        candidate = Cone.from_facets(self.rank, list(other.facets) + extra)
        return candidate == self

    def proper_faces(self):
        """All faces except the cone itself, deduplicated."""
        faces = {}
        facetset = set(self.facets)
        hull_pairs = {f for f in self.facets if tuple(-x for x in f) in facetset}
        genuine = [f for f in self.facets if f not in hull_pairs]
        for r in range(1, len(genuine) + 1):
            for subset in combinations(genuine, r):
                extra = []
                for f in subset:
                    extra.append(f)
                    extra.append(tuple(-x for x in f))
                c = Cone.from_facets(self.rank, list(self.facets) + extra)
                if c != self:
                    faces[c.rays] = c
        if self.pointed and self.rays:
            faces[()] = Cone.zero(self.rank)
        return list(faces.values())

    def facet_cones(self):
        """Codimension-one faces."""
        d = self.dim
        return [f for f in self.proper_faces() if f.dim == d - 1]

    def generic_relint_point(self):
        """Integer point in the relative interior (sum of pointed-part rays)."""
        rayset = set(self.rays)
        total = vzero(self.rank)
        for r in self.rays:
            if tuple(-x for x in r) not in rayset:
                total = vadd(total, r)
        return total

    def lattice_index(self):
        """gcd of maximal minors of the ray matrix; 1 means unimodular."""
        return max_minor_gcd([list(r) for r in self.rays])

    def is_smooth(self):
        return self.pointed and len(self.rays) == self.dim and self.lattice_index() == 1

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def sort_key(self):
        return (self.rank, self.rays)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.rank == other.rank and self.rays == other.rays

    def __hash__(self):
        return hash((self.rank, self.rays))

    def __repr__(self):
        return f"Cone(rank={self.rank}, rays={list(self.rays)})"


_POLY_OP_CACHE = {}
_TRIVIAL_CACHE = {}


class Polyhedron:
    """conv(vertices) + pointed tail cone, or the distinguished empty value."""

    __slots__ = ("rank", "empty", "vertices", "tail", "_hcone")

    def __init__(self, rank, empty, vertices, tail, hcone=None):
        self.rank = rank
        self.empty = empty
        self.vertices = tuple(vertices)
        self.tail = tail
        self._hcone = hcone

    @staticmethod
    def make_empty(rank):
        return Polyhedron(rank, True, (), Cone.zero(rank))

    @staticmethod
    def from_generators(rank, points, tail):
        """Polyhedron conv(points) + tail; points need not be vertices."""
        if isinstance(tail, (list, tuple)):
            tail = Cone.from_rays(rank, tail)
        if not tail.pointed:
            raise NonPointedTail(f"tail cone with rays {tail.rays} is not pointed")
        points = list(points)
        if not points:
            return Polyhedron.make_empty(rank)
        gens = [primitive(tuple(as_fractions(p)) + (Fraction(1),)) for p in points]
        gens += [r + (0,) for r in tail.rays]
        hcone = Cone.from_rays(rank + 1, gens)
        return Polyhedron._from_hcone(rank, hcone)

    @staticmethod
    def from_inequalities(rank, inequalities):
        """Polyhedron {x : <a, x> + b >= 0 for (a, b) in inequalities}."""
        facets = [primitive(tuple(as_fractions(a)) + (Fraction(b),)) for a, b in inequalities]
        facets.append(unit(rank, rank + 1))
        hcone = Cone.from_facets(rank + 1, facets)
        if not hcone.pointed:
            raise NonPointedTail("inequalities describe a polyhedron without vertices")
        if not any(r[rank] > 0 for r in hcone.rays):
            return Polyhedron.make_empty(rank)
        return Polyhedron._from_hcone(rank, hcone)

    @staticmethod
    def _from_hcone(rank, hcone):
        vertices = []
        tail_rays = []
        for r in hcone.rays:
            h = r[rank]
            if h > 0:
                vertices.append(tuple(Fraction(x, h) for x in r[:rank]))
            else:
                tail_rays.append(r[:rank])
        tail = Cone.from_rays(rank, tail_rays)
        return Polyhedron(rank, False, sorted(vertices), tail, hcone)

    @staticmethod
    def point(v):
        return Polyhedron.from_generators(len(v), [v], Cone.zero(len(v)))

    @staticmethod
    def trivial(cone):
        """The cone itself as a polyhedron (single vertex at the origin)."""
        hit = _TRIVIAL_CACHE.get(cone)
        if hit is None:
            hit = Polyhedron.from_generators(cone.rank, [vzero(cone.rank)], cone)
            _TRIVIAL_CACHE[cone] = hit
        return hit

    @property
    def hcone(self):
        """Homogenization cone in rank + 1 (cone over the polyhedron at height 1)."""
        if self.empty:
            raise EmptyInput("empty polyhedron has no homogenization cone")
        if self._hcone is None:
            gens = [primitive(tuple(as_fractions(v)) + (Fraction(1),)) for v in self.vertices]
            gens += [r + (0,) for r in self.tail.rays]
            self._hcone = Cone.from_rays(self.rank + 1, gens)
        return self._hcone

    # -- queries ---------------------------------------------------------

    @property
    def dim(self):
        if self.empty:
            return -1
        v0 = self.vertices[0]
        rows = [vsub(v, v0) for v in self.vertices[1:]] + list(self.tail.rays)
        return mat_rank(rows)

    @property
    def bounded(self):
        return self.empty or self.tail.is_zero

    def is_lattice(self):
        """Whether all vertices are lattice points."""
        return not self.empty and all(is_integral(v) for v in self.vertices)

    def contains_point(self, x):
        if self.empty:
            return False
        hx = tuple(as_fractions(x)) + (Fraction(1),)
        return all(dot(hx, f) >= 0 for f in self.hcone.facets)

    def contains(self, other):
        """Whether other (a Polyhedron) is a subset of self."""
        self._check_rank(other)
        if other.empty:
            return True
        if self.empty:
            return False
        for v in other.vertices:
            if not self.contains_point(v):
                return False
        for r in other.tail.rays:
            if not all(dot(r + (0,), f) >= 0 for f in self.hcone.facets) :
                return False
        return True

    def is_face_of(self, other):
        """Whether self is a face of other; the empty set is a face of everything."""
        self._check_rank(other)
        if self.empty:
            return True
        if other.empty:
            return False
        key = ("face", self.sort_key(), other.sort_key())
        hit = _POLY_OP_CACHE.get(key)
        if hit is not None:
            return hit
        out = self._is_face_of(other)
        _POLY_OP_CACHE[key] = out
        return out

    def _is_face_of(self, other):
        if not other.contains(self):
            return False
        gens = [tuple(as_fractions(v)) + (Fraction(1),) for v in self.vertices]
        gens += [as_fractions(r) + (Fraction(0),) for r in self.tail.rays]
        tight = [f for f in other.hcone.facets if all(dot(g, f) == 0 for g in gens)]
        ineqs = [(f[:-1], f[-1]) for f in other.hcone.facets]
        for f in tight:
            ineqs.append((f[:-1], f[-1]))
            ineqs.append((tuple(-x for x in f[:-1]), -f[-1]))
        candidate = Polyhedron.from_inequalities(self.rank, ineqs)
        return candidate == self

    # -- operations ------------------------------------------------------

    def minkowski(self, other):
        self._check_rank(other)
        if self.empty or other.empty:
            return Polyhedron.make_empty(self.rank)
        key = ("mink",) + tuple(sorted((self.sort_key(), other.sort_key())))
        hit = _POLY_OP_CACHE.get(key)
        if hit is not None:
            return hit
        points = [vadd(v, w) for v in self.vertices for w in other.vertices]
        out = Polyhedron.from_generators(self.rank, points, self.tail.sum(other.tail))
        _POLY_OP_CACHE[key] = out
        return out

    def intersect(self, other):
        self._check_rank(other)
        if self.empty or other.empty:
            return Polyhedron.make_empty(self.rank)
        key = ("meet",) + tuple(sorted((self.sort_key(), other.sort_key())))
        hit = _POLY_OP_CACHE.get(key)
        if hit is not None:
            return hit
        facets = list(self.hcone.facets) + list(other.hcone.facets)
        hcone = Cone.from_facets(self.rank + 1, facets)
        if not any(r[self.rank] > 0 for r in hcone.rays):
            out = Polyhedron.make_empty(self.rank)
        else:
            out = Polyhedron._from_hcone(self.rank, hcone)
        _POLY_OP_CACHE[key] = out
        return out

    def face(self, u):
        """Face on which u attains its minimum; u must lie in the dual tail cone."""
        if self.empty:
            raise EmptyInput("face of the empty polyhedron")
        if not self.tail.dual_contains(u):
            raise UnboundedBelow(f"{u} is unbounded below on this polyhedron")
        values = [dot(v, u) for v in self.vertices]
        m = min(values)
        points = [v for v, val in zip(self.vertices, values) if val == m]
        return Polyhedron.from_generators(self.rank, points, self.tail.face(u))

    def eval_min(self, u):
        if self.empty:
            raise EmptyInput("minimum over the empty polyhedron")
        if not self.tail.dual_contains(u):
            raise UnboundedBelow(f"{u} is unbounded below on this polyhedron")
        return min(Fraction(dot(v, u)) for v in self.vertices)

    def normal_cone(self, v):
        """Normal cone of the vertex v."""
        v = as_fractions(v)
        if self.empty or v not in self.vertices:
            raise NotAVertex(f"{v} is not a vertex")
        gens = [vsub(w, v) for w in self.vertices if w != v] + list(self.tail.rays)
        return Cone.from_rays(self.rank, gens).dual()

    def normal_generic_point(self, v):
        """Rational point in the relative interior of the normal cone of v.

        The returned u satisfies face(self, u) == {v}.
        """
        return self.normal_cone(v).generic_relint_point()

    def translate(self, t):
        if self.empty:
            return self
        return Polyhedron.from_generators(self.rank, [vadd(v, t) for v in self.vertices], self.tail)

    def scale(self, k):
        """Dilation by a positive rational factor (tail cone is unchanged)."""
        if k <= 0:
            raise ValueError("scale factor must be positive")
        if self.empty:
            return self
        return Polyhedron.from_generators(
            self.rank, [tuple(k * x for x in v) for v in self.vertices], self.tail
        )

    def lattice_translate_of(self, cone):
        """The lattice vector t with self == t + cone, or None."""
        if self.empty or len(self.vertices) != 1:
            return None
        v = self.vertices[0]
        if not is_integral(v) or self.tail != cone:
            return None
        return tuple(int(x) for x in as_fractions(v))

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def sort_key(self):
        if self.empty:
            return (self.rank, 1, (), ())
        return (self.rank, 0, self.vertices, self.tail.rays)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron) or self.rank != other.rank:
            return False
        if self.empty or other.empty:
            return self.empty and other.empty
        return self.vertices == other.vertices and self.tail == other.tail

    def __hash__(self):
        if self.empty:
            return hash((self.rank, "empty"))
        return hash((self.rank, self.vertices, self.tail))

    def __repr__(self):
        if self.empty:
            return f"Polyhedron(rank={self.rank}, empty)"
        return f"Polyhedron(vertices={[tuple(map(str, v)) for v in self.vertices]}, tail={list(self.tail.rays)})"


# -- module-level operation surface ---------------------------------------

def dual_cone(c: Cone) -> Cone:
    return c.dual()


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    return p.minkowski(q)


def face(p: Polyhedron, u) -> Polyhedron:
    return p.face(u)


def intersect(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    return p.intersect(q)


def eval_min(p: Polyhedron, u) -> Fraction:
    return p.eval_min(u)


def normal_cone_generic_point(p: Polyhedron, v):
    return p.normal_generic_point(v)


def is_lattice_point(v) -> bool:
    return is_integral(v)


def is_lattice_translate_of(p: Polyhedron, c: Cone):
    return p.lattice_translate_of(c)


def is_face_of(p: Polyhedron, q: Polyhedron) -> bool:
    return p.is_face_of(q)


def contains(p: Polyhedron, q: Polyhedron) -> bool:
    return p.contains(q)


def vertices(p: Polyhedron):
    return p.vertices
