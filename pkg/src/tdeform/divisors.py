"""Polyhedral divisors and divisorial fans on the projective line.

A polyhedral divisor assigns to finitely many points of P^1 a polyhedron
coefficient with a common pointed tail cone (the empty set is allowed); all
other points implicitly carry the tail cone itself.  Divisorial fans are
finite intersection-closed, face-compatible collections of proper
polyhedral divisors.

The toric downgrade re-encodes a fan as such a divisorial fan: a degree
vector R and a section z with <z, R> = 1 determine the sublattice
N = ker R, the cosection s(v) = v - <v, R> z, and per maximal cone the
coefficients s(sigma cap [R = 1]) at 0 and s(sigma cap [R = -1]) at
infinity, with tail s(sigma cap R^perp).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AffineLocus,
    DomainError,
    FaceConditionViolation,
    InputError,
    RankMismatch,
    UnboundedBelow,
)
from .geometry import Cone, Polyhedron
from .linalg import (
    as_fractions,
    as_ints,
    dot,
    is_primitive,
    kernel_lattice_basis,
    solve_left,
    solve_pairing_one,
    vadd,
    vscale,
    vzero,
)


class P1Point:
    """A rational point of P^1: a rational coordinate or the point at infinity."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = None if value is None else Fraction(value)

    @property
    def is_infinity(self):
        return self.value is None

    @staticmethod
    def parse(text):
        if isinstance(text, P1Point):
            return text
        if text in ("inf", "oo", "infinity"):
            return INF
        try:
            return P1Point(Fraction(str(text)))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad point {text!r}") from exc

    def sort_key(self):
        if self.is_infinity:
            return (1, 0, 0)
        return (0, self.value.numerator, self.value.denominator)

    def __eq__(self, other):
        return isinstance(other, P1Point) and self.value == other.value

    def __hash__(self):
        return hash(("P1", self.value))

    def __str__(self):
        return "inf" if self.is_infinity else str(self.value)

    def __repr__(self):
        return f"P1Point({self})"


INF = P1Point(None)
ZERO = P1Point(0)
ONE = P1Point(1)


class QDivisor:
    """Finitely supported rational divisor on P^1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = {p: Fraction(c) for p, c in coeffs.items() if c != 0}

    def degree(self):
        return sum(self.coeffs.values(), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, QDivisor) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"{c}*[{p}]" for p, c in sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())]
        return " + ".join(terms) if terms else "0"


class PolyDivisor:
    """Formal sum of polyhedron coefficients over points of P^1, one tail cone."""

    __slots__ = ("rank", "tail", "coeffs", "_degree", "_proper")

    def __init__(self, rank, tail, coeffs):
        if not tail.pointed:
            raise DomainError("tail cone of a polyhedral divisor must be pointed")
        self.rank = rank
        self.tail = tail
        self._degree = None
        self._proper = None
        trivial = Polyhedron.trivial(tail)
        clean = {}
        for p, poly in coeffs.items():
            if poly.rank != rank:
                raise RankMismatch("coefficient rank mismatch")
            if not poly.empty and poly.tail != tail:
                raise DomainError(f"coefficient at {p} has tail {poly.tail.rays}, divisor has {tail.rays}")
            if poly != trivial:
                clean[p] = poly
        self.coeffs = clean

    @property
    def trivial_coeff(self):
        return Polyhedron.trivial(self.tail)

    def coeff(self, point):
        return self.coeffs.get(point, self.trivial_coeff)

    def points(self):
        return sorted(self.coeffs, key=P1Point.sort_key)

    @property
    def has_affine_locus(self):
        return any(poly.empty for poly in self.coeffs.values())

    # -- operations --------------------------------------------------------

    def evaluate(self, u) -> QDivisor:
        """The rational divisor P -> min <coeff_P, u>, for u in the dual tail cone."""
        if not self.tail.dual_contains(u):
            raise UnboundedBelow(f"{u} is not in the dual of the tail cone")
        out = {}
        for p, poly in self.coeffs.items():
            if poly.empty:
                continue
            out[p] = poly.eval_min(u)
        return QDivisor(out)

    def degree(self) -> Polyhedron:
        """Minkowski sum of all coefficients (complete locus only)."""
        if self.has_affine_locus:
            raise AffineLocus("degree requires a complete locus")
        if self._degree is None:
            total = self.trivial_coeff
            for poly in self.coeffs.values():
                total = total.minkowski(poly)
            self._degree = total
        return self._degree

    def is_proper(self) -> bool:
        """Positivity test making the associated affine variety well defined.

        With an affine locus the test is vacuous.  With a complete locus the
        degree must sit inside the tail cone and must not contain the
        origin; on the boundary, where the degree evaluates to zero, the
        evaluation must be a divisor of total degree zero (which then has a
        principal multiple on the line).
        """
        if self.has_affine_locus:
            return True
        if self._proper is not None:
            return self._proper
        self._proper = self._is_proper_complete()
        return self._proper

    def _is_proper_complete(self):
        deg = self.degree()
        if not Polyhedron.trivial(self.tail).contains(deg):
            return False
        if deg.contains_point(vzero(self.rank)):
            return False
        for u in self.tail.dual().rays:
            if deg.eval_min(u) == 0 and self.evaluate(u).degree() != 0:
                return False
        return True

    def intersect(self, other) -> "PolyDivisor":
        if self.rank != other.rank:
            raise RankMismatch("cannot intersect divisors of different rank")
        tail = self.tail.intersect(other.tail)
        points = set(self.coeffs) | set(other.coeffs)
        coeffs = {p: self.coeff(p).intersect(other.coeff(p)) for p in points}
        return PolyDivisor(self.rank, tail, coeffs)

    def is_face_of(self, other) -> bool:
        """Face relation: coefficient-wise faces plus the degree condition.

        The degree condition applies only when both loci are complete; with
        an affine locus the coefficient-wise check alone decides.
        """
        if self.rank != other.rank:
            return False
        if not self.trivial_coeff.is_face_of(other.trivial_coeff):
            return False
        for p in set(self.coeffs) | set(other.coeffs):
            if not self.coeff(p).is_face_of(other.coeff(p)):
                return False
        if self.has_affine_locus or other.has_affine_locus:
            return True
        meet = other.degree().intersect(Polyhedron.trivial(self.tail))
        return meet == self.degree()

    def sort_key(self):
        items = tuple(
            (p.sort_key(), self.coeffs[p].sort_key())
            for p in self.points()
        )
        return (self.rank, self.tail.sort_key(), items)

    def __eq__(self, other):
        return (
            isinstance(other, PolyDivisor)
            and self.rank == other.rank
            and self.tail == other.tail
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.rank, self.tail, tuple(sorted(((p, c) for p, c in self.coeffs.items()), key=lambda kv: kv[0].sort_key()))))

    def __repr__(self):
        parts = [f"{self.coeffs[p]!r}*[{p}]" for p in self.points()]
        return f"PolyDivisor(tail={list(self.tail.rays)}, " + (" + ".join(parts) or "trivial") + ")"


class DivisorialFan:
    """Intersection-closed, face-compatible set of proper polyhedral divisors."""

    def __init__(self, pdivs, rank):
        self.rank = rank
        self.pdivs = tuple(sorted(pdivs, key=PolyDivisor.sort_key))
        self.maximal = tuple(
            not any(other is not d and d.is_face_of(other) and d != other for other in self.pdivs)
            for d in self.pdivs
        )

    def points(self):
        pts = set()
        for d in self.pdivs:
            pts.update(d.coeffs)
        return sorted(pts, key=P1Point.sort_key)

    def slice(self, point):
        """Labeled list of coefficients at the point, in divisor order."""
        return [(i, d.coeff(point)) for i, d in enumerate(self.pdivs)]

    def slice_is_complex(self, point):
        cells = [c for _, c in self.slice(point)]
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                meet = cells[i].intersect(cells[j])
                if not (meet.is_face_of(cells[i]) and meet.is_face_of(cells[j])):
                    return False
        return True

    def index_of(self, pdiv):
        for i, d in enumerate(self.pdivs):
            if d == pdiv:
                return i
        raise InputError("divisor not in the fan")

    def __eq__(self, other):
        return (
            isinstance(other, DivisorialFan)
            and self.rank == other.rank
            and self.pdivs == other.pdivs
        )

    def __len__(self):
        return len(self.pdivs)

    def __repr__(self):
        return f"DivisorialFan(rank={self.rank}, pdivs={len(self.pdivs)})"


def build_dfan(generators, rank=None) -> DivisorialFan:
    """Closure of the generators under pairwise intersection, face-checked."""
    gens = list(generators)
    if not gens:
        raise InputError("no generators")
    if rank is None:
        rank = gens[0].rank
    elems = []
    for g in gens:
        if g not in elems:
            elems.append(g)
    i = 0
    while i < len(elems):
        j = 0
        while j < i:
            meet = elems[i].intersect(elems[j])
            if meet not in elems:
                elems.append(meet)
            j += 1
        i += 1
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            meet = elems[a].intersect(elems[b])
            if not (meet.is_face_of(elems[a]) and meet.is_face_of(elems[b])):
                raise FaceConditionViolation(a, b)
    return DivisorialFan(elems, rank)


# -- toric downgrade -------------------------------------------------------

@dataclass
class DowngradeResult:
    """Divisorial fan of a toric downgrade plus the section data.

    basis rows are a lattice basis of ker R; together with z they form the
    adapted frame of the big lattice, in which R is the last dual basis
    vector.  cone_pdivs[k] is the index (into dfan.pdivs) of the divisor of
    the k-th maximal cone.
    """

    fan: object
    degree_vector: tuple
    z: tuple
    basis: tuple
    dfan: DivisorialFan
    cone_pdivs: tuple

    @property
    def frame(self):
        return self.basis + (self.z,)

    def cosection(self, v):
        h = dot(v, self.degree_vector)
        return tuple(x - h * z for x, z in zip(as_fractions(v), self.z))

    def to_subcoords(self, v):
        """Coordinates of the cosection image in the kernel basis."""
        coords = solve_left(self.basis, self.cosection(v))
        if coords is None:
            raise DomainError(f"{v} does not project into the kernel lattice span")
        return coords

    def from_subcoords(self, x, height=0):
        """Inverse of the adapted chart: sum x_k basis_k + height * z."""
        out = vzero(len(self.z))
        for c, b in zip(x, self.basis):
            out = vadd(out, vscale(c, b))
        return vadd(out, vscale(height, self.z))


def _cone_slice(result: DowngradeResult, sigma: Cone, level: int) -> Polyhedron:
    """s(sigma cap [R = level]) in kernel-basis coordinates, level = +-1."""
    R = result.degree_vector
    n = sigma.rank
    verts = []
    for ray in sigma.rays:
        h = dot(ray, R)
        if (level > 0 and h > 0) or (level < 0 and h < 0):
            scaled = tuple(Fraction(x, abs(h)) for x in ray)
            verts.append(result.to_subcoords(scaled))
    perp = sigma.intersect(Cone.from_facets(n, [R, tuple(-x for x in R)]))
    tail = Cone.from_rays(len(result.basis), [result.to_subcoords(r) for r in perp.rays])
    if not verts:
        return Polyhedron.make_empty(len(result.basis))
    return Polyhedron.from_generators(len(result.basis), verts, tail)


def downgrade(fan, R, z=None) -> DowngradeResult:
    """Re-encode a toric fan as a divisorial fan for the subtorus ker R.

    R must be primitive; z is any lattice vector with <z, R> = 1 and
    defaults to a deterministic small solution.  All downgraded data is
    expressed in the canonical lattice basis of ker R so that two runs are
    bit-identical.
    """
    R = as_ints(R)
    if not is_primitive(R):
        raise DomainError(f"degree vector {R} is not primitive")
    if z is None:
        z = solve_pairing_one(R)
    else:
        z = as_ints(z)
        if dot(z, R) != 1:
            raise DomainError(f"section {z} does not pair to 1 with {R}")
    basis = tuple(kernel_lattice_basis(R, z))
    result = DowngradeResult(fan, R, z, basis, None, ())
    pdivs = []
    for sigma in fan.cones:
        perp = sigma.intersect(Cone.from_facets(fan.rank, [R, tuple(-x for x in R)]))
        tail = Cone.from_rays(len(basis), [result.to_subcoords(r) for r in perp.rays])
        c0 = _cone_slice(result, sigma, +1)
        cinf = _cone_slice(result, sigma, -1)
        pdivs.append(PolyDivisor(len(basis), tail, {ZERO: c0, INF: cinf}))
    dfan = build_dfan(pdivs, rank=len(basis))
    result.dfan = dfan
    result.cone_pdivs = tuple(dfan.index_of(d) for d in pdivs)
    return result


# -- upgrade of a one-parameter total space --------------------------------

def upgrade_total_space(sigma: Cone, R, summands, z=None) -> PolyDivisor:
    """Polyhedral divisor of the total space of a one-parameter deformation.

    sigma is a full-dimensional pointed cone, R the (primitive) degree, and
    summands a two-part Minkowski decomposition of the downgrade coefficient
    at 0.  The result lives on P^1 in the big lattice, with coefficients at
    0, 1 and infinity and tail sigma cap [R >= 0]; it satisfies
    E_0 + E_1 = sigma cap [R >= 1] and E_inf = sigma cap [R >= -1].
    """
    n = sigma.rank
    if not sigma.pointed:
        raise DomainError("cone must be pointed")
    R = as_ints(R)
    if not is_primitive(R):
        raise DomainError(f"degree vector {R} is not primitive")
    if z is None:
        z = solve_pairing_one(R)
    else:
        z = as_ints(z)
        if dot(z, R) != 1:
            raise DomainError(f"section {z} does not pair to 1 with {R}")
    basis = tuple(kernel_lattice_basis(R, z))
    result = DowngradeResult(None, R, z, basis, None, ())
    d0 = _cone_slice(result, sigma, +1)
    dinf = _cone_slice(result, sigma, -1)
    if d0.empty:
        raise DomainError("downgrade coefficient at 0 is empty; nothing to decompose")
    if len(summands) != 2:
        raise DomainError("exactly two summands are required")
    s0, s1 = summands
    if s0.minkowski(s1) != d0:
        raise DomainError("summands do not add up to the coefficient at 0")
    sigma_plus = Cone.from_facets(n, list(sigma.facets) + [R])

    def embed(poly, height):
        points = [result.from_subcoords(v, height) for v in poly.vertices]
        rays = [result.from_subcoords(r, 0) for r in poly.tail.rays]
        tail = Cone.from_rays(n, rays + list(sigma_plus.rays))
        return Polyhedron.from_generators(n, points, tail)

    e0 = embed(s0, 1)
    e1 = embed(s1, 0)
    if dinf.empty:
        einf = Polyhedron.from_generators(n, [vzero(n)], sigma_plus)
    else:
        points = [result.from_subcoords(v, -1) for v in dinf.vertices] + [vzero(n)]
        einf = Polyhedron.from_generators(n, points, sigma_plus)
    return PolyDivisor(n, sigma_plus, {ZERO: e0, ONE: e1, INF: einf})


def halfspace_slice(sigma: Cone, R, level: int) -> Polyhedron:
    """sigma cap [R >= level] as a polyhedron (reference data for the upgrade)."""
    ineqs = [(f, 0) for f in sigma.facets] + [(tuple(R), -level)]
    return Polyhedron.from_inequalities(sigma.rank, ineqs)
