"""Deformation families from slice decompositions.

The family data records, for every deformed point P and column s, the
moving prime divisor V(y_P - t_{P,s}) on P^1 x S (or V(y_P^k - t_{P,s})
for a column with exponent k).  The base S is the complement of the locus
where two divisors over distinct points of P^1 collide; that locus is kept
as an exact constraint list and membership is decided pointwise.

Fibers substitute concrete parameter values: each column lands at the point
y_P = lambda and coefficients meeting at one point are added via Minkowski
sum, which reproduces the original divisorial fan at lambda = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decompose import (
    SliceDecomposition,
    check_admissible,
    check_slice_decomposition,
)
from .divisors import INF, DivisorialFan, P1Point, PolyDivisor, build_dfan
from .errors import (
    CompleteLocus,
    DecompositionError,
    DomainError,
    InputError,
    IrrationalPoint,
    NotSupported,
)


@dataclass(frozen=True)
class DivisorRecord:
    """One moving prime divisor: point, column index and column exponent."""

    point: P1Point
    column: int
    exponent: int = 1


@dataclass(frozen=True)
class LocusConstraint:
    """Collision condition between the divisors of two distinct points.

    kind 'linear':      t_{P,s} - t_{Q,s'} = rhs        (both points finite)
    kind 'hyperbolic':  t_{inf,s'} * (p + t_{P,s}) = 1  (P finite)
    kind 'power':       (shift + t_{Q,s'})^k = t_{P,s}  (column (P,s) has exponent k)
    kind 'power_pair':  equal exponents k at two finite points; collision of
                        the rational branches.
    """

    kind: str
    left: DivisorRecord
    right: DivisorRecord
    shift: Fraction = Fraction(0)

    def satisfied(self, value):
        a = value(self.left)
        b = value(self.right)
        if self.kind == "linear":
            return a - b == self.shift
        if self.kind == "hyperbolic":
            return b * (self.shift + a) == 1
        if self.kind == "power":
            return (self.shift + b) ** self.left.exponent == a
        if self.kind == "power_pair":
            k = self.left.exponent
            root = _rational_root(a, k)
            if root is None:
                return False
            for mu in ({root, -root} if k % 2 == 0 else {root}):
                if (self.shift + mu) ** k == b:
                    return True
            return False
        raise InputError(f"unknown constraint kind {self.kind}")


def _rational_root(x: Fraction, k: int):
    """A rational k-th root of x, or None.  For even k the positive root."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    if k % 2 == 0 and x < 0:
        return None
    sign = -1 if x < 0 else 1
    num = _int_root(abs(x.numerator), k)
    den = _int_root(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(sign * num, den)


def _int_root(m: int, k: int):
    if m == 0:
        return 0
    r = round(m ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == m:
            return c
    return None


class FamilyData:
    """A divisorial fan together with admissible slice decompositions."""

    def __init__(self, xi, decomps, params, records, constraints, generators):
        self.xi = xi
        self.decomps = decomps
        self.params = params
        self.records = records
        self.constraints = constraints
        self.generators = generators

    def value_lookup(self, assignment):
        lam = {}
        for (pt, s), v in assignment.items():
            lam[(P1Point.parse(pt), int(s))] = Fraction(v)
        missing = [p for p in self.params if p not in lam]
        if missing:
            raise InputError(f"missing parameter values for {missing}")

        def value(record):
            if record.column == 0:
                return Fraction(0)
            return lam[(record.point, record.column)]

        return value, lam


def build_family(xi: DivisorialFan, decomps) -> FamilyData:
    """Assemble family data; points with a nontrivial slice but no given
    decomposition receive the trivial one-column decomposition."""
    decomps = {P1Point.parse(p): sd for p, sd in decomps.items()}
    for pt in xi.points():
        if pt not in decomps:
            decomps[pt] = SliceDecomposition.trivial(xi, pt)
    for pt, sd in decomps.items():
        if P1Point.parse(sd.point) != pt:
            raise InputError(f"decomposition labeled {sd.point} filed under {pt}")
        report = check_slice_decomposition(sd, xi)
        if not report.ok or not report.admissible:
            raise DecompositionError(f"decomposition at {pt} invalid: {report.violations}")

    points = sorted(decomps, key=P1Point.sort_key)
    records = []
    params = []
    for pt in points:
        sd = decomps[pt]
        for s in range(sd.columns):
            records.append(DivisorRecord(pt, s, sd.exponents[s]))
            if s >= 1:
                params.append((pt, s))

    constraints = _collision_constraints(records)

    generators = []
    for i in range(len(xi.pdivs)):
        entry = []
        for pt in points:
            sd = decomps[pt]
            for s in range(sd.columns):
                entry.append((DivisorRecord(pt, s, sd.exponents[s]), sd.rows[i][s]))
        generators.append(tuple(entry))

    return FamilyData(xi, decomps, params, records, constraints, generators)


def _collision_constraints(records):
    """All collision constraints between divisors over distinct points.

    Identically false constraints (no free parameter can ever satisfy them)
    are dropped; a pair that always collides is impossible for distinct
    points.
    """
    out = []
    for a in range(len(records)):
        for b in range(len(records)):
            if b <= a:
                continue
            ra, rb = records[a], records[b]
            if ra.point == rb.point:
                continue
            c = _pair_constraint(ra, rb)
            if c is None:
                continue
            if ra.column == 0 and rb.column == 0:
                continue  # both divisors are frozen; distinct points never meet
            out.append(c)
    return tuple(out)


def _pair_constraint(ra: DivisorRecord, rb: DivisorRecord):
    ka, kb = ra.exponent, rb.exponent
    if ka == 1 and kb == 1:
        if ra.point.is_infinity or rb.point.is_infinity:
            fin, inf = (rb, ra) if ra.point.is_infinity else (ra, rb)
            # t_inf * (p + t_fin) = 1; identically false when t_inf is frozen
            # at 0, or when t_fin is frozen and the point itself is 0
            if inf.column == 0:
                return None
            if fin.column == 0 and fin.point.value == 0:
                return None
            return LocusConstraint("hyperbolic", fin, inf, shift=fin.point.value)
        return LocusConstraint("linear", ra, rb, shift=rb.point.value - ra.point.value)
    if ka > 1 and kb > 1:
        if ka != kb:
            raise NotSupported("distinct exponents at distinct points are not supported")
        if ra.point.is_infinity or rb.point.is_infinity:
            raise NotSupported("exponent pairs involving infinity are not supported")
        return LocusConstraint("power_pair", ra, rb, shift=ra.point.value - rb.point.value)
    exp, plain = (ra, rb) if ka > 1 else (rb, ra)
    if exp.point.is_infinity or plain.point.is_infinity:
        # roots of y^k = t are finite for finite base points; the frozen point
        # at infinity never meets them, and mixed infinite cases stay out of scope
        if plain.point.is_infinity and plain.column == 0:
            return None
        raise NotSupported("exponent columns mixed with moving points at infinity")
    return LocusConstraint("power", exp, plain, shift=plain.point.value - exp.point.value)


def in_base(fd: FamilyData, assignment) -> bool:
    """Whether the parameter values avoid the forbidden collision locus."""
    value, _ = fd.value_lookup(assignment)
    return not any(c.satisfied(value) for c in fd.constraints)


def _landing_points(record: DivisorRecord, t: Fraction):
    """Points of P^1 where the divisor sits at parameter value t, with the
    Minkowski multiplicity of each point."""
    k = record.exponent
    if record.point.is_infinity:
        if k != 1:
            raise NotSupported("exponent columns at infinity are not supported")
        return [(INF if t == 0 else P1Point(1 / t), 1)]
    p = record.point.value
    if k == 1:
        return [(P1Point(p + t), 1)]
    if t == 0:
        return [(record.point, k)]
    root = _rational_root(t, k)
    if root is None or k > 2:
        raise IrrationalPoint(
            f"roots of y^{k} = {t} are not all rational; fiber not representable"
        )
    pts = [(P1Point(p + root), 1)]
    if k == 2:
        pts.append((P1Point(p - root), 1))
    return pts


def fiber(fd: FamilyData, assignment, verify=False) -> DivisorialFan:
    """The divisorial fan of the fiber at the given parameter values."""
    if not in_base(fd, assignment):
        raise DomainError("parameter values lie in the forbidden locus")
    value, _ = fd.value_lookup(assignment)
    pdivs = []
    for i, entry in enumerate(fd.generators):
        tail = fd.xi.pdivs[i].tail
        buckets = {}
        for record, poly in entry:
            for pt, mult in _landing_points(record, value(record)):
                piece = poly if mult == 1 else (poly if poly.empty else poly.scale(mult))
                buckets.setdefault(pt, []).append(piece)
        coeffs = {}
        for pt, pieces in buckets.items():
            total = pieces[0]
            for piece in pieces[1:]:
                total = total.minkowski(piece)
            coeffs[pt] = total
        pdivs.append(PolyDivisor(fd.xi.rank, tail, coeffs))
    out = build_dfan(pdivs, rank=fd.xi.rank)
    if verify:
        for d in out.pdivs:
            if not d.is_proper():
                raise DomainError("fiber contains an improper polyhedral divisor")
    return out


def general_fiber_singularities(pdiv: PolyDivisor, decomps):
    """Analytic singularity models of the general fiber of a deformation of
    an affine-locus divisor: one cone over each summand at height one.

    Points of the locus without a given decomposition contribute the cone
    over their own coefficient.  Returns (point, column, cone, smooth) rows.
    """
    if not pdiv.has_affine_locus:
        raise CompleteLocus("the singularity description requires an affine locus")
    decomps = {P1Point.parse(p): cd for p, cd in decomps.items()}
    for pt, cd in decomps.items():
        if cd.target != pdiv.coeff(pt):
            raise DecompositionError(f"decomposition at {pt} does not target the coefficient")
        ok, witness = check_admissible(cd)
        if not ok:
            raise DecompositionError(f"decomposition at {pt} is inadmissible at vertex {witness}")
    out = []
    for pt in pdiv.points():
        coeff = pdiv.coeff(pt)
        if coeff.empty:
            continue
        cd = decomps.get(pt)
        summands = [cd.summands[s] for s in range(len(cd.summands))] if cd else [coeff]
        for s, poly in enumerate(summands):
            cone = poly.hcone
            out.append((pt, s, cone, cone.is_smooth()))
    return out
