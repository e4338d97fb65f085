"""Minkowski decompositions of coefficients and of whole slices.

A decomposition of a single coefficient is admissible when every vertex of
the target splits so that at most one of the corresponding summand vertices
fails to be a lattice point.  That vertex-wise test is finite and is the
authoritative one here; the evaluation-integrality variant survives as a
bounded sampling cross-check.

Slice decompositions carry one row per divisor of a divisorial fan and must
reproduce each coefficient (row sums), keep every column a polyhedral
complex, and be compatible with coefficient intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import DecompositionError
from .geometry import Polyhedron
from .linalg import is_integral


@dataclass
class CoeffDecomposition:
    """target = sum of summands, all sharing the target's tail cone.

    An exponent k > 1 marks a summand stored in primitive form: the actual
    Minkowski summand is k times the stored (necessarily lattice) polyhedron
    and the supporting divisor of the deformation is V(y^k - t).
    """

    target: Polyhedron
    summands: tuple
    exponents: tuple = ()

    def __post_init__(self):
        self.summands = tuple(self.summands)
        if not self.exponents:
            self.exponents = (1,) * len(self.summands)
        self.exponents = tuple(int(k) for k in self.exponents)
        if len(self.exponents) != len(self.summands):
            raise DecompositionError("one exponent per summand required")
        if any(k < 1 for k in self.exponents):
            raise DecompositionError("exponents must be positive")
        self.validate()

    def actual_summand(self, s):
        k = self.exponents[s]
        return self.summands[s] if k == 1 else self.summands[s].scale(k)

    def validate(self):
        if self.target.empty:
            if not all(s.empty for s in self.summands):
                raise DecompositionError("empty target requires empty summands")
            return
        total = None
        for s, poly in enumerate(self.summands):
            if poly.empty:
                raise DecompositionError("nonempty target with an empty summand")
            if poly.tail != self.target.tail:
                raise DecompositionError(f"summand {s} has a different tail cone")
            if self.exponents[s] > 1 and not poly.is_lattice():
                raise DecompositionError(f"summand {s} has exponent > 1 but is not a lattice polyhedron")
            actual = self.actual_summand(s)
            total = actual if total is None else total.minkowski(actual)
        if total != self.target:
            raise DecompositionError("summands do not add up to the target")


def check_admissible(cd: CoeffDecomposition):
    """Vertex-wise admissibility; returns (ok, witness vertex or None)."""
    if cd.target.empty:
        return True, None
    for v in cd.target.vertices:
        u = cd.target.normal_generic_point(v)
        nonlattice = 0
        total = tuple(Fraction(0) for _ in v)
        for s in range(len(cd.summands)):
            piece = cd.actual_summand(s).face(u)
            if len(piece.vertices) != 1 or not piece.tail.is_zero:
                raise DecompositionError("summand face at a generic normal is not a single vertex")
            w = piece.vertices[0]
            total = tuple(a + b for a, b in zip(total, w))
            if not is_integral(w):
                nonlattice += 1
        if total != v:
            raise DecompositionError("summand vertices do not add up to the target vertex")
        if nonlattice > 1:
            return False, v
    return True, None


def check_admissible_sampled(cd: CoeffDecomposition, bound: int) -> bool:
    """Evaluation-integrality admissibility over all dual lattice points
    with sup-norm at most bound.  Cross-check oracle for check_admissible."""
    if cd.target.empty:
        return True
    n = cd.target.rank
    tail = cd.target.tail
    for u in product(range(-bound, bound + 1), repeat=n):
        if not any(u) or not tail.dual_contains(u):
            continue
        bad = 0
        for s in range(len(cd.summands)):
            if cd.actual_summand(s).eval_min(u).denominator != 1:
                bad += 1
        if bad > 1:
            return False
    return True


@dataclass
class SliceDecomposition:
    """Rows of Minkowski summands for every divisor of a divisorial fan.

    rows[i][s] is the column-s summand of the coefficient of divisor i at
    the point; exponents are shared along columns because each column feeds
    a single deformation divisor.
    """

    point: object
    rows: dict
    columns: int
    exponents: tuple = ()

    def __post_init__(self):
        self.rows = {int(i): tuple(r) for i, r in self.rows.items()}
        if not self.exponents:
            self.exponents = (1,) * self.columns
        self.exponents = tuple(int(k) for k in self.exponents)
        if len(self.exponents) != self.columns:
            raise DecompositionError("one exponent per column required")
        for i, row in self.rows.items():
            if len(row) != self.columns:
                raise DecompositionError(f"row {i} has {len(row)} entries, expected {self.columns}")

    def row_decomposition(self, i, target):
        return CoeffDecomposition(target, self.rows[i], self.exponents)

    @staticmethod
    def trivial(xi, point, columns=1):
        """Column 0 carries the slice, the other columns are tail cones."""
        rows = {}
        for i, d in enumerate(xi.pdivs):
            c = d.coeff(point)
            if c.empty:
                rows[i] = tuple(Polyhedron.make_empty(xi.rank) for _ in range(columns))
            else:
                rows[i] = (c,) + tuple(Polyhedron.trivial(d.tail) for _ in range(columns - 1))
        return SliceDecomposition(point, rows, columns)


@dataclass
class SliceReport:
    ok: bool
    admissible: bool
    violations: list = field(default_factory=list)


def check_slice_decomposition(sd: SliceDecomposition, xi) -> SliceReport:
    """Verify row sums, per-column complexes, intersection compatibility and
    row-wise admissibility; violations are reported, not raised."""
    violations = []
    if sorted(sd.rows) != list(range(len(xi.pdivs))):
        return SliceReport(False, False, [("rows_mismatch", sorted(sd.rows))])

    coeffs = [d.coeff(sd.point) for d in xi.pdivs]
    decomps = {}
    for i, d in enumerate(xi.pdivs):
        try:
            decomps[i] = sd.row_decomposition(i, coeffs[i])
        except DecompositionError as exc:
            violations.append(("row_sum", i, str(exc)))

    l = len(xi.pdivs)
    for s in range(sd.columns):
        for i in range(l):
            for j in range(i + 1, l):
                a, b = sd.rows[i][s], sd.rows[j][s]
                meet = a.intersect(b)
                if not (meet.is_face_of(a) and meet.is_face_of(b)):
                    violations.append(("column_not_complex", s, i, j))

    coeff_index = {}
    for i, c in enumerate(coeffs):
        coeff_index.setdefault(c, []).append(i)
    for i1 in range(l):
        for i2 in range(i1, l):
            meet = coeffs[i1].intersect(coeffs[i2])
            col_meets = [sd.rows[i1][s].intersect(sd.rows[i2][s]) for s in range(sd.columns)]
            # the column meets must add back up to the coefficient meet
            total = None
            for s, piece in enumerate(col_meets):
                k = sd.exponents[s]
                actual = piece if k == 1 or piece.empty else piece.scale(k)
                total = actual if total is None else total.minkowski(actual)
            if total != meet:
                violations.append(("intersection_sum", i1, i2))
            # columnwise compatibility is only meaningful on nonempty meets:
            # an empty meet forces a single empty column, not empty columns
            # across the board
            if meet.empty:
                continue
            for i in coeff_index.get(meet, ()):
                for s in range(sd.columns):
                    if sd.rows[i][s] != col_meets[s]:
                        violations.append(("intersection_incompatible", i, i1, i2, s))

    admissible = True
    for i, cd in decomps.items():
        ok, witness = check_admissible(cd)
        if not ok:
            admissible = False
            violations.append(("inadmissible_row", i, witness))

    structural = [v for v in violations if v[0] != "inadmissible_row"]
    return SliceReport(not structural, admissible and not structural, violations)
