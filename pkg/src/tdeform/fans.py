"""Fans in a lattice: validation, smoothness, completeness, adjacency.

A fan is given by its ray list and the ray-index sets of its maximal cones.
All faces are computed eagerly at load because adjacency queries dominate
the deformation-graph machinery downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, NotComplete, NotSmooth
from .geometry import Cone
from .linalg import dot, is_primitive, primitive


@dataclass
class FanReport:
    valid: bool
    issues: list = field(default_factory=list)


class Fan:
    def __init__(self, rank, rays, max_cones):
        self.rank = rank
        self.rays = tuple(tuple(r) for r in rays)
        self.max_cones = tuple(tuple(sorted(c)) for c in max_cones)
        for c in self.max_cones:
            for i in c:
                if not 0 <= i < len(self.rays):
                    raise InputError(f"cone {c} references unknown ray index {i}")
        self.cones = [Cone.from_rays(rank, [self.rays[i] for i in c]) for c in self.max_cones]
        self._faces = None

    @property
    def faces(self):
        """All faces of all maximal cones, deduplicated, computed on first use."""
        if self._faces is None:
            seen = {}
            for c in self.cones:
                seen[c.rays] = c
                for f in c.proper_faces():
                    seen[f.rays] = f
            self._faces = list(seen.values())
        return self._faces

    def ray_index(self, vector):
        v = primitive(vector)
        for i, r in enumerate(self.rays):
            if r == v:
                return i
        raise InputError(f"{vector} is not a ray of the fan")

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


def validate_fan(fan: Fan) -> FanReport:
    """Check the fan axioms; reports offending data instead of raising."""
    issues = []
    seen_rays = set()
    for i, r in enumerate(fan.rays):
        if not is_primitive(r):
            issues.append(("ray_not_primitive", i))
        if r in seen_rays:
            issues.append(("duplicate_ray", i))
        seen_rays.add(r)
    for ci, (idx, cone) in enumerate(zip(fan.max_cones, fan.cones)):
        if not cone.pointed:
            issues.append(("cone_not_pointed", ci))
        listed = tuple(sorted(fan.rays[i] for i in idx))
        if tuple(sorted(cone.rays)) != listed:
            issues.append(("cone_generators_not_extreme", ci))
    n = len(fan.cones)
    for i in range(n):
        for j in range(i + 1, n):
            meet = fan.cones[i].intersect(fan.cones[j])
            if not (meet.is_face_of(fan.cones[i]) and meet.is_face_of(fan.cones[j])):
                issues.append(("bad_intersection", i, j))
    return FanReport(valid=not issues, issues=issues)


def is_smooth(fan: Fan) -> bool:
    """Every maximal cone is simplicial and its rays extend to a lattice basis."""
    return all(c.is_smooth() for c in fan.cones)


def is_complete(fan: Fan) -> bool:
    """Facet pairing: every codimension-one face lies in exactly two maximal cones."""
    if any(c.dim != fan.rank for c in fan.cones):
        return False
    counts = {}
    for c in fan.cones:
        for f in c.facet_cones():
            counts[f.rays] = counts.get(f.rays, 0) + 1
    return bool(counts) and all(v == 2 for v in counts.values())


def common_cone(fan: Fan, i: int, j: int) -> bool:
    """Whether rays i and j span a common cone of the fan."""
    for idx in (i, j):
        if not 0 <= idx < len(fan.rays):
            raise InputError(f"unknown ray index {idx}")
    return any(i in c and j in c for c in fan.max_cones)


def require_smooth_complete(fan: Fan):
    if not is_smooth(fan):
        raise NotSmooth("fan is not smooth")
    if not is_complete(fan):
        raise NotComplete("fan is not complete")


def contains_direction(fan: Fan, v) -> bool:
    """Whether some maximal cone contains the vector v."""
    return any(all(dot(v, f) >= 0 for f in c.facets) for c in fan.cones)
