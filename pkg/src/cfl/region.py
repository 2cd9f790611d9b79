"""The totally positive and superunitary regions in cluster coordinates.

A point is carried around as (chart, coordinates): the chart is a seed of
the enumerated pattern and the coordinates are exact positive rationals.
Membership in the superunitary region and the face a point sits on are
decided with exact arithmetic; "equals 1" is exact equality, no tolerance.

Boundary sampling never solves equations: each boundary face is the unit
locus of its subcluster, so it is parameterized exactly by the remaining
coordinate of an adjacent chart and pushed through a chart change.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import cluster as cl
from . import laurent
from .cluster import ClusterRegistry, SeedPattern, Subcluster
from .laurent import RationalPoint

# Oblique projection used for rank-3 wireframes: (x1, x2, x3) drawn at
# (x1 + 0.35*x3, x2 + 0.49*x3).  Declared, not derived.
PROJECTION_3D = ((1.0, 0.0, 0.35), (0.0, 1.0, 0.49))


@dataclass(frozen=True)
class PositivePoint:
    """A totally positive point in the coordinates of one chart."""

    chart: int
    coords: RationalPoint


@dataclass(frozen=True)
class FaceLabel:
    """The subcluster face a superunitary point belongs to."""

    subcluster: Subcluster

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.subcluster) + "}"


def point(pattern: SeedPattern, chart: int, coords) -> PositivePoint:
    if not 0 <= chart < len(pattern.seeds):
        raise ValueError(f"chart {chart} out of range")
    pt = RationalPoint(coords)
    if pt.rank != pattern.rank:
        raise ValueError("coordinate count must equal the rank")
    return PositivePoint(chart, pt)


def all_variable_values(
    reg: ClusterRegistry, pattern: SeedPattern, pt: PositivePoint
) -> Dict[int, Fraction]:
    """f_y(pt) for every variable id, via an exact replay from the chart."""
    return cl.values_at_chart_point(reg, pattern, pt.chart, pt.coords.coords)


def eval_variable(reg: ClusterRegistry, pattern: SeedPattern, pt: PositivePoint, vid: int) -> Fraction:
    """Exact value of one cluster variable at the point."""
    if pt.chart == 0:
        return laurent.evaluate(reg.poly(vid), pt.coords)
    return all_variable_values(reg, pattern, pt)[vid]


def change_chart(
    reg: ClusterRegistry, pattern: SeedPattern, pt: PositivePoint, new_chart: int
) -> PositivePoint:
    """The same abstract point, written in the coordinates of another chart."""
    if new_chart == pt.chart:
        return pt
    values = all_variable_values(reg, pattern, pt)
    coords = [values[vid] for vid in pattern.seeds[new_chart].cluster]
    return PositivePoint(new_chart, RationalPoint(coords))


def superunitary_membership(
    reg: ClusterRegistry, pattern: SeedPattern, pt: PositivePoint
) -> Optional[FaceLabel]:
    """None if some variable is < 1 at pt; otherwise the face label.

    The label is the subcluster of variables exactly equal to 1; for
    superunitary points that set is guaranteed to be a subcluster, so the
    constructor check is a genuine invariant assertion.
    """
    pattern.require_finite()
    values = all_variable_values(reg, pattern, pt)
    ones = []
    for vid, val in values.items():
        if val < 1:
            return None
        if val == 1:
            ones.append(vid)
    return FaceLabel(pattern.subcluster(ones))


def unitary_point(reg: ClusterRegistry, pattern: SeedPattern, chart: int) -> PositivePoint:
    """The all-ones point of a chart; every variable takes its coefficient sum there."""
    return point(pattern, chart, [1] * pattern.rank)


@dataclass(frozen=True)
class FacePoset:
    """Subclusters under reverse inclusion, graded by face dimension."""

    rank: int
    faces: Tuple[Subcluster, ...]
    f_vector: Tuple[int, ...]  # f_vector[d] = number of faces of dimension d

    def dimension(self, face: Subcluster) -> int:
        return self.rank - len(face)

    def less_equal(self, a: Subcluster, b: Subcluster) -> bool:
        """Face a lies in the closure of face b (reverse inclusion of subclusters)."""
        return set(b.ids) <= set(a.ids)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * count for d, count in enumerate(self.f_vector))


def face_poset(reg: ClusterRegistry, pattern: SeedPattern) -> FacePoset:
    pattern.require_finite()
    faces = tuple(cl.enumerate_subclusters(pattern))
    f = [0] * (pattern.rank + 1)
    for face in faces:
        f[pattern.rank - len(face)] += 1
    return FacePoset(pattern.rank, faces, tuple(f))


@dataclass(frozen=True)
class BoundaryArc:
    """One sampled boundary face: the unit locus of its subcluster."""

    subcluster: Tuple[int, ...]
    samples: Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...]  # (t, initial-chart coords)


def _arc_for_face(reg, pattern, face_ids, resolution) -> BoundaryArc:
    hosts = pattern.containing_seeds(face_ids)
    chart = min(hosts)
    other = max(hosts)
    seed = pattern.seeds[chart]
    free = [p for p in range(pattern.rank) if seed.cluster[p] not in face_ids]
    assert len(free) == 1, "boundary arcs are one-dimensional faces"
    free_pos = free[0]
    free_id = seed.cluster[free_pos]
    t_end = cl.unitary_values(reg, pattern, other)[free_id]

    samples = []
    for step in range(resolution + 1):
        t = 1 + (t_end - 1) * Fraction(step, resolution)
        coords = [Fraction(1)] * pattern.rank
        coords[free_pos] = t
        values = cl.values_at_chart_point(reg, pattern, chart, coords)
        samples.append((t, tuple(values[vid] for vid in range(1, pattern.rank + 1))))
    return BoundaryArc(tuple(face_ids), tuple(samples))


def sample_boundary(reg: ClusterRegistry, pattern: SeedPattern, resolution: int = 64) -> List[BoundaryArc]:
    """Sample every one-dimensional boundary face of the superunitary region.

    Rank 2: one arc per cluster variable (the curve where that variable is 1).
    Rank 3: one arc per two-element subcluster (the wireframe edges).
    """
    pattern.require_finite()
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    if pattern.rank == 2:
        face_size = 1
    elif pattern.rank == 3:
        face_size = 2
    else:
        raise ValueError(f"boundary sampling supports rank 2 or 3, not {pattern.rank}")
    arcs = []
    for sub in cl.enumerate_subclusters(pattern):
        if len(sub) == face_size:
            arcs.append(_arc_for_face(reg, pattern, sub.ids, resolution))
    return arcs


def write_boundary_csv(arcs: List[BoundaryArc], rank: int, path: str):
    """Columns: variable_id, t, x1, x2[, x3]; exact values rendered as fractions."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["variable_id", "t"] + [f"x{i + 1}" for i in range(rank)])
        for arc in arcs:
            label = "|".join(str(i) for i in arc.subcluster)
            for t, coords in arc.samples:
                writer.writerow([label, str(t)] + [str(c) for c in coords])


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#e377c2", "#bcbd22", "#7f7f7f")

_CLIP_EPS = 1e-9  # float round-off guard when computing the viewport


def _project(coords) -> Tuple[float, float]:
    vals = [float(c) for c in coords]
    if len(vals) == 2:
        return vals[0], vals[1]
    px = sum(a * b for a, b in zip(PROJECTION_3D[0], vals))
    py = sum(a * b for a, b in zip(PROJECTION_3D[1], vals))
    return px, py


def write_boundary_svg(arcs: List[BoundaryArc], rank: int, path: str, size: int = 480):
    projected = [[_project(coords) for _, coords in arc.samples] for arc in arcs]
    xs = [p[0] for poly in projected for p in poly]
    ys = [p[1] for poly in projected for p in poly]
    lo_x, hi_x = min(xs) - _CLIP_EPS, max(xs) + _CLIP_EPS
    lo_y, hi_y = min(ys) - _CLIP_EPS, max(ys) + _CLIP_EPS
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-6)
    margin = 0.08 * span
    scale = size / (span + 2 * margin)

    def to_screen(p):
        x = (p[0] - lo_x + margin) * scale
        y = size - (p[1] - lo_y + margin) * scale  # flip: SVG y grows downward
        return f"{x:.3f},{y:.3f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for idx, poly in enumerate(projected):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(to_screen(p) for p in poly)
        label = "|".join(str(i) for i in arcs[idx].subcluster)
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"><title>{label}</title></polyline>'
        )
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
