"""Lattice geometry: sites, finite windows, regions with L-infinity thickening.

A site is an integer pair (x, y); 1d mode keeps y = 0.  Regions are the
half-plane y >= 0, the boundary line y = 0, the two half-lines of the
boundary, origin disks, complements and intersections.  Membership at
thickening r means L-infinity distance <= r from the region's core set.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

Site = tuple[int, int]

_INF = 10**9


@dataclass(frozen=True)
class Window:
    x_min: int
    x_max: int
    y_min: int
    y_max: int
    margin: int = 0

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError("empty window")
        if self.margin < 0:
            raise ValueError("margin must be >= 0")
        if self.y_min == self.y_max == 0:
            extent = self.x_max - self.x_min + 1
        else:
            extent = min(self.x_max - self.x_min + 1, self.y_max - self.y_min + 1)
        if self.margin and self.margin >= (extent + 1) // 2:
            raise ValueError("margin too large for window")

    @staticmethod
    def centered(width: int, height: int, margin: int = 0) -> "Window":
        """Window of the given size roughly centered on the origin."""
        return Window(-(width // 2), width - width // 2 - 1,
                      -(height // 2), height - height // 2 - 1, margin)

    @staticmethod
    def chain(length: int, margin: int = 0) -> "Window":
        """1d window: y pinned to 0."""
        return Window(-(length // 2), length - length // 2 - 1, 0, 0, margin)

    @property
    def is_chain(self) -> bool:
        return self.y_min == self.y_max == 0

    def sites(self) -> Iterable[Site]:
        for x in range(self.x_min, self.x_max + 1):
            for y in range(self.y_min, self.y_max + 1):
                yield (x, y)

    def contains(self, s: Site) -> bool:
        return self.x_min <= s[0] <= self.x_max and self.y_min <= s[1] <= self.y_max

    def edge_distance(self, s: Site) -> int:
        """L-infinity distance from s to the window boundary (0 on the rim)."""
        dx = min(s[0] - self.x_min, self.x_max - s[0])
        if self.is_chain:
            return dx
        dy = min(s[1] - self.y_min, self.y_max - s[1])
        return min(dx, dy)

    def in_interior(self, s: Site) -> bool:
        """At least margin away from the window rim."""
        return self.contains(s) and self.edge_distance(s) >= self.margin

    def in_edge_strip(self, s: Site) -> bool:
        return self.contains(s) and self.edge_distance(s) < self.margin


@dataclass(frozen=True)
class Region:
    """A core point set plus a thickening radius.

    kinds: full, half_plane_H (y >= 0), boundary_line (y = 0),
    half_line_R (y = 0, x >= 0), half_line_L (y = 0, x <= 0),
    origin_disk (needs radius), complement (of .inner),
    intersection (of .inner and .inner2).
    """

    kind: str
    thickening: int = 0
    radius: int = 0
    inner: "Region | None" = None
    inner2: "Region | None" = None

    KINDS = (
        "full", "half_plane_H", "boundary_line", "half_line_R", "half_line_L",
        "origin_disk", "complement", "intersection",
    )

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.thickening < 0:
            raise ValueError("thickening must be >= 0")
        if self.kind == "origin_disk" and self.radius < 0:
            raise ValueError("radius must be >= 0")
        if self.kind == "complement" and self.inner is None:
            raise ValueError("complement needs an inner region")
        if self.kind == "intersection" and (self.inner is None or self.inner2 is None):
            raise ValueError("intersection needs two regions")

    # distance from a site to the region core (L-infinity, lattice points)
    def core_distance(self, s: Site) -> int:
        x, y = s
        k = self.kind
        if k == "full":
            return 0
        if k == "half_plane_H":
            return max(0, -y)
        if k == "boundary_line":
            return abs(y)
        if k == "half_line_R":
            return max(abs(y), max(0, -x))
        if k == "half_line_L":
            return max(abs(y), max(0, x))
        if k == "origin_disk":
            return max(0, max(abs(x), abs(y)) - self.radius)
        if k == "complement":
            return self.inner.complement_core_distance(s)
        if k == "intersection":
            # parts keep their own thickenings; exact for axis-aligned cores
            d1 = self.inner.core_distance(s) - self.inner.thickening
            d2 = self.inner2.core_distance(s) - self.inner2.thickening
            return max(d1, d2, 0)
        raise AssertionError

    def complement_core_distance(self, s: Site) -> int:
        """Distance to the complement of this region's core."""
        x, y = s
        k = self.kind
        if k == "full":
            return _INF
        if k == "half_plane_H":
            return max(0, y + 1)
        if k == "boundary_line":
            return 1 if y == 0 else 0
        if k in ("half_line_R", "half_line_L"):
            on_ray = y == 0 and (x >= 0 if k == "half_line_R" else x <= 0)
            return 1 if on_ray else 0
        if k == "origin_disk":
            return max(0, self.radius + 1 - max(abs(x), abs(y)))
        if k == "complement":
            return self.inner.core_distance(s)
        if k == "intersection":
            return min(self.inner.complement_core_distance(s), self.inner2.complement_core_distance(s))
        raise AssertionError

    def contains(self, s: Site) -> bool:
        return self.core_distance(s) <= self.thickening

    def contains_all(self, sites: Iterable[Site]) -> bool:
        return all(self.contains(s) for s in sites)

    def thickened(self, extra: int) -> "Region":
        return replace(self, thickening=self.thickening + extra)

    @staticmethod
    def full() -> "Region":
        return Region("full")

    @staticmethod
    def half_plane_H(thickening: int = 0) -> "Region":
        return Region("half_plane_H", thickening)

    @staticmethod
    def boundary_line(thickening: int = 0) -> "Region":
        return Region("boundary_line", thickening)

    @staticmethod
    def half_line_R(thickening: int = 0) -> "Region":
        return Region("half_line_R", thickening)

    @staticmethod
    def half_line_L(thickening: int = 0) -> "Region":
        return Region("half_line_L", thickening)

    @staticmethod
    def origin_disk(radius: int, thickening: int = 0) -> "Region":
        return Region("origin_disk", thickening, radius)

    @staticmethod
    def complement_of(r: "Region", thickening: int = 0) -> "Region":
        return Region("complement", thickening, inner=r)

    @staticmethod
    def intersection_of(a: "Region", b: "Region") -> "Region":
        return Region("intersection", 0, inner=a, inner2=b)

    @staticmethod
    def from_json(obj: dict) -> "Region":
        kind = obj["kind"]
        thick = obj.get("thickening", 0)
        if kind == "origin_disk":
            return Region(kind, thick, obj["radius"])
        if kind == "complement":
            return Region(kind, thick, inner=Region.from_json(obj["inner"]))
        return Region(kind, thick)

    def to_json(self) -> dict:
        obj = {"kind": self.kind, "thickening": self.thickening}
        if self.kind == "origin_disk":
            obj["radius"] = self.radius
        if self.kind == "complement":
            obj["inner"] = self.inner.to_json()
        return obj


def contains(region: Region, site: Site) -> bool:
    return region.contains(site)


@dataclass(frozen=True)
class SupportReport:
    memberships: tuple[tuple[str, bool], ...]
    max_dist_to_boundary_line: int
    max_dist_to_origin: int

    def fully_inside(self, i: int) -> bool:
        return self.memberships[i][1]


def classify_support(sites: Iterable[Site], regions: list[Region]) -> SupportReport:
    """Per-region membership of a finite site set, plus distance extremes."""
    sites = list(sites)
    memberships = tuple((r.kind, r.contains_all(sites)) for r in regions)
    line = Region.boundary_line()
    dline = max((line.core_distance(s) for s in sites), default=0)
    dorig = max((max(abs(s[0]), abs(s[1])) for s in sites), default=0)
    return SupportReport(memberships, dline, dorig)
