from __future__ import annotations

import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt

from . import InvalidSetupError, OpenPathError

_LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Polyline:
    """Ordered vertices joined by straight segments; open unless a loop type."""

    vertices: npt.NDArray[np.float64]
    subdivisions: int = 1

    closed = False
    components = 3

    def __post_init__(self):
        vertices = np.array(self.vertices, dtype=np.float64)
        if vertices.ndim != 2 or vertices.shape[1] != self.components:
            raise InvalidSetupError(
                f"{type(self).__name__} vertices must have shape (n, {self.components}), "
                f"got {vertices.shape}"
            )
        if not np.all(np.isfinite(vertices)):
            raise InvalidSetupError(f"{type(self).__name__} vertices must be finite")
        if self.closed and len(vertices) > 1 and np.array_equal(vertices[0], vertices[-1]):
            # explicitly closed input, the closing segment is implicit here
            vertices = vertices[:-1]
        minimum = 3 if self.closed else 2
        if len(vertices) < minimum:
            raise InvalidSetupError(
                f"{type(self).__name__} needs at least {minimum} vertices, got {len(vertices)}"
            )
        if int(self.subdivisions) < 1:
            raise InvalidSetupError(f"subdivisions must be >= 1, got {self.subdivisions}")
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "subdivisions", int(self.subdivisions))

    def segments(self) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        starts = self.vertices
        if self.closed:
            ends = np.roll(self.vertices, -1, axis=0)
        else:
            starts, ends = starts[:-1], starts[1:]
        return starts, ends

    def refined_segments(self) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        """Segments split into `subdivisions` equal pieces, in traversal order."""
        starts, ends = self.segments()
        fractions = np.arange(self.subdivisions + 1) / self.subdivisions
        nodes = starts[:, None, :] + fractions[None, :, None] * (ends - starts)[:, None, :]
        return (
            nodes[:, :-1].reshape(-1, self.components),
            nodes[:, 1:].reshape(-1, self.components),
        )

    def length(self) -> float:
        starts, ends = self.segments()
        return math.fsum(np.linalg.norm(ends - starts, axis=1))

    def reversed(self) -> Polyline:
        """Opposite traversal; a loop keeps its base point, vertex 0."""
        if self.closed:
            vertices = np.vstack([self.vertices[:1], self.vertices[:0:-1]])
        else:
            vertices = self.vertices[::-1].copy()
        return dataclasses.replace(self, vertices=vertices)

    def summary(self) -> dict:
        return {
            "kind": type(self).__name__,
            "vertices": len(self.vertices),
            "subdivisions": self.subdivisions,
            "length": self.length(),
        }


@dataclasses.dataclass(frozen=True)
class ClosedPath(Polyline):
    closed = True

    @staticmethod
    def regular_polygon(
        radius: float,
        sides: int,
        normal: npt.ArrayLike = (0.0, 0.0, 1.0),
        center: npt.ArrayLike = (0.0, 0.0, 0.0),
        subdivisions: int = 1,
    ) -> ClosedPath:
        """Polygon inscribed in a circle, counterclockwise about `normal`."""
        if radius <= 0 or sides < 3:
            raise InvalidSetupError(f"need radius > 0 and sides >= 3, got {radius}, {sides}")
        normal = np.asarray(normal, dtype=np.float64)
        normal = normal / np.linalg.norm(normal)
        helper = np.eye(3)[np.argmin(np.abs(normal))]
        u = np.cross(normal, helper)
        u /= np.linalg.norm(u)
        v = np.cross(normal, u)
        angles = 2.0 * np.pi * np.arange(sides) / sides
        vertices = (
            np.asarray(center, dtype=np.float64)
            + radius * np.cos(angles)[:, None] * u
            + radius * np.sin(angles)[:, None] * v
        )
        return ClosedPath(vertices, subdivisions)

    def traversed(self, times: int) -> ClosedPath:
        return dataclasses.replace(self, vertices=np.tile(self.vertices, (times, 1)))

    def is_planar(self, tolerance: float = 1e-9) -> bool:
        centered = self.vertices - self.vertices.mean(axis=0)
        singular = np.linalg.svd(centered, compute_uv=False)
        scale = max(float(singular[0]), 1e-300)
        return bool(singular[-1] <= tolerance * scale)

    def summary(self) -> dict:
        result = super().summary()
        result["area"] = enclosed_area(self).tolist()
        return result


@dataclasses.dataclass(frozen=True)
class SpacetimeLoop(Polyline):
    """Closed loop in (t, x, y, z)."""

    closed = True
    components = 4

    @staticmethod
    def at_time(path: ClosedPath, time: float = 0.0) -> SpacetimeLoop:
        times = np.full((len(path.vertices), 1), time)
        return SpacetimeLoop(np.hstack([times, path.vertices]), path.subdivisions)


def enclosed_area(path: Polyline) -> npt.NDArray[np.float64]:
    if not isinstance(path, ClosedPath):
        raise OpenPathError(f"enclosed area needs a closed path, got {type(path).__name__}")
    centroid = path.vertices.mean(axis=0)
    starts, ends = path.segments()
    terms = np.cross(starts - centroid, ends - centroid)
    return 0.5 * np.array([math.fsum(terms[:, axis]) for axis in range(3)])
