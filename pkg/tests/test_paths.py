import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rotframe.core import (
    ClosedPath,
    InvalidSetupError,
    OpenPathError,
    Polyline,
    SpacetimeLoop,
    enclosed_area,
)


def test_unit_square_area(unit_square):
    assert_allclose(enclosed_area(unit_square), [0.0, 0.0, 1.0])
    assert unit_square.length() == pytest.approx(4.0)
    assert unit_square.is_planar()


def test_orientation_and_traversal(unit_square):
    assert_allclose(enclosed_area(unit_square.reversed()), [0.0, 0.0, -1.0])
    assert_allclose(enclosed_area(unit_square.traversed(3)), [0.0, 0.0, 3.0])


def test_reversed_loop_keeps_base_point(unit_square):
    reversed_square = unit_square.reversed()
    assert_allclose(reversed_square.vertices[0], unit_square.vertices[0])
    assert_allclose(reversed_square.vertices[1], unit_square.vertices[-1])
    line = Polyline([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]])
    assert_allclose(line.reversed().vertices[0], [1.0, 1.0, 0.0])


def test_figure_eight_encloses_no_area():
    # two lobes traversed in opposite senses, crossing at the origin
    path = ClosedPath(
        [
            [0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
            [0.0, 0.0, 0.0],
            [-1.0, 1.0, 0.0],
            [-1.0, -1.0, 0.0],
        ]
    )
    assert_allclose(enclosed_area(path), 0.0, atol=1e-15)
    assert path.length() == pytest.approx(4.0 + 4.0 * math.sqrt(2.0))


def test_explicit_closing_vertex_is_dropped(unit_square):
    explicit = ClosedPath(np.vstack([unit_square.vertices, unit_square.vertices[:1]]))
    assert len(explicit.vertices) == 4
    assert_allclose(enclosed_area(explicit), [0.0, 0.0, 1.0])


def test_regular_polygon_area():
    square = ClosedPath.regular_polygon(1.0, 4)
    assert_allclose(enclosed_area(square), [0.0, 0.0, 2.0], atol=1e-15)
    tilted = ClosedPath.regular_polygon(2.0, 6, normal=[1.0, 0.0, 0.0], center=[0.0, 5.0, 0.0])
    area = 1.5 * math.sqrt(3.0) * 4.0
    assert_allclose(enclosed_area(tilted), [area, 0.0, 0.0], atol=1e-12)


def test_refined_segments(unit_square):
    refined = ClosedPath(unit_square.vertices, subdivisions=5)
    starts, ends = refined.refined_segments()
    assert starts.shape == (20, 3)
    assert_allclose(ends[:-1], starts[1:])
    assert_allclose(ends[-1], starts[0])
    assert refined.length() == pytest.approx(4.0)


def test_non_planar_path():
    path = ClosedPath([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 0.0]])
    assert not path.is_planar()


def test_open_path_has_no_area():
    line = Polyline([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]])
    assert len(line.segments()[0]) == 2
    with pytest.raises(OpenPathError):
        enclosed_area(line)


@pytest.mark.parametrize(
    "vertices",
    [
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]],
        [[0.0, 0.0, 0.0], [1.0, float("inf"), 0.0], [1.0, 1.0, 0.0]],
    ],
)
def test_invalid_closed_paths(vertices):
    with pytest.raises(InvalidSetupError):
        ClosedPath(vertices)


def test_subdivisions_must_be_positive(unit_square):
    with pytest.raises(InvalidSetupError):
        ClosedPath(unit_square.vertices, subdivisions=0)


def test_spacetime_loop_at_time(unit_square):
    loop = SpacetimeLoop.at_time(unit_square, 2.5)
    assert loop.vertices.shape == (4, 4)
    assert_allclose(loop.vertices[:, 0], 2.5)
    assert_allclose(loop.vertices[:, 1:], unit_square.vertices)


def test_summary_lists_area(unit_square):
    summary = unit_square.summary()
    assert summary["kind"] == "ClosedPath"
    assert summary["vertices"] == 4
    assert summary["area"] == [0.0, 0.0, 1.0]
