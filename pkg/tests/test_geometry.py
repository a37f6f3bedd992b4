import json
import math
import random
import time

import pytest

import mmwreflect as m
from mmwreflect.geometry import panel_as_wall, rotate_panel

A_DEFAULT = 0.595

# Frozen solver output for the default corridor, cross-checked against an
# independent plain-bisection script before being pinned here.
ALPHA_DEG = 42.19825867319058
BETA_DEG = 12.986649379980049
GAMMA_DEG = 7.383166726361207
X_A = 0.440790881426186
Y_B = 0.3996603543654612


class TestOrientationResidual:
    def test_published_tilt_is_nearly_a_root(self, layout):
        r = m.orientation_residual(math.radians(42.198), layout, A_DEFAULT)
        assert abs(r) < 3e-5

    def test_zero_tilt_value_matches_hand_derivation(self, layout):
        # At alpha=0 the half-width terms collapse onto the axes.
        expected = math.atan(1.0 / 3.3925) - math.atan(0.5125 / 4.75) - math.pi / 2
        assert math.isclose(m.orientation_residual(0.0, layout, A_DEFAULT),
                            expected, rel_tol=0, abs_tol=1e-15)

    def test_zero_width_panel_has_closed_form_root(self, layout):
        alpha0 = (math.pi / 2
                  - math.atan((layout.l_R / 2) / layout.L_R)
                  + math.atan((layout.l_T / 2) / (layout.L_T + layout.l_R))) / 2
        assert abs(m.orientation_residual(alpha0, layout, 0.0)) < 1e-12

    def test_residual_rejects_tilt_outside_quadrant(self, layout):
        with pytest.raises(m.GeometryError):
            m.orientation_residual(-0.1, layout, A_DEFAULT)
        with pytest.raises(m.GeometryError):
            m.orientation_residual(math.pi / 2 + 0.1, layout, A_DEFAULT)

    def test_oversized_panel_degenerates(self, layout):
        # Half the panel would reach past the receiver plane.
        with pytest.raises(m.GeometryError):
            m.orientation_residual(0.1, layout, 8.0)


class TestSolve:
    def test_reproduces_frozen_solution(self, solution):
        assert math.degrees(solution.alpha) == pytest.approx(ALPHA_DEG, abs=1e-9)
        assert math.degrees(solution.beta) == pytest.approx(BETA_DEG, abs=1e-9)
        assert math.degrees(solution.gamma) == pytest.approx(GAMMA_DEG, abs=1e-9)
        assert solution.panel.end_on_x.x == pytest.approx(X_A, abs=1e-9)
        assert solution.panel.end_on_y.y == pytest.approx(Y_B, abs=1e-9)

    def test_residual_and_angle_identity_at_root(self, solution):
        assert abs(solution.residual) < 1e-10
        identity = 2 * solution.alpha + solution.beta - solution.gamma - math.pi / 2
        assert abs(identity) < 1e-10

    def test_aim_angle_definitions_hold_at_root(self, layout, solution):
        half = A_DEFAULT / 2
        lhs = math.tan(solution.beta) * (layout.L_R - half * math.cos(solution.alpha))
        rhs = layout.l_R / 2 - half * math.sin(solution.alpha)
        assert math.isclose(lhs, rhs, rel_tol=1e-12)
        lhs = math.tan(solution.gamma) * (layout.L_T + layout.l_R
                                          - half * math.sin(solution.alpha))
        rhs = layout.l_T / 2 - half * math.cos(solution.alpha)
        assert math.isclose(lhs, rhs, rel_tol=1e-12)

    def test_shrinking_panel_approaches_closed_form(self, layout):
        alpha0 = (math.pi / 2
                  - math.atan((layout.l_R / 2) / layout.L_R)
                  + math.atan((layout.l_T / 2) / (layout.L_T + layout.l_R))) / 2
        sol = m.solve_reflector_orientation(layout, 1e-9)
        assert sol.alpha == pytest.approx(alpha0, abs=1e-6)

    def test_single_sign_change_on_dense_scan(self, layout):
        flips = 0
        prev = m.orientation_residual(math.radians(1e-3), layout, A_DEFAULT)
        for i in range(1, 10_000):
            a = math.radians(1e-3 + i * (90.0 - 2e-3) / 9_999)
            cur = m.orientation_residual(a, layout, A_DEFAULT)
            if (cur < 0) != (prev < 0):
                flips += 1
            prev = cur
        assert flips == 1

    def test_solver_is_fast(self, layout):
        start = time.perf_counter()
        m.solve_reflector_orientation(layout, A_DEFAULT)
        assert time.perf_counter() - start < 1.0

    def test_rejects_nonpositive_width(self, layout):
        with pytest.raises(m.GeometryError):
            m.solve_reflector_orientation(layout, 0.0)


class TestPanel:
    def test_forty_five_degrees_is_symmetric(self):
        p = m.panel_from_alpha(math.radians(45.0), 1.0)
        assert p.end_on_x.x == pytest.approx(math.sqrt(0.5), rel=1e-12)
        assert p.end_on_y.y == pytest.approx(math.sqrt(0.5), rel=1e-12)

    def test_chord_length_always_equals_width(self):
        rng = random.Random(7)
        for _ in range(200):
            alpha = rng.uniform(1e-3, math.pi / 2 - 1e-3)
            width = rng.uniform(1e-3, 10.0)
            p = m.panel_from_alpha(alpha, width)
            assert p.end_on_x.distance_to(p.end_on_y) == pytest.approx(width, rel=1e-12)
            assert p.end_on_x.y == 0.0
            assert p.end_on_y.x == 0.0
            assert p.center.x == pytest.approx(p.end_on_x.x / 2, rel=1e-12)

    def test_rejects_bad_tilt_or_width(self):
        with pytest.raises(m.GeometryError):
            m.panel_from_alpha(0.0, 1.0)
        with pytest.raises(m.GeometryError):
            m.panel_from_alpha(math.pi / 2, 1.0)
        with pytest.raises(m.GeometryError):
            m.panel_from_alpha(1.0, -1.0)

    def test_front_normal_is_unit_and_inward(self, solution):
        nx, ny = solution.panel.front_normal
        assert math.hypot(nx, ny) == pytest.approx(1.0, rel=1e-12)
        assert nx > 0 and ny > 0

    def test_rotate_preserves_width(self, solution):
        p = rotate_panel(solution.panel, math.radians(30.0))
        assert p.width_a == solution.panel.width_a
        assert p.alpha == pytest.approx(math.radians(30.0))


class TestMirror:
    def test_across_x_axis(self):
        wall = m.WallSegment(m.Point2(0, 0), m.Point2(1, 0))
        assert m.mirror_point(m.Point2(0.3, 1.0), wall) == m.Point2(0.3, -1.0)

    def test_point_on_line_is_fixed(self):
        wall = m.WallSegment(m.Point2(0, 0), m.Point2(2, 2))
        p = m.mirror_point(m.Point2(1, 1), wall)
        assert p.distance_to(m.Point2(1, 1)) < 1e-12

    def test_involution(self):
        rng = random.Random(11)
        for _ in range(300):
            wall = m.WallSegment(
                m.Point2(rng.uniform(-5, 5), rng.uniform(-5, 5)),
                m.Point2(rng.uniform(-5, 5), rng.uniform(-5, 5)))
            if wall.length < 1e-3:
                continue
            p = m.Point2(rng.uniform(-5, 5), rng.uniform(-5, 5))
            back = m.mirror_point(m.mirror_point(p, wall), wall)
            assert back.distance_to(p) < 1e-9


class TestSegmentIntersection:
    def test_plain_crossing(self):
        hit = m.segment_intersection(m.Point2(0, 0), m.Point2(1, 1),
                                     m.Point2(0, 1), m.Point2(1, 0))
        assert hit.kind == "point"
        assert hit.point.distance_to(m.Point2(0.5, 0.5)) < 1e-12

    def test_parallel_offset(self):
        hit = m.segment_intersection(m.Point2(0, 0), m.Point2(1, 0),
                                     m.Point2(0, 1), m.Point2(1, 1))
        assert hit.kind == "none"

    def test_shared_endpoint(self):
        hit = m.segment_intersection(m.Point2(0, 0), m.Point2(1, 0),
                                     m.Point2(1, 0), m.Point2(1, 1))
        assert hit.kind == "point"
        assert hit.point.distance_to(m.Point2(1, 0)) < 1e-12

    def test_collinear_overlap_is_flagged(self):
        hit = m.segment_intersection(m.Point2(0, 0), m.Point2(2, 0),
                                     m.Point2(1, 0), m.Point2(3, 0))
        assert hit.kind == "overlap"
        assert hit.point is None

    def test_collinear_disjoint(self):
        hit = m.segment_intersection(m.Point2(0, 0), m.Point2(1, 0),
                                     m.Point2(2, 0), m.Point2(3, 0))
        assert hit.kind == "none"

    def test_crossing_lines_but_disjoint_segments(self):
        hit = m.segment_intersection(m.Point2(0, 0), m.Point2(1, 0),
                                     m.Point2(2, -1), m.Point2(2, 1))
        assert hit.kind == "none"


class TestLayout:
    def test_default_dimensions_and_walls(self, layout):
        assert (layout.L_T, layout.L_R, layout.l_T, layout.l_R) == (2.75, 3.69, 1.62, 2.0)
        names = {w.name: w for w in layout.walls}
        assert set(names) == set(m.geometry.WALL_NAMES)
        assert names["bottom"].b == m.Point2(3.69, 0.0)
        assert names["left"].b == m.Point2(0.0, 4.75)
        assert names["rx_end"].a == m.Point2(3.69, 0.0)
        assert names["rx_end"].b == m.Point2(3.69, 2.0)
        assert names["tx_end"].b == m.Point2(1.62, 4.75)
        assert names["inner_x"].a == m.Point2(1.62, 2.0)
        assert names["inner_y"].b == m.Point2(3.69, 2.0)

    def test_containment(self, layout):
        assert layout.contains(m.Point2(3.0, 1.0))       # receiver arm
        assert layout.contains(m.Point2(0.8, 4.0))       # transmitter arm
        assert layout.contains(m.Point2(0.0, 0.0))       # corner, closed
        assert layout.contains(m.Point2(3.69, 2.0))      # boundary
        assert not layout.contains(m.Point2(2.0, 3.0))   # notch outside the L
        assert not layout.contains(m.Point2(-0.1, 1.0))

    def test_json_round_trip(self, layout, tmp_path):
        d = layout.to_dict()
        assert m.CorridorLayout.from_dict(d) == layout
        path = tmp_path / "layout.json"
        path.write_text(json.dumps(d), encoding="utf-8")
        assert m.load_layout(path) == layout

    def test_wall_material_assignment_round_trips(self):
        lay = m.CorridorLayout.from_dimensions(2.75, 3.69, 1.62, 2.0,
                                               wall_materials={"left": "glass"})
        by_name = {w.name: w.material for w in lay.walls}
        assert by_name["left"] == "glass"
        assert by_name["bottom"] == "plasterboard"
        assert m.CorridorLayout.from_dict(lay.to_dict()) == lay

    def test_bad_dimensions_and_names(self):
        with pytest.raises(m.GeometryError):
            m.CorridorLayout.from_dimensions(-1.0, 3.69, 1.62, 2.0)
        with pytest.raises(m.GeometryError):
            m.CorridorLayout.from_dimensions(2.75, 3.69, 1.62, 2.0,
                                             wall_materials={"ceiling": "glass"})
        with pytest.raises(m.GeometryError):
            m.CorridorLayout.from_dict({"L_T": 2.75, "L_R": 3.69, "l_T": 1.62})

    def test_panel_segment_view(self, solution):
        wall = panel_as_wall(solution.panel, "metal")
        assert wall.name == "panel"
        assert wall.material == "metal"
        assert wall.length == pytest.approx(A_DEFAULT, rel=1e-12)


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        m.Point2(float("nan"), 0.0)
    with pytest.raises(ValueError):
        m.Point2(0.0, float("inf"))
