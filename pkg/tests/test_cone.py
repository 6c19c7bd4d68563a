import json
import random
from fractions import Fraction

import pytest

from csck.character import Dims, KahlerClass
from csck.cone import (
    FacePoint,
    REGION_BOUNDARY,
    REGION_INSIDE,
    REGION_NOT_NORMALIZABLE,
    REGION_OUTSIDE,
    in_kahler_triangle,
    isolate_on_segment,
    ke_check,
    limit_l1,
    limit_l2,
    sample_face,
    scan_pair,
    scan_range,
    sign_at,
    vertex_c,
)


class TestFaceGeometry:
    def test_vertex_values(self):
        assert vertex_c(Dims(1, 2)) == FacePoint(Fraction(3, 9), Fraction(4, 9), Fraction(2, 9))
        assert vertex_c(Dims(1, 1)) == FacePoint(Fraction(3, 8), Fraction(3, 8), Fraction(2, 8))

    def test_vertex_coordinates_sum_to_one(self):
        for m, n in ((1, 2), (4, 7), (9, 10)):
            c = vertex_c(Dims(m, n))
            assert c.x + c.y + c.z == 1

    def test_face_point_validation(self):
        with pytest.raises(ValueError):
            FacePoint(1, 1, 1)

    def test_centroid_inside(self):
        assert in_kahler_triangle(Dims(1, 2), KahlerClass(Fraction(4, 9), Fraction(13, 27), Fraction(2, 27))) == REGION_INSIDE

    def test_vertex_on_boundary(self):
        assert in_kahler_triangle(Dims(1, 2), KahlerClass(1, 0, 0)) == REGION_BOUNDARY

    def test_outside(self):
        assert in_kahler_triangle(Dims(1, 2), KahlerClass(1, 1, 5)) == REGION_OUTSIDE

    def test_not_normalizable(self):
        assert in_kahler_triangle(Dims(1, 2), KahlerClass(-1, 0, 1)) == REGION_NOT_NORMALIZABLE

    def test_scaling_invariance_of_region(self):
        d = Dims(2, 5)
        point = KahlerClass(Fraction(1, 3), Fraction(1, 2), Fraction(1, 6))
        for s in (2, Fraction(1, 7), 30):
            assert in_kahler_triangle(d, point.scaled(s)) == in_kahler_triangle(d, point)


class TestLimits:
    def test_frozen_values(self):
        assert limit_l1(Dims(1, 2)) == Fraction(-15, 8)
        assert limit_l2(Dims(1, 2)) == Fraction(45, 8)
        assert limit_l1(Dims(2, 5)) == Fraction(-13500000, 823543)
        assert limit_l2(Dims(2, 5)) == Fraction(1323, 64)

    def test_signs_on_backed_range(self):
        for m in range(1, 10):
            for n in range(m + 1, 11):
                d = Dims(m, n)
                assert limit_l1(d) < 0
                assert limit_l2(d) > 0


class TestSigns:
    def test_anticanonical_sign(self):
        assert sign_at(Dims(1, 2), KahlerClass(3, 4, 2)) == -1

    def test_zero_on_z_plane(self):
        assert sign_at(Dims(1, 2), KahlerClass(1, 1, 0)) == 0

    def test_positive_scaling_preserves_sign(self):
        rng = random.Random(3)
        d = Dims(1, 2)
        for _ in range(10):
            c = KahlerClass(*(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)))
            s = Fraction(rng.randint(1, 20), rng.randint(1, 20))
            assert sign_at(d, c.scaled(s)) == sign_at(d, c)


class TestKeCheck:
    def test_golden(self):
        verdict = ke_check(Dims(1, 2))
        assert verdict.f_at_c1 == -2304
        assert not verdict.ke_admissible

    def test_symmetric_dims_admit(self):
        # for m = n the anticanonical class lies on the zero locus
        verdict = ke_check(Dims(1, 1))
        assert verdict.f_at_c1 == 0
        assert verdict.ke_admissible


class TestSegments:
    def test_sign_change_yields_interval(self):
        d = Dims(1, 2)
        report = isolate_on_segment(d, KahlerClass(Fraction(7, 16), Fraction(7, 16), Fraction(1, 8)), vertex_c(d).as_class())
        assert report.sign_start == 1 and report.sign_end == -1
        assert len(report.roots) >= 1
        assert all(r.inside_certified for r in report.roots)

    def test_identically_zero_on_z_plane(self):
        report = isolate_on_segment(Dims(1, 2), KahlerClass(1, 0, 0), KahlerClass(0, 1, 0))
        assert report.identically_zero
        assert report.roots == ()

    def test_no_interior_roots_when_signs_agree(self):
        d = Dims(1, 2)
        report = isolate_on_segment(
            d,
            KahlerClass(Fraction(7, 16), Fraction(7, 16), Fraction(1, 8)),
            KahlerClass(Fraction(15, 32), Fraction(15, 32), Fraction(1, 16)),
        )
        assert report.sign_start == 1 and report.sign_end == 1
        assert report.roots == ()

    def test_coincident_endpoints_rejected(self):
        with pytest.raises(ValueError):
            isolate_on_segment(Dims(1, 2), KahlerClass(1, 1, 1), KahlerClass(1, 1, 1))

    def test_json_shape(self):
        d = Dims(1, 2)
        report = isolate_on_segment(d, KahlerClass(Fraction(7, 16), Fraction(7, 16), Fraction(1, 8)), vertex_c(d).as_class())
        obj = report.to_json()
        assert obj["sign_from"] == "positive" and obj["sign_to"] == "negative"
        assert obj["intervals"] and {"lo", "hi", "midpoint_class", "inside_certified"} <= set(obj["intervals"][0])


class TestScan:
    def test_full_backed_range(self):
        rows = scan_range(1, 9, 2, 10)
        assert len(rows) == 45
        assert [(r.m, r.n) for r in rows] == sorted((r.m, r.n) for r in rows)
        for row in rows:
            assert row.limit1 < 0
            assert row.limit2 > 0
            assert not row.ke_admissible
            assert row.sign_change_found
            assert row.paper_backed
            assert row.witness_intervals

    def test_single_pair_consistent(self):
        row = scan_pair(1, 2)
        assert row.limit1 == limit_l1(Dims(1, 2))
        assert row.limit2 == limit_l2(Dims(1, 2))
        assert row.f_at_c1 == -2304

    def test_equal_dims_row(self):
        rows = scan_range(3, 3, 3, 3, all_pairs=True)
        assert len(rows) == 1
        row = rows[0]
        assert not row.paper_backed
        assert row.ke_admissible  # F vanishes on the anticanonical class at m = n

    def test_default_excludes_equal_dims(self):
        assert scan_range(3, 3, 3, 3) == []

    def test_csv_fields_shape(self):
        row = scan_pair(1, 2)
        fields = row.csv_fields()
        assert fields[:2] == ["1", "2"]
        assert fields[5:] == ["false", "true", "true"]

    def test_parallel_scan_is_deterministic(self):
        sequential = [r.to_json() for r in scan_range(1, 3, 2, 4)]
        parallel = [r.to_json() for r in scan_range(1, 3, 2, 4, jobs=2)]
        assert json.dumps(sequential) == json.dumps(parallel)

    def test_bad_bounds_rejected(self):
        with pytest.raises(ValueError):
            scan_range(0, 2, 1, 3)
        with pytest.raises(ValueError):
            scan_range(2, 1, 1, 3)


class TestSampleFace:
    def test_resolution_three(self):
        samples = sample_face(Dims(1, 2), 3)
        assert len(samples) == 1
        only = samples[0]
        assert (only.point.x, only.point.y, only.point.z) == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))

    def test_anticanonical_direction_sampled_negative(self):
        samples = sample_face(Dims(1, 2), 9)
        hit = [s for s in samples if (s.point.x, s.point.y, s.point.z) == (Fraction(3, 9), Fraction(4, 9), Fraction(2, 9))]
        assert len(hit) == 1
        assert hit[0].sign == -1

    def test_points_sum_to_one(self):
        for s in sample_face(Dims(2, 3), 6):
            assert s.point.x + s.point.y + s.point.z == 1

    def test_low_resolution_rejected(self):
        with pytest.raises(ValueError):
            sample_face(Dims(1, 2), 1)
