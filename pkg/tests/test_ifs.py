import math

import numpy as np
import pytest

import reference as ref
from teapot.ifs import (
    GapSpec,
    exclusion_test,
    gap_radius,
    min_ring_modulus,
    ring_coordinates,
    verify_gap,
)

WITNESS_P = complex(0.5393738531461442, 0.4050155839374199)

# verdicts flip at depth 4 for the witness point; minima keep growing after
LADDER = [
    (1, "plausible", 1, 1.3481636269692632),
    (2, "plausible", 2, 1.9173167833241656),
    (3, "plausible", 2, 2.780165444251313),
    (4, "excluded", 0, 3.2005910497893018),
    (5, "excluded", 0, 4.379198128450582),
    (6, "excluded", 0, 5.806290871054417),
]


class TestExclusion:
    @pytest.mark.parametrize("depth,verdict,survivors,emin", LADDER)
    def test_witness_ladder(self, depth, verdict, survivors, emin):
        q = exclusion_test(WITNESS_P, depth)
        assert q.verdict == verdict
        assert q.survivors == survivors
        assert q.exclusion_min == pytest.approx(emin, abs=1e-12)
        assert q.ball_radius == pytest.approx(3.072277269646242, abs=1e-12)

    def test_excluded_implies_min_beats_ball(self):
        for depth in range(4, 9):
            q = exclusion_test(WITNESS_P, depth)
            assert q.verdict == "excluded"
            assert q.exclusion_min > q.ball_radius

    def test_min_monotone_once_excluded(self):
        mins = [exclusion_test(WITNESS_P, d).exclusion_min for d in range(4, 9)]
        assert all(b > a for a, b in zip(mins, mins[1:]))

    def test_golden_point_stays_plausible(self):
        z = -(math.sqrt(5) - 1) / 2
        q = exclusion_test(z, 12)
        assert q.verdict == "plausible"
        assert q.survivors == 16

    def test_small_real_point_excluded_quickly(self):
        q = exclusion_test(0.4, 3)
        assert q.verdict == "excluded"
        assert q.exclusion_min == pytest.approx(14.6875, abs=1e-12)
        assert q.ball_radius == pytest.approx(5 / 3, abs=1e-12)

    @pytest.mark.parametrize("z", [0.0, 1.0, 1.2, -1.0, 1j])
    def test_rejects_bad_modulus(self, z):
        with pytest.raises(ValueError, match="0 < |.z.| < 1"):
            exclusion_test(z, 3)

    def test_rejects_bad_depth(self):
        with pytest.raises(ValueError, match="depth"):
            exclusion_test(0.5, 0)

    def test_pruning_preserves_exact_answer(self):
        # the branch cut must change neither the minimum nor the survivor
        # count relative to a full enumeration
        rng = np.random.default_rng(523)
        for _ in range(120):
            r = rng.uniform(0.2, 0.8)
            theta = rng.uniform(0, 2 * math.pi)
            z = r * complex(math.cos(theta), math.sin(theta))
            depth = int(rng.integers(3, 12))
            q = exclusion_test(z, depth)
            bmin, bsurv = ref.brute_exclusion(z, depth)
            assert q.exclusion_min == pytest.approx(bmin, abs=1e-12)
            assert q.survivors == bsurv

    def test_pruning_deep(self):
        for z in (WITNESS_P, 0.3 + 0.6j, -0.55 + 0.2j):
            q = exclusion_test(z, 13)
            bmin, bsurv = ref.brute_exclusion(z, 13)
            assert q.exclusion_min == pytest.approx(bmin, abs=1e-12)
            assert q.survivors == bsurv


CLOSED_FORM_C = {
    ("integer", 1): 1.0,
    ("integer", 2): 1.0,
    ("integer", 3): 1.0,
    ("integer", 5): 1.0,
    ("half", 1): math.sqrt(2) / 2,
    ("half", 2): math.sqrt(3) / 2,
    ("half", 3): 1.0,
    ("half", 5): 1.0,
}


class TestGapRadius:
    @pytest.mark.parametrize("kind,d", sorted(CLOSED_FORM_C))
    def test_min_modulus_closed_form(self, kind, d):
        assert min_ring_modulus(kind, d) == pytest.approx(
            CLOSED_FORM_C[(kind, d)], abs=1e-12)

    def test_unit_modulus_point(self):
        spec = gap_radius("integer", 1, 1j, 14)
        assert spec.c == 1.0
        assert spec.r == pytest.approx(1.0 / (435 * math.e), abs=1e-15)
        assert spec.r == pytest.approx(0.0008456998647619363, abs=1e-15)

    def test_radius_shrinks_with_n(self):
        r14 = gap_radius("integer", 1, 1j, 14).r
        r16 = gap_radius("integer", 1, 1j, 16).r
        assert r16 == pytest.approx(0.0006557565796282395, abs=1e-15)
        assert r16 < r14

    def test_large_modulus_uses_nth_power(self):
        spec = gap_radius("integer", 1, 1 + 1j, 5)
        expected = min(1.0 / (66 * math.sqrt(2) ** 5 * math.e), 1.0 / 6)
        assert spec.r == pytest.approx(expected, abs=1e-15)

    def test_radius_never_exceeds_cap(self):
        # c <= |x| for ring elements, so the first branch of the min is
        # always below 1/(n+1); the cap is a safety bound, not the value
        for n in (1, 3, 14):
            for x in (1j, 1 + 1j, complex(0.5, math.sqrt(3) / 2)):
                kind, d = ("half", 3) if x.real == 0.5 else ("integer", 1)
                spec = gap_radius(kind, d, x, n)
                assert spec.r < 1.0 / (n + 1)

    def test_rejects_zero(self):
        with pytest.raises(ValueError, match="nonzero"):
            gap_radius("integer", 1, 0, 14)

    def test_rejects_off_lattice(self):
        with pytest.raises(ValueError, match="not an element"):
            gap_radius("integer", 1, 0.5 + 0.5j, 14)

    def test_rejects_bad_ring(self):
        with pytest.raises(ValueError, match="ring_kind"):
            gap_radius("quaternion", 1, 1j, 14)
        with pytest.raises(ValueError, match="D must"):
            gap_radius("integer", 7, 1j, 14)

    def test_coordinates_round_trip(self):
        assert ring_coordinates("integer", 2, complex(3, -2 * math.sqrt(2))) == (3, -2)
        assert ring_coordinates("half", 3, complex(0.5, math.sqrt(3) / 2)) == (0, 1)
        with pytest.raises(ValueError):
            ring_coordinates("half", 3, complex(0.5, 0.5))


class TestVerifyGap:
    def test_unit_point_clear(self, omega_cloud_14):
        ok, offenders = verify_gap(gap_radius("integer", 1, 1j, 14), omega_cloud_14)
        assert ok
        assert offenders == []

    def test_half_ring_point_clear(self, omega_cloud_14):
        x = complex(0.5, math.sqrt(3) / 2)
        ok, offenders = verify_gap(gap_radius("half", 3, x, 14), omega_cloud_14)
        assert ok
        assert offenders == []

    def test_all_small_ring_elements_clear(self, omega_cloud_14):
        from teapot.ifs import _ring_element
        checked = 0
        for kind, ds in (("integer", (1, 2, 3, 5)), ("half", (1, 5))):
            for d in ds:
                for a in range(-4, 5):
                    for b in range(-4, 5):
                        if a == 0 and b == 0:
                            continue
                        x = _ring_element(kind, d, a, b)
                        if abs(x) > 2.0:
                            continue
                        ok, _ = verify_gap(gap_radius(kind, d, x, 14),
                                           omega_cloud_14)
                        assert ok, (kind, d, a, b)
                        checked += 1
        assert checked == 72

    def test_inflated_radius_reports_offenders(self, omega_cloud_14):
        spec = GapSpec("integer", 1, 1j, 14, 1.0, 0.05)
        ok, offenders = verify_gap(spec, omega_cloud_14)
        assert not ok
        assert len(offenders) == 20
        for z, dist in offenders:
            assert 1e-9 < dist < 0.05
            assert abs(z - 1j) == pytest.approx(dist, abs=1e-12)

    def test_rejects_cloud_beyond_bound(self, omega_cloud_16):
        with pytest.raises(ValueError, match="16 > n = 14"):
            verify_gap(gap_radius("integer", 1, 1j, 14), omega_cloud_16)

    def test_empty_cloud_vacuous(self, tmp_path):
        from teapot.dataset import build_point_cloud
        path = tmp_path / "empty.csv"
        build_point_cloud("periodic", 1, str(path))
        ok, offenders = verify_gap(gap_radius("integer", 1, 1j, 14), str(path))
        assert ok and offenders == []
