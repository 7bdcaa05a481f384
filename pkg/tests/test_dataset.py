import os

import numpy as np
import pytest

import reference as ref
from teapot import dataset
from teapot.dataset import (
    EnumStats,
    build_point_cloud,
    count_admissible,
    enumerate_admissible,
    enumerate_preperiodic,
    persistence_diagnostic,
    preperiodic_difference_probe,
    read_point_cloud,
)
from teapot.polynomials import parry_polynomial, preperiodic_polynomial, remove_trivial_factors
from teapot.rootfind import leading_root
from teapot.words import Word, word_from_id

# table the enumeration has to hit, length 2 through 16
EXPECTED_COUNTS = [1, 2, 4, 6, 12, 18, 34, 58, 106, 186, 350, 630,
                   1180, 2190, 4114]


class TestEnumerateAdmissible:
    def test_counts_frozen(self):
        counts = count_admissible(16)
        assert [counts[n] for n in range(2, 17)] == EXPECTED_COUNTS

    def test_generator_matches_counter(self):
        stats = EnumStats()
        ws = list(enumerate_admissible(12, stats))
        counts = count_admissible(12)
        assert stats.admissible_counts == counts
        assert len(ws) == sum(counts.values())

    def test_matches_brute_force(self):
        got = {w.letters for w in enumerate_admissible(12)}
        expected = set()
        for n in range(2, 13):
            for w in ref.all_bit_words(n):
                if ref.brute_admissible_periodic(w):
                    expected.add(w)
        assert got == expected

    def test_every_word_starts_10(self):
        for w in enumerate_admissible(10):
            assert w.letters[:2] == (1, 0)

    def test_deterministic_order(self):
        a = [w.letters for w in enumerate_admissible(10)]
        b = [w.letters for w in enumerate_admissible(10)]
        assert a == b
        assert a[0] == (1, 0)

    def test_no_duplicates(self):
        ws = [w.letters for w in enumerate_admissible(13)]
        assert len(ws) == len(set(ws))

    def test_counts_monotone(self):
        c10 = sum(count_admissible(10).values())
        c12 = sum(count_admissible(12).values())
        c14 = sum(count_admissible(14).values())
        assert c10 <= c12 <= c14

    def test_dominant_counts(self):
        stats = EnumStats()
        list(enumerate_admissible(10, stats))
        from teapot.words import is_dominant_word
        for n, count in stats.dominant_counts.items():
            brute = sum(1 for w in ref.all_bit_words(n)
                        if ref.brute_admissible_periodic(w) and is_dominant_word(w))
            assert count == brute

    def test_min_length(self):
        with pytest.raises(ValueError):
            list(enumerate_admissible(1))


class TestEnumeratePreperiodic:
    def test_matches_brute_force(self):
        got = {(w.pre, w.per) for w in enumerate_preperiodic(10)}
        assert got == ref.brute_preperiodic(10)

    def test_matches_brute_force_larger(self):
        got = {(w.pre, w.per) for w in enumerate_preperiodic(12)}
        assert got == ref.brute_preperiodic(12)

    def test_all_canonical(self):
        for w in enumerate_preperiodic(9):
            assert w.preperiod_len >= 1
            assert w.pre[-1] != w.per[-1]
            assert ref.is_primitive(w.per)

    def test_no_duplicates(self):
        ws = [w for w in enumerate_preperiodic(11)]
        assert len(ws) == len({(w.pre, w.per) for w in ws})

    def test_witness_stream_present(self):
        target = Word.preperiodic("1000011100", "101000")
        hits = [w for w in enumerate_preperiodic(14)
                if all(w.letter(i) == target.letter(i) for i in range(64))]
        assert len(hits) == 1
        assert hits[0] == Word.preperiodic("10000111", "001010")


class CloudMixin:
    def read_both(self, tmp_path, source, bound):
        csv = tmp_path / "c.csv"
        binary = tmp_path / "c.tpot"
        build_point_cloud(source, bound, str(csv), fmt="csv")
        build_point_cloud(source, bound, str(binary), fmt="binary")
        return read_point_cloud(str(csv)), read_point_cloud(str(binary))


class TestPointCloud(CloudMixin):
    def test_formats_agree_exactly(self, tmp_path):
        a, b = self.read_both(tmp_path, "periodic", 10)
        assert len(a) == len(b)
        for field in ("z_re", "z_im", "lam", "word_id", "flavor"):
            assert np.array_equal(a[field], b[field])

    def test_sorted_by_word_id(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 10, str(path))
        arr = read_point_cloud(str(path))
        assert (np.diff(arr["word_id"].astype(np.int64)) >= 0).all()

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        build_point_cloud("periodic", 12, str(p1), threads=1)
        build_point_cloud("periodic", 12, str(p2), threads=4)
        assert p1.read_bytes() == p2.read_bytes()

    def test_degenerate_words_filtered(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 8, str(path))
        arr = read_point_cloud(str(path))
        ids = set(int(v) for v in arr["word_id"])
        assert Word.periodic("10").word_id() not in ids
        assert Word.periodic("1010").word_id() not in ids
        assert Word.periodic("100").word_id() in ids

    def test_empty_cloud_for_tiny_bound(self, tmp_path):
        path = tmp_path / "c.csv"
        stats = build_point_cloud("periodic", 1, str(path))
        arr = read_point_cloud(str(path))
        assert len(arr) == 0
        assert stats.total_roots == 0

    def test_records_are_roots_with_small_residual(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 11, str(path))
        arr = read_point_cloud(str(path))
        rng = np.random.default_rng(11)
        for i in rng.choice(len(arr), size=60, replace=False):
            rec = arr[i]
            w = word_from_id(int(rec["word_id"]))
            poly = remove_trivial_factors(parry_polynomial(w), minus_one=True)
            z = complex(rec["z_re"], rec["z_im"])
            scale = sum(abs(c) for c in poly.coeffs) * max(1.0, abs(z)) ** poly.degree
            assert abs(poly(z)) < 1e-8 * scale

    def test_lambda_is_leading_root(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 10, str(path))
        arr = read_point_cloud(str(path))
        seen = set()
        for rec in arr:
            wid = int(rec["word_id"])
            if wid in seen:
                continue
            seen.add(wid)
            w = word_from_id(wid)
            assert abs(rec["lam"] - leading_root(parry_polynomial(w))) < 1e-9

    def test_preperiodic_flavor(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("preperiodic", 8, str(path))
        arr = read_point_cloud(str(path))
        assert (arr["flavor"] == 1).all()
        for rec in arr[:20]:
            w = word_from_id(int(rec["word_id"]))
            assert w.kind == "preperiodic"
            q = remove_trivial_factors(preperiodic_polynomial(w), minus_one=True)
            z = complex(rec["z_re"], rec["z_im"])
            scale = sum(abs(c) for c in q.coeffs) * max(1.0, abs(z)) ** q.degree
            assert abs(q(z)) < 1e-8 * scale

    def test_teapot_source_equals_periodic(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        build_point_cloud("periodic", 9, str(p1))
        build_point_cloud("teapot", 9, str(p2))
        assert p1.read_bytes() == p2.read_bytes()

    def test_bad_source(self, tmp_path):
        with pytest.raises(ValueError):
            build_point_cloud("nonsense", 8, str(tmp_path / "c.csv"))

    def test_annulus_small(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 12, str(path))
        arr = read_point_cloud(str(path))
        mod = np.hypot(arr["z_re"], arr["z_im"])
        assert mod.min() >= 0.5 - 1e-6
        assert mod.max() <= 2.0 + 1e-6


class TestFormats:
    def test_csv_header_and_endings(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 6, str(path))
        blob = path.read_bytes()
        assert blob.startswith(b"z_re,z_im,lambda,word_id,flavor\n")
        assert b"\r" not in blob

    def test_binary_magic_and_record_size(self, tmp_path):
        path = tmp_path / "c.tpot"
        build_point_cloud("periodic", 6, str(path), fmt="binary")
        blob = path.read_bytes()
        assert blob[:4] == b"TPOT"
        assert (len(blob) - 6) % 33 == 0

    def test_binary_rejects_bad_magic(self, tmp_path):
        path = tmp_path / "x.tpot"
        path.write_bytes(b"TPOX\x01\x00" + b"\x00" * 33)
        with pytest.raises(ValueError):
            dataset._read_tpot(str(path))

    def test_binary_rejects_truncation(self, tmp_path):
        good = tmp_path / "c.tpot"
        build_point_cloud("periodic", 6, str(good), fmt="binary")
        bad = tmp_path / "bad.tpot"
        bad.write_bytes(good.read_bytes()[:-5])
        with pytest.raises(ValueError, match="byte"):
            read_point_cloud(str(bad))

    def test_csv_rejects_bad_header(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("wrong,header\n1,2\n")
        with pytest.raises(ValueError):
            read_point_cloud(str(path))

    def test_csv_round_trips_float_bits(self, tmp_path):
        path = tmp_path / "c.csv"
        build_point_cloud("periodic", 9, str(path))
        arr = read_point_cloud(str(path))
        path2 = tmp_path / "again.csv"
        pts = [dataset.TeapotPoint(float(r["z_re"]), float(r["z_im"]),
                                   float(r["lam"]), int(r["word_id"]),
                                   int(r["flavor"])) for r in arr]
        dataset.write_csv(pts, str(path2))
        assert path.read_bytes() == path2.read_bytes()


class TestDiagnostics:
    def test_trivial_band(self, omega_cloud_16):
        rep = persistence_diagnostic(omega_cloud_16, 1.7, 1.7, eps=0.05)
        assert rep.score == 1.0

    def test_score_high_on_real_cloud(self, teapot_cloud_18):
        rep = persistence_diagnostic(teapot_cloud_18, 2 ** 0.5, 2.0, eps=0.05)
        assert rep.score is not None
        assert rep.score >= 0.95
        assert rep.base_count > 0
        assert not rep.empty_bands

    def test_slab_populated_at_every_level(self, teapot_cloud_18):
        rep = persistence_diagnostic(teapot_cloud_18, 2 ** 0.25, 2.0, eps=0.05)
        assert all(rep.slab_presence)

    def test_band_ordering_validated(self, omega_cloud_16):
        with pytest.raises(ValueError):
            persistence_diagnostic(omega_cloud_16, 2.0, 1.5, eps=0.05)

    def test_identical_clouds_no_difference(self, omega_cloud_16):
        rep = preperiodic_difference_probe(omega_cloud_16, omega_cloud_16,
                                           0.5 + 0.5j, 0.1)
        assert rep.density_difference == 0
        assert rep.count_a == rep.count_b

    def test_witness_separates_clouds(self, teapot_cloud_18, pre_cloud_14):
        p = complex(0.5393738531461442, 0.4050155839374199)
        rep = preperiodic_difference_probe(teapot_cloud_18, pre_cloud_14, p, 1e-2)
        assert rep.count_a == 0
        assert rep.count_b >= 1
        assert rep.nearest_b < 1e-12
        assert rep.nearest_a > 1e-2
