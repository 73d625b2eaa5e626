import numpy as np

from lu_invar.equivalence import (
    Fingerprint,
    ScreenConfig,
    compare_fingerprints,
    fingerprint,
    screen,
    witness_search_hint,
)
from lu_invar.states import (
    apply_local_unitary_density,
    random_density,
    random_local_unitaries,
    validate_density,
)
from oracles import elementary_symmetric


class TestFingerprint:
    def test_rho1(self, rho1):
        fp = fingerprint(rho1)
        assert fp.rank == 2
        assert np.allclose(fp.F, [1.0, 1.0, 0.25], atol=1e-12)
        assert abs(fp.N_value - 1.0 / 256.0) < 1e-12
        assert abs(fp.kyfan - 1.0 / np.sqrt(2.0)) < 1e-10
        assert set(fp.lambda_coeffs) == {"det", "N", "M"}

    def test_rho2(self, rho2):
        fp = fingerprint(rho2)
        assert fp.rank == 2
        assert np.allclose(fp.F, [1.0, 1.0, 0.25], atol=1e-12)
        assert abs(fp.N_value) < 1e-12
        assert abs(fp.kyfan - 1.0 / np.sqrt(2.0)) < 1e-10

    def test_maximally_mixed(self):
        rho = validate_density(np.eye(4) / 4.0, (2, 2))
        fp = fingerprint(rho)
        assert fp.rank == 4
        expected = [elementary_symmetric([0.25] * 4, i) for i in range(5)]
        assert np.allclose(fp.F, expected, atol=1e-12)
        assert fp.N_value is None and fp.M_value is None
        assert set(fp.lambda_coeffs) == {"det"}

    def test_rank_matches_f_length(self):
        for trial in range(6):
            rho = random_density((2, 3), trial % 4 + 1, seed=900 + trial)
            fp = fingerprint(rho)
            assert len(fp.F) == fp.rank + 1
            assert abs(fp.F[1] - 1.0) < 1e-10

    def test_deterministic(self, sigma1):
        a = fingerprint(sigma1)
        b = fingerprint(sigma1)
        assert np.array_equal(a.F, b.F)
        assert a.N_value == b.N_value
        assert a.kyfan == b.kyfan

    def test_multipartite_cut(self):
        rho = random_density((2, 2, 2), 2, seed=77)
        fp = fingerprint(rho, ScreenConfig(cut=1))
        assert fp.rank == 2
        assert fp.N_value is not None
        fp2 = fingerprint(rho, ScreenConfig(cut=2))
        assert fp2.rank == 2

    def test_multipartite_lu_invariance_every_cut(self):
        # per-subsystem locals leave the fingerprint unchanged across any cut
        rho = random_density((2, 2, 2), 3, seed=78)
        moved = apply_local_unitary_density(
            rho, random_local_unitaries((2, 2, 2), seed=79)
        )
        for cut in (1, 2):
            cfg = ScreenConfig(cut=cut)
            fa = fingerprint(rho, cfg)
            fb = fingerprint(moved, cfg)
            assert fa.rank == fb.rank
            assert np.abs(fa.F - fb.F).max() < 1e-9
            assert abs(fa.kyfan - fb.kyfan) < 1e-9
            report = compare_fingerprints(fa, fb, cfg)
            assert report.verdict == "Inconclusive"


class TestScreen:
    def test_rho_pair_not_equivalent_witness_n(self, rho1, rho2):
        report = screen(rho1, rho2)
        assert report.verdict == "NotEquivalent"
        assert report.witness == "invariant_N"
        a, b, delta = report.witness_values
        assert abs(a - 1.0 / 256.0) < 1e-12 and abs(b) < 1e-12
        assert abs(delta - 1.0 / 256.0) < 1e-12

    def test_sigma_pair_not_equivalent(self, sigma1, sigma2):
        report = screen(sigma1, sigma2)
        assert report.verdict == "NotEquivalent"
        # N is evaluated before M in the fixed order and already separates
        # the pair (1/6561 vs 0), so it is the reported witness
        assert report.witness == "invariant_N"

    def test_identical_states_inconclusive(self, rho1):
        report = screen(rho1, rho1)
        assert report.verdict == "Inconclusive"
        assert report.witness is None
        assert all(c.passed for c in report.checks)

    def test_lu_pair_inconclusive(self):
        rho = random_density((2, 3), 2, seed=90)
        moved = apply_local_unitary_density(rho, random_local_unitaries((2, 3), seed=91))
        report = screen(rho, moved)
        assert report.verdict == "Inconclusive"

    def test_rank_gate(self):
        a = random_density((2, 2), 2, seed=92)
        b = random_density((2, 2), 3, seed=93)
        report = screen(a, b)
        assert report.verdict == "NotEquivalent"
        assert report.witness == "rank"

    def test_dimension_signature_gate(self):
        a = random_density((2, 2), 2, seed=94)
        b = random_density((2, 3), 2, seed=95)
        report = screen(a, b)
        assert report.verdict == "NotEquivalent"
        assert report.witness == "dimension signature"

    def test_symmetric(self, rho1, rho2):
        ab = screen(rho1, rho2)
        ba = screen(rho2, rho1)
        assert ab.verdict == ba.verdict
        failing_ab = {c.name for c in ab.checks if not c.passed}
        failing_ba = {c.name for c in ba.checks if not c.passed}
        assert failing_ab == failing_ba

    def test_deterministic_reports(self, sigma1, sigma2):
        r1 = screen(sigma1, sigma2)
        r2 = screen(sigma1, sigma2)
        assert r1 == r2

    def test_check_order_fixed(self, rho1, rho2):
        report = screen(rho1, rho2)
        names = [c.name for c in report.checks]
        assert names[0] == "rank"
        assert names[1:3] == ["F_1", "F_2"]
        assert names[3:5] == ["invariant_N", "invariant_M"]
        assert names[5] == "kyfan"
        assert names[6].startswith("lambda_det")

    def test_verdict_iff_some_check_fails(self):
        for trial in range(6):
            a = random_density((2, 2), trial % 3 + 1, seed=960 + trial)
            b = random_density((2, 2), trial % 3 + 1, seed=970 + trial)
            report = screen(a, b)
            any_fail = any(not c.passed for c in report.checks)
            assert (report.verdict == "NotEquivalent") == any_fail

    def test_tolerance_config_respected(self, rho1, rho2):
        loose = ScreenConfig(atol=1.0, rtol=1.0)
        report = screen(rho1, rho2, loose)
        assert report.verdict == "Inconclusive"


class TestCompareFingerprints:
    def _fingerprint_with_f2(self, base, f2):
        f = base.F.copy()
        f[2] = f2
        return Fingerprint(
            dims=base.dims,
            rank=base.rank,
            F=f,
            kyfan=base.kyfan,
            N_value=base.N_value,
            M_value=base.M_value,
            lambda_coeffs=base.lambda_coeffs,
        )

    def test_marginal_flag_both_sides_of_threshold(self, rho1):
        base = fingerprint(rho1)
        cfg = ScreenConfig(atol=1e-8, rtol=0.0)

        # failing but within 10x of the threshold: marginal, verdict flips
        close_fail = self._fingerprint_with_f2(base, base.F[2] + 3e-8)
        report = compare_fingerprints(base, close_fail, cfg)
        check = next(c for c in report.checks if c.name == "F_2")
        assert not check.passed and check.marginal
        assert report.verdict == "NotEquivalent"

        # passing but within 10x below the threshold: marginal, verdict holds
        close_pass = self._fingerprint_with_f2(base, base.F[2] + 3e-9)
        report = compare_fingerprints(base, close_pass, cfg)
        check = next(c for c in report.checks if c.name == "F_2")
        assert check.passed and check.marginal
        assert report.verdict == "Inconclusive"

        # far beyond the threshold: failing, not marginal
        far_fail = self._fingerprint_with_f2(base, base.F[2] + 1e-3)
        report = compare_fingerprints(base, far_fail, cfg)
        check = next(c for c in report.checks if c.name == "F_2")
        assert not check.passed and not check.marginal

    def test_padding_f_comparison_across_ranks(self):
        # different ranks: rank check fails, F entries beyond the shorter
        # fingerprint compare against exact zeros
        a = fingerprint(random_density((2, 2), 2, seed=96))
        b = fingerprint(random_density((2, 2), 4, seed=97))
        report = compare_fingerprints(a, b)
        names = [c.name for c in report.checks]
        assert "F_4" in names
        assert report.witness == "rank"


class TestWitnessSearchHint:
    def test_rho_pair_top_entries(self, rho1, rho2):
        hints = witness_search_hint(rho1, rho2)
        ranked = dict(hints)
        # M flips sign between the two states (entrywise delta 2/256), so it
        # outranks N (1/256) in relative terms; both lead the list
        assert hints[0][0] == "invariant_M"
        assert abs(ranked["invariant_M"] - 2.0 / 256.0) < 1e-12
        assert abs(ranked["invariant_N"] - 1.0 / 256.0) < 1e-12
        # every failing check ranks above every passing one
        failing = {c.name for c in screen(rho1, rho2).checks if not c.passed}
        positions = {name: i for i, (name, _) in enumerate(hints)}
        worst_failing = max(positions[name] for name in failing)
        best_passing = min(p for name, p in positions.items() if name not in failing)
        assert worst_failing < best_passing

    def test_ranking_is_by_relative_difference(self, rho1, rho2):
        hints = witness_search_hint(rho1, rho2)
        report = screen(rho1, rho2)
        by_name = {c.name: c for c in report.checks}

        def relative(name):
            c = by_name[name]
            scale = max(abs(c.value_a), abs(c.value_b))
            return c.delta / scale if scale else 0.0

        values = [relative(name) for name, _ in hints]
        assert values == sorted(values, reverse=True)

    def test_identical_states_all_zero(self, sigma1):
        hints = witness_search_hint(sigma1, sigma1)
        assert all(delta == 0.0 for _, delta in hints)

    def test_sigma_pair_top_entry(self, sigma1, sigma2):
        hints = witness_search_hint(sigma1, sigma2)
        # kyfan separates this pair most strongly in absolute terms;
        # the first degree-4 separator is invariant_N
        top_names = [name for name, _ in hints[:3]]
        assert "invariant_N" in top_names or "kyfan" in top_names


class TestSoundness:
    def test_no_false_positives_on_lu_pairs(self):
        flagged = []
        for trial in range(40):
            dims = (2, 2) if trial % 2 else (2, 3)
            rho = random_density(dims, trial % 3 + 1, seed=2000 + trial)
            moved = apply_local_unitary_density(
                rho, random_local_unitaries(dims, seed=3000 + trial)
            )
            report = screen(rho, moved)
            if report.verdict != "Inconclusive":
                flagged.append((trial, report.witness))
        assert flagged == []
