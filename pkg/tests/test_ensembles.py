import numpy as np
import pytest
from scipy import stats

from unigate import ensembles
from unigate.canonical import in_weyl_chamber
from unigate.ensembles import (
    CHAMBER_COPIES,
    EnsembleSpec,
    Histogram,
    coe_eigenphase_triples,
    gate_records,
    integrate_volumes,
    mc_mean_entropy,
    mc_pe_fraction,
    mc_purity,
    pdf_alpha,
    pdf_coe4_marginal,
    pdf_eta,
    purity_from_eta,
    random_vector_mean_entropy,
    sample_block,
    sample_unitary,
    write_sample_csv,
)

PI = np.pi


class TestSamplers:
    def test_unitarity(self):
        spec = EnsembleSpec("cue", 4, 10, seed=5)
        for i in range(10):
            U = sample_unitary(spec, i)
            assert np.abs(U @ U.conj().T - np.eye(4)).max() < 1e-12

    def test_scue_determinant(self):
        spec = EnsembleSpec("scue", 4, 5, seed=5)
        for i in range(5):
            assert abs(np.linalg.det(sample_unitary(spec, i)) - 1) < 1e-10

    def test_coe_symmetric_unitary(self):
        spec = EnsembleSpec("coe", 4, 5, seed=5)
        for i in range(5):
            Y = sample_unitary(spec, i)
            assert np.abs(Y - Y.T).max() < 1e-12
            assert np.abs(Y @ Y.conj().T - np.eye(4)).max() < 1e-12

    def test_deterministic_in_seed_and_index(self):
        spec = EnsembleSpec("cue", 4, 100, seed=77)
        a = sample_unitary(spec, 42)
        b = sample_unitary(spec, 42)
        assert np.array_equal(a, b)
        block = sample_block(spec, 40, 50)
        assert np.array_equal(block[2], a)

    def test_different_indices_differ(self):
        spec = EnsembleSpec("cue", 4, 10, seed=5)
        assert not np.allclose(sample_unitary(spec, 0), sample_unitary(spec, 1))

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            EnsembleSpec("gue", 4, 10, seed=1)

    def test_index_bounds(self):
        spec = EnsembleSpec("cue", 4, 3, seed=1)
        with pytest.raises(IndexError):
            sample_unitary(spec, 3)

    def test_haar_invariance_two_sample(self):
        # purity histograms of {U} and {V U} agree (chi-squared two-sample)
        n = 4000
        spec = EnsembleSpec("cue", 4, n, seed=901)
        U = sample_block(spec, 0, n)
        V = sample_unitary(EnsembleSpec("cue", 4, 1, seed=902), 0)
        lam1 = ensembles._spectra(U)
        lam2 = ensembles._spectra(V[None] @ U)
        r1 = (lam1**2).sum(1)
        r2 = (lam2**2).sum(1)
        edges = np.linspace(0.25, 1.0, 16)
        c1, _ = np.histogram(r1, edges)
        c2, _ = np.histogram(r2, edges)
        keep = (c1 + c2) >= 10
        stat = ((c1[keep] - c2[keep]) ** 2 / (c1[keep] + c2[keep])).sum()
        p = stats.chi2.sf(stat, keep.sum() - 1)
        assert p > 0.001


class TestGateRecords:
    def test_fields_and_chamber(self):
        spec = EnsembleSpec("scue", 4, 256, seed=11)
        rec = gate_records(spec)
        assert set(rec) == {"index", "r", "S1", "S2", "alpha", "eta", "pe"}
        assert len(rec["r"]) == 256
        for a in rec["alpha"]:
            assert in_weyl_chamber(a, tol=1e-9)
        assert set(rec["pe"]) <= {"N", "B", "Y"}

    def test_thread_count_invariance(self):
        spec = EnsembleSpec("scue", 4, 2500, seed=13)
        r1 = gate_records(spec, threads=1)
        r2 = gate_records(spec, threads=2)
        r8 = gate_records(spec, threads=8)
        for k in r1:
            assert np.array_equal(r1[k], r2[k]), k
            assert np.array_equal(r1[k], r8[k]), k

    def test_csv_byte_identical_across_threads(self, tmp_path):
        spec = EnsembleSpec("scue", 4, 1500, seed=13)
        paths = []
        for t in (1, 2, 8):
            p = tmp_path / f"s{t}.csv"
            write_sample_csv(p, gate_records(spec, threads=t))
            paths.append(p.read_bytes())
        assert paths[0] == paths[1] == paths[2]

    def test_purity_fast_path(self):
        spec = EnsembleSpec("scue", 4, 512, seed=17)
        rec = gate_records(spec)
        assert np.allclose(purity_from_eta(rec["eta"]), rec["r"], atol=1e-8)

    def test_nonqubit_records(self):
        spec = EnsembleSpec("cue", 9, 64, seed=19)
        rec = gate_records(spec)
        assert "alpha" not in rec
        assert len(rec["S1"]) == 64


class TestDensities:
    def test_pdf_alpha_repeated_component_zero(self):
        assert pdf_alpha(np.array([PI / 8, PI / 8, PI / 8])) == pytest.approx(0.0, abs=1e-15)

    def test_pdf_alpha_b_gate_value(self):
        # (2/pi) * (sqrt2/2)^4 = 1/(2 pi) at alpha = (pi/4, pi/8, 0)
        val = pdf_alpha(np.array([PI / 4, PI / 8, 0.0]))
        assert val == pytest.approx(1 / (2 * PI), abs=1e-12)

    def test_pdf_alpha_nonnegative_and_zero_on_planes(self, rng):
        a = rng.uniform(-PI / 2, PI / 2, size=(500, 3))
        assert (pdf_alpha(a) >= 0).all()
        a[:, 1] = a[:, 0]
        assert np.allclose(pdf_alpha(a), 0, atol=1e-12)

    def test_chamber_mass_is_one_192th_of_cube(self):
        vols = integrate_volumes()
        assert vols["V_w"] * CHAMBER_COPIES == pytest.approx(1.0, abs=1e-6)

    def test_pdf_eta_symmetric(self):
        from unigate.canonical import eta_from_alpha

        e = eta_from_alpha(np.array([0.3, 0.2, 0.1]))  # interior point
        base = pdf_eta(e)
        assert pdf_eta(e[[1, 2, 0]]) == pytest.approx(base, rel=1e-12)
        assert pdf_eta(e[[2, 0, 1]]) == pytest.approx(base, rel=1e-12)

    def test_pdf_eta_domain_errors(self):
        with pytest.raises(ValueError):
            pdf_eta(np.array([-1 / 3, -1 / 3, -1 / 3]))
        with pytest.raises(ValueError):
            pdf_eta(np.array([1.0, 1.0, 1.0]))  # boundary

    def test_pdf_eta_diverges_near_boundary_face(self):
        # alpha3 -> 0 drives eta onto the eta3 = eta1 eta2 hyperboloid while
        # the 1/|s3 c3| factor blows up
        from unigate.canonical import eta_from_alpha

        vals = [pdf_eta(eta_from_alpha(np.array([0.3, 0.15, eps]))) for eps in (0.02, 0.005, 0.001)]
        assert vals[0] < vals[1] < vals[2]
        assert vals[2] > 10 * vals[0]

    def test_coe_marginal_normalized(self):
        masses = ensembles.coe_bin_masses(bins=10, subdiv=4)
        assert masses.sum() == pytest.approx(1.0, abs=1e-9)

    def test_coe_marginal_vanishes_on_coincidence(self):
        assert pdf_coe4_marginal(np.array([0.3, 0.3, -1.0])) == pytest.approx(0.0, abs=1e-12)


class TestVolumes:
    def test_ratio(self):
        vols = integrate_volumes()
        assert vols["ratio"] == pytest.approx(8 / (3 * PI), abs=1e-6)

    def test_restricting_alpha3_reduces_volume(self):
        # PE volume strictly exceeds the measure of its alpha3 = 0 face
        vols = integrate_volumes()
        assert vols["V_pe"] > 0
        assert vols["V_pe"] < vols["V_w"]


class TestEstimators:
    def test_mc_purity_small_run(self):
        est, hist = mc_purity(2, samples=4000, seed=23)
        assert est.mean == pytest.approx(0.4, abs=5 * est.std_error + 1e-3)
        assert isinstance(hist, Histogram)
        width = (hist.hi - hist.lo) / hist.bins
        assert hist.density.sum() * width == pytest.approx(1.0, abs=1e-9)

    def test_mc_pe_fraction_small_run(self):
        est = mc_pe_fraction(samples=4000, seed=29)
        assert est.mean == pytest.approx(8 / (3 * PI), abs=0.025)

    def test_mc_mean_entropy_rank(self):
        est = mc_mean_entropy(2, 0, samples=500, seed=31)
        assert est.mean == pytest.approx(np.log(4), abs=1e-9)

    def test_random_vector_mean_entropy(self):
        assert random_vector_mean_entropy(2) == pytest.approx(13 / 12, abs=1e-14)

    def test_estimate_std_error_definition(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        est = ensembles._estimate(x)
        assert est.std_error == pytest.approx(np.std(x, ddof=1) / 2)


class TestCOETriples:
    def test_shapes_and_range(self):
        spec = EnsembleSpec("coe", 4, 128, seed=37)
        th = coe_eigenphase_triples(spec)
        assert th.shape == (128, 3)
        assert (np.abs(th) <= PI + 1e-12).all()

    def test_deterministic(self):
        spec = EnsembleSpec("coe", 4, 64, seed=41)
        assert np.array_equal(coe_eigenphase_triples(spec), coe_eigenphase_triples(spec, threads=4))
