import numpy as np
import pytest

import hillproj as hp


def test_mathieu_coefficients():
    p = hp.mathieu(1.0)
    assert p.w(2) == pytest.approx(-0.5j)
    assert p.V(2) == pytest.approx(1.0)
    assert p.V(0) == 0


def test_residue_closed_form():
    p = hp.mathieu(1.0)
    value = hp.first_order_residue(p, hp.BoundaryCondition.PerPlus, 4, 6, 4)
    assert value == pytest.approx(-1 / 20)
    assert hp.quadrature_vs_residue_check(p, hp.BoundaryCondition.Dirichlet, 8, 32) < 1e-10


@pytest.mark.parametrize(
    "bc, n, rank",
    [
        (hp.BoundaryCondition.PerPlus, 10, 2),
        (hp.BoundaryCondition.PerMinus, 11, 2),
        (hp.BoundaryCondition.Dirichlet, 10, 1),
    ],
)
def test_projection_algebra(bc, n, rank):
    H = hp.assemble(bc, hp.mathieu(1.0), 48)
    assert H.L.shape[0] == len(H.indices)
    assert np.allclose(H.L, H.L.conj().T)
    assert hp.eigen_count_in_disc(H, n) == rank
    pair = hp.riesz_projection(H, n)
    P = pair.P
    assert np.linalg.norm(P @ P - P) < 1e-8
    assert abs(pair.trace() - rank) < 1e-6
    # Oracle: eigenprojector from numpy
    values, vectors = np.linalg.eigh(H.L)
    inside = np.abs(values - n * n) < n
    oracle = vectors[:, inside] @ vectors[:, inside].conj().T
    assert np.linalg.norm(P - oracle) < 1e-8
    assert hp.spectral_norm(pair.B) == pytest.approx(np.linalg.norm(pair.B, 2))


def test_decay_between_n():
    H = hp.assemble(hp.BoundaryCondition.PerPlus, hp.mathieu(1.0), 96)
    values = [hp.sum_abs_B(hp.riesz_projection(H, n)) for n in (10, 16, 24)]
    assert values[0] > values[1] > values[2]


def test_bounds_and_lemmas():
    b = hp.bound_sequences(hp.mathieu(1.0), 16)
    assert b["kappa"] == pytest.approx(max(b["rho"], b["eps"]))
    report = hp.lemma_suite(hp.mathieu(1.0), 32)
    assert report.passed()
    assert report.failures() == 0
    assert all(v.passed for v in report.verdicts if v.kind != "diagnostic")


def test_equivalence_ratio():
    H = hp.assemble(hp.BoundaryCondition.PerPlus, hp.mathieu(1.0), 64)
    rep = hp.equivalence_ratio(hp.riesz_projection(H, 12), samples=200)
    assert rep["regime_reached"]
    assert 1.0 <= rep["max_ratio"] <= 3.05


def test_errors_raise():
    H = hp.assemble(hp.BoundaryCondition.PerPlus, hp.mathieu(1.0), 16)
    with pytest.raises(hp.HillError, match="TruncationTooSmall|truncation"):
        hp.riesz_projection(H, 8)
    with pytest.raises(hp.HillError):
        hp.FourierPotential.from_coeffs(0, [(3, 1.0)])
