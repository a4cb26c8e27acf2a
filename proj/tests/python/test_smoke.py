import math

import pytest

st = pytest.importorskip("spectral_transfer")


def test_fundamental_free():
    import cmath

    p = st.SLProblem(1.0, math.pi / 2, st.Potential.constant(0.0))
    z = complex(0, 1)
    f = st.solve_fundamental(p, z, 1.0)
    assert abs(f.wronskian() - 1) < 1e-12
    w = cmath.sqrt(z)
    assert abs(f.phi - cmath.cos(w)) < 1e-10
    assert abs(f.psi - cmath.sin(w) / w) < 1e-10


def test_weyl_and_measure():
    p = st.SLProblem(1.0, math.pi / 2, st.Potential.constant(0.0))
    m = st.weyl_m(p, 1.0, "inf", complex(-1, 0))
    assert abs(m - math.tanh(1)) < 1e-10
    mu = st.orthogonal_measure(p, 1.0, "inf", 50)
    atoms = mu.atoms()
    assert len(atoms) == 50
    lam0, w0 = atoms[0]
    assert abs(lam0 - (math.pi / 2) ** 2) < 1e-8
    assert abs(w0 - 2.0) < 1e-8


def test_transfer_is_t_on_support():
    p = st.SLProblem(1.0, math.pi / 2, st.Potential.constant(0.0))
    mu = st.orthogonal_measure(p, 1.0, 0.0, 2000)
    grid = [0.05 * k for k in range(41)]
    phi = st.phi_from_measure(mu, grid)
    dev = max(abs(phi(t) - t) for t in grid)
    assert dev < 1e-2
    verdict = st.krein_kernel_psd(phi, [0.02 * k for k in range(50)])
    assert verdict.is_psd


def test_string_and_json_roundtrip():
    s = st.MassDistribution.homogeneous(1.0)
    assert abs(s.total_mass() - 1.0) < 1e-12
    s2 = st.MassDistribution.from_json(s.to_json())
    assert abs(s2.total_mass() - 1.0) < 1e-12
    mu = st.string_spectral_measure(s, 0.0, 200)
    g = st.string_transfer(mu, [0.1 * k for k in range(11)])
    assert g(0.0) == pytest.approx(0.0, abs=1e-4)  # truncation offset of 200 atoms
    assert g(1.0) <= 1e-6  # g is nonpositive on the real line


def test_decay_fit_localizes():
    q1 = st.Potential.step([0.0, 0.5, 1.0], [0.0, 3.0])
    q2 = st.Potential.constant(0.0)
    p1 = st.SLProblem(1.0, math.pi / 2, q1)
    p2 = st.SLProblem(1.0, math.pi / 2, q2)
    fit = st.decay_fit(p1, p2, "inf", n=16)
    assert not fit.indistinguishable
    assert abs(fit.a_hat - 0.5) < 0.05
