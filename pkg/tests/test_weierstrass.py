import math

import numpy as np
import pytest

from xherm import weierstrass as W
from xherm.errors import SingularPointError, XhermError
from xherm.verify import association_identities, sample_points

SQRT_PI = math.sqrt(math.pi)


def _cr_defect(f, z, h=1e-4):
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return np.abs(0.5 * (fx + 1j * fy)) / np.maximum(np.abs(fx), 1.0)


@pytest.mark.parametrize("form", W.CHI_FORMS)
def test_holomorphy(form):
    p = W.WeierstrassParams(n=3, chi_form=form)
    z = sample_points(20, 1.0, seed=2)
    for f in (lambda t: W.eta_squared(p, t), lambda t: W.chi(p, t)):
        coarse, fine = np.max(_cr_defect(f, z, 1e-3)), np.max(_cr_defect(f, z, 5e-4))
        # the defect is pure O(h^2) truncation
        assert fine < 1e-4 and coarse / fine == pytest.approx(4.0, rel=0.05)


def test_chi_at_origin():
    assert complex(W.chi(W.WeierstrassParams(n=1), 0)) == pytest.approx(-3 / SQRT_PI)
    assert complex(W.chi(W.WeierstrassParams(n=1, chi_form="associated"), 0)) == pytest.approx(-2 / SQRT_PI)
    assert complex(W.chi(W.WeierstrassParams(n=0), 0.3)) == 0


@pytest.mark.parametrize("form", W.CHI_FORMS)
def test_chi_derivative(form):
    p = W.WeierstrassParams(n=2, chi_form=form)
    z, h = np.array([0.3 + 0.4j, -0.8 + 0.1j]), 1e-5
    fd = (W.chi(p, z + h) - W.chi(p, z - h)) / (2 * h)
    np.testing.assert_allclose(W.chi_derivative(p, z), fd, rtol=1e-8)


def test_association_identity_only_for_associated_form():
    z = np.array([0.2 + 0.3j, -0.6 + 0.5j, 1.1])
    good = association_identities(W.WeierstrassParams(n=4, chi_form="associated"), z)
    bad = association_identities(W.WeierstrassParams(n=4, chi_form="unit"), z)
    assert max(good.values()) < 1e-8
    assert max(bad.values()) > 1e-3


def test_eta_squared_through_weight():
    p = W.WeierstrassParams(c1=1.5)
    z = 0.4 - 0.7j
    assert complex(W.eta_squared(p, z)) == pytest.approx(p.c1**2 / (16 * complex(W.weight_complex(z))))


@pytest.mark.parametrize("form", W.CHI_FORMS)
def test_closed_form_pieces_differentiate_to_integrands(form):
    assert max(W.bracket_derivative_defects(form).values()) < 1e-8
    assert W.brackets_valid(form)


def test_two_erf_antiderivatives_differ_by_constant():
    z = np.array([0.3 + 0.2j, -1.0 + 0.5j, 0.9 + 2.0j])
    d = W.prim_erf_eta(z) - W.prim_erf_eta_alt(z)
    assert np.ptp(np.abs(d - d[0])) < 1e-10


def test_i4_two_evaluators():
    a = W.i4_integral(1 + 3j, 0.2 - 0.4j).value
    b = W.i4_by_parts(1 + 3j, 0.2 - 0.4j).value
    assert abs(a - b) < 1e-11 * abs(a)


@pytest.mark.parametrize("n", [0, 1, 3])
@pytest.mark.parametrize("form", W.CHI_FORMS)
def test_closed_form_matches_direct_quadrature(n, form):
    p = W.WeierstrassParams(n=n, chi_form=form)
    for xi in (0j, 0.5 - 0.9j):
        c = W.immersion_integrals(p, xi)
        d = W.direct_integrals(p, xi)
        for a, b in ((c.I1, d.I1), (c.I2, d.I2), (c.I3, d.I3)):
            assert abs(a - b) < 1e-9 * max(1.0, abs(b))


def test_plane_for_n0():
    pt = W.immersion_point(W.WeierstrassParams(n=0), 0.3 + 0.3j)
    assert pt[2] == 0.0


def test_base_point_maps_to_origin():
    p = W.WeierstrassParams(n=3)
    assert np.all(W.immersion_point(p, p.xi0) == 0)


def test_su2_structure():
    m = W.su2_matrix(W.WeierstrassParams(n=3), 0.2 + 0.1j)
    assert m.trace == 0
    assert m.anti_hermitian_defect() == 0
    assert m.algebra == "su2"


def test_potential_matrix_forms_agree():
    p = W.WeierstrassParams(n=3, c1=1.3, c2=-0.4)
    for z in (0.1 + 0.2j, -0.9 + 0.3j):
        a = W.potential_matrix(p, z).as_array()
        b = W.potential_matrix_expanded(p, z).as_array()
        np.testing.assert_allclose(a, b, rtol=1e-12)
        assert abs(np.trace(a)) < 1e-12 * np.max(np.abs(a))
        assert abs(np.linalg.det(a)) < 1e-10 * np.max(np.abs(a)) ** 2


def test_params_validation_and_json():
    with pytest.raises(XhermError):
        W.WeierstrassParams(n=-1)
    with pytest.raises(XhermError):
        W.WeierstrassParams(c1=0)
    with pytest.raises(XhermError):
        W.WeierstrassParams(chi_form="other")
    d = W.WeierstrassParams().to_json_dict()
    assert d["xi0"] == [1.0, 3.0] and d["c1"] == [1.0, 0.0]


def test_singular_points():
    with pytest.raises(SingularPointError):
        W.chi(W.WeierstrassParams(n=1), 1j / math.sqrt(2))


def test_mesh_shape_and_layout():
    p = W.WeierstrassParams(n=2)
    m = W.generate_mesh(p, (-1, 1, -0.5, 0.5), 5, 3)
    assert m.points.shape == (5, 3, 3) and m.err.shape == (5, 3)
    np.testing.assert_allclose(m.points[4, 1], W.immersion_point(p, complex(m.x[4], m.y[1])), rtol=1e-10, atol=1e-10)
    assert np.all(m.err >= 0) and np.max(m.err) < 1e-8


def test_mesh_rejects_bad_input():
    p = W.WeierstrassParams()
    with pytest.raises(XhermError):
        W.generate_mesh(p, (1, -1, -1, 1))
    with pytest.raises(XhermError):
        W.generate_mesh(p, nu=1)
    with pytest.raises(SingularPointError):
        W.generate_mesh(W.WeierstrassParams(n=1), (-1, 1, -1 / math.sqrt(2), 1 / math.sqrt(2)), 3, 3)


def test_mesh_is_deterministic_across_worker_counts(monkeypatch):
    p = W.WeierstrassParams(n=3)
    monkeypatch.delenv(W.WORKERS_ENV, raising=False)
    a = W.generate_mesh(p, nu=21, nv=21)
    monkeypatch.setenv(W.WORKERS_ENV, "4")
    b = W.generate_mesh(p, nu=21, nv=21)
    assert np.array_equal(a.points, b.points)
    assert np.array_equal(a.err, b.err)


def test_wavefunction_second_component():
    p = W.WeierstrassParams(n=3, chi_form="associated")
    z = 0.3 + 0.2j
    psi1, psi2 = W.wavefunction(p, 1.0, 0.5, z)
    d1 = complex(W.first_component(p, 1.0, 0.5, z, 1))
    want = complex(W.chi(p, z)) * psi1 - d1 / (p.spectral_lambda * complex(W.eta_squared(p, z)))
    assert psi2 == pytest.approx(want)
