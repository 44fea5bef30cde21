import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gft.classes import (BUILTINS, CaratheodoryCoeffs, CaratheodoryDomainError, ClassParameterError,
                         HerglotzAtoms, K, SchwarzSpec, booth_class, coeffs_from_caratheodory,
                         direct_coeffs, extremal_caratheodory, from_descriptor, generate_function,
                         get_class, herglotz_coeffs, inverse_coeffs, inverse_from_direct,
                         janowski_class, load_descriptor, lz_lift, polynomial_class, series_coeffs,
                         starlike_order_class)

EXP_B = (1, 1 / 2, 1 / 6, 1 / 24)
RAT_B = (1 / K, 2 / K**2, 2 / K**3, 2 / K**4)
F0 = (1, 3 / 4, 17 / 36, 19 / 72)
F0_INV = (-1, 5 / 4, -31 / 18, 361 / 144)
PARAMS = {"janowski": {"A": 0.6, "B": -0.3}, "s_alpha": {"alpha": 0.4}, "bs": {"alpha": 0.5}}
F1 = (1 / K, 3 / (2 * K**2), 11 / (6 * K**3), 53 / (24 * K**4))


def assert_vec(got, want, tol=1e-12):
    assert np.allclose(np.asarray(got, complex), np.asarray(want, complex), atol=tol, rtol=0)


class TestDirect:
    def test_exponential_extremal(self):
        assert_vec(direct_coeffs(EXP_B, (2, 2, 2, 2)), F0)

    @pytest.mark.parametrize("B", [EXP_B, RAT_B, (0.3, -1, 2, 0.5)])
    def test_identity_function(self, B):
        assert_vec(direct_coeffs(B, (0, 0, 0, 0)), (0, 0, 0, 0))

    def test_rational_extremal(self):
        assert_vec(direct_coeffs(RAT_B, (2, 2, 2, 2)), F1)

    def test_needs_positive_B1(self):
        with pytest.raises(ClassParameterError):
            direct_coeffs((0, 1, 1, 1), (1, 1, 1, 1))


class TestInverse:
    def test_zero(self):
        assert_vec(inverse_from_direct(0, 0, 0, 0), (0, 0, 0, 0))

    def test_exponential(self):
        assert_vec(inverse_from_direct(*F0), F0_INV)

    def test_rational(self):
        # A3 here is 1/(2k^2): 2a2^2 - a3 = 2/k^2 - 3/(2k^2)
        assert_vec(inverse_from_direct(*F1), (-1 / K, 1 / (2 * K**2), 2 / (3 * K**3), -47 / (24 * K**4)))

    def test_closed_forms_exponential(self):
        assert_vec(inverse_coeffs(EXP_B, (2, 2, 2, 2)), F0_INV)

    def test_closed_forms_zero(self):
        assert_vec(inverse_coeffs(RAT_B, (0, 0, 0, 0)), (0, 0, 0, 0))


class TestParameterizations:
    def test_lz_point_mass(self):
        c = lz_lift(2, 0.3 + 0.2j, -1j)
        assert_vec((c.c2, c.c3), (2, 2))

    def test_lz_gamma_one(self):
        c = lz_lift(0, 1, 0.7j)
        assert_vec((c.c2, c.c3), (2, 0))

    def test_lz_z_one(self):
        c = lz_lift(0, 0, 1)
        assert_vec((c.c2, c.c3), (0, 2))

    @pytest.mark.parametrize("args", [(2.5, 0, 0), (-0.1, 0, 0), (1, 1.2, 0), (1, 0, 1.5j)])
    def test_lz_domain(self, args):
        with pytest.raises(CaratheodoryDomainError):
            lz_lift(*args)

    def test_single_atom(self):
        assert_vec(herglotz_coeffs(HerglotzAtoms((1.0,), (0.0,))).as_array(), (2, 2, 2, 2))

    def test_rotated_atom(self):
        assert_vec(herglotz_coeffs(HerglotzAtoms((1.0,), (math.pi,))).as_array(), (-2, 2, -2, 2))

    def test_two_antipodal_atoms(self):
        atoms = HerglotzAtoms.from_pairs([(0.5, 0.0), (0.5, math.pi)])
        assert_vec(herglotz_coeffs(atoms).as_array(), (0, 2, 0, 2))

    @pytest.mark.parametrize("w,t", [((0.5, 0.6), (0, 1)), ((-0.1, 1.1), (0, 1)), ((1.0,), (0, 1))])
    def test_atom_invariants(self, w, t):
        with pytest.raises(CaratheodoryDomainError):
            HerglotzAtoms(w, t)

    def test_coefficient_bound_check(self):
        with pytest.raises(CaratheodoryDomainError):
            CaratheodoryCoeffs(2.1, 0, 0).check()


class TestGenerate:
    def test_exponential(self):
        f = generate_function(get_class("se"), SchwarzSpec(1, 1))
        assert_vec(series_coeffs(f), F0)

    def test_rational_m2(self):
        f = generate_function(get_class("sr"), SchwarzSpec(1, 2))
        assert_vec(f.coeffs[:6], (0, 1, 0, 1 / (2 * K), 0, 5 / (8 * K**2)))

    def test_rational_m3(self):
        f = generate_function(get_class("sr"), SchwarzSpec(1, 3))
        # the z^7 coefficient is 7/(18k^2)
        assert_vec(f.coeffs[:8], (0, 1, 0, 0, 1 / (3 * K), 0, 0, 7 / (18 * K**2)))

    def test_rational_m3_z7_by_hand(self):
        # zf'/f = phi(z^3) = 1 + z^3/k + 2 z^6/k^2 + ...; log(f/z) = z^3/(3k) + z^6/(3k^2)
        # f/z = 1 + z^3/(3k) + z^6 (1/(3k^2) + 1/(18k^2)) = ... + 7 z^6/(18k^2)
        f = generate_function(get_class("sr"), SchwarzSpec(1, 3), 7)
        assert f[7] == pytest.approx(1 / (3 * K**2) + 1 / (18 * K**2), abs=1e-15)

    @pytest.mark.parametrize("bad", [0, -1, 1.5])
    def test_schwarz_power(self, bad):
        with pytest.raises(ValueError):
            SchwarzSpec(1, bad)

    def test_schwarz_modulus(self):
        with pytest.raises(ValueError):
            SchwarzSpec(0.5, 1)


class TestCatalog:
    @pytest.mark.parametrize("cid", sorted(BUILTINS))
    def test_builtins_build(self, cid):
        cls = get_class(cid, **PARAMS.get(cid, {}))
        s = cls.phi_series(6)
        assert s[0] == pytest.approx(1)
        assert_vec(s.coeffs[1:5], cls.B)

    @pytest.mark.parametrize("cid", sorted(BUILTINS))
    def test_closed_form_phi_matches_series(self, cid):
        cls = get_class(cid, **PARAMS.get(cid, {}))
        zs = 0.3 * np.exp(1j * np.linspace(0, 6, 7))
        assert np.allclose(cls.phi(zs), cls.phi_series(40)(zs), atol=1e-12)

    def test_rational_B(self):
        assert_vec(get_class("sr").B, RAT_B)

    @pytest.mark.parametrize("A,B", [(0.5, 0.5), (1.2, 0), (0, -1.5)])
    def test_janowski_validation(self, A, B):
        with pytest.raises(ClassParameterError):
            janowski_class(A, B)

    @pytest.mark.parametrize("alpha", [-0.1, 1.0])
    def test_order_validation(self, alpha):
        with pytest.raises(ClassParameterError):
            starlike_order_class(alpha)

    @pytest.mark.parametrize("alpha", [0.0, 1.5])
    def test_booth_validation(self, alpha):
        with pytest.raises(ClassParameterError):
            booth_class(alpha)

    def test_B_mismatch(self):
        with pytest.raises(ClassParameterError):
            polynomial_class("bad", (0, 1, 1, 1))

    def test_descriptor_round_trip(self, tmp_path):
        cls = get_class("janowski", A=0.5, B=-0.5)
        p = tmp_path / "c.json"
        p.write_text(json.dumps(cls.descriptor()))
        again = load_descriptor(p)
        assert again.name == cls.name and np.allclose(again.B, cls.B)

    def test_custom_descriptor(self):
        cls = from_descriptor({"name": "mine", "B": [0.8, 0.1, 0.0, 0.0]})
        assert cls.phi(0.5) == pytest.approx(1 + 0.4 + 0.025)

    def test_descriptor_disagreement(self):
        with pytest.raises(ClassParameterError):
            from_descriptor({"builtin": "se", "B": [1, 1, 1, 1]})

    def test_unknown(self):
        with pytest.raises(KeyError):
            get_class("nope")


# ---------------------------------------------------------------- properties

angles = st.floats(0, 2 * math.pi, allow_nan=False)


@st.composite
def atoms_st(draw):
    J = draw(st.integers(1, 4))
    w = np.array([draw(st.floats(0.01, 1)) for _ in range(J)])
    return HerglotzAtoms(tuple(w / w.sum()), tuple(draw(angles) for _ in range(J)))


B_st = st.tuples(st.floats(0.05, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))


@given(B_st, atoms_st())
def test_two_path_inverse(B, atoms):
    c = herglotz_coeffs(atoms)
    assert_vec(inverse_coeffs(B, c), inverse_from_direct(*direct_coeffs(B, c)), 1e-10)


@given(B_st, atoms_st())
def test_closed_forms_match_series_pipeline(B, atoms):
    c = herglotz_coeffs(atoms)
    cls = polynomial_class("p", B)
    f = coeffs_from_caratheodory(cls.phi_series(6), c.as_array())
    assert_vec(series_coeffs(f), direct_coeffs(B, c), 1e-10)


@given(atoms_st())
def test_parameterizations_respect_caratheodory_bound(atoms):
    assert np.all(np.abs(atoms.moments(8)) <= 2 + 1e-12)


@given(st.floats(0, 2), st.floats(0, 1), angles, angles)
def test_lz_respects_caratheodory_bound(c1, rho, ag, az):
    c = lz_lift(c1, rho * np.exp(1j * ag), np.exp(1j * az))
    assert np.all(np.abs(c.as_array()) <= 2 + 1e-12)


@pytest.mark.parametrize("cid", ["se", "sr", "sl", "sq", "sc", "bs"])
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("eps", [1, 1j, -1])
def test_generated_function_pipeline(cid, m, eps):
    cls = get_class(cid)
    w = SchwarzSpec(eps, m)
    a = series_coeffs(generate_function(cls, w))
    c = extremal_caratheodory(w)
    assert_vec(inverse_from_direct(*a), inverse_coeffs(cls.B, c), 1e-10)
    assert_vec(a, direct_coeffs(cls.B, c), 1e-10)


@given(angles)
def test_rotation_covariance(theta):
    cls = get_class("sr")
    base = generate_function(cls, SchwarzSpec(1, 1))
    rot = generate_function(cls, SchwarzSpec(np.exp(1j * theta), 1))
    n = np.arange(base.order + 1)
    assert_vec(rot.coeffs[1:], (base.coeffs * np.exp(1j * (n - 1) * theta))[1:], 1e-12)
