import math
import warnings

import numpy as np
import pytest

from gft import radii as rd
from gft import regions as rg
from gft.classes import K
from gft.oracle import extremal_catalog

E = math.e
SQ2 = math.sqrt(2)
ALPHAS = [round(0.1 * i, 1) for i in range(1, 10)]
BETAS = [1.1, 1.25, 1.5, 1.75, 1.9, 2.0, 2.5, 3.0]

# branches where the printed radius exceeds what the disk argument allows
# (the witness leaves the target domain inside the claimed disk, or bisection
# on the stated disk data lands elsewhere); see the decisions ledger
DISK_MISMATCH = {("D", "a"), ("D", "b"), ("E", "b")}
NOT_SHARP = {("D", "a"), ("D", "b"), ("E", "b"), ("E", "c"), ("E", "d")}


def branches():
    for t in "DE":
        for b in "abcde":
            if (t, b) in (("D", "a"),):
                yield from ((t, b, a) for a in [0.0] + ALPHAS)
            elif (t, b) in (("D", "c"), ("E", "e")):
                yield from ((t, b, a) for a in ALPHAS + [1.0])
            elif (t, b) == ("D", "d"):
                yield from ((t, b, beta) for beta in BETAS)
            else:
                yield t, b, None


def mark(t, b, p, bad, why):
    marks = [pytest.mark.xfail(strict=True, reason=why)] if (t, b) in bad else []
    return pytest.param(t, b, p, marks=marks, id=f"{t}{b}-{p}")


class TestQuotedValues:
    @pytest.mark.parametrize("t,b,want", [
        ("D", "b", 0.350701), ("D", "e", 0.601232), ("E", "a", 0.864665),
        ("E", "b", 0.498824), ("E", "c", 0.780444), ("E", "d", 0.395772),
    ])
    def test_quoted(self, t, b, want):
        assert rd.radius(t, b).value == pytest.approx(want, abs=1e-6)

    def test_Da_alpha0(self):
        assert rd.radius_thmD("a", 0.0).value == pytest.approx((-2 + math.sqrt(7)) / 3, abs=1e-15)

    @pytest.mark.parametrize("a", [0.0] + ALPHAS)
    def test_Da_formula(self, a):
        want = (-(2 - a) + math.sqrt(7 - 6 * a + a * a)) / (3 - 2 * a)
        assert rd.radius_thmD("a", a).value == pytest.approx(want, abs=1e-14)

    def test_Da_records_printed_form(self):
        assert "sign" in rd.radius_thmD("a", 0.3).defining_equation

    @pytest.mark.parametrize("a", ALPHAS + [1.0])
    def test_Dc_formula(self, a):
        want = (-(3 + 2 * SQ2) + math.sqrt(4 * a + 17 + 12 * SQ2)) / (2 * a)
        assert rd.radius_thmD("c", a).value == pytest.approx(want, abs=1e-12)

    @pytest.mark.parametrize("beta", BETAS)
    def test_Dd_formula(self, beta):
        want = 1.0 if beta >= 2 else K * (-beta + math.sqrt(beta**2 + 4 * beta - 4)) / 2
        assert rd.radius_thmD("d", beta).value == pytest.approx(want, abs=1e-14)

    def test_Dd_continuous_at_two(self):
        assert K * (-2 + math.sqrt(8)) / 2 == pytest.approx(1.0, abs=1e-15)
        assert rd.radius_thmD("d", 2 - 1e-12).value == pytest.approx(1.0, abs=1e-9)

    def test_De_formula(self):
        want = (SQ2 - 1) * (-4 - 3 * SQ2 + math.sqrt(62 + 44 * SQ2)) / 2
        assert rd.radius_thmD("e").value == pytest.approx(want, abs=1e-14)

    def test_Ec_formula(self):
        want = K * (-(2 * E - 1) + math.sqrt(8 * E * E - 8 * E + 1)) / (2 * E)
        assert rd.radius_thmE("c").value == pytest.approx(want, abs=1e-14)

    def test_Ed_uses_six_e(self):
        r = rd.radius_thmE("d").value
        assert r == pytest.approx((-2 * E + math.sqrt(10 * E * E - 6 * E)) / (2 * E), abs=1e-14)
        assert abs(r - (-2 * E + math.sqrt(10 * E * E - 4 * E)) / (2 * E)) > 0.05

    @pytest.mark.parametrize("a", ALPHAS + [1.0])
    def test_Ee_formula(self, a):
        want = (-E + math.sqrt(E * E + 4 * (E - 1) ** 2 * a)) / (2 * a * (E - 1))
        assert rd.radius_thmE("e", a).value == pytest.approx(want, abs=1e-12)

    def test_Ee_small_alpha_limit(self):
        assert rd.radius_thmE("e", 1e-9).value == pytest.approx((E - 1) / E, abs=1e-12)
        assert rd.radius_thmE("e", 2e-8).value == pytest.approx((E - 1) / E, abs=1e-7)

    def test_quartic_roots(self):
        for r, c in [(rd.radius_thmD("b").value, 57 - 40 * SQ2),
                     (rd.radius_thmE("b").value, ((E * E - 1) / E**2) ** 2)]:
            assert 4 * r**4 - 4 * r**2 + c == pytest.approx(0, abs=1e-14)


class TestDomains:
    @pytest.mark.parametrize("fn,b,p", [
        (rd.radius_thmD, "a", 1.0), (rd.radius_thmD, "a", -0.1), (rd.radius_thmD, "c", 0.0),
        (rd.radius_thmD, "c", 1.1), (rd.radius_thmD, "d", 1.0), (rd.radius_thmD, "d", 0.5),
        (rd.radius_thmE, "e", 0.0), (rd.radius_thmE, "e", 1.5), (rd.radius_thmD, "a", None),
        (rd.radius_thmD, "z", None), (rd.radius_thmE, "q", None),
    ])
    def test_out_of_range(self, fn, b, p):
        with pytest.raises(rd.RadiusDomainError):
            fn(b, p)

    def test_result_range(self):
        with pytest.raises(ValueError):
            rd.RadiusResult(1.2, "", "closed_form", "")


class TestMonotone:
    def test_Da_increasing(self):
        v = [rd.radius_thmD("a", a).value for a in [0.0] + ALPHAS]
        assert all(x < y for x, y in zip(v, v[1:]))

    def test_Ee_decreasing(self):
        v = [rd.radius_thmE("e", a).value for a in ALPHAS + [1.0]]
        assert all(x > y for x, y in zip(v, v[1:]))


class TestBisect:
    def test_lemniscate_into_exp(self):
        r = rd.radius_bisect(lambda r: 1.0, lambda r: 1 - math.sqrt(1 - r), "exp")
        assert r.value == pytest.approx(rd.radius_thmE("a").value, abs=1e-8)

    def test_booth_one_into_exp(self):
        r = rd.radius_bisect(lambda r: 1.0, lambda r: r / (1 - r * r), "exp")
        assert r.value == pytest.approx(rd.radius_thmE("e", 1.0).value, abs=1e-8)

    @pytest.mark.xfail(strict=True, reason="centre (1+r^2)/(1-r^2) sits on the left branch of the "
                       "phi_R lemma; the printed radius used the right branch")
    def test_close_to_star_alpha0(self):
        r = rd.radius_bisect(lambda r: (1 + r * r) / (1 - r * r), lambda r: 4 * r / (1 - r * r), "phiR")
        assert r.value == pytest.approx(rd.radius_thmD("a", 0.0).value, abs=1e-8)

    def test_close_to_star_alpha0_true_value(self):
        # left branch: 4r <= (1+r^2) - 2(sqrt2-1)(1-r^2), i.e. (2 sqrt2 - 1) r^2 - 4r + (3 - 2 sqrt2) >= 0
        a, b, c = 2 * SQ2 - 1, -4.0, 3 - 2 * SQ2
        want = (-b - math.sqrt(b * b - 4 * a * c)) / (2 * a)
        r = rd.radius_bisect(lambda r: (1 + r * r) / (1 - r * r), lambda r: 4 * r / (1 - r * r), "phiR")
        assert r.value == pytest.approx(want, abs=1e-10)

    def test_always_fits(self):
        assert rd.radius_bisect(lambda r: 1.0, lambda r: 0.01 * r, "exp").value == 1.0

    def test_never_fits(self):
        with pytest.raises(rd.NoRadiusError):
            rd.radius_bisect(lambda r: 1.0, lambda r: 5.0, "exp")

    def test_unknown_lemma(self):
        with pytest.raises(ValueError):
            rd.radius_bisect(lambda r: 1.0, lambda r: r, "nope")


@pytest.mark.parametrize("t,b,p", [mark(t, b, p, DISK_MISMATCH, "closed form does not solve the "
                                        "stated disk inequality") for t, b, p in branches()])
def test_closed_form_matches_bisection(t, b, p):
    assert abs(rd.radius(t, b, p).value - rd.radius_by_bisection(t, b, p).value) < 1e-8


SHARP_CASES = [(t, b, p) for t, b, p in branches()
               if not (t == "D" and b == "d" and p >= 2)]  # R = 1: nothing to probe outside
SHARP_CASES = [c for c in SHARP_CASES if c[2] in (None, 0.0, 0.5, 1.0, 1.1, 1.5, 1.9)]


@pytest.mark.parametrize("t,b,p", [mark(t, b, p, NOT_SHARP, "witness does not touch the domain "
                                        "boundary at the printed radius") for t, b, p in SHARP_CASES])
def test_every_radius_is_sharp(t, b, p):
    rep = rd.check_branch(t, b, p)
    assert rep.passed, rep


class TestSharpness:
    def test_halfplane(self):
        R = rd.radius_thmD("d", 1.5).value
        zfp = lambda z: 1 + (z / K) * (K + z) / (K - z)  # noqa: E731
        assert rd.sharpness_check(zfp, rg.halfplane_region(1.5), R).passed

    def test_lemniscate_into_exp(self):
        assert rd.sharpness_check(lambda z: np.sqrt(1 + z), rg.exp_region(), 1 - E**-2).passed

    def test_precondition(self):
        with pytest.raises(ValueError):
            rd.sharpness_check(lambda z: z, rg.exp_region(), 0.99995, delta=1e-4)

    def test_series_input_matches_closed_form(self):
        f = extremal_catalog("f_B(0.5)", order=40).series
        R = rd.radius_thmD("c", 0.5).value
        assert rd.sharpness_check(f, rg.rational_region(), R).passed

    def test_series_precision_warning(self):
        f = extremal_catalog("f_L", order=6).series
        with pytest.warns(RuntimeWarning, match="truncated"):
            rd.sharpness_check(f, rg.exp_region(), 0.864665)


class TestTrueRadius:
    """Radii found without any disk lemma, from the witness image alone."""

    def test_close_to_star(self):
        _, zfp, region = rd.witness("D", "a", 0.0)
        # zf'/f(-r) = (1 - 4r + r^2)/(1 - r^2) reaches 2(sqrt2 - 1)
        a, b, c = 1 + 2 * (SQ2 - 1), -4.0, 1 - 2 * (SQ2 - 1)
        want = (-b - math.sqrt(b * b - 4 * a * c)) / (2 * a)
        assert rd.true_radius(zfp, region) == pytest.approx(want, abs=1e-7)

    def test_lune_into_rational(self):
        _, zfp, region = rd.witness("D", "b")
        r = rd.true_radius(zfp, region)
        assert r < rd.radius_thmD("b").value - 0.1

    @pytest.mark.parametrize("t,b,p", [("D", "c", 0.5), ("D", "e", None), ("E", "a", None), ("E", "e", 0.5)])
    def test_sharp_branches_agree(self, t, b, p):
        _, zfp, region = rd.witness(t, b, p)
        assert rd.true_radius(zfp, region) == pytest.approx(rd.radius(t, b, p).value, abs=1e-6)
