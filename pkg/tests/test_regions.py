import logging
import math

import numpy as np
import pytest

from gft import regions as rg
from gft.classes import K, get_class

E = math.e
T256 = np.linspace(0, 2 * np.pi, 256, endpoint=False)
BOUNDED = [("sr", {}), ("se", {}), ("sl", {}), ("sq", {}), ("sc", {}), ("bs", {"alpha": 0.5}),
           ("janowski", {"A": 0.6, "B": -0.3})]


class TestContains:
    def test_exp_one(self):
        assert rg.contains(rg.exp_region(), 1.0)

    def test_exp_beyond_e(self):
        assert not rg.contains(rg.exp_region(), E + 0.01)

    def test_rational_right_endpoint(self):
        reg = rg.rational_region()
        assert rg.contains(reg, 2 - 1e-6)
        assert not rg.contains(reg, 2 + 1e-6)

    def test_ambiguous(self):
        reg = rg.exp_region()
        with pytest.raises(rg.BoundaryAmbiguousError):
            rg.contains(reg, reg.sample(4096)[17])

    def test_predicate_only_region(self):
        reg = rg.class_region(get_class("s"))
        assert reg.boundary is None
        assert rg.contains(reg, 10.0) and not rg.contains(reg, -0.1)

    def test_open_curve_rejected(self):
        with pytest.raises(ValueError):
            rg.Region("bad", lambda t: t + 0j)

    def test_needs_something(self):
        with pytest.raises(ValueError):
            rg.Region("empty")


@pytest.mark.parametrize("cid,params", BOUNDED)
def test_winding_around_one(cid, params):
    assert rg.winding_number(rg.class_region(get_class(cid, **params)), 1.0) == 1


@pytest.mark.parametrize("cid,params", BOUNDED)
def test_winding_agrees_with_predicate(cid, params, rng):
    reg = rg.class_region(get_class(cid, **params))
    bd = reg.sample(4096)
    lo, hi = bd.real.min() - 0.3, bd.real.max() + 0.3
    ilo, ihi = bd.imag.min() - 0.3, bd.imag.max() + 0.3
    w = rng.uniform(lo, hi, 3000) + 1j * rng.uniform(ilo, ihi, 3000)
    m = rg.membership(reg, w)
    bad = m.inside != reg.fast_membership(w)
    if bad.any():
        _, dist = rg._kernels.winding(reg.sample(1 << 16), w[bad])
        assert np.all(dist < 1e-7)


def test_exp_agreement_on_ten_thousand_points(rng):
    reg = rg.exp_region()
    w = rng.uniform(0, 3, 10_000) + 1j * rng.uniform(-1.5, 1.5, 10_000)
    m = rg.membership(reg, w)
    ref = np.abs(np.log(w)) < 1
    bad = m.inside != ref
    # any disagreement must sit on the boundary |log w| = 1
    assert np.all(np.abs(np.abs(np.log(w[bad])) - 1) < 1e-7)


def test_disagreement_is_logged(caplog):
    reg = rg.Region("lying", rg.exp_region().boundary, lambda w: np.zeros(np.shape(w), bool))
    with caplog.at_level(logging.WARNING, logger="gft.regions"):
        rg.membership(reg, [1.0])
    assert "disagree" in caplog.text


class TestRationalBranch:
    def test_principal_branch_misses_one(self):
        # the literal characterization with numpy's principal root rejects w = 1
        assert not rg.lemma_rr_principal(1.0)
        assert rg.contains(rg.rational_region(), 1.0)

    def test_branch_free_form_agrees_on_real_axis(self):
        x = np.linspace(0.5, 1.99, 200)
        assert np.all(rg._in_rational(x) == ((x > 2 * (math.sqrt(2) - 1)) & (x < 2)))


class TestDiskLemmas:
    def test_rational_branch_point(self):
        assert rg.disk_radius_phiR(math.sqrt(2)) == pytest.approx(2 - math.sqrt(2))

    def test_rational_left(self):
        assert rg.disk_radius_phiR(1.0) == pytest.approx(3 - 2 * math.sqrt(2))

    def test_rational_right_end(self):
        assert rg.disk_radius_phiR(2 - 1e-9) == pytest.approx(1e-9, abs=1e-12)

    def test_exp_branch_point(self):
        assert rg.disk_radius_exp((E + 1 / E) / 2) == pytest.approx((E - 1 / E) / 2)

    def test_exp_left(self):
        assert rg.disk_radius_exp(1.0) == pytest.approx(1 - 1 / E)

    def test_exp_right_end(self):
        assert rg.disk_radius_exp(E - 1e-9) == pytest.approx(1e-9, abs=1e-12)

    @pytest.mark.parametrize("fn,a", [(rg.disk_radius_phiR, 0.5), (rg.disk_radius_phiR, 2.0),
                                      (rg.disk_radius_exp, 0.3), (rg.disk_radius_exp, 3.0),
                                      (rg.disk_radius_lemniscate, 1.5)])
    def test_domain(self, fn, a):
        with pytest.raises(rg.LemmaDomainError):
            fn(a)

    @pytest.mark.parametrize("name,region,lo,hi", [
        ("phiR", rg.rational_region, 2 * (math.sqrt(2) - 1), 2.0),
        ("exp", rg.exp_region, 1 / E, E),
        ("lemniscate", rg.lemniscate_region, 1.0, math.sqrt(2)),
    ])
    def test_containment_probe(self, name, region, lo, hi):
        reg = region()
        fn = rg.DISK_LEMMAS[name]
        for a in np.linspace(lo, hi, 22)[1:-1]:
            r = fn(a)
            assert rg.membership(reg, a + 0.999 * r * np.exp(1j * T256)).inside.all()
            assert not rg.membership(reg, a + 1.02 * r * np.exp(1j * T256)).inside.all()


def test_unbounded_classes():
    assert rg.unbounded_image(get_class("s"))
    assert rg.unbounded_image(get_class("bs", alpha=1.0))
    assert not rg.unbounded_image(get_class("bs", alpha=0.5))
    assert not rg.unbounded_image(get_class("sr"))
