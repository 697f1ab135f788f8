"""Concrete function-space norms and the identity scenario registry."""

import math

import numpy as np
import pytest

from interpolab.grid import (Grid, GridFunction, L1, L2, LINF, RiSpace,
                             full_grid, unit_grid)
from interpolab.sv import EllPow, ONE
from interpolab.applications import (GrandLp, SmallLp, UltraLp, LinfQBeta,
                                     GGamma, AType, BType, app_from_obj,
                                     norm_app, scenario_names, get_scenario,
                                     verify_identity)
from interpolab import corpus

from util import rel_err


# -- parameter validation ----------------------------------------------

def test_validate_rejects_bad_params():
    with pytest.raises(ValueError):
        GrandLp(1.0, 1.0).validate()
    with pytest.raises(ValueError):
        GrandLp(2.0, 0.0).validate()
    with pytest.raises(ValueError):
        SmallLp(0.5, 1.0).validate()
    with pytest.raises(ValueError):
        UltraLp(0.5, ONE, L2).validate()
    with pytest.raises(ValueError):
        LinfQBeta(2.0, -0.25).validate()     # beta + 1/q = 0.25 >= 0
    with pytest.raises(ValueError):
        LinfQBeta(math.inf, 0.5).validate()  # q = inf needs beta <= 0
    with pytest.raises(ValueError):
        AType(2.0, 0.5, L2).validate()       # (alpha-1) q = -1, not < -1
    with pytest.raises(ValueError):
        GGamma(2.0, math.inf, -1.0, ONE, 0.0, ONE).validate()


def test_validate_accepts_registry_params():
    for s in (GrandLp(2.0, 1.0), SmallLp(4.0, 1.0),
              UltraLp(2.0, EllPow(-0.5), L2), LinfQBeta(2.0, -1.0),
              LinfQBeta(math.inf, 0.0), AType(4.0, 0.0, L2),
              GGamma(2.0, 2.0, -1.0, EllPow(-3.0), 0.0, ONE)):
        s.validate()


# -- norm recipes against hand integrals --------------------------------

def test_ultra_reduces_to_lp():
    # b = 1, E = L_p: || t^(1/p) f* ||_{L~p} is the plain L_p norm
    g = unit_grid(2048)
    a, p = 0.1, 2.0
    f = corpus.sample(f"chi:{a}", g)
    val = norm_app(UltraLp(p, ONE, RiSpace(p)), f)
    a_eff = float(g.t[np.flatnonzero(f.values > 0)[-1]])
    assert rel_err(val, a_eff ** (1.0 / p)) < 1e-2


def test_linfq_sup_recipe():
    g = unit_grid(1024)
    f = corpus.sample("chi:1", g)
    # sup l^0 f* = 1 and sup l^-1 f* = 1 (attained at t = 1)
    assert rel_err(norm_app(LinfQBeta(math.inf, 0.0), f), 1.0) < 1e-9
    assert rel_err(norm_app(LinfQBeta(math.inf, -1.0), f), 1.0) < 1e-9


def test_linfq_integral_recipe():
    # || l^-2 chi_(0,1) ||_{L~1(0,1)} = 1 - l^-1(t_min)
    g = unit_grid(2048)
    f = corpus.sample("chi:1", g)
    expect = 1.0 - 1.0 / (1.0 + abs(float(g.x[0])))
    assert rel_err(norm_app(LinfQBeta(1.0, -2.0), f), expect) < 1e-3


def test_grand_matches_direct_maximization():
    g = unit_grid(4096)
    p, alpha = 2.0, 1.0
    f = corpus.sample("chi:0.1", g)
    got = norm_app(GrandLp(p, alpha), f)
    # independent evaluation of sup_t l^(-alpha/p)(t) ||f||_{L_p(t,1)}
    from interpolab.grid import lebesgue_suffix
    tailp = lebesgue_suffix(f.values ** p, g)
    direct = np.max((1.0 + np.abs(g.x)) ** (-alpha / p) *
                    tailp ** (1.0 / p))
    assert rel_err(got, float(direct)) < 1e-6


def test_all_norms_are_homogeneous():
    g = unit_grid(1024)
    spaces = (GrandLp(2.0, 1.0), SmallLp(4.0, 1.0),
              UltraLp(2.0, EllPow(-0.5), L2), LinfQBeta(2.0, -1.0),
              GGamma(2.0, 2.0, -1.0, EllPow(-3.0), 0.0, ONE),
              AType(4.0, 0.0, L2), BType(2.0, 0.0, L2))
    f = corpus.sample("chi:0.1", g)
    f3 = GridFunction(g, 3.0 * f.values)
    for s in spaces:
        v1 = norm_app(s, f)
        v3 = norm_app(s, f3)
        assert math.isfinite(v1) and v1 > 0, s
        assert rel_err(v3, 3.0 * v1) < 1e-9, s


def test_norms_are_monotone():
    g = unit_grid(1024)
    small = corpus.sample("chi:0.01", g)
    large = corpus.sample("chi:0.5", g)
    for s in (GrandLp(2.0, 1.0), SmallLp(4.0, 1.0), LinfQBeta(2.0, -1.0),
              BType(2.0, 0.0, L2)):
        assert norm_app(s, small) <= norm_app(s, large), s


def test_norm_app_needs_unit_grid():
    f = corpus.sample("chi:0.1", full_grid(512))
    with pytest.raises(ValueError):
        norm_app(GrandLp(2.0, 1.0), f)


def test_app_obj_round_trip():
    for s in (GrandLp(2.0, 1.0), SmallLp(4.0, 1.0),
              UltraLp(2.0, EllPow(-0.5), L2), LinfQBeta(math.inf, -1.0),
              GGamma(2.0, 2.0, -1.0, EllPow(-3.0), 0.0, ONE),
              AType(4.0, 0.0, L2), BType(2.0, 0.0, L2)):
        assert app_from_obj(s.to_obj()) == s
    with pytest.raises(ValueError):
        app_from_obj({"kind": "heptagon"})


# -- scenario registry ---------------------------------------------------

_EXPECTED = {
    "ultra-as-theta", "grand-as-R", "small-as-L", "small-dual-limit",
    "grand-vs-ultra-interior", "grand-vs-ultra-theta0",
    "grand-vs-ultra-theta1", "small-grand-interior", "small-grand-theta0",
    "small-grand-theta1", "llogl-grand", "l1-grand", "small-ultra",
    "small-linfq", "small-linf", "ggamma-ultra", "a-type-ultra",
    "b-type-ultra", "b-as-limit-of-A", "ultra-between-AB"}


def test_registry_names():
    names = scenario_names()
    assert set(names) == _EXPECTED
    assert len(names) == 20


def test_get_scenario_unknown():
    with pytest.raises(KeyError):
        get_scenario("pentagon-grand")


def test_scenarios_have_corpora():
    for nm in scenario_names():
        sc = get_scenario(nm)
        assert sc.corpus, nm
        for spec in sc.corpus:
            corpus.parse_fn(spec)


def test_verify_identity_runs_clean():
    rep = verify_identity("ultra-as-theta", log2n=(9,))
    assert not rep.excluded
    assert rep.window(512) <= 1.5


def test_verify_identity_reports_exclusions():
    # a user corpus with an unbounded prototype is excluded with a reason,
    # not silently dropped
    rep = verify_identity("small-linf", log2n=(9,), corpus=("chi:0.1", "pow:2"))
    ids = {fid for fid, _ in rep.excluded}
    rows = {r.function_id for r in rep.rows}
    assert "chi:0.1" in rows
    assert ids | rows >= {"chi:0.1", "pow:2"}
