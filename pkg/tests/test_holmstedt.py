"""Split-point estimates for K over derived couples."""

import math

import numpy as np
import pytest

from interpolab.grid import L2, LINF, full_grid
from interpolab.sv import EllPow, ONE
from interpolab.spaces import (EndpointX0, EndpointX1, ThetaSpace, LSpace,
                               RSpace)
from interpolab.holmstedt import (HolmstedtCase, CASES, R_CASES, L_CASES,
                                  holmstedt_rhs, verify_holmstedt)
from interpolab.kfun import k_peetre
from interpolab import corpus
from interpolab.cli import DEFAULT_CASES


def test_case_registry():
    assert set(CASES) == set(R_CASES) | set(L_CASES)
    assert len(CASES) == 6
    assert set(DEFAULT_CASES) == set(CASES)


def test_members_shapes():
    c = DEFAULT_CASES["R_interior"]
    y0, y1 = c.members()
    assert isinstance(y0, ThetaSpace) and isinstance(y1, RSpace)
    c = DEFAULT_CASES["R_x0"]
    y0, y1 = c.members()
    assert isinstance(y0, EndpointX0)
    c = DEFAULT_CASES["L_x1"]
    y0, y1 = c.members()
    assert isinstance(y0, LSpace) and isinstance(y1, EndpointX1)


def test_rho_exponents():
    gamma, _ = DEFAULT_CASES["R_interior"].rho_params()
    assert gamma == pytest.approx(0.25)      # theta1 - theta0
    gamma, _ = DEFAULT_CASES["R_x0"].rho_params()
    assert gamma == pytest.approx(0.5)       # theta1
    gamma, _ = DEFAULT_CASES["L_theta1_one"].rho_params()
    assert gamma == pytest.approx(0.75)      # 1 - theta0


def test_case_validation():
    with pytest.raises(ValueError):
        HolmstedtCase("R_interior", theta0=0.5, theta1=0.25,
                      b0=ONE, E0=L2, b1=ONE, E1=LINF, a=ONE, F=L2)
    with pytest.raises(ValueError):
        HolmstedtCase("R_sideways", theta0=0.25, theta1=0.5,
                      b0=ONE, E0=L2, b1=ONE, E1=LINF, a=ONE, F=L2)


def test_rhs_tables_are_finite_inside():
    c = DEFAULT_CASES["R_interior"]
    g = full_grid(512)
    f = corpus.sample("chi:0.1", g)
    lrho, lrhs = holmstedt_rhs(c, k_peetre(f))
    sl = g.interior()
    assert np.all(np.isfinite(lrho[sl]))
    assert np.all(np.isfinite(lrhs[sl]))
    # rho = u^gamma x slowly varying: the power factor wins across the grid
    assert lrho[sl][-1] > lrho[sl][0] + 1.0


def test_verify_interior_case_window():
    rep = verify_holmstedt(DEFAULT_CASES["R_interior"],
                           corpus=("chi:0.1", "pow:2"), log2n=(9, 10))
    win = max(rep.window(n) for n in rep.sizes())
    assert win <= 100.0
    assert rep.stability() <= 0.10
    assert not rep.excluded


def test_verify_endpoint_case_excludes_outsiders():
    # f* = t^-1/2 type prototypes lie outside Y0 + Linf for L_x1
    rep = verify_holmstedt(DEFAULT_CASES["L_x1"],
                           corpus=("chi:0.1", "pow:2"), log2n=(9,))
    assert any(fid == "pow:2" for fid, _ in rep.excluded)
    win = max(rep.window(n) for n in rep.sizes())
    assert win <= 100.0


def test_report_determinism():
    kw = dict(corpus=("chi:0.1", "log:2"), log2n=(9,))
    r1 = verify_holmstedt(DEFAULT_CASES["L_interior"], **kw)
    r2 = verify_holmstedt(DEFAULT_CASES["L_interior"], **kw)
    assert [(a.function_id, a.n, a.u, a.lhs, a.rhs) for a in r1.rows] == \
           [(a.function_id, a.n, a.u, a.lhs, a.rhs) for a in r2.rows]
