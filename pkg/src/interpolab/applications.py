"""Concrete function spaces over (0, 1) and the identity scenarios.

The spaces: grand and small Lebesgue, ultrasymmetric L_{p,b,E},
Lorentz-Zygmund L_{inf,q,beta}, generalized Gamma with double weight,
and the A / B-type spaces built on f**.  Each has a direct norm recipe
(norm_app) computed straight from f*, and each coincides with an
interpolation-space descriptor over the couple (L1, Linf) on (0, 1).

verify_identity checks those coincidences and the interpolation
formulas between the concrete spaces numerically: for every corpus
prototype it evaluates the two norm recipes and reports the spread of
their ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .grid import (Grid, GridFunction, RiSpace, unit_grid,
                   lebesgue_prefix, lebesgue_suffix,
                   log_norm_upper, log_norm_lower)
from .sv import (SvExpr, Const, EllPow, ComposeWithRho, NormTail, Power,
                 Product, ONE, sv_log_on_grid, sv_to_obj, sv_from_obj,
                 SvDivergenceError)
from .spaces import (SpaceDescriptor, ThetaSpace, LSpace, RSpace, LLSpace,
                     RRSpace, Intersection, EndpointX0, EndpointX1,
                     AppMember, UNIT)
from .kfun import KProfile, k_peetre, norm_in_space, TruncationOracle, _final
from .report import EquivalenceReport
from . import corpus as corpus_mod

L1 = RiSpace(1.0)
LINF = RiSpace(math.inf)


def _pp(p: float) -> float:
    """Conjugate exponent."""
    return p / (p - 1.0)


def _ri_obj(E):
    return {"q": "inf" if math.isinf(E.q) else E.q}


def _ri_from(o):
    return RiSpace(math.inf if o["q"] == "inf" else float(o["q"]))


class AppSpace:
    def validate(self) -> None:
        pass


@dataclass(frozen=True)
class GrandLp(AppSpace):
    """|| l^(-alpha/p)(t) || f* ||_{L_p(t,1)} ||_{L_inf(0,1)}."""
    p: float
    alpha: float

    def validate(self):
        if not self.p > 1:
            raise ValueError("grand space needs p > 1")
        if not self.alpha > 0:
            raise ValueError("grand space needs alpha > 0")

    def to_obj(self):
        return {"kind": "grand", "p": self.p, "alpha": self.alpha}


@dataclass(frozen=True)
class SmallLp(AppSpace):
    """|| l^(alpha/p'-1)(t) || f* ||_{L_p(0,t)} ||_{L~1(0,1)}."""
    p: float
    alpha: float

    def validate(self):
        if not self.p > 1:
            raise ValueError("small space needs p > 1")
        if not self.alpha > 0:
            raise ValueError("small space needs alpha > 0")

    def to_obj(self):
        return {"kind": "small", "p": self.p, "alpha": self.alpha}


@dataclass(frozen=True)
class UltraLp(AppSpace):
    """|| t^(1/p) b(t) f*(t) ||_{E~(0,1)}."""
    p: float
    b: SvExpr
    E: RiSpace

    def validate(self):
        if not self.p >= 1:
            raise ValueError("ultrasymmetric space needs p >= 1")

    def to_obj(self):
        return {"kind": "ultra", "p": self.p, "b": sv_to_obj(self.b),
                "E": _ri_obj(self.E)}


@dataclass(frozen=True)
class LinfQBeta(AppSpace):
    """|| l^beta(t) f*(t) ||_{L~q(0,1)} (beta + 1/q < 0, or q=inf, beta<=0)."""
    q: float
    beta: float

    def validate(self):
        if math.isinf(self.q):
            if self.beta > 0:
                raise ValueError("needs beta <= 0 when q = inf")
        elif not self.beta + 1.0 / self.q < 0:
            raise ValueError("needs beta + 1/q < 0")

    def to_obj(self):
        return {"kind": "linfq", "q": "inf" if math.isinf(self.q) else self.q,
                "beta": self.beta}


@dataclass(frozen=True)
class GGamma(AppSpace):
    """Generalized Gamma with double weight.

    Weights are w_i(u) = u^pow_i * sv_i(u); the identification with an
    L-space descriptor needs u*w1(u) and w2 slowly varying, i.e.
    w1pow = -1 and w2pow = 0.
    """
    p: float
    q: float
    w1pow: float
    w1sv: SvExpr
    w2pow: float
    w2sv: SvExpr

    def validate(self):
        if not (self.p >= 1 and 1 <= self.q and not math.isinf(self.q)):
            raise ValueError("GGamma needs 1 <= p, q < inf")

    def to_obj(self):
        return {"kind": "ggamma", "p": self.p, "q": self.q,
                "w1pow": self.w1pow, "w1sv": sv_to_obj(self.w1sv),
                "w2pow": self.w2pow, "w2sv": sv_to_obj(self.w2sv)}


@dataclass(frozen=True)
class AType(AppSpace):
    """|| l^(alpha-1)(t) int_t^1 s^(1/p) f**(s) ds/s ||_{E~(0,1)}."""
    p: float
    alpha: float
    E: RiSpace

    def validate(self):
        if not self.alpha < 1:
            raise ValueError("A-type space needs alpha < 1")
        # l^(alpha-1) must lie in E~ near 0
        q = self.E.q
        if math.isinf(q):
            ok = self.alpha - 1 <= 0
        else:
            ok = (self.alpha - 1) * q < -1
        if not ok:
            raise ValueError("l^(alpha-1) not in E~(0,1)")

    def to_obj(self):
        return {"kind": "atype", "p": self.p, "alpha": self.alpha,
                "E": _ri_obj(self.E)}


@dataclass(frozen=True)
class BType(AppSpace):
    """|| sup_{0<s<t} s^(1/p) l^(alpha-1)(s) f**(s) ||_{E~(0,1)}."""
    p: float
    alpha: float
    E: RiSpace

    def to_obj(self):
        return {"kind": "btype", "p": self.p, "alpha": self.alpha,
                "E": _ri_obj(self.E)}


def app_from_obj(o: dict) -> AppSpace:
    kind = o["kind"]
    if kind == "grand":
        return GrandLp(float(o["p"]), float(o["alpha"]))
    if kind == "small":
        return SmallLp(float(o["p"]), float(o["alpha"]))
    if kind == "ultra":
        return UltraLp(float(o["p"]), sv_from_obj(o["b"]), _ri_from(o["E"]))
    if kind == "linfq":
        q = o["q"]
        return LinfQBeta(math.inf if q == "inf" else float(q), float(o["beta"]))
    if kind == "ggamma":
        return GGamma(float(o["p"]), float(o["q"]), float(o["w1pow"]),
                      sv_from_obj(o["w1sv"]), float(o["w2pow"]),
                      sv_from_obj(o["w2sv"]))
    if kind == "atype":
        return AType(float(o["p"]), float(o["alpha"]), _ri_from(o["E"]))
    if kind == "btype":
        return BType(float(o["p"]), float(o["alpha"]), _ri_from(o["E"]))
    raise ValueError(f"unknown concrete space kind {kind!r}")


# ---------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------

def _fss_log(f: GridFunction) -> np.ndarray:
    """log f**(t) = log( K(t)/t )."""
    pref = lebesgue_prefix(f.values, f.grid)
    with np.errstate(divide="ignore"):
        return np.log(pref) - f.grid.x


def norm_app(space: AppSpace, fstar: GridFunction) -> float:
    """Direct norm recipe on f*, math.inf if outside the space."""
    grid = fstar.grid
    if grid.truncated_high:
        raise ValueError("concrete spaces live on (0,1): use a unit grid")
    x = grid.x
    f = fstar.values
    lf = fstar.log_values()

    if isinstance(space, GrandLp):
        suf = lebesgue_suffix(f ** space.p, grid)
        with np.errstate(divide="ignore"):
            lw = (-space.alpha / space.p) * np.log1p(np.abs(x)) \
                + np.log(suf) / space.p
        return _final(float(np.max(lw)))

    if isinstance(space, SmallLp):
        pref = lebesgue_prefix(f ** space.p, grid)
        if not np.all(np.isfinite(pref)):
            return math.inf
        with np.errstate(divide="ignore"):
            inner = np.log(pref) / space.p
        lw = (space.alpha / _pp(space.p) - 1.0) * np.log1p(np.abs(x)) + inner
        from .kfun import _full_norm
        return _full_norm(lw, 1.0, grid)

    if isinstance(space, UltraLp):
        from .kfun import _full_norm
        try:
            lw = x / space.p + sv_log_on_grid(space.b, grid) + lf
            return _full_norm(lw, space.E.q, grid)
        except SvDivergenceError:
            return math.inf

    if isinstance(space, LinfQBeta):
        lw = space.beta * np.log1p(np.abs(x)) + lf
        from .kfun import _full_norm
        return _full_norm(lw, space.q, grid)

    if isinstance(space, GGamma):
        t = grid.t
        w2 = np.exp(space.w2pow * x + sv_log_on_grid(space.w2sv, grid))
        inner = lebesgue_prefix(w2 * f ** space.p, grid)
        if not np.all(np.isfinite(inner)):
            return math.inf
        w1 = np.exp(space.w1pow * x + sv_log_on_grid(space.w1sv, grid))
        total = lebesgue_prefix(w1 * inner ** (space.q / space.p), grid)[-1]
        return total ** (1.0 / space.q) if np.isfinite(total) else math.inf

    if isinstance(space, AType):
        from .kfun import _full_norm, _div_low
        lss = _fss_log(fstar)
        li = x / space.p + lss
        if _div_low(li, 1.0, grid):
            return math.inf
        inner = log_norm_upper(li, 1.0, grid.dx)
        lw = (space.alpha - 1.0) * np.log1p(np.abs(x)) + inner
        return _full_norm(lw, space.E.q, grid)

    if isinstance(space, BType):
        lss = _fss_log(fstar)
        g = x / space.p + (space.alpha - 1.0) * np.log1p(np.abs(x)) + lss
        sup = np.maximum.accumulate(g)
        from .kfun import _full_norm
        return _full_norm(sup, space.E.q, grid)

    raise TypeError(f"unknown concrete space {type(space).__name__}")


# ---------------------------------------------------------------------
# descriptor characterizations
# ---------------------------------------------------------------------

def grand_descriptor(p: float, alpha: float) -> SpaceDescriptor:
    return RSpace(1.0 - 1.0 / p, EllPow(-alpha / p), LINF, ONE,
                  RiSpace(p), UNIT)


def small_descriptor(p: float, alpha: float) -> SpaceDescriptor:
    return LSpace(1.0 - 1.0 / p, EllPow(alpha / _pp(p) - 1.0), L1, ONE,
                  RiSpace(p), UNIT)


def ultra_descriptor(p: float, b: SvExpr, E: RiSpace) -> SpaceDescriptor:
    return ThetaSpace(1.0 - 1.0 / p, b, E, UNIT)


def ggamma_descriptor(g: GGamma) -> SpaceDescriptor:
    if g.w1pow != -1.0 or g.w2pow != 0.0:
        raise ValueError("descriptor form needs u*w1 and w2 slowly varying")
    return LSpace(1.0 - 1.0 / g.p, Power(g.w1sv, 1.0 / g.q), RiSpace(g.q),
                  Power(g.w2sv, 1.0 / g.p), RiSpace(g.p), UNIT)


def atype_descriptor(a: AType) -> SpaceDescriptor:
    return RSpace(1.0 - 1.0 / a.p, EllPow(a.alpha - 1.0), a.E, ONE, L1, UNIT)


def btype_descriptor(b: BType) -> SpaceDescriptor:
    return LSpace(1.0 - 1.0 / b.p, ONE, b.E, EllPow(b.alpha - 1.0), LINF, UNIT)


# ---------------------------------------------------------------------
# identity scenarios
# ---------------------------------------------------------------------

@dataclass
class Scenario:
    """One numerical identity check.

    Either a direct comparison of two norm recipes (members is None), or
    an interpolation identity: lhs is the outer norm applied to the
    oracle K-functional of the member couple, rhs a norm recipe on f.
    """
    name: str
    corpus: tuple
    lhs: SpaceDescriptor
    rhs: SpaceDescriptor
    members: tuple | None = None
    outer: SpaceDescriptor | None = None


def _brho(b: SvExpr, gamma: float, rho_sv: SvExpr) -> SvExpr:
    if isinstance(b, Const):
        return b
    return ComposeWithRho(b, gamma, rho_sv)


def _scenarios() -> dict:
    reg = {}

    def put(s):
        reg[s.name] = s

    smooth = ("chi:1", "chi:0.01", "pow:4", "powlog:4,1", "log:1")

    # -- direct characterizations --------------------------------------
    put(Scenario("ultra-as-theta",
                 ("chi:0.01", "chi:0.1", "pow:4", "powlog:4,1", "log:1"),
                 lhs=AppMember(UltraLp(2.0, ONE, RiSpace(2.0))),
                 rhs=ultra_descriptor(2.0, ONE, RiSpace(2.0))))
    put(Scenario("grand-as-R", ("chi:1", "chi:0.01", "pow:4",
                                "powlog:2,-1", "log:1"),
                 lhs=AppMember(GrandLp(2.0, 1.0)),
                 rhs=grand_descriptor(2.0, 1.0)))
    put(Scenario("small-as-L", smooth,
                 lhs=AppMember(SmallLp(2.0, 1.0)),
                 rhs=small_descriptor(2.0, 1.0)))

    # -- (L_p0, grand) family ------------------------------------------
    p0, p1, alpha, beta = 2.0, 4.0, 1.0, 1.0
    lp0 = ultra_descriptor(p0, ONE, RiSpace(p0))      # L_{p0}
    grand = AppMember(GrandLp(p1, beta))
    gamma_g = 1.0 / p0 - 1.0 / p1
    rho_g = EllPow(beta / p1)                          # b0 = 1
    put(Scenario("small-dual-limit", smooth,
                 lhs=None, rhs=AppMember(SmallLp(p0, alpha)),
                 members=(lp0, grand),
                 outer=ThetaSpace(0.0, EllPow(alpha / _pp(p0) - 1.0),
                                  L1, UNIT)))
    # interior: (L_{p0,b0,E0}, grand)_{1/2,1,L2} = ultra(8/3, l^{-1/8}, L2)
    th = 0.5
    p_mid = 1.0 / ((1 - th) / p0 + th / p1)
    put(Scenario("grand-vs-ultra-interior", smooth,
                 lhs=None,
                 rhs=AppMember(UltraLp(p_mid,
                                       EllPow(-beta * th / p1), RiSpace(2.0))),
                 members=(ThetaSpace(1.0 - 1.0 / p0, ONE, RiSpace(2.0), UNIT),
                          grand),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    b_t0 = EllPow(-0.5)
    put(Scenario("grand-vs-ultra-theta0", smooth,
                 lhs=None,
                 rhs=LSpace(1.0 - 1.0 / p0, _brho(b_t0, gamma_g, rho_g),
                            RiSpace(2.0), ONE, RiSpace(p0), UNIT),
                 members=(ultra_descriptor(p0, ONE, RiSpace(p0)), grand),
                 outer=ThetaSpace(0.0, b_t0, RiSpace(2.0), UNIT)))
    b_t1 = EllPow(-1.0)
    brho_t1 = _brho(b_t1, gamma_g, rho_g)
    put(Scenario("grand-vs-ultra-theta1", smooth,
                 lhs=None,
                 rhs=Intersection((
                     RSpace(1.0 - 1.0 / p1,
                            Product(EllPow(-beta / p1), brho_t1), LINF,
                            ONE, RiSpace(p1), UNIT),
                     RRSpace(1.0 - 1.0 / p1, brho_t1, LINF,
                             EllPow(-beta / p1), LINF, ONE, RiSpace(p1),
                             UNIT))),
                 members=(ultra_descriptor(p0, ONE, RiSpace(p0)), grand),
                 outer=ThetaSpace(1.0, b_t1, LINF, UNIT)))

    # -- (small, grand) family ------------------------------------------
    small = AppMember(SmallLp(p0, alpha))
    r = 2.0
    A = alpha * (1 - th) / _pp(p0) - beta * th / p1
    put(Scenario("small-grand-interior", ("chi:1", "chi:0.01", "pow:4",
                                          "log:1"),
                 lhs=None,
                 rhs=AppMember(UltraLp(p_mid, EllPow(A), RiSpace(r))),
                 members=(small, grand),
                 outer=ThetaSpace(th, ONE, RiSpace(r), UNIT)))
    # theta = 0: intersection; the second member is an L-space over the
    # derived couple (L_{p0}, grand), evaluated through its own oracle.
    put(Scenario("small-grand-theta0", ("chi:1", "chi:0.01", "pow:4",
                                        "log:1"),
                 lhs=None,
                 rhs=Intersection((
                     LSpace(1.0 - 1.0 / p0, EllPow(alpha / _pp(p0)),
                            RiSpace(r), ONE, RiSpace(p0), UNIT),
                     _DerivedLSpace((lp0, grand),
                                    LSpace(0.0, ONE, RiSpace(r),
                                           EllPow(alpha / _pp(p0) - 1.0),
                                           L1, UNIT)))),
                 members=(small, grand),
                 outer=ThetaSpace(0.0, ONE, RiSpace(r), UNIT)))
    rho_sg = EllPow(alpha / _pp(p0) + beta / p1)
    brho_sg = _brho(b_t1, gamma_g, rho_sg)
    put(Scenario("small-grand-theta1", ("chi:1", "chi:0.01", "pow:4",
                                        "log:1"),
                 lhs=None,
                 rhs=Intersection((
                     RSpace(1.0 - 1.0 / p1,
                            Product(EllPow(-beta / p1), brho_sg), LINF,
                            ONE, RiSpace(p1), UNIT),
                     RRSpace(1.0 - 1.0 / p1, brho_sg, LINF,
                             EllPow(-beta / p1), LINF, ONE, RiSpace(p1),
                             UNIT))),
                 members=(small, grand),
                 outer=ThetaSpace(1.0, b_t1, LINF, UNIT)))

    # -- (LlogL, grand) and (L1, grand) ---------------------------------
    llogl = ThetaSpace(0.0, ONE, L1, UNIT)
    pa = 1.0 / (1 - th + th / p1)
    put(Scenario("llogl-grand", smooth,
                 lhs=None,
                 rhs=AppMember(UltraLp(pa, EllPow(1 - th - beta * th / p1),
                                       RiSpace(2.0))),
                 members=(llogl, grand),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    put(Scenario("l1-grand", smooth,
                 lhs=None,
                 rhs=AppMember(UltraLp(pa, EllPow(-beta * th / p1),
                                       RiSpace(2.0))),
                 members=(EndpointX0(UNIT), grand),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))

    # -- (small, *) family ----------------------------------------------
    put(Scenario("small-ultra", ("chi:1", "chi:0.1", "chi:0.01", "log:1"),
                 lhs=None,
                 rhs=AppMember(UltraLp(p_mid, EllPow(alpha * (1 - th) / _pp(p0)),
                                       RiSpace(2.0))),
                 members=(small, ultra_descriptor(p1, ONE, RiSpace(p1))),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    q1, beta_lz = 2.0, -1.0
    p_lz = p0 / (1 - th)
    # bounded prototypes only: the cut family resolves them exactly,
    # while unbounded ones leave a residual floor below the grid scale
    chis = ("chi:1", "chi:0.1", "chi:0.01", "chi:0.001")
    put(Scenario("small-linfq", chis,
                 lhs=None,
                 rhs=AppMember(UltraLp(
                     p_lz,
                     EllPow((1 - th) * alpha / _pp(p0)
                            + th * (beta_lz + 1.0 / q1)),
                     RiSpace(2.0))),
                 members=(small, AppMember(LinfQBeta(q1, beta_lz))),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    put(Scenario("small-linf", chis,
                 lhs=None,
                 rhs=AppMember(UltraLp(p_lz, EllPow(alpha * (1 - th) / _pp(p0)),
                                       RiSpace(2.0))),
                 members=(small, EndpointX1(UNIT)),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))

    # -- generalized Gamma ------------------------------------------------
    gg = GGamma(2.0, 2.0, -1.0, EllPow(-3.0), 0.0, ONE)
    tailw1 = NormTail(Power(EllPow(-3.0), 0.5), RiSpace(2.0), "upper")
    put(Scenario("ggamma-ultra", ("chi:1", "chi:0.1", "chi:0.01", "log:1"),
                 lhs=None,
                 rhs=AppMember(UltraLp(
                     p_mid, Power(tailw1, 1 - th), RiSpace(2.0))),
                 members=(AppMember(gg),
                          ultra_descriptor(p1, ONE, RiSpace(p1))),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))

    # -- A and B-type ------------------------------------------------------
    at = AType(4.0, 0.0, RiSpace(2.0))
    bt = BType(2.0, 0.0, RiSpace(2.0))
    tail_a = NormTail(EllPow(-1.0), RiSpace(2.0), "lower")
    put(Scenario("a-type-ultra", chis,
                 lhs=None,
                 rhs=AppMember(UltraLp(p_mid, Power(tail_a, th),
                                       RiSpace(2.0))),
                 members=(ultra_descriptor(2.0, ONE, RiSpace(2.0)),
                          AppMember(at)),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    # B_theta = (l^(alpha-1) * phi_E0(l))^{1-theta} b1^theta: with
    # alpha = 0, E0 = L2 this is l^{-1} * l^{1/2} = l^{-1/2}, power 1-theta
    put(Scenario("b-type-ultra", ("chi:1", "chi:0.1", "chi:0.01", "log:1"),
                 lhs=None,
                 rhs=AppMember(UltraLp(p_mid, EllPow(-0.5 * (1 - th)),
                                       RiSpace(2.0))),
                 members=(AppMember(bt),
                          ultra_descriptor(p1, ONE, RiSpace(p1))),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    put(Scenario("b-as-limit-of-A", ("chi:1", "chi:0.1", "chi:0.01", "log:1"),
                 lhs=None,
                 rhs=AppMember(bt),
                 members=(ultra_descriptor(2.0, EllPow(-1.0), LINF),
                          AppMember(at)),
                 outer=ThetaSpace(0.0, ONE, RiSpace(2.0), UNIT)))
    put(Scenario("ultra-between-AB", chis,
                 lhs=None,
                 rhs=AppMember(UltraLp(
                     p_mid, Product(EllPow(-0.5 * (1 - th)),
                                    Power(tail_a, th)), RiSpace(2.0))),
                 members=(AppMember(bt), AppMember(at)),
                 outer=ThetaSpace(th, ONE, RiSpace(2.0), UNIT)))
    return reg


@dataclass(frozen=True)
class _DerivedLSpace:
    """An L-space over a derived couple, not over (L1, Linf).

    The K-functional of the member couple comes from its own oracle and
    the descriptor is then applied to that profile.
    """
    couple: tuple
    desc: SpaceDescriptor
    setting: str = UNIT


SCENARIOS = None


def scenario_names() -> tuple:
    global SCENARIOS
    if SCENARIOS is None:
        SCENARIOS = _scenarios()
    return tuple(SCENARIOS.keys())


def get_scenario(name: str) -> Scenario:
    global SCENARIOS
    if SCENARIOS is None:
        SCENARIOS = _scenarios()
    if name not in SCENARIOS:
        raise KeyError(f"unknown identity scenario {name!r}")
    return SCENARIOS[name]


def _norm_of(desc, fstar: GridFunction, K: KProfile,
             max_cuts: int | None) -> float:
    if isinstance(desc, _DerivedLSpace):
        try:
            orc = TruncationOracle(fstar, *desc.couple, max_cuts=max_cuts)
        except ValueError:
            return math.inf
        return norm_in_space(orc.profile(), desc.desc)
    if isinstance(desc, Intersection) and any(
            isinstance(m, _DerivedLSpace) for m in desc.members):
        return max(_norm_of(m, fstar, K, max_cuts) for m in desc.members)
    return norm_in_space(K, desc)


def verify_identity(name: str, log2n=(9, 10), corpus=None,
                    max_cuts: int | None = 192) -> EquivalenceReport:
    """Compare the two sides of one identity over the corpus.

    One row per (prototype, grid size); the report window is the spread
    of lhs/rhs ratios, i.e. the numerical equivalence constant squared.
    """
    sc = get_scenario(name)
    rep = EquivalenceReport(name)
    specs = tuple(corpus) if corpus else sc.corpus
    for k in log2n:
        n = 1 << k
        grid = unit_grid(n)
        for spec in specs:
            fstar = corpus_mod.sample(spec, grid)
            K = k_peetre(fstar)
            rhs = _norm_of(sc.rhs, fstar, K, max_cuts)
            if not (math.isfinite(rhs) and rhs > 0):
                rep.exclude(spec, f"rhs norm not finite/positive at n={n}")
                continue
            if sc.members is None:
                lhs = norm_in_space(K, sc.lhs)
            else:
                try:
                    orc = TruncationOracle(fstar, *sc.members,
                                           max_cuts=max_cuts)
                except ValueError as e:
                    rep.exclude(spec, str(e))
                    continue
                lhs = norm_in_space(orc.profile(), sc.outer)
            if not math.isfinite(lhs):
                rep.exclude(spec, f"lhs norm not finite at n={n}")
                continue
            rep.add(spec, n, None, lhs, rhs)
    return rep
