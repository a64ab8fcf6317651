"""Checkable criteria for the thirteen convergence modes.

Each summability-style definition becomes a nonnegative term sequence handed
to the series engine; each classical limit mode becomes a null-sequence
test.  Universally quantified modes (over all eps, all test functions, all
continuity points, all t, almost all omega) are falsifiable but not
certifiable by finite probing, so the verdict vocabulary distinguishes
Holds, Fails (with a witness probe), NotFalsified and Inconclusive; Holds
for a universal mode requires the family's analytic certification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import space
from .errors import ParameterError
from .series import (DEFAULT_POLICY, EnginePolicy, TermSource, analyze_series,
                     null_sequence_test)
from .testfuncs import ClampedAffine, ClampedIdentity, Sine, TestFunction

SERIES_MODES = ("cc", "slp", "slinf", "sa_as", "s1d", "s1star", "s2d", "s3d")
LIMIT_MODES = ("as", "prob", "lp", "linf", "dist")
ALL_MODES = SERIES_MODES + LIMIT_MODES

# modes quantified over a probe axis that finite probing cannot exhaust
UNIVERSAL_MODES = frozenset(
    {"cc", "sa_as", "s1d", "s1star", "s2d", "s3d", "as", "prob", "dist"}
)

VERDICT_HOLDS = "holds"
VERDICT_FAILS = "fails"
VERDICT_NOT_FALSIFIED = "not_falsified"
VERDICT_INCONCLUSIVE = "inconclusive"


def van_der_corput(i):
    """The i-th base-2 van der Corput point, in (0,1) for i >= 1."""
    x = 0.0
    denom = 2.0
    n = i
    while n:
        x += (n & 1) / denom
        n >>= 1
        denom *= 2.0
    return x


def default_omega_points(count=17):
    return tuple(van_der_corput(i) for i in range(1, count + 1))


@dataclass(frozen=True)
class ModeParams:
    epsilons: tuple = (0.5, 0.1, 0.01)
    p: float = 1.0
    alpha: float = 1.0
    x_points: tuple = ()
    t_points: tuple = (0.5, 1.0, 2.0, 5.0)
    test_functions: tuple = ()
    omega_points: tuple = field(default_factory=default_omega_points)

    def __post_init__(self):
        if any(e <= 0 for e in self.epsilons) or self.p <= 0 or self.alpha <= 0:
            raise ParameterError("epsilons, p and alpha must be positive")
        for w in self.omega_points:
            space.require_omega(w)

    @classmethod
    def defaults(cls, family, **overrides):
        """Probe sets sized to the family: x grid over the limit support
        avoiding its jump points, standard eps/t grids, the bounded-Lipschitz
        dictionary, deterministic low-discrepancy omega points."""
        lo, hi = family.meta.support
        jumps = family.limit_cdf.jump_points
        if family.meta.x_probes is not None:
            cands = list(family.meta.x_probes)
        elif hi - lo < 1e-9:
            cands = [lo + (k - 4.5) * 0.1 for k in range(10)]
        else:
            cands = [lo + (hi - lo) * k / 10.0 for k in range(1, 10)]
        xs = tuple(x for x in cands if all(abs(x - j) > 1e-9 for j in jumps))[:9]
        bound = family.meta.bound
        fs = (
            Sine(),
            ClampedIdentity(M=max(1.0, bound), eps=1.0),
            ClampedAffine(),
        )
        kwargs = dict(x_points=xs, test_functions=fs)
        kwargs.update(overrides)
        return cls(**kwargs)


@dataclass
class FamilyMeta:
    """Analytic metadata a family ships alongside its members.

    term_source(mode, probe, params) may return a vectorized TermSource
    (closed-form terms plus hint) for fast certified runs; certifies(mode,
    params) says whether an all-probes-converge outcome may be upgraded to
    Holds for a universally quantified mode.
    """

    kind: str = ""
    support: tuple = (0.0, 1.0)
    bound: float = 1.0
    term_source: Callable = lambda mode, probe, params: None
    certifies: Callable = lambda mode, params: False
    shift_sequence: Optional[Callable] = None  # n -> ||X_n - X||_inf, if shift-type
    base_cdf_vec: Optional[Callable] = None  # vectorized limit CDF, if closed-form
    x_probes: Optional[tuple] = None  # preferred CDF probe points


class Family:
    """An indexed family n -> X_n with its limit X and analytic metadata."""

    def __init__(self, name, params, limit, member_fn, meta):
        self.name = name
        self.params = dict(params)
        self.limit = limit
        self._member_fn = member_fn
        self.meta = meta
        self._members = {}
        self._diffs = {}
        self._member_cdfs = {}
        self._limit_cdf = None
        self._limit_expect = {}
        self._limit_char = {}

    def member(self, n):
        if n < 1:
            raise ParameterError("index n must be >= 1")
        if n not in self._members:
            self._members[n] = self._member_fn(n)
        return self._members[n]

    def diff(self, n):
        if n not in self._diffs:
            self._diffs[n] = space.diff_abs(self.member(n), self.limit)
        return self._diffs[n]

    def member_cdf(self, n):
        if n not in self._member_cdfs:
            self._member_cdfs[n] = space.cdf(self.member(n))
        return self._member_cdfs[n]

    @property
    def limit_cdf(self):
        if self._limit_cdf is None:
            self._limit_cdf = space.cdf(self.limit)
        return self._limit_cdf

    def limit_expectation(self, f):
        if f.name not in self._limit_expect:
            self._limit_expect[f.name] = space.expectation(self.limit, f, tol=1e-11)[0]
        return self._limit_expect[f.name]

    def limit_char(self, t):
        if t not in self._limit_char:
            self._limit_char[t] = space.char_fn(self.limit, t, tol=1e-11)
        return self._limit_char[t]

    def describe(self):
        return {"name": self.name, "kind": self.meta.kind, "params": dict(self.params)}


# ---------------------------------------------------------------------------
# Term generators (the generic, representation-exact route)


def term_cc(family, n, eps):
    """P(|X_n - X| >= eps)."""
    if eps <= 0:
        raise ParameterError("eps must be positive")
    c = space.cdf(family.diff(n))
    return max(0.0, 1.0 - c.prob_below(eps))


def term_slp(family, n, p):
    """E[|X_n - X|**p]."""
    if p <= 0:
        raise ParameterError("p must be positive")
    return space.expectation(family.diff(n), lambda v: v**p, tol=1e-10)[0]


def term_slinf(family, n):
    """||X_n - X||_inf (essential supremum)."""
    return space.sup_norm(family.diff(n))


def term_s1d(family, n, f):
    """|E[f(X_n)] - E[f(X)]|."""
    en = space.expectation(family.member(n), f, tol=1e-11)[0]
    return abs(en - family.limit_expectation(f))


def term_s1star(family, n, f):
    """E[|f(X_n) - f(X)|], over the joint coupling on the sample space."""
    val, _ = space.expectation_joint(
        family.member(n), family.limit, lambda a, b: abs(f(a) - f(b)), tol=1e-9
    )
    return val


def term_s2d(family, n, x):
    """|F_n(x) - F(x)| at a continuity point x of the limit CDF."""
    lim = family.limit_cdf
    if not lim.is_continuity_point(x):
        jump = min(lim.jump_points, key=lambda j: abs(j - x))
        raise ParameterError(
            f"x={x} is a jump point of the limit CDF (atom at {jump})"
        )
    return abs(family.member_cdf(n)(x) - lim(x))


def term_s3d(family, n, t):
    """|E[exp(itX_n)] - E[exp(itX)]|."""
    return abs(space.char_fn(family.member(n), t, tol=1e-11) - family.limit_char(t))


def term_sa_as(family, n, alpha, omega):
    """|X_n(omega) - X(omega)|**alpha."""
    if alpha <= 0:
        raise ParameterError("alpha must be positive")
    w = space.require_omega(omega)
    return abs(family.member(n)(w) - family.limit(w)) ** alpha


def term_trunc_l1(family, n, eps):
    """E[|X_n - X| * 1{|X_n - X| < eps}] via closed-form piece integration."""
    return space.truncated_abs_moment(family.diff(n), eps)


def limit_terms(family, mode, probe, n, params=None):
    """The n-th term of the vanishing sequence behind a classical limit mode;
    classification asks whether it tends to zero instead of being summable."""
    axis, value = probe
    if mode == "prob":
        return term_cc(family, n, value)
    if mode == "lp":
        return term_slp(family, n, value)
    if mode == "linf":
        return term_slinf(family, n)
    if mode == "as":
        w = space.require_omega(value)
        return abs(family.member(n)(w) - family.limit(w))
    if mode == "dist":
        if axis == "x":
            return term_s2d(family, n, value)
        return term_s1d(family, n, value)
    raise ParameterError(f"unknown limit mode {mode!r}")


def generic_term(family, mode, probe, n, params):
    axis, value = probe
    if mode == "cc":
        return term_cc(family, n, value)
    if mode == "slp":
        return term_slp(family, n, value)
    if mode == "slinf":
        return term_slinf(family, n)
    if mode == "s1d":
        return term_s1d(family, n, value)
    if mode == "s1star":
        return term_s1star(family, n, value)
    if mode == "s2d":
        return term_s2d(family, n, value)
    if mode == "s3d":
        return term_s3d(family, n, value)
    if mode == "sa_as":
        return term_sa_as(family, n, params.alpha, value)
    if mode in LIMIT_MODES:
        return limit_terms(family, mode, probe, n, params)
    raise ParameterError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Orchestration


def probes_for(mode, params):
    if mode in ("cc", "prob"):
        return [("eps", e) for e in params.epsilons]
    if mode in ("slp", "lp"):
        return [("p", params.p)]
    if mode in ("slinf", "linf"):
        return [("all", None)]
    if mode in ("s1d", "s1star"):
        return [("f", f) for f in params.test_functions]
    if mode == "s2d":
        return [("x", x) for x in params.x_points]
    if mode == "s3d":
        return [("t", t) for t in params.t_points]
    if mode in ("sa_as", "as"):
        return [("omega", w) for w in params.omega_points]
    if mode == "dist":
        return [("x", x) for x in params.x_points] + [
            ("f", f) for f in params.test_functions
        ]
    raise ParameterError(f"unknown mode {mode!r}; valid modes: {', '.join(ALL_MODES)}")


def probe_key(probe):
    axis, value = probe
    if axis == "all":
        return "all"
    if axis == "f":
        return f"f={value.name}"
    return f"{axis}={value!r}"


@dataclass
class ModeReport:
    family: str
    mode: str
    verdict: str
    witness: Optional[str] = None
    probe_results: dict = field(default_factory=dict)
    params_used: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.verdict == VERDICT_HOLDS

    @property
    def fails(self):
        return self.verdict == VERDICT_FAILS

    def to_dict(self):
        return {
            "family": self.family,
            "mode": self.mode,
            "verdict": self.verdict,
            "witness": self.witness,
            "params": self.params_used,
            "probes": {k: v.to_dict() for k, v in self.probe_results.items()},
        }


def _params_summary(mode, params):
    out = {}
    if mode in ("cc", "prob"):
        out["epsilons"] = list(params.epsilons)
    if mode in ("slp", "lp"):
        out["p"] = params.p
    if mode == "sa_as":
        out["alpha"] = params.alpha
    if mode == "s2d" or mode == "dist":
        out["x_points"] = list(params.x_points)
    if mode == "s3d":
        out["t_points"] = list(params.t_points)
    if mode in ("s1d", "s1star", "dist"):
        out["test_functions"] = [f.name for f in params.test_functions]
    if mode in ("sa_as", "as"):
        out["omega_points"] = list(params.omega_points)
    return out


def check_mode(
    family,
    mode,
    params: ModeParams = None,
    policy: EnginePolicy = DEFAULT_POLICY,
    use_analytic=True,
    fallback_dense_cap=2048,
) -> ModeReport:
    """Classify one convergence mode for a family.

    Summability modes classify the per-probe term series; limit modes run the
    null-sequence test.  Any diverging probe falsifies the mode.  An
    all-convergent outcome yields Holds only when the mode carries no hidden
    quantifier or the family's analytic metadata certifies it; otherwise
    NotFalsified, keeping quantifier handling honest.
    """
    if mode not in ALL_MODES:
        raise ParameterError(
            f"unknown mode {mode!r}; valid modes: {', '.join(ALL_MODES)}"
        )
    if params is None:
        params = ModeParams.defaults(family)
    probes = probes_for(mode, params)
    if not probes:
        raise ParameterError(f"empty probe set for mode {mode!r}")
    results = {}
    bad = None
    inconclusive = False
    for probe in probes:
        src = None
        if use_analytic:
            src = family.meta.term_source(mode, probe, params)
        if src is None:
            src = TermSource.from_scalar(
                lambda n, probe=probe: generic_term(family, mode, probe, n, params),
                dense_cap=fallback_dense_cap,
            )
        if mode in SERIES_MODES:
            verdict = analyze_series(src, policy)
            ok = verdict.converges
            failed = verdict.diverges
        else:
            verdict = null_sequence_test(src, policy)
            ok = verdict.tends_to_zero
            failed = verdict.klass == "stays_above"
        results[probe_key(probe)] = verdict
        if failed and bad is None:
            bad = probe
        elif not ok and not failed:
            inconclusive = True
    if bad is not None:
        verdict_tag, witness = VERDICT_FAILS, probe_key(bad)
    elif inconclusive:
        verdict_tag, witness = VERDICT_INCONCLUSIVE, None
    elif mode in UNIVERSAL_MODES and not family.meta.certifies(mode, params):
        verdict_tag, witness = VERDICT_NOT_FALSIFIED, None
    else:
        verdict_tag, witness = VERDICT_HOLDS, None
    return ModeReport(
        family=family.name,
        mode=mode,
        verdict=verdict_tag,
        witness=witness,
        probe_results=results,
        params_used=_params_summary(mode, params),
    )
