"""Discord of an X-state via a one-variable reduction.

Minimizing the measured conditional entropy over all von Neumann
measurements on qubit b reduces, for X-states, to maximizing a single
function F(z) on z in [0, 1], where z is the polar component of the
measurement axis.  This module evaluates F and its first two derivatives
in closed form, classifies the parameter regions where the maximum sits
at an endpoint, and otherwise locates it with a safeguarded Newton
iteration cross-seeded from a derivative sign scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import BlochX, binary_entropy, spectrum, xlog2

LN2 = math.log(2.0)
CLASSIFY_TOL = 1e-12      # equality band for the region conditions
NEWTON_STEP_TOL = 1e-12
NEWTON_GRAD_TOL = 1e-13
NEWTON_MAX_ITER = 100
SCAN_POINTS = 201
TIE_TOL = 1e-12
PAIR_FLOOR = 1e-15        # weights below this contribute nothing
H_FLOOR = 1e-12           # radicals below this switch to the series limit
TINY = 1e-300             # log argument floor; keeps exact zeros finite


class Region(Enum):
    """Parameter regions with a known maximizer of F."""

    CASE_A = "a"          # max at z = 1
    CASE_B = "b"          # max at z = 1
    CASE_C = "c"          # r = 0 family, endpoint picked by c3^2 vs c^2
    CASE_D = "d"          # max at z = 0
    GENERAL = "general"   # no closed form; numeric search


@dataclass(frozen=True)
class FContext:
    """Scalars shared by every F(z) evaluation for one state."""

    p: BlochX
    c: float        # max(|c1|, |c2|)
    c_big: float    # max(|c1|, |c2|, |c3|)

    @classmethod
    def from_state(cls, p: BlochX) -> "FContext":
        c = max(abs(p.c1), abs(p.c2))
        return cls(p=p, c=c, c_big=max(c, abs(p.c3)))


# ---------------------------------------------------------------------------
# F and derivatives.  Scalar paths use the math module (Newton runs many
# single-point evaluations); array paths mirror them with numpy for grids.
# A test pins the two against each other.

def _pair_scalar(w: float, h: float) -> float:
    # (w/4) [(1+A)log2(1+A) + (1-A)log2(1-A)], A = h/w clipped to [0, 1];
    # exact for the two log terms sharing weight w, finite at A -> 1
    if w <= PAIR_FLOOR:
        return 0.0
    a = h / w
    if a >= 1.0:
        a = 1.0
    t = (1.0 + a) * math.log2(1.0 + a)
    if a < 1.0 and a > 0.0:
        t += (1.0 - a) * math.log2(1.0 - a)
    return 0.25 * w * t


def _pair_arr(w, h):
    safe = np.where(w > PAIR_FLOOR, w, 1.0)
    a = np.clip(h / safe, 0.0, 1.0)
    val = 0.25 * safe * (xlog2(1.0 + a) + xlog2(1.0 - a))
    return np.where(w > PAIR_FLOOR, val, 0.0)


def _f_scalar(ctx: FContext, z: float) -> float:
    p = ctx.p
    rad = ctx.c * ctx.c * (1.0 - z * z)
    hp = math.sqrt(max(rad + (p.r + p.c3 * z) ** 2, 0.0))
    hm = math.sqrt(max(rad + (p.r - p.c3 * z) ** 2, 0.0))
    return (_pair_scalar(1.0 + p.s * z, hp)
            + _pair_scalar(1.0 - p.s * z, hm))


def _f_arr(ctx: FContext, z):
    p = ctx.p
    rad = ctx.c * ctx.c * (1.0 - z * z)
    hp = np.sqrt(np.maximum(rad + (p.r + p.c3 * z) ** 2, 0.0))
    hm = np.sqrt(np.maximum(rad + (p.r - p.c3 * z) ** 2, 0.0))
    return (_pair_arr(1.0 + p.s * z, hp)
            + _pair_arr(1.0 - p.s * z, hm))


def f_value(ctx: FContext, z):
    """F(z) for scalar or array z in [0, 1]."""
    if np.ndim(z) == 0:
        return _f_scalar(ctx, float(z))
    return _f_arr(ctx, np.asarray(z, dtype=float))


# F' is evaluated with the coefficients regrouped per logarithm:
#
#   4 ln2 F' = (s + n+/H+) ln(w+ + H+) + (s - n+/H+) ln(w+ - H+)
#            + (n-/H- - s) ln(w- + H-) - (s + n-/H-) ln(w- - H-)
#            + 2 s ln(w-/w+)
#
# with w+- = 1 +- s z, H+- the radicals, n+- = +-r c3 + (c3^2 - c^2) z
# their derivative numerators.  Algebraically identical to the compact
# two-term display, but on boundary-rank states the coefficient of the
# diverging logarithm vanishes, so this form stays finite where the
# compact one produces inf - inf.  When a radical underflows, the log
# pair it multiplies has the limit 2 n / w.

def _ln_s(x: float) -> float:
    return math.log(x if x > TINY else TINY)


def _branch_scalar(w: float, h: float, n: float, se: float) -> float:
    lp = _ln_s(w + h)
    lm = _ln_s(w - h)
    if h > H_FLOOR:
        u = n / h
        return (se + u) * lp + (se - u) * lm
    return se * (lp + lm) + 2.0 * n / max(w, TINY)


def _fp_scalar(ctx: FContext, z: float) -> float:
    p = ctx.p
    r, s, c3, c = p.r, p.s, p.c3, ctx.c
    q = c3 * c3 - c * c
    wp = 1.0 + s * z
    wm = 1.0 - s * z
    rad = c * c * (1.0 - z * z)
    hp = math.sqrt(max(rad + (r + c3 * z) ** 2, 0.0))
    hm = math.sqrt(max(rad + (r - c3 * z) ** 2, 0.0))
    tot = _branch_scalar(wp, hp, r * c3 + q * z, s)
    tot += _branch_scalar(wm, hm, -r * c3 + q * z, -s)
    tot += 2.0 * s * (_ln_s(wm) - _ln_s(wp))
    return tot / (4.0 * LN2)


def _ln_a(x):
    return np.log(np.maximum(x, TINY))


def _branch_arr(w, h, n, se):
    lp = _ln_a(w + h)
    lm = _ln_a(w - h)
    big = h > H_FLOOR
    u = n / np.where(big, h, 1.0)
    full = (se + u) * lp + (se - u) * lm
    series = se * (lp + lm) + 2.0 * n / np.maximum(w, TINY)
    return np.where(big, full, series)


def _fp_arr(ctx: FContext, z):
    p = ctx.p
    r, s, c3, c = p.r, p.s, p.c3, ctx.c
    q = c3 * c3 - c * c
    wp = 1.0 + s * z
    wm = 1.0 - s * z
    rad = c * c * (1.0 - z * z)
    hp = np.sqrt(np.maximum(rad + (r + c3 * z) ** 2, 0.0))
    hm = np.sqrt(np.maximum(rad + (r - c3 * z) ** 2, 0.0))
    tot = _branch_arr(wp, hp, r * c3 + q * z, s)
    tot += _branch_arr(wm, hm, -r * c3 + q * z, -s)
    tot += 2.0 * s * (_ln_a(wm) - _ln_a(wp))
    return tot / (4.0 * LN2)


def f_derivative(ctx: FContext, z):
    """F'(z) for scalar or array z.  F'(0) is exactly 0 (F is even)."""
    if np.ndim(z) == 0:
        return _fp_scalar(ctx, float(z))
    return _fp_arr(ctx, np.asarray(z, dtype=float))


def _fpp_scalar(ctx: FContext, z: float) -> float:
    p = ctx.p
    r, s, c3, c = p.r, p.s, p.c3, ctx.c
    wp = 1.0 + s * z
    wm = 1.0 - s * z
    rad = c * c * (1.0 - z * z)
    hp = math.sqrt(max(rad + (r + c3 * z) ** 2, 0.0))
    hm = math.sqrt(max(rad + (r - c3 * z) ** 2, 0.0))
    dp = wp * wp - hp * hp
    dm = wm * wm - hm * hm
    # near-singular denominators: signal with nan, callers fall back
    if hp <= H_FLOOR or hm <= H_FLOOR or dp <= TINY or dm <= TINY \
            or wp <= TINY or wm <= TINY:
        return math.nan
    q = c3 * c3 - c * c
    gp = (r * c3 + q * z) / hp
    gm = (-r * c3 + q * z) / hm
    curv = c * c * (q - r * r)
    t = ((s * s + gp * gp) * wp - 2.0 * s * hp * gp) / dp
    t += ((s * s + gm * gm) * wm + 2.0 * s * hm * gm) / dm
    t -= 2.0 * s * s / (wp * wm)
    t += 0.5 * (curv / hp ** 3) * math.log((wp + hp) / (wp - hp))
    t += 0.5 * (curv / hm ** 3) * math.log((wm + hm) / (wm - hm))
    return t / (2.0 * LN2)


def _fpp_arr(ctx: FContext, z):
    p = ctx.p
    r, s, c3, c = p.r, p.s, p.c3, ctx.c
    wp = 1.0 + s * z
    wm = 1.0 - s * z
    rad = c * c * (1.0 - z * z)
    hp = np.sqrt(np.maximum(rad + (r + c3 * z) ** 2, 0.0))
    hm = np.sqrt(np.maximum(rad + (r - c3 * z) ** 2, 0.0))
    dp = wp * wp - hp * hp
    dm = wm * wm - hm * hm
    bad = ((hp <= H_FLOOR) | (hm <= H_FLOOR) | (dp <= TINY) | (dm <= TINY)
           | (wp <= TINY) | (wm <= TINY))
    q = c3 * c3 - c * c
    with np.errstate(divide="ignore", invalid="ignore"):
        gp = (r * c3 + q * z) / hp
        gm = (-r * c3 + q * z) / hm
        curv = c * c * (q - r * r)
        t = ((s * s + gp * gp) * wp - 2.0 * s * hp * gp) / dp
        t += ((s * s + gm * gm) * wm + 2.0 * s * hm * gm) / dm
        t -= 2.0 * s * s / (wp * wm)
        t += 0.5 * (curv / hp ** 3) * np.log((wp + hp) / (wp - hp))
        t += 0.5 * (curv / hm ** 3) * np.log((wm + hm) / (wm - hm))
    return np.where(bad, np.nan, t / (2.0 * LN2))


def f_second_derivative(ctx: FContext, z):
    """F''(z); returns nan where a denominator degenerates."""
    if np.ndim(z) == 0:
        return _fpp_scalar(ctx, float(z))
    return _fpp_arr(ctx, np.asarray(z, dtype=float))


# ---------------------------------------------------------------------------
# Endpoint closed forms and the region classifier.  The endpoint values are
# transcribed independently of f_value so an analytic-vs-numeric comparison
# actually compares two expressions.

def _endpoint_one(p: BlochX) -> float:
    # value at z = 1: four terms with weights 1 +- s +- (r +- c3)
    tot = 0.0
    for w, d in ((1.0 + p.s, p.r + p.c3), (1.0 - p.s, p.r - p.c3)):
        if w <= PAIR_FLOOR:
            continue
        for e in (1.0, -1.0):
            x = w + e * d
            if x > 0.0:
                tot += 0.25 * x * math.log2(x / w)
    return tot


def _endpoint_zero(p: BlochX, c: float) -> float:
    # value at z = 0 with k = sqrt(r^2 + c^2)
    k = math.hypot(p.r, c)
    tot = (1.0 + k) * math.log2(1.0 + k)
    if k < 1.0:
        tot += (1.0 - k) * math.log2(1.0 - k)
    return 0.5 * tot


def _axis_value(s: float, cbig: float) -> float:
    # r = 0 family: four terms with weights 1 +- s +- C, C = max |ci|
    tot = 0.0
    for w in (1.0 + s, 1.0 - s):
        if w <= PAIR_FLOOR:
            continue
        for e in (1.0, -1.0):
            x = w + e * cbig
            if x > 0.0:
                tot += 0.25 * x * math.log2(x / w)
    return tot


def region_conditions(p: BlochX, tol: float = CLASSIFY_TOL) -> dict[str, bool]:
    """Which of the four endpoint-region hypotheses the state satisfies.

    The regions overlap; classify_region resolves overlaps by the fixed
    precedence a, b, c, d (consistent, since the endpoint values agree on
    every overlap).
    """
    r, s, c3 = p.r, p.s, p.c3
    c = max(abs(p.c1), abs(p.c2))
    q = c3 * c3 - c * c
    rc3 = r * c3
    src3 = s * rc3
    return {
        "a": (s >= -tol and rc3 <= tol and q >= src3 - tol)
             or (abs(s) <= tol and q >= -tol),
        "b": s <= tol and rc3 >= -tol and q >= src3 - tol,
        "c": abs(r) <= tol and (q >= -tol or abs(s) <= tol),
        "d": (abs(s - rc3) <= tol and s <= tol and abs(q) <= tol
              and c * c + r * r <= 2.0 / 3.0 + tol),
    }


def classify_region(p: BlochX, tol: float = CLASSIFY_TOL) -> Region:
    """Assign the state to the first matching region, a through d.

    Comparisons use a small equality band; states matching no hypothesis
    get Region.GENERAL and take the numeric search.
    """
    conds = region_conditions(p, tol)
    for tag in "abcd":
        if conds[tag]:
            return Region(tag)
    return Region.GENERAL


def analytic_max(p: BlochX, region: Region | None = None,
                 tol: float = CLASSIFY_TOL) -> tuple[float, float]:
    """(z*, max F) from the closed forms; requires a non-general region."""
    tag = classify_region(p, tol) if region is None else region
    if tag in (Region.CASE_A, Region.CASE_B):
        return 1.0, _endpoint_one(p)
    c = max(abs(p.c1), abs(p.c2))
    if tag is Region.CASE_C:
        cbig = max(c, abs(p.c3))
        z_star = 1.0 if p.c3 * p.c3 >= c * c - tol else 0.0
        return z_star, _axis_value(p.s, cbig)
    if tag is Region.CASE_D:
        return 0.0, _endpoint_zero(p, c)
    raise ValueError("state is outside the closed-form regions")


# ---------------------------------------------------------------------------
# Numeric search: safeguarded Newton plus a derivative sign scan.

@dataclass(frozen=True)
class NewtonRun:
    """Trace of one safeguarded Newton run on F'."""

    seed: float
    iterates: tuple[float, ...]
    converged: bool
    z: float
    note: str = ""


def newton_critical_point(ctx: FContext, z0: float,
                          bracket: tuple[float, float] | None = None,
                          max_iter: int = NEWTON_MAX_ITER) -> NewtonRun:
    """Newton iteration for F'(z) = 0 from z0, confined to [0, 1].

    Steps that leave the interval, land on a non-finite derivative, or
    increase |F'| are rejected; with a sign-change bracket the rejected
    step is replaced by bisection, otherwise the run is abandoned.
    Convergence: |dz| < 1e-12 or |F'| < 1e-13, capped at max_iter.
    """
    z = float(z0)
    g = _fp_scalar(ctx, z)
    lo, hi = (0.0, 1.0)
    glo = 0.0
    have_bracket = False
    if bracket is not None:
        lo, hi = float(bracket[0]), float(bracket[1])
        glo = _fp_scalar(ctx, lo)
        ghi = _fp_scalar(ctx, hi)
        have_bracket = (math.isfinite(glo) and math.isfinite(ghi)
                        and glo * ghi < 0.0)
    its: list[float] = []
    converged = False
    note = ""
    for _ in range(max_iter):
        if math.isfinite(g) and abs(g) < NEWTON_GRAD_TOL:
            converged = True
            break
        h2 = _fpp_scalar(ctx, z)
        zn = z - g / h2 if (math.isfinite(g) and math.isfinite(h2)
                            and h2 != 0.0) else math.nan
        ok = math.isfinite(zn) and lo <= zn <= hi
        gn = _fp_scalar(ctx, zn) if ok else math.nan
        if not (ok and math.isfinite(gn) and abs(gn) <= abs(g)):
            if not have_bracket:
                note = "step rejected, no bracket to bisect"
                break
            zn = 0.5 * (lo + hi)
            gn = _fp_scalar(ctx, zn)
            note = "bisection fallback used"
            if not math.isfinite(gn):
                note = "non-finite derivative inside bracket"
                break
        its.append(zn)
        if have_bracket:
            if gn * glo > 0.0:
                lo, glo = zn, gn
            else:
                hi = zn
        dz = abs(zn - z)
        z, g = zn, gn
        if dz < NEWTON_STEP_TOL or abs(g) < NEWTON_GRAD_TOL:
            converged = True
            break
    else:
        note = "iteration cap reached"
    return NewtonRun(seed=float(z0), iterates=tuple(its),
                     converged=converged, z=z, note=note)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(fn, lo: float, hi: float,
                       tol: float = 1e-12, max_iter: int = 200):
    """Golden-section search for a maximum of fn on [lo, hi]."""
    a, b = float(lo), float(hi)
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = fn(x1), fn(x2)
    it = 0
    while (b - a) > tol and it < max_iter:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = fn(x1)
        it += 1
    xm = 0.5 * (a + b)
    return xm, fn(xm)


@dataclass(frozen=True)
class MaxResult:
    """Outcome of the global search for max F on [0, 1].

    candidates holds every (z, F(z)) examined; newton_runs starts with the
    run seeded at z0 = 1.  fallback names the rescue strategy if a Newton
    run failed inside a bracket.  tie is set when F(0) and F(1) agree at
    the top within 1e-12.
    """

    z_star: float
    f_max: float
    candidates: tuple[tuple[float, float], ...]
    newton_runs: tuple[NewtonRun, ...]
    tie: bool
    fallback: str | None


def _global_max(ctx: FContext, scan_points: int = SCAN_POINTS) -> MaxResult:
    zs = np.linspace(0.0, 1.0, scan_points)
    with np.errstate(all="ignore"):
        d = _fp_arr(ctx, zs)
    f0 = _f_scalar(ctx, 0.0)
    f1 = _f_scalar(ctx, 1.0)
    cands: list[tuple[float, float]] = [(0.0, f0), (1.0, f1)]
    runs: list[NewtonRun] = []
    fallback = None

    run0 = newton_critical_point(ctx, 1.0)
    runs.append(run0)
    if run0.converged and math.isfinite(run0.z) and 0.0 <= run0.z <= 1.0:
        cands.append((run0.z, _f_scalar(ctx, run0.z)))

    # z = 0 is always critical (F is even); covered by the endpoint above
    for i in range(1, scan_points - 1):
        gi, gj = d[i], d[i + 1]
        if not (np.isfinite(gi) and np.isfinite(gj)):
            continue
        if gi == 0.0:
            zi = float(zs[i])
            cands.append((zi, _f_scalar(ctx, zi)))
            continue
        if gi * gj < 0.0:
            a, b = float(zs[i]), float(zs[i + 1])
            run = newton_critical_point(ctx, 0.5 * (a + b), bracket=(a, b))
            runs.append(run)
            if run.converged:
                cands.append((run.z, _f_scalar(ctx, run.z)))
            else:
                zg, fg = golden_section_max(lambda t: _f_scalar(ctx, t), a, b)
                fallback = "golden-section"
                cands.append((zg, fg))

    f_max = max(f for _, f in cands)
    winners = [z for z, f in cands if f >= f_max - TIE_TOL]
    tie = abs(f0 - f1) <= TIE_TOL and f_max - max(f0, f1) <= TIE_TOL
    if f_max < 1e-12:
        z_star = 0.0              # flat F: state has no correlations
    elif any(z >= 1.0 - TIE_TOL for z in winners):
        z_star = 1.0
    elif any(z <= TIE_TOL for z in winners):
        z_star = 0.0
    else:
        z_star = max(cands, key=lambda t: t[1])[0]
    return MaxResult(z_star=float(z_star), f_max=float(f_max),
                     candidates=tuple((float(z), float(f)) for z, f in cands),
                     newton_runs=tuple(runs), tie=bool(tie),
                     fallback=fallback)


def global_max(p: BlochX, scan_points: int = SCAN_POINTS) -> MaxResult:
    """Locate max F by endpoint candidates, Newton from z = 1, and Newton
    (or golden-section rescue) inside every sign-change bracket of F'."""
    return _global_max(FContext.from_state(p), scan_points)


# ---------------------------------------------------------------------------
# Assembly.

@dataclass(frozen=True)
class DiscordResult:
    """Discord and companions for one state.

    method is "analytic" when a closed-form region supplied the maximum,
    else "numeric".  search carries the numeric trace when one ran;
    verify_gap is |analytic - numeric| max F when both were evaluated.
    """

    discord: float
    classical_correlation: float
    mutual_information: float
    z_star: float
    f_max: float
    region: str
    method: str
    search: MaxResult | None = None
    verify_gap: float | None = None


def discord(p: BlochX, method: str = "auto", verify: bool = False,
            scan_points: int = SCAN_POINTS) -> DiscordResult:
    """Quantum discord of an X-state, measuring qubit b.

    method "auto" uses the closed forms when the state classifies into a
    known region and the numeric search otherwise; "numeric" forces the
    search; "analytic" raises outside the closed-form regions.  verify=True
    runs whichever route was not taken and records the gap.
    """
    if method not in ("auto", "analytic", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    ctx = FContext.from_state(p)
    tag = classify_region(p)
    search = None
    verify_gap = None
    if method == "analytic" and tag is Region.GENERAL:
        raise ValueError("state is outside the closed-form regions")
    if method in ("auto", "analytic") and tag is not Region.GENERAL:
        z_star, f_max = analytic_max(p, tag)
        how = "analytic"
        if verify:
            search = _global_max(ctx, scan_points)
            verify_gap = abs(search.f_max - f_max)
    else:
        search = _global_max(ctx, scan_points)
        z_star, f_max = search.z_star, search.f_max
        how = "numeric"
        if verify and tag is not Region.GENERAL:
            verify_gap = abs(analytic_max(p, tag)[1] - f_max)

    if f_max < TIE_TOL:
        z_star = 0.0    # flat F: no correlations, every direction ties

    ha = binary_entropy((1.0 + p.r) / 2.0)   # S(rho_a)
    hb = binary_entropy((1.0 + p.s) / 2.0)   # S(rho_b)
    neg_s_ab = float(np.sum(xlog2(spectrum(p))))   # -S(rho_ab)
    q = 1.0 + hb + neg_s_ab - f_max
    cc = f_max - 1.0 + ha
    mi = ha + hb + neg_s_ab
    return DiscordResult(discord=q, classical_correlation=cc,
                         mutual_information=mi, z_star=float(z_star),
                         f_max=float(f_max), region=tag.value, method=how,
                         search=search, verify_gap=verify_gap)
