#!/usr/bin/env python3
"""Generate tests/expected_values.hpp: frozen reference values for the test suite.

Every value is computed here with mpmath at high precision, by routes chosen to be
independent of the C++ implementation paths:

  * Mittag-Leffler / Wright spot values: direct big-float series summation with
    cancellation-adaptive precision (plus a validated algebraic+oscillatory
    asymptotic for very negative arguments, used only inside quadratures).
  * Densities of the fractional and alpha-stable kernel families: oscillatory
    quadrature of the Fourier inversion integral (quadosc), not spline tables.
  * Interval/ball masses: Fourier-side CDF formula M(v) = (2/pi) Int sym(r) sin(vr)/r dr
    in d=1, an analytic-inner-integral Cartesian route for the wave d=2 disk mass,
    and a Bessel-I0 radial formula for the heat d=2 disk mass.
  * Subordination identities are verified numerically before the C++ tests rely
    on them; the measured constants are emitted.

Run:  python3 tools/oracle/gen_expected.py
Log and self-check output goes to stderr; the script aborts if any self-check fails.
Completed sections are checkpointed to checkpoint.json next to this script, so a
failure late in the run never costs the expensive early tables; delete that file
to force a full recomputation.
"""

import json
import math
import os
import sys
import time

from mpmath import mp, mpf, mpc, pi, sin, cos, exp, sqrt, gamma, rgamma, erf, erfc, \
    quad, quadosc, inf, besselj, besseli, besseljzero, atan, asin, log, power, re

T0 = time.time()


def note(msg):
    sys.stderr.write("[%7.1fs] %s\n" % (time.time() - T0, msg))
    sys.stderr.flush()


def check(label, got, want, tol):
    err = abs(mpf(got) - mpf(want)) / max(abs(mpf(want)), mpf("1e-300"))
    ok = err < tol
    note("check %-46s rel_err=%.3e %s" % (label, float(err), "ok" if ok else "FAIL"))
    if not ok:
        sys.stderr.write("FATAL: self-check failed: %s\n" % label)
        sys.exit(1)


# ---------------------------------------------------------------------------
# Mittag-Leffler E_{beta,beta2}(z) = sum_k z^k / Gamma(beta k + beta2)
# ---------------------------------------------------------------------------

def _ml_series_digits(beta, z):
    """Estimate decimal digits of cancellation in the series at negative z."""
    az = abs(float(z))
    if az < 2.0:
        return 5
    kpeak = max(1, int(az ** (1.0 / beta) / beta) + 2)
    best = 0.0
    for k in range(max(0, kpeak - 4), kpeak + 5):
        t = k * math.log(az) - math.lgamma(beta * k + 1e-9 + 0.5)
        best = max(best, t)
    return max(5, int(best / math.log(10.0)) + 5)


def ml_series(beta, beta2, z, extra=25):
    beta = mpf(beta); beta2 = mpf(beta2); z = mpf(z)
    digits = _ml_series_digits(float(beta), z) if z < 0 else 5
    with mp.workdps(mp.dps + digits + extra):
        s = mpf(0)
        term_max = mpf(0)
        k = 0
        zb = mpf(z)
        zk = mpf(1)
        while True:
            term = zk * rgamma(beta * k + beta2)
            s += term
            term_max = max(term_max, abs(term))
            zk *= zb
            k += 1
            if k > 8 and abs(term) < term_max * mpf(10) ** (-(mp.dps - 5)) \
                    and beta * k + beta2 > abs(z) ** (1.0 / float(beta)) + 4:
                break
            if k > 200000:
                raise RuntimeError("ml_series did not converge")
        return +s


def ml_asymptotic(beta, beta2, z):
    """For z << 0: algebraic expansion plus (beta>1) the damped oscillatory pair."""
    beta = mpf(beta); beta2 = mpf(beta2); z = mpf(z)
    assert z < 0
    # optimal truncation from the smooth part of the term magnitudes
    # |t_k| ~ |z|^-k Gamma(beta k - beta2 + 1) (sin factor dropped: it can make
    # individual terms near poles arbitrarily small without signalling decay)
    az = abs(float(z))
    best_k, best_m = 1, 1e300
    for k in range(1, 400):
        a_refl = float(beta) * k - float(beta2) + 1.0
        m = -k * math.log(az) + (math.lgamma(a_refl) if a_refl > 1.0 else 0.0)
        if m < best_m:
            best_k, best_m = k, m
        if best_m < -220:
            break
    s = mpf(0)
    zk = 1 / z
    for k in range(1, best_k + 1):
        s += -zk * rgamma(beta2 - beta * k)
        zk /= z
    if beta > 1:
        w = power(abs(z), 1 / beta) * exp(mpc(0, pi / beta))
        s += (2 / beta) * re(power(w, 1 - beta2) * exp(w))
    return +s


def ml(beta, beta2, z):
    """Hybrid evaluator used inside quadratures (beta <= 1.5 there)."""
    zswitch = 60.0 ** float(beta)
    if z >= -zswitch:
        return ml_series(beta, beta2, z, extra=10)
    return ml_asymptotic(beta, beta2, z)


# ---------------------------------------------------------------------------
# Wright phi(a,b;z) = sum_k z^k / (k! Gamma(a k + b)),  a > -1
# ---------------------------------------------------------------------------

def wright_series(a, b, z):
    a = mpf(a); b = mpf(b); z = mpf(z)
    az = abs(float(z))
    digits = 5
    if z < 0 and a < 0 and az > 2.0:
        # terms peak near k* with |z|^k/(k! G(ak+b)) ~ exp((1+a) k ...) type growth
        best = 0.0
        for k in range(1, 4000):
            t = k * math.log(az) - math.lgamma(k + 1) - math.lgamma(max(a * k + b, 1e-9)) \
                if a * k + b > 0 else k * math.log(az) - math.lgamma(k + 1) + \
                math.lgamma(max(1 - a * k - b, 1.0)) + math.log(abs(math.sin(math.pi * (a * k + b))) / math.pi + 1e-300)
            best = max(best, t)
            if a * k + b < -4 * az ** (1.0 / (1.0 + float(a))) - 40:
                break
        digits = max(5, int(best / math.log(10.0)) + 8)
    with mp.workdps(mp.dps + digits + 20):
        s = mpf(0)
        term_max = mpf(0)
        fact = mpf(1)
        zk = mpf(1)
        streak = 0  # consecutive tiny terms; single near-pole terms are not convergence
        for k in range(0, 100000):
            if k > 0:
                fact *= k
                zk *= z
            term = zk / fact * rgamma(a * k + b)
            s += term
            term_max = max(term_max, abs(term))
            if k > 10 and abs(term) < term_max * mpf(10) ** (-(mp.dps - 5)):
                streak += 1
                if streak >= 4:
                    break
            else:
                streak = 0
        else:
            raise RuntimeError("wright_series(%s, %s, z~%.3g) did not converge"
                               % (a, b, float(z)))
        return +s


def mwright(nu, x):
    """M-Wright density M_nu(x) = phi(-nu, 1-nu; -x)."""
    return wright_series(-nu, 1 - nu, -x)


def stable_oneside(beta, x):
    """One-sided beta-stable density g_beta, Laplace exponent s^beta, beta in (0,1)."""
    x = mpf(x)
    return beta / x ** (beta + 1) * mwright(beta, x ** (-beta))


def stable_oneside_zolotarev(beta, x):
    """Same density through the Zolotarev integral: positive integrand, no
    cancellation, usable at any x (the series route needs astronomical working
    precision once x^{-beta} is large). The integrand concentrates in a layer
    at theta = 0 whose log-scale is S = c x^{-beta/(1-beta)} with c the saddle
    constant; the quadrature depth mpmath chooses tracks the working precision,
    so the precision must grow with S or the layer is under-resolved (observed
    as ~1e-3 relative error at S ~ 80 with 22 digits). Past S ~ 1200 the value
    is below e^-1200 and any nested-integral use of it is insensitive to its
    relative error, so the boost is capped there."""
    beta = mpf(beta); x = mpf(x)
    bb = beta / (1 - beta)
    cc = (1 - beta) * beta ** bb
    S = float(cc * x ** (-bb))
    extra = min(int(0.55 * S) + 15, 700)

    def A(th):
        return (sin(beta * th) ** beta * sin((1 - beta) * th) ** (1 - beta)
                / sin(th)) ** (1 / (1 - beta))

    f = lambda th: A(th) * exp(-x ** (-bb) * A(th))
    with mp.workdps(mp.dps + extra):
        return +((beta / (1 - beta)) / pi * x ** (-1 / (1 - beta)) * quad(f, [0, pi / 2, pi]))


def wright_mu0_neg(nu, z):
    """phi(-nu, 0; -z) for z > 0 via phi(-nu, 0; -z) = nu z M_nu(z) and the
    stable-density form of M_nu, evaluated by the Zolotarev integral."""
    nu = mpf(nu); z = mpf(z)
    if z <= 0:
        return mpf(0)
    x = z ** (-1 / nu)  # M_nu(z) = g_nu(x) x^{nu+1} / nu
    return z * x ** (nu + 1) * stable_oneside_zolotarev(nu, x)


def mwright_boosted(nu, z):
    """M_nu(z) by the series with working precision sized for BOTH the peak-term
    cancellation (handled inside wright_series) and the smallness of the result,
    M_nu(z) ~ exp(-c z^{1/(1-nu)}), which wright_series's own estimate ignores."""
    nu = mpf(nu); z = mpf(z)
    if z <= 2:
        return mwright(nu, z)
    cc = (1 - nu) * nu ** (nu / (1 - nu))
    result_digits = int(float(cc * z ** (1 / (1 - nu))) / math.log(10.0)) + 25
    if result_digits > 400:
        raise RuntimeError("mwright_boosted: z=%.3g too large for the series route" % float(z))
    with mp.workdps(mp.dps + result_digits):
        return +mwright(nu, z)


def stable_hybrid(beta, x):
    """g_beta(x): boosted series where the Wright argument x^{-beta} is moderate,
    Zolotarev integral in the small-x regime where the series would need
    astronomical precision. Per-point cost stays milliseconds on the series arm,
    which is what keeps nested quadratures over g_beta affordable."""
    beta = mpf(beta); x = mpf(x)
    z = x ** (-beta)
    if z > mpf("4.8"):
        return stable_oneside_zolotarev(beta, x)
    return beta / x ** (beta + 1) * mwright_boosted(beta, z)


def wright_mu0_hybrid(nu, z):
    """phi(-nu, 0; -z) through stable_hybrid; same identity as wright_mu0_neg."""
    nu = mpf(nu); z = mpf(z)
    if z <= 0:
        return mpf(0)
    x = z ** (-1 / nu)
    return z * x ** (nu + 1) * stable_hybrid(nu, x)


# ---------------------------------------------------------------------------
# Self-checks for the evaluators
# ---------------------------------------------------------------------------

mp.dps = 30
note("validating special-function evaluators")

check("ml(1,1,-5) = exp(-5)", ml_series(1, 1, -5), exp(mpf(-5)), mpf("1e-25"))
check("ml(2,2,-7) = sin(sqrt(7))/sqrt(7)",
      ml_series(2, 2, -7), sin(sqrt(mpf(7))) / sqrt(mpf(7)), mpf("1e-25"))
for b in (0.8, 1.2, 1.5):
    zs = -(60.0 ** b) * 1.05
    check("ml series/asymptotic overlap beta=%.1f z=%.1f" % (b, zs),
          ml_asymptotic(b, b, zs), ml_series(b, b, zs), mpf("1e-18"))
check("wright(0,1,1) = e", wright_series(0, 1, 1), exp(mpf(1)), mpf("1e-25"))
# M-Wright at nu=1/2 is the half-Gaussian scaling: M_{1/2}(x) = exp(-x^2/4)/sqrt(pi)
check("mwright(0.5, 0.7)", mwright(0.5, 0.7), exp(-mpf(0.7) ** 2 / 4) / sqrt(pi), mpf("1e-22"))
# one-sided 1/2-stable (Levy) density: g_{1/2}(x) = exp(-1/(4x)) / (2 sqrt(pi) x^{3/2})
_x9 = mpf("0.9")
check("stable_oneside(0.5, 0.9)", stable_oneside(0.5, _x9),
      exp(-1 / (4 * _x9)) / (2 * sqrt(pi) * _x9 ** mpf(1.5)), mpf("1e-22"))
check("zolotarev route at beta=0.5", stable_oneside_zolotarev(0.5, _x9),
      exp(-1 / (4 * _x9)) / (2 * sqrt(pi) * _x9 ** mpf(1.5)), mpf("1e-20"))
check("zolotarev route at beta=0.75", stable_oneside_zolotarev(0.75, mpf("1.2")),
      stable_oneside(0.75, mpf("1.2")), mpf("1e-18"))
check("wright mu=0 via stable (nu=0.6)", wright_mu0_neg(0.6, mpf("2.5")),
      wright_series(-0.6, 0, mpf("-2.5")), mpf("1e-15"))
check("wright mu=0 via stable (nu=0.75)", wright_mu0_neg(0.75, mpf("3.0")),
      wright_series(-0.75, 0, mpf("-3.0")), mpf("1e-15"))

# ---------------------------------------------------------------------------
# Emission helpers and section checkpointing
# ---------------------------------------------------------------------------

OUT = []


def emit(line=""):
    OUT.append(line)


def f17(x):
    return repr(float(mpf(x)))


CKPT_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "checkpoint.json")
CKPT = {"sections": {}}
if os.path.exists(CKPT_PATH):
    with open(CKPT_PATH) as fh:
        CKPT = json.load(fh)
    note("checkpoint: found sections %s" % ", ".join(sorted(CKPT["sections"])) if
         CKPT["sections"] else "checkpoint: file present but empty")


def section_cached(name):
    """Restore a completed section's output lines; True when cached."""
    if name in CKPT["sections"]:
        OUT.extend(CKPT["sections"][name])
        note("%s: restored from checkpoint" % name)
        return True
    return False


def section_done(name, mark):
    CKPT["sections"][name] = OUT[mark:]
    with open(CKPT_PATH, "w") as fh:
        json.dump(CKPT, fh, indent=0)
    note("%s: checkpointed" % name)


emit("// Generated by tools/oracle/gen_expected.py -- do not edit by hand.")
emit("// Reference values computed with mpmath (big-float series / independent")
emit("// quadrature routes); see the generator script for the exact formulas.")
emit("#pragma once")
emit()
emit("namespace expected {")
emit()

# ---------------------------------------------------------------------------
# Section A: Mittag-Leffler spot values (pure high-precision series)
# ---------------------------------------------------------------------------

note("A: mittag-leffler spot values")
_mark = len(OUT)
if not section_cached("A"):
    ml_cases = []
    for (b, b2, z) in [
        (0.8, 0.8, -0.5), (0.8, 0.8, -3.0), (0.8, 0.8, -10.0), (0.8, 0.8, -14.0),
        (0.8, 0.8, -50.0), (0.8, 0.8, -200.0), (0.8, 0.8, 1.5),
        (0.6, 0.6, -5.0), (0.6, 0.6, -30.0),
        (1.2, 1.2, -0.5), (1.2, 1.2, -5.0), (1.2, 1.2, -20.0), (1.2, 1.2, -50.0),
        (1.2, 1.2, -200.0), (1.2, 1.2, 2.0),
        (1.5, 1.5, -8.0), (1.5, 1.5, -80.0),
        (1.9, 1.9, -5.0), (1.9, 1.9, -40.0), (1.9, 1.9, -150.0),
        (0.51, 0.51, -10.0),
        (1.2, 1.0, -7.0), (0.8, 1.0, -10.0), (0.8, 1.6, -12.0),
    ]:
        v = ml_series(b, b2, z)
        ml_cases.append((b, b2, z, v))

    emit("struct MlCase { double beta, beta2, z, value; };")
    emit("inline constexpr MlCase ml_cases[] = {")
    for (b, b2, z, v) in ml_cases:
        emit("    {%s, %s, %s, %s}," % (f17(b), f17(b2), f17(z), f17(v)))
    emit("};")
    emit()
    section_done("A", _mark)

# ---------------------------------------------------------------------------
# Section B: Wright spot values
# ---------------------------------------------------------------------------

note("B: wright spot values")
_mark = len(OUT)
if not section_cached("B"):
    wr_cases = []
    for (a, b, z) in [
        (-0.6, 0.0, -1.0), (-0.8, 0.2, -0.5), (-0.8, 0.2, -2.0), (-0.8, 0.2, -8.0),
        (-0.5, 0.5, -1.0), (0.5, 1.0, 0.7), (-0.9, 0.1, -1.5), (-0.4, 0.6, -3.0),
        (-0.6, -0.6, -2.5), (-0.75, 0.0, -4.0),
    ]:
        v = wright_series(a, b, z)
        wr_cases.append((a, b, z, v))

    emit("struct WrightCase { double a, b, z, value; };")
    emit("inline constexpr WrightCase wright_cases[] = {")
    for (a, b, z, v) in wr_cases:
        emit("    {%s, %s, %s, %s}," % (f17(a), f17(b), f17(z), f17(v)))
    emit("};")
    emit()
    section_done("B", _mark)

# ---------------------------------------------------------------------------
# Section C: fractional-diffusion densities by Fourier inversion
#   symbol(t, r) = t^{beta-1} E_{beta,beta}(-t^beta r^alpha / 2)
#   d=1: (1/pi) Int sym cos(r x) dr
#   d=2: (1/2pi) Int sym J0(r rho) r dr
#   d=3: (1/2pi^2 rho) Int sym sin(r rho) r dr
# ---------------------------------------------------------------------------

mp.dps = 22


def fd_symbol(alpha, beta, t, r):
    return mpf(t) ** (beta - 1) * ml(beta, beta, -mpf(t) ** beta * mpf(r) ** alpha / 2)


def fd_density(alpha, beta, d, t, x):
    x = mpf(x)
    if d == 1:
        if x == 0:
            return quad(lambda r: fd_symbol(alpha, beta, t, r), [0, 1, 10, 100, inf]) / pi
        return quadosc(lambda r: fd_symbol(alpha, beta, t, r) * cos(r * x),
                       [0, inf], omega=x) / pi
    if d == 2:
        return quadosc(lambda r: fd_symbol(alpha, beta, t, r) * besselj(0, r * x) * r,
                       [0, inf], zeros=lambda n: besseljzero(0, n) / x) / (2 * pi)
    if d == 3:
        return quadosc(lambda r: fd_symbol(alpha, beta, t, r) * sin(r * x) * r,
                       [0, inf], omega=x) / (2 * pi ** 2 * x)
    raise ValueError(d)


note("C: fractional-diffusion density spots")
_mark = len(OUT)
if not section_cached("C"):
    fd_cases = []
    for (alpha, beta, d, t, x) in [
        (1.5, 1.2, 1, 0.5, 0.0), (1.5, 1.2, 1, 0.5, 0.25), (1.5, 1.2, 1, 0.5, 1.0),
        (1.5, 1.2, 1, 0.5, 3.0),
        (1.5, 0.8, 1, 0.5, 0.0), (1.5, 0.8, 1, 0.5, 0.5), (1.5, 0.8, 1, 0.5, 2.0),
        (2.0, 0.8, 1, 0.7, 0.0), (2.0, 0.8, 1, 0.7, 1.0),
        (1.2, 1.2, 1, 0.5, 0.6),
        (2.0, 1.5, 2, 0.5, 0.3), (2.0, 1.5, 2, 0.5, 1.0),
        (2.0, 1.5, 3, 0.5, 0.5), (2.0, 1.5, 3, 0.5, 1.2),
    ]:
        v = fd_density(alpha, beta, d, t, x)
        fd_cases.append((alpha, beta, d, t, x, v))
        note("   fd(alpha=%g beta=%g d=%d t=%g x=%g) = %s" % (alpha, beta, d, t, x, mp.nstr(v, 12)))

    emit("struct FdDensityCase { double alpha, beta; int d; double t, r, value; };")
    emit("inline constexpr FdDensityCase fd_density_cases[] = {")
    for (alpha, beta, d, t, x, v) in fd_cases:
        emit("    {%s, %s, %d, %s, %s, %s}," % (f17(alpha), f17(beta), d, f17(t), f17(x), f17(v)))
    emit("};")
    emit()
    section_done("C", _mark)

# ---------------------------------------------------------------------------
# Section D: alpha-stable heat densities (symbol exp(-t r^alpha / 2))
# ---------------------------------------------------------------------------

note("D: alpha-heat density spots")


def aheat_density(alpha, d, t, x):
    x = mpf(x)
    sym = lambda r: exp(-mpf(t) * r ** alpha / 2)
    if d == 1:
        if x == 0:
            return quad(sym, [0, 1, 10, inf]) / pi
        return quadosc(lambda r: sym(r) * cos(r * x), [0, inf], omega=x) / pi
    if d == 2:
        return quadosc(lambda r: sym(r) * besselj(0, r * x) * r, [0, inf],
                       zeros=lambda n: besseljzero(0, n) / x) / (2 * pi)
    if d == 3:
        return quadosc(lambda r: sym(r) * sin(r * x) * r, [0, inf],
                       omega=x) / (2 * pi ** 2 * x)
    raise ValueError(d)


_mark = len(OUT)
if not section_cached("D"):
    ah_cases = []
    for (alpha, d, t, x) in [
        (1.5, 1, 0.5, 0.0), (1.5, 1, 0.5, 0.5), (1.5, 1, 0.5, 2.0),
        (0.8, 1, 1.0, 0.7),
        (1.5, 2, 1.0, 0.6), (1.5, 3, 1.0, 0.6),
    ]:
        v = aheat_density(alpha, d, t, x)
        ah_cases.append((alpha, d, t, x, v))

    # structural check: alpha=2 reduces to the Gaussian with variance t
    check("aheat alpha=2 d=1 = gaussian", aheat_density(2.0, 1, 0.5, 0.3),
          exp(-mpf("0.09") / 1) / sqrt(2 * pi * mpf("0.5")), mpf("1e-15"))

    emit("struct AHeatDensityCase { double alpha; int d; double t, r, value; };")
    emit("inline constexpr AHeatDensityCase alpha_heat_density_cases[] = {")
    for (alpha, d, t, x, v) in ah_cases:
        emit("    {%s, %d, %s, %s, %s}," % (f17(alpha), d, f17(t), f17(x), f17(v)))
    emit("};")
    emit()
    section_done("D", _mark)

# ---------------------------------------------------------------------------
# Section E: interval-mass CDF tables for the small-ball ratio grids (d=1).
#   M(v) = (2/pi) Int_0^inf sym(r) sin(v r)/r dr  (unit-scale symbol)
#   ratio(s,u) = [M(c(s)(1+u)) + M(c(s)(1-u))]/2
# ---------------------------------------------------------------------------

note("E: small-ball ratio tables")

U_GRID = [mpf(2 * k - 1) / 15 for k in range(1, 9)]   # |y|/eps on linspace(-1,1,16)
S_GRID = [mpf(1), mpf(1) / 2, mpf(1) / 4]


def mass_cdf(sym, v):
    v = mpf(v)
    if v == 0:
        return mpf(0)
    return (2 / pi) * quadosc(lambda r: sym(r) * sin(v * r) / r, [0, inf], omega=v)


def ratio_table(sym, cscale_of_s):
    tab = []
    for s in S_GRID:
        c = cscale_of_s(s)
        for u in U_GRID:
            r = (mass_cdf(sym, c * (1 + u)) + mass_cdf(sym, c * (1 - u))) / 2
            tab.append((s, u, r))
    return tab


def heat2_mass_scaled(s, u):
    # P(|Z + (u/sqrt(s)) e1| <= 1/sqrt(s)), Z ~ N(0, I_2)
    R = 1 / sqrt(s); c = u / sqrt(s)
    return quad(lambda r: r * exp(-(r ** 2 + c ** 2) / 2) * besseli(0, r * c), [0, R])


_mark = len(OUT)
if not section_cached("E"):
    # machinery validation on the heat kernel, where the answer is erf:
    _heat_sym = lambda r: exp(-r ** 2)          # unit symbol exp(-r^2) -> sd sqrt(2) density
    check("cdf route on heat", mass_cdf(_heat_sym, 1.3), erf(mpf("1.3") / 2), mpf("1e-14"))

    # FracDiff case (c) alpha=1.5, beta=1.2: a = beta-1, b = alpha/beta,
    # scale c(s) = (2/s^beta)^(1/alpha); ratio = mass / t^a, independent of eps.
    fd_sb_sym = lambda r: ml(1.2, 1.2, -r ** mpf(1.5))
    fd_sb = ratio_table(fd_sb_sym, lambda s: (2 / s ** mpf(1.2)) ** (1 / mpf(1.5)))
    fd_sb_worst = min(r for (_, _, r) in fd_sb)
    note("   fracdiff(1.5,1.2) worst ratio = %s" % mp.nstr(fd_sb_worst, 12))

    # AlphaHeat alpha=1.5: a = 0, b = alpha, scale c(s) = (2/s)^(1/alpha).
    ah_sb_sym = lambda r: exp(-r ** mpf(1.5))
    ah_sb = ratio_table(ah_sb_sym, lambda s: (2 / s) ** (1 / mpf(1.5)))
    ah_sb_worst = min(r for (_, _, r) in ah_sb)
    note("   alpha-heat(1.5) worst ratio = %s" % mp.nstr(ah_sb_worst, 12))

    # Heat d=1 (a,b)=(0,2): closed form ratio = [erf((1+u)/sqrt(2s)) + erf((1-u)/sqrt(2s))]/2
    heat1_worst = min((erf((1 + u) / sqrt(2 * s)) + erf((1 - u) / sqrt(2 * s))) / 2
                      for s in S_GRID for u in U_GRID)
    note("   heat d=1 worst ratio = %s" % mp.nstr(heat1_worst, 12))

    # Heat d=2 (a,b)=(0,2): radial I0 formula, worst at |y|=eps (boundary ring), s=1.
    heat2_worst = min(heat2_mass_scaled(s, u) for s in S_GRID for u in (U_GRID + [mpf(1)]))
    note("   heat d=2 worst ratio = %s" % mp.nstr(heat2_worst, 12))

    emit("struct SmallBallRatioCase { double s, u, ratio; };")
    emit("// FracDiff d=1 alpha=3/2 beta=6/5, (a,b)=(beta-1, alpha/beta); ratio = mass/t^a,")
    emit("// exactly scale-invariant in eps, indexed by s = t/eps^b and u = |y-x|/eps.")
    emit("inline constexpr SmallBallRatioCase smallball_frac_15_12[] = {")
    for (s, u, r) in fd_sb:
        emit("    {%s, %s, %s}," % (f17(s), f17(u), f17(r)))
    emit("};")
    emit("inline constexpr SmallBallRatioCase smallball_alpha_heat_15[] = {")
    for (s, u, r) in ah_sb:
        emit("    {%s, %s, %s}," % (f17(s), f17(u), f17(r)))
    emit("};")
    emit("inline constexpr double smallball_worst_frac_15_12 = %s;" % f17(fd_sb_worst))
    emit("inline constexpr double smallball_worst_alpha_heat_15 = %s;" % f17(ah_sb_worst))
    emit("inline constexpr double smallball_worst_heat1 = %s;" % f17(heat1_worst))
    emit("inline constexpr double smallball_worst_heat2 = %s;" % f17(heat2_worst))
    emit("// frozen pass thresholds: 95% of the oracle worst ratio")
    emit("inline constexpr double smallball_threshold_frac_15_12 = %s;" % f17(fd_sb_worst * mpf("0.95")))
    emit("inline constexpr double smallball_threshold_alpha_heat_15 = %s;" % f17(ah_sb_worst * mpf("0.95")))
    emit("inline constexpr double smallball_threshold_heat1 = %s;" % f17(heat1_worst * mpf("0.95")))
    emit("inline constexpr double smallball_threshold_heat2 = %s;" % f17(heat2_worst * mpf("0.95")))
    emit()
    section_done("E", _mark)

# ---------------------------------------------------------------------------
# Section F: wave d=2 disk masses (Cartesian route with analytic inner integral)
#   m = (1/2pi) Int 2 asin(min(h/A,1)) dw1,  h = sqrt(eps^2-(w1-delta)^2),
#   A = sqrt(t^2-w1^2), over w1 in [delta-eps, delta+eps] cap (-t,t)
# ---------------------------------------------------------------------------

note("F: wave d=2 disk masses")


def wave2_mass(t, delta, eps):
    t = mpf(t); delta = mpf(delta); eps = mpf(eps)
    lo = max(delta - eps, -t)
    hi = min(delta + eps, t)
    if lo >= hi:
        return mpf(0)

    def f(w1):
        h2 = eps ** 2 - (w1 - delta) ** 2
        if h2 <= 0:
            return mpf(0)
        A2 = t ** 2 - w1 ** 2
        if A2 <= 0:
            return mpf(0)
        q = sqrt(h2 / A2)
        return 2 * asin(q if q < 1 else mpf(1))

    return quad(f, [lo, delta, hi]) / (2 * pi)


_mark = len(OUT)
if not section_cached("F"):
    w2_cases = []
    for (t, delta, eps) in [(1.0, 0.3, 0.2), (1.0, 0.95, 0.3), (0.5, 0.0, 0.49), (0.5, 0.2, 0.35)]:
        v = wave2_mass(t, delta, eps)
        w2_cases.append((t, delta, eps, v))
        note("   wave2 mass(t=%g delta=%g eps=%g) = %s" % (t, delta, eps, mp.nstr(v, 12)))

    emit("struct BallMassCase { double t, delta, eps, value; };")
    emit("inline constexpr BallMassCase wave2_ball_mass_cases[] = {")
    for (t, delta, eps, v) in w2_cases:
        emit("    {%s, %s, %s, %s}," % (f17(t), f17(delta), f17(eps), f17(v)))
    emit("};")

    # heat d=2 disk masses by the I0 radial formula (independent of the angular route)
    h2_cases = []
    for (t, delta, eps) in [(0.25, 0.3, 0.2), (0.04, 0.15, 0.2)]:
        v = quad(lambda r: r / mpf(t) * exp(-(r ** 2 + mpf(delta) ** 2) / (2 * mpf(t)))
                 * besseli(0, r * mpf(delta) / mpf(t)), [0, mpf(eps)])
        h2_cases.append((t, delta, eps, v))
    emit("inline constexpr BallMassCase heat2_ball_mass_cases[] = {")
    for (t, delta, eps, v) in h2_cases:
        emit("    {%s, %s, %s, %s}," % (f17(t), f17(delta), f17(eps), f17(v)))
    emit("};")
    emit()
    section_done("F", _mark)

# ---------------------------------------------------------------------------
# Section G: second-moment chaos term n=1 for heat + Riesz/power noise (d=1):
#   V = (Gamma(l/2) 2^{l/2} / 2pi) * (2/(2-l)) * Int_0^t w^-g [(2t-w)^{1-l/2} - w^{1-l/2}] dw
# ---------------------------------------------------------------------------

note("G: colored-noise n=1 second-moment values")


def phi1_riesz_heat(g, l, t):
    g = mpf(g); l = mpf(l); t = mpf(t)
    I = quad(lambda w: w ** (-g) * ((2 * t - w) ** (1 - l / 2) - w ** (1 - l / 2)),
             [0, t / 2, t])
    return gamma(l / 2) * 2 ** (l / 2) / (2 * pi) * 2 / (2 - l) * I


_mark = len(OUT)
if not section_cached("G"):
    p1_cases = []
    for (g, l, t) in [(0.25, 0.5, 1.0), (0.75, 0.5, 0.5), (0.5, 0.9, 1.0)]:
        v = phi1_riesz_heat(g, l, t)
        p1_cases.append((g, l, t, v))
        note("   phi1(gamma=%g lambda=%g t=%g) = %s" % (g, l, t, mp.nstr(v, 12)))

    emit("struct Phi1RieszCase { double gamma, lambda, t, value; };")
    emit("inline constexpr Phi1RieszCase phi1_riesz_heat_cases[] = {")
    for (g, l, t, v) in p1_cases:
        emit("    {%s, %s, %s, %s}," % (f17(g), f17(l), f17(t), f17(v)))
    emit("};")
    emit()
    section_done("G", _mark)

# ---------------------------------------------------------------------------
# Section H: HLS spectral-mass spot values
# ---------------------------------------------------------------------------

note("H: HLS spectral-mass spots")


# fracdiff alpha=1.5 beta=0.8 lambda=0.5:
#   F(t) = 2 t^{2beta-2} Int_0^inf E(-t^beta x^1.5 / 2)^2 x^{-1/2} dx
def hls_fd(alpha, beta, lam, t):
    t = mpf(t)
    xc = (2 * 60 ** beta / t ** beta) ** (1 / mpf(alpha))
    return 2 * t ** (2 * beta - 2) * quad(
        lambda x: ml(beta, beta, -t ** beta * x ** alpha / 2) ** 2 * x ** (lam - 1),
        [0, xc / 100, xc, xc * 100, inf])


_mark = len(OUT)
if not section_cached("H"):
    # wave d=1: Int_R sin(t xi)^2 |xi|^{lambda-3} dxi; closed form via
    # Int_0^inf (1-cos(a x)) x^{s-1} dx = -Gamma(s) cos(pi s/2) a^{-s}, s=lambda-2
    lam = mpf("0.5"); tw = mpf(1)
    wave1_closed = -gamma(lam - 2) * cos(pi * (lam - 2) / 2) * (2 * tw) ** (2 - lam)
    # quadrature route: sin^2 is nonnegative (useless to quadosc as-is), so split
    # off the monotone mean part analytically and leave a sign-alternating cosine
    # tail: Int_c^inf sin(t x)^2 x^{lam-3} dx
    #     = c^{lam-2}/(2(2-lam)) - (1/2) Int_c^inf cos(2 t x) x^{lam-3} dx
    _w1c = mpf(1)
    _w1f = lambda x: sin(tw * x) ** 2 * x ** (lam - 3)
    wave1_quad = 2 * (quad(_w1f, [0, _w1c])
                      + _w1c ** (lam - 2) / (2 * (2 - lam))
                      - quadosc(lambda x: cos(2 * tw * x) * x ** (lam - 3),
                                [_w1c, inf], omega=2 * tw) / 2)
    check("wave1 hls closed form vs quadosc", wave1_quad, wave1_closed, mpf("1e-12"))
    emit("// Int_R (sin(t xi)/xi)^2 |xi|^{lambda-1} dxi at lambda=1/2, t=1")
    emit("inline constexpr double hls_wave1_lambda05_t1 = %s;" % f17(wave1_closed))

    fdh_cases = []
    for t in (0.01, 0.1):
        v = hls_fd(1.5, 0.8, mpf("0.5"), t)
        fdh_cases.append((1.5, 0.8, 0.5, t, v))
        note("   hls_fd(t=%g) = %s" % (t, mp.nstr(v, 12)))
    # scaling sanity: F(t) ~ t^{2(beta-1)-beta*lambda/alpha}
    hbar = 2 * (mpf("0.8") - 1) - mpf("0.8") * mpf("0.5") / mpf("1.5")
    check("hls_fd scaling exponent", fdh_cases[1][4] / fdh_cases[0][4],
          mpf(10) ** hbar, mpf("1e-8"))

    emit("struct HlsFdCase { double alpha, beta, lambda, t, value; };")
    emit("inline constexpr HlsFdCase hls_fracdiff_cases[] = {")
    for (a, b, l, t, v) in fdh_cases:
        emit("    {%s, %s, %s, %s, %s}," % (f17(a), f17(b), f17(l), f17(t), f17(v)))
    emit("};")
    emit()
    section_done("H", _mark)

# ---------------------------------------------------------------------------
# Section I: white-white second moment at t=1/4 (exact series) and N=4 truncation
#   E[I_n^2](t) = (t/4)^{n/2} / Gamma(n/2+1);  sum_n = exp(x^2)(1+erf(x)), x = sqrt(t)/2
# ---------------------------------------------------------------------------

note("I: white-white moment series")
_mark = len(OUT)
if not section_cached("I"):
    with mp.workdps(40):
        tq = mpf(1) / 4
        x = sqrt(tq) / 2
        u2_exact = exp(x ** 2) * (1 + erf(x))
        u2_trunc4 = sum((tq / 4) ** (mpf(n) / 2) * rgamma(mpf(n) / 2 + 1) for n in range(0, 5))
        check("u2 series identity", sum((tq / 4) ** (mpf(n) / 2) * rgamma(mpf(n) / 2 + 1)
                                        for n in range(0, 200)), u2_exact, mpf("1e-25"))
        # independent confirmation of the n=2 term by direct simplex quadrature:
        # Int_{0<s1<s2<t} (4 pi (s2-s1))^{-1/2} (4 pi (t-s2))^{-1/2} ds = t/4
        n2_direct = quad(lambda s2: quad(lambda s1: (4 * pi * (s2 - s1)) ** mpf("-0.5"), [0, s2])
                         * (4 * pi * (tq - s2)) ** mpf("-0.5"), [0, tq])
        check("n=2 chaos term by direct quadrature", n2_direct, tq / 4, mpf("1e-10"))

    emit("inline constexpr double white_white_u2_exact_t025 = %s;" % f17(u2_exact))
    emit("inline constexpr double white_white_u2_trunc4_t025 = %s;" % f17(u2_trunc4))
    emit()
    section_done("I", _mark)

# ---------------------------------------------------------------------------
# Section J: subordination identities (constants verified, then frozen)
# ---------------------------------------------------------------------------

note("J: subordination identities")


# case (c): d=1, alpha in [beta,2]:
#   G_t(x) = beta t^{beta-1} Int (s/t)^{b/a} N_a(|x|(s/t)^{b/a}) Hs(s^{-beta}) ds/s
#   Hs(z)  = sum_l (-1)^l z^{(1+l)/alpha} / (alpha l! Gamma(beta - beta(1+l)/alpha))
def neutral_density(alpha, x):
    x = abs(mpf(x))
    c = cos(pi * alpha / 2); s = sin(pi * alpha / 2)
    return x ** (alpha - 1) * s / (pi * (1 + 2 * x ** alpha * c + x ** (2 * alpha)))


def h_series(alpha, beta, z):
    z = mpf(z)
    if z <= 0:
        return mpf(0)
    est = 0.41 * float(z) ** (1.0 / (float(alpha) - float(beta))) if alpha > beta else 0
    digits = max(5, int(0.2 * est / math.log(10)) + 10)
    with mp.workdps(mp.dps + digits + 15):
        ssum = mpf(0); tmax = mpf(0); fact = mpf(1)
        streak = 0
        for l in range(0, 100000):
            if l > 0:
                fact *= l
            term = (-1) ** l * z ** (mpf(1 + l) / alpha) / (alpha * fact) \
                * rgamma(beta - beta * mpf(1 + l) / alpha)
            ssum += term
            tmax = max(tmax, abs(term))
            if l > 10 and abs(term) < tmax * mpf(10) ** (-(mp.dps - 5)):
                streak += 1
                if streak >= 4:
                    break
            else:
                streak = 0
        return +ssum


def fd_density_subord_c(alpha, beta, t, x):
    # the direct route uses the symbol t^{b-1} E_{b,b}(-t^b r^a / 2); the
    # subordination identity is stated for the symbol without the 1/2, so
    # rescale: G_half(t,x) = 2^{1/a} G_plain(t, 2^{1/a} x)  (d = 1)
    alpha = mpf(alpha); beta = mpf(beta); t = mpf(t); x = mpf(x)
    cc = mpf(2) ** (1 / alpha)

    def f(s):
        w = (s / t) ** (beta / alpha)
        return w * neutral_density(alpha, cc * x * w) * h_series(alpha, beta, s ** (-beta)) / s

    return cc * beta * t ** (beta - 1) * quad(f, [0.2, 0.5, 1, 3, 10, 50, 300, 3000])


# case (b) d=2 shape (Wright route, constant unknown -> emit measured ratio):
#   Gamma_{b,2}(t,x) ~ C t^{-1} Int_1^inf phi(-b/2, 0, -|x| t^{-b/2} tau) (tau^2-1)^{-1/2} dtau
# phi(-b/2, 0, -.) goes through the cancellation-free stable-density route; the
# direct series would need ~|z|^{1/(1-b/2)} terms.
def fd_density_caseb2(beta, t, x):
    # alpha = 2 here; the sqrt(2) converts to the ...r^2/2 symbol convention
    t = mpf(t); x = mpf(x)
    arg = x * sqrt(2) * t ** (-mpf(beta) / 2)

    def f(tau):
        return wright_mu0_hybrid(mpf(beta) / 2, arg * tau) / sqrt(tau ** 2 - 1)

    # wright_mu0(nu, z) ~ exp(-c z^{1/(1-nu)}) is below 1e-24 past z = 4.8
    # (asserted once); cutting tau there keeps every evaluation on the fast
    # series arm and discards less than 1e-23 of the integral.
    tau_max = mpf("4.8") / arg
    assert wright_mu0_neg(mpf(beta) / 2, mpf("4.8")) < mpf("1e-20")
    nodes = [n for n in (1, 1.5, 3, 10, 60) if n < tau_max] + [tau_max]
    return quad(f, nodes) / t


_mark = len(OUT)
if not section_cached("J"):
    # case (a): t^{b-1} E_{b,b}(-la t^b) = Int_0^inf e^{-la u} u^{-1/b} g_b(t u^{-1/b}) du
    bb = mpf("0.8"); la = mpf("1.3"); ts = mpf("0.7")

    # the hybrid stable evaluator carries the whole J section; cross-check its
    # two arms against the pure Zolotarev route before using it inside quadratures
    for xx in ("0.18", "0.3", "0.9", "6"):
        check("stable hybrid vs zolotarev at x=%s" % xx,
              stable_hybrid(bb, mpf(xx)), stable_oneside_zolotarev(bb, mpf(xx)), mpf("1e-15"))
    for zz in ("0.7", "2.5", "4.5"):
        check("wright_mu0 hybrid vs zolotarev at z=%s" % zz,
              wright_mu0_hybrid(mpf("0.75"), mpf(zz)), wright_mu0_neg(mpf("0.75"), mpf(zz)),
              mpf("1e-15"))

    lhs = ts ** (bb - 1) * ml_series(bb, bb, -la * ts ** bb)

    def case_a_weight(u):
        return exp(-la * u) * u ** (-1 / bb) * stable_hybrid(bb, ts * u ** (-1 / bb))

    # past u = 3 the density argument x = t u^{-1/b} drops below 0.178, where
    # g_b(x) ~ exp(-c x^{-b/(1-b)}) is under 1e-25; the discarded tail is then
    # bounded by g_b(x(3)) Int_3^inf e^{-la u} u^{-1/b} du << the 1e-8 check
    assert stable_oneside_zolotarev(bb, ts * mpf(3) ** (-1 / bb)) < mpf("1e-25")
    rhs = quad(case_a_weight, [mpf("1e-12"), 0.05, 0.3, 1, 3])
    check("case-a subordination constant = 1", rhs, lhs, mpf("1e-8"))
    emit("// t^{b-1} E_{b,b}(-la t^b) = Int e^{-la u} u^{-1/b} g_b(t u^{-1/b}) du, b in (0,1)")
    emit("inline constexpr double subordination_case_a_constant = 1.0;  // verified numerically")

    c_ratios = []
    for xx in (0.5, 1.5):
        direct = fd_density(1.5, 1.2, 1, 0.5, xx)
        sub = fd_density_subord_c(1.5, 1.2, 0.5, xx)
        c_ratios.append(sub / direct)
        note("   case-c ratio at x=%g: %s" % (xx, mp.nstr(sub / direct, 12)))
    check("case-c subordination constant = 1 (x=0.5)", c_ratios[0], 1, mpf("1e-6"))
    check("case-c subordination constant = 1 (x=1.5)", c_ratios[1], 1, mpf("1e-6"))
    emit("// 2^{1/a} b t^{b-1} Int (s/t)^{b/a} N_a(2^{1/a} |x| (s/t)^{b/a}) Hs(s^{-b}) ds/s")
    emit("// reproduces the d=1 density of the t^{b-1} E_{b,b}(-t^b r^a / 2) symbol;")
    emit("// Hs is the residue series of the subordination kernel. Verified = 1.")
    emit("inline constexpr double subordination_case_c_constant = 1.0;")
    emit()

    b2_ratios = []
    for xx in (0.4, 0.9, 1.4):
        direct = fd_density(2.0, 1.5, 2, 0.5, xx)
        shape = fd_density_caseb2(1.5, 0.5, xx)
        b2_ratios.append(shape / direct)
        note("   case-b d=2 shape/direct at x=%g: %s" % (xx, mp.nstr(shape / direct, 10)))
    b2_c = b2_ratios[1]
    check("case-b d=2 constant ratio (x=0.4 vs x=0.9)", b2_ratios[0], b2_c, mpf("1e-6"))
    check("case-b d=2 constant ratio (x=1.4 vs x=0.9)", b2_ratios[2], b2_c, mpf("1e-6"))
    emit("// wave-style Wright representation for alpha=2, d=2 matches the Fourier route")
    emit("// up to one constant (measured here); frozen for the dual-route shape test")
    emit("inline constexpr double subordination_case_b2_constant = %s;" % f17(1 / b2_c))
    emit()
    section_done("J", _mark)

emit("}  // namespace expected")

# ---------------------------------------------------------------------------

with open("/root/proj/tests/expected_values.hpp", "w") as fh:
    fh.write("\n".join(OUT) + "\n")
note("wrote tests/expected_values.hpp (%d lines)" % len(OUT))
