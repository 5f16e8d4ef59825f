"""Collapse-driven diffusion observables and their standard-QM baselines.

Everything here is a closed form in the constants and the collapse
parameters: undamped collapse noise gives rms displacement growing as
t^{3/2}; with gas damping the long- and short-time asymptotics pick up the
drag coefficient; the center-of-mass wavepacket has an equilibrium width
where collapse narrowing balances free spreading.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field

from .brownian import DragCoefficient
from .core import CONSTANTS, Body, CslParams, Disc, Environment, Sphere
from .errors import ValidationError, ValidityWarning
from .factors import f_sphere

__all__ = [
    "DiffusionCurve",
    "WavepacketEquilibrium",
    "csl_rms_translation",
    "csl_rms_rotation",
    "time_to_rotation",
    "combined_rms",
    "qm_baseline_translation",
    "qm_baseline_rotation",
    "equilibrium_width",
    "equilibrium_series_rms",
    "energy_gain_rates",
    "diffusion_curve",
    "curve_to_csv",
    "vacuum_diffusion_table",
    "equilibrium_table",
    "TABLE_RADII",
    "TABLE_TIMES",
]


@dataclass(frozen=True)
class WavepacketEquilibrium:
    """Equilibrium center-of-mass packet width s_inf (cm) and the
    characteristic relaxation time tau_s (s)."""

    s_inf: float
    tau_s: float

    def __post_init__(self):
        if not (self.s_inf > 0 and self.tau_s > 0):
            raise ValidationError("s_inf and tau_s must be positive")


@dataclass(frozen=True)
class DiffusionCurve:
    """Sampled rms-vs-time series with mechanism/mode tags.

    Every implemented mechanism has a monotone closed form, so rms must be
    nonnegative and nondecreasing along increasing time.
    """

    mechanism: str                 # csl | brownian | combined | qm-baseline
    mode: str                      # translation | rotation
    samples: tuple                 # ((t, rms), ...)
    params_used: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(s[1] < 0 for s in self.samples):
            raise ValidationError("rms values must be nonnegative")
        ordered = sorted(self.samples)
        if any(b[1] < a[1] * (1.0 - 1e-12) for a, b in zip(ordered, ordered[1:])):
            raise ValidationError("rms must be nondecreasing in time")


def csl_rms_translation(csl: CslParams, f: float, t: float,
                        initial_term: float = 0.0, constants=CONSTANTS) -> float:
    """rms distance along one axis from collapse noise alone.

    sqrt(initial_term + lam hbar^2 f t^3 / (6 m^2 a^2)); independent of the
    body's mass and density (geometry enters only through f).
    `initial_term` is the caller's <(Q + P t / M)^2>(0) contribution in cm^2.
    """
    if t < 0 or initial_term < 0:
        raise ValidationError("t and initial_term must be nonnegative")
    if not 0.0 <= f <= 1.0:
        raise ValidationError("translation factor f must lie in [0, 1]")
    m = constants.m_nucleon
    growth = csl.lam * constants.hbar ** 2 * f * t ** 3 / (6.0 * m ** 2 * csl.a ** 2)
    return math.sqrt(initial_term + growth)


def csl_rms_rotation(csl: CslParams, f_rot: float, t: float,
                     initial_term: float = 0.0, constants=CONSTANTS) -> float:
    """rms rotation angle from collapse noise alone (rad).

    sqrt(initial_term + lam (hbar / m a^2)^2 f_rot t^3 / 12).
    """
    if t < 0 or initial_term < 0:
        raise ValidationError("t and initial_term must be nonnegative")
    if f_rot < 0:
        raise ValidationError("rotation factor must be nonnegative")
    scale = constants.hbar / (constants.m_nucleon * csl.a ** 2)
    growth = csl.lam * scale ** 2 * f_rot * t ** 3 / 12.0
    return math.sqrt(initial_term + growth)


def time_to_rotation(csl: CslParams, f_rot: float, target_angle: float,
                     constants=CONSTANTS) -> float:
    """Time for the collapse-driven rms rotation to reach a target angle."""
    if not (target_angle > 0 and f_rot > 0):
        raise ValidationError("target angle and f_rot must be positive")
    scale = constants.hbar / (constants.m_nucleon * csl.a ** 2)
    t_cubed = 12.0 * target_angle ** 2 / (csl.lam * scale ** 2 * f_rot)
    return t_cubed ** (1.0 / 3.0)


def combined_rms(xi: float | DragCoefficient, body: Body, env: Environment,
                 csl: CslParams | None, f: float, t: float,
                 regime: str = "auto", constants=CONSTANTS) -> float:
    """rms displacement with both thermal-gas and collapse noise (one axis).

    Long-time (t >> M/xi): sqrt([2kT/xi + (M/xi)^2 lam hbar^2 f/(2 m^2 a^2)] t).
    Short-time (t << M/xi): sqrt([2kT xi/(3M^2) + lam hbar^2 f/(6 m^2 a^2)] t^3).
    regime 'auto' picks a side and refuses the crossover decade
    [0.1 M/xi, 10 M/xi], where neither asymptote holds (the exact damped
    moments are available through fp_moments for that window).
    csl=None drops the collapse term entirely (the lam -> 0 limit).
    """
    xi = float(xi)
    if xi < 0:
        raise ValidationError("xi must be nonnegative")
    if t < 0:
        raise ValidationError("t must be nonnegative")
    M = body.mass()
    kT = constants.k_boltzmann * env.temperature
    if csl is None:
        csl_vel_rate = 0.0
    else:
        if not 0.0 <= f <= 1.0:
            raise ValidationError("translation factor f must lie in [0, 1]")
        m = constants.m_nucleon
        csl_vel_rate = csl.lam * constants.hbar ** 2 * f / (2.0 * m ** 2 * csl.a ** 2)

    if regime == "auto":
        if xi == 0:
            regime = "short"
        else:
            tau = M / xi
            if 0.1 * tau <= t <= 10.0 * tau:
                long_val = math.sqrt((2.0 * kT / xi + (M / xi) ** 2 * csl_vel_rate) * t)
                short_val = math.sqrt((2.0 * kT * xi / (3.0 * M ** 2)
                                       + csl_vel_rate / 3.0) * t ** 3)
                raise ValidationError(
                    f"t = {t:.3g} s is inside the crossover decade around "
                    f"tau = {tau:.3g} s where neither asymptote applies "
                    f"(long-time form gives {long_val:.3g} cm, short-time "
                    f"form {short_val:.3g} cm; use fp_moments for the exact "
                    "damped solution)")
            regime = "long" if t > tau else "short"

    if regime == "long":
        if xi == 0:
            raise ValidationError("long-time regime needs xi > 0")
        return math.sqrt((2.0 * kT / xi + (M / xi) ** 2 * csl_vel_rate) * t)
    if regime == "short":
        return math.sqrt((2.0 * kT * xi / (3.0 * M ** 2) + csl_vel_rate / 3.0) * t ** 3)
    raise ValidationError(f"unknown regime {regime!r}")


def qm_baseline_translation(body: Body, t: float, constants=CONSTANTS) -> float:
    """Drift of an initially localized, unobserved sphere in standard QM.

    The sphere is taken localized to about its diameter at t=0, giving a
    momentum scale hbar/(4R); the baseline displacement is hbar t / (4 R M).
    """
    if not isinstance(body, Sphere):
        raise ValidationError("the translation baseline is defined for a sphere")
    if t < 0:
        raise ValidationError("t must be nonnegative")
    return constants.hbar * t / (body.mass() * 4.0 * body.radius)


def qm_baseline_rotation(body: Body, t: float, constants=CONSTANTS) -> float:
    """Drift angle of an initially orientation-localized disc in standard QM.

    Localization to about pi/4 gives angular momentum 2 hbar / pi; with the
    thin-disc inertia the drift is 8 hbar t / (pi^2 D b L^4).
    """
    if not isinstance(body, Disc):
        raise ValidationError("the rotation baseline is defined for a disc")
    if t < 0:
        raise ValidationError("t must be nonnegative")
    return 8.0 * constants.hbar * t / (
        math.pi ** 2 * body.density * body.thickness * body.radius ** 4)


def equilibrium_width(csl: CslParams, body: Body, f: float | None = None,
                      constants=CONSTANTS) -> WavepacketEquilibrium:
    """Equilibrium packet width and relaxation time.

    s_inf^2 = (a/N) sqrt(hbar / (2 M lam f)); tau_s = N m s_inf^2 / hbar.
    For a sphere f defaults to the computed geometry factor; a disc needs a
    caller-supplied f.  Flags (warnings, not rejections): fewer than 3e7
    nucleons, or s_inf not small against a, put the result outside the
    narrow-packet derivation's validity.
    """
    if f is None:
        if not isinstance(body, Sphere):
            raise ValidationError("supply f explicitly for non-spherical bodies")
        f = f_sphere(body.radius / csl.a).value
    if not f > 0:
        raise ValidationError("f must be positive")
    M = body.mass()
    N = body.nucleon_count()
    s_sq = (csl.a / N) * math.sqrt(constants.hbar / (2.0 * M * csl.lam * f))
    tau_s = M * s_sq / constants.hbar
    if N < 3.0e7:
        warnings.warn(
            f"N = {N:.3g} nucleons is below the ~3e7 needed for the "
            "narrow-packet equilibrium to be self-consistent",
            ValidityWarning, stacklevel=2)
    if math.sqrt(s_sq) >= csl.a / 3.0:
        warnings.warn(
            f"s_inf = {math.sqrt(s_sq):.3g} cm is not small against "
            f"a = {csl.a:.3g} cm; equilibrium result outside its validity",
            ValidityWarning, stacklevel=2)
    return WavepacketEquilibrium(s_inf=math.sqrt(s_sq), tau_s=tau_s)


def equilibrium_series_rms(eq: WavepacketEquilibrium, t: float) -> float:
    """rms position spread after reaching packet equilibrium at t = 0:

    s_inf sqrt(1 + t/tau + t^2/(2 tau^2) + t^3/(12 tau^3)).  The cubic term
    carries the same coefficient as csl_rms_translation, which it must:
    s_inf^2 / (12 tau_s^3) = lam hbar^2 f / (6 m^2 a^2).
    """
    if t < 0:
        raise ValidationError("t must be nonnegative")
    x = t / eq.tau_s
    return eq.s_inf * math.sqrt(1.0 + x + x * x / 2.0 + x ** 3 / 12.0)


def energy_gain_rates(csl: CslParams, body: Body, f: float,
                      constants=CONSTANTS) -> dict:
    """Collapse heating rates in erg/s.

    total: 3 lam hbar^2 N^2 / (4 M a^2) over all internal + CM motion;
    cm_part: the same times f, the share that shows up as center-of-mass
    kinetic energy (all of it when the body is small against a).
    """
    if not 0.0 <= f <= 1.0:
        raise ValidationError("f must lie in [0, 1]")
    N = body.nucleon_count()
    M = body.mass()
    total = 3.0 * csl.lam * constants.hbar ** 2 * N ** 2 / (4.0 * M * csl.a ** 2)
    return {"total": total, "cm_part": total * f}


# ---------------------------------------------------------------------------
# curves and reference tables

def diffusion_curve(mechanism: str, mode: str, times, *, csl=None, f=None,
                    body=None, env=None, xi=None, regime="auto",
                    constants=CONSTANTS) -> DiffusionCurve:
    """Evaluate one rms-vs-time curve for the requested mechanism/mode."""
    times = [float(t) for t in times]
    if any(t < 0 for t in times):
        raise ValidationError("times must be nonnegative")
    samples = []
    for t in times:
        if mechanism == "csl" and mode == "translation":
            rms = csl_rms_translation(csl, f, t, constants=constants)
        elif mechanism == "csl" and mode == "rotation":
            rms = csl_rms_rotation(csl, f, t, constants=constants)
        elif mechanism == "qm-baseline" and mode == "translation":
            rms = qm_baseline_translation(body, t, constants=constants)
        elif mechanism == "qm-baseline" and mode == "rotation":
            rms = qm_baseline_rotation(body, t, constants=constants)
        elif mechanism in ("brownian", "combined") and mode == "translation":
            rms = combined_rms(xi, body, env, csl if mechanism == "combined" else None,
                               f if f is not None else 0.0, t, regime=regime,
                               constants=constants)
        else:
            raise ValidationError(
                f"unsupported mechanism/mode pair {mechanism!r}/{mode!r}")
        samples.append((t, rms))
    params = {"mechanism": mechanism, "mode": mode}
    if csl is not None:
        params.update(lam=csl.lam, a=csl.a)
    if f is not None:
        params["f"] = f
    if body is not None:
        params["body"] = {
            "shape": "sphere" if isinstance(body, Sphere) else "disc",
            "radius_cm": body.radius, "density_g_cc": body.density,
            **({"thickness_cm": body.thickness} if isinstance(body, Disc) else {}),
        }
    if env is not None:
        params["environment"] = {"temperature_K": env.temperature,
                                 "pressure_dyn_cm2": env.pressure,
                                 "gas_mass_g": env.gas_molecular_mass}
    if xi is not None:
        params["xi_g_per_s"] = float(xi)
    return DiffusionCurve(mechanism=mechanism, mode=mode,
                          samples=tuple(samples), params_used=params)


def curve_to_csv(curve: DiffusionCurve, path=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["t_s", "rms", "mechanism", "mode"])
    for t, rms in curve.samples:
        writer.writerow([f"{t:.6g}", f"{rms:.6g}", curve.mechanism, curve.mode])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


TABLE_RADII = (1.0e-6, 1.0e-5, 1.0e-4, 1.0e-2, 1.0)
TABLE_TIMES = (10.0, 1.0e3, 1.0e5)


def vacuum_diffusion_table(csl: CslParams | None = None,
                           radii=TABLE_RADII, times=TABLE_TIMES,
                           constants=CONSTANTS) -> list[dict]:
    """Collapse-only rms displacement for a grid of sphere radii and times."""
    csl = csl or CslParams.grw()
    rows = []
    for R in radii:
        f = f_sphere(R / csl.a).value
        row = {"R_cm": R, "f": f}
        for t in times:
            row[f"dq_cm_t{t:g}"] = csl_rms_translation(csl, f, t, constants=constants)
        rows.append(row)
    return rows


def equilibrium_table(csl: CslParams | None = None, radii=TABLE_RADII,
                      density: float = 1.0, constants=CONSTANTS) -> list[dict]:
    """Equilibrium packet width and relaxation time for a grid of radii."""
    csl = csl or CslParams.grw()
    rows = []
    for R in radii:
        body = Sphere(radius=R, density=density)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            eq = equilibrium_width(csl, body, constants=constants)
        rows.append({"R_cm": R, "s_inf_cm": eq.s_inf, "tau_s_s": eq.tau_s})
    return rows
