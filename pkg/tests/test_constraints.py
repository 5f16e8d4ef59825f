import math

import numpy as np
import pytest

from cslwalk import (CslParams, ValidationError, csl_rms_rotation,
                     evaluate_constraints, fig2_dataset, fu_radiation_rate,
                     ge_detector_rate, ge_radiation_threshold,
                     lambda_gravitational, thermal_relation)
from cslwalk.constraints import (CONSTRAINT_LINES, DEFAULT_MAP_IDS,
                                 boundary_polylines, map_to_csv,
                                 thermal_bath_energies)

GRW_LAMBDA_INV = 1e16
GRW_A = 1e-5


def test_canonical_point_pattern():
    res = evaluate_constraints(GRW_LAMBDA_INV, GRW_A)
    assert res["ge-radiation"] is True        # 1e6 > 0.4
    assert res["perception-time"] is True     # 1e16 < 4e19
    assert res["small-displacement"] is True  # 1e6 < 1.6e10
    assert res["rot-null"] is False           # 1e-4 < 1e2
    assert res["trans-null"] is False         # 1e6 < 1e12


def test_rot_null_would_exclude_canonical_values():
    # a null rotation experiment 1e3 times more sensitive than the canonical
    # prediction demands lambda_inv a^4 > 1e2; the canonical point gives 1e-4
    assert GRW_LAMBDA_INV * GRW_A ** 4 == pytest.approx(1e-4)
    assert not CONSTRAINT_LINES["rot-null"].satisfied(GRW_LAMBDA_INV, GRW_A)


def test_trans_null_conflicts_with_small_displacement():
    # lambda_inv a^2 > 1e12 and < 1.6e10 cannot both hold anywhere
    rng = np.random.default_rng(0)
    for _ in range(200):
        li = 10 ** rng.uniform(0, 25)
        a = 10 ** rng.uniform(-8, 0)
        res = evaluate_constraints(li, a, which=("trans-null", "small-displacement"))
        assert not (res["trans-null"] and res["small-displacement"])


def test_unknown_constraint_rejected():
    with pytest.raises(ValidationError):
        evaluate_constraints(1e16, 1e-5, which=("no-such-bound",))
    with pytest.raises(ValidationError):
        evaluate_constraints(-1.0, 1e-5)


def test_monotone_in_lambda_inv():
    # each one-sided bound flips exactly once along lambda_inv
    a = 1e-4
    for cid, line in CONSTRAINT_LINES.items():
        vals = [line.satisfied(10.0 ** e, a) for e in np.linspace(-5, 30, 141)]
        flips = sum(1 for u, v in zip(vals, vals[1:]) if u != v)
        assert flips == 1, cid


def test_boundary_slopes():
    # boundaries are straight lines in log-log with slope -(a exponent)
    for cid, line in CONSTRAINT_LINES.items():
        y1 = line.boundary_log10_lambda_inv(-6.0)
        y2 = line.boundary_log10_lambda_inv(-4.0)
        slope = (y2 - y1) / 2.0
        assert slope == pytest.approx(-line.a_power, abs=1e-12)


# ---------------------------------------------------------------------------
# gravitational effective rate

def test_lambda_gravitational_value():
    lam_g = lambda_gravitational(1e-5)
    assert lam_g == pytest.approx(2e-23, rel=0.2)
    # scales as 1/a
    assert lambda_gravitational(2e-5) == pytest.approx(lam_g / 2, rel=1e-12)


def test_lambda_gravitational_extended_modes():
    lam_g = lambda_gravitational(1e-5)
    assert lambda_gravitational(1e-5, "sphere", size=1e-4) == pytest.approx(
        lam_g * 1e-3, rel=1e-12)
    assert lambda_gravitational(1e-5, "disc", size=1e-4) == pytest.approx(
        lam_g * 1e-5, rel=1e-12)
    with pytest.raises(ValidationError):
        lambda_gravitational(1e-5, "sphere")


def test_gravitational_rotation_prediction():
    # with lam ~ 2e-23 and f_rot ~ 1, the drift is ~1e-5 t^{3/2} rad:
    # (1.4, 11.2) rad at (45 min, 3 h)
    grav = CslParams(lam=2e-23, a=1e-5)
    assert csl_rms_rotation(grav, 1.0, 2700.0) == pytest.approx(1.4, rel=0.25)
    assert csl_rms_rotation(grav, 1.0, 10800.0) == pytest.approx(11.2, rel=0.25)
    # it also violates the perception-time bound
    assert not evaluate_constraints(1 / grav.lam, grav.a)["perception-time"]


# ---------------------------------------------------------------------------
# thermal-bath relation

def test_thermal_relation_line():
    rel = thermal_relation(1e3)
    assert rel.lambda_inv(1e-5) == pytest.approx(1e16, rel=1e-12)
    floor = thermal_relation(1.0)
    assert floor.lambda_inv(1e-5) == pytest.approx(1e13, rel=1e-12)
    with pytest.raises(ValidationError):
        thermal_relation(0.5)


def test_thermal_bath_energies():
    e = thermal_bath_energies()
    assert e["kT_eV"] == pytest.approx(2.5e-4, rel=0.1)
    assert e["collapse_scale_eV"] == pytest.approx(4e-9, rel=0.1)
    assert e["implied_gamma"] == pytest.approx(1e3, rel=0.2)


# ---------------------------------------------------------------------------
# germanium emission rate

def test_free_electron_emission_rate():
    # at the canonical parameters: 8.1e-38 counts/(s keV) at 1 keV,
    # falling as 1/E
    r1 = fu_radiation_rate(1.0, 1e-16, 1e-5)
    assert r1 == pytest.approx(8.1e-38, rel=0.05)
    assert fu_radiation_rate(2.0, 1e-16, 1e-5) == pytest.approx(r1 / 2, rel=1e-12)
    # rate scales as lam / a^2
    assert fu_radiation_rate(1.0, 2e-16, 1e-5) == pytest.approx(2 * r1, rel=1e-12)


def test_detector_rate_and_threshold():
    # 2.1e-8 counts/(keV kg day) at 11 keV for the canonical parameters
    assert ge_detector_rate(1e-16, 1e-5) == pytest.approx(2.1e-8, rel=0.05)
    # the 0.05 counts/(keV kg day) limit translates to lambda_inv a^2 > ~0.4
    assert ge_radiation_threshold(0.05) == pytest.approx(0.4, rel=0.1)


# ---------------------------------------------------------------------------
# map dataset

def _default_map():
    a_grid = np.linspace(-7, 0, 71)
    l_grid = np.linspace(0, 22, 89)
    return fig2_dataset(a_grid, l_grid)


def test_map_wedge_and_conflict():
    cmap = _default_map()
    wedge = ("ge-radiation", "rot-null", "perception-time", "small-displacement")
    assert cmap.region_nonempty(wedge)
    assert not cmap.region_nonempty(wedge + ("trans-null",))


def test_map_grid_size_and_csv():
    cmap = fig2_dataset([-6, -5, -4], [14, 15, 16, 17])
    assert len(cmap.log10_a) * len(cmap.log10_lambda_inv) == 12
    text = map_to_csv(cmap)
    lines = text.strip().splitlines()
    assert lines[0] == "log10_a,log10_lambda_inv,c1,c2,c3,c4,c5"
    assert len(lines) == 13
    # canonical point row: pattern 1,0,1,1,0
    row = [ln for ln in lines if ln.startswith("-5,16,")]
    assert row == ["-5,16,1,0,1,1,0"]


def test_map_rejects_bad_grids():
    with pytest.raises(ValidationError):
        fig2_dataset([], [1.0])
    with pytest.raises(ValidationError):
        fig2_dataset([-5.0, -5.0], [1.0, 2.0])
    with pytest.raises(ValidationError):
        fig2_dataset([-5.0], [1.0], which=("bogus",))


def test_map_boundaries_and_metadata():
    cmap = fig2_dataset([-6, -5, -4], [10, 20])
    lines = boundary_polylines(cmap)
    assert set(lines) == set(DEFAULT_MAP_IDS)
    # ge-radiation boundary at a = 1e-5: lambda_inv = 0.4 / 1e-10
    pts = dict(lines["ge-radiation"])
    assert pts[-5.0] == pytest.approx(math.log10(0.4) + 10, rel=1e-9)
    meta = cmap.metadata()
    assert "CGS" in meta["convention"]
    assert list(meta["ids"]) == list(DEFAULT_MAP_IDS)
