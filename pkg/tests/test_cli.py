import json
import subprocess
import sys

import pytest

from cslwalk.cli import main
from cslwalk.errors import ConvergenceError

GOLDEN_TABLE1 = (
    "R_cm,dq_cm_t10,dq_cm_t1000,dq_cm_t100000\r\n"
    "1e-06,8e-06,8e-03,8e+00\r\n"
    "1e-05,6e-06,6e-03,6e+00\r\n"
    "1e-04,2e-07,2e-04,2e-01\r\n"
    "1e-02,2e-11,2e-08,2e-05\r\n"
    "1e+00,2e-15,2e-12,2e-09\r\n"
)

GOLDEN_TABLE2 = (
    "R_cm,s_inf_cm,tau_s_s\r\n"
    "1e-06,7e-05,2e+01\r\n"
    "1e-05,4e-07,7e-01\r\n"
    "1e-04,1e-08,7e-01\r\n"
    "1e-02,4e-11,7e+00\r\n"
    "1e+00,1e-13,7e+01\r\n"
)


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_table1_golden_bytes(capsys):
    rc, out, _ = run(capsys, ["table1", "--paper-format"])
    assert rc == 0
    assert out == GOLDEN_TABLE1


def test_table2_golden_bytes(capsys):
    rc, out, _ = run(capsys, ["table2", "--paper-format"])
    assert rc == 0
    assert out == GOLDEN_TABLE2


def test_table1_default_precision(capsys):
    rc, out, _ = run(capsys, ["table1"])
    assert rc == 0
    assert "6.41883e-06" in out    # six significant digits by default


def test_json_documents_are_schema_stable(capsys):
    for argv in (["table1", "--json"], ["table2", "--format", "json"],
                 ["collide", "--sphere-radius", "1e-5", "--temperature",
                  "4.2K", "--pressure", "5e-17Torr", "--json"]):
        rc, out, _ = run(capsys, argv)
        assert rc == 0
        doc = json.loads(out)
        assert doc["schema_version"] == 1
        assert doc["command"] in ("table1", "table2", "collide")
        # canonical form: sorted keys, 2-space indent
        assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_constants_dump(capsys):
    rc, out, _ = run(capsys, ["--constants"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["hbar_erg_s"] == 1.0546e-27
    assert doc["unit_system"].startswith("CGS")
    assert doc["torr_in_dyn_per_cm2"] == 1333.22


def test_collide_reference_disc(capsys):
    rc, out, _ = run(capsys, ["collide", "--disc-radius", "2du",
                              "--disc-thickness", ".5du",
                              "--temperature", "4.2K",
                              "--pressure", "5e-17Torr", "--json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["result"]["tau_c_min"] == pytest.approx(45.0, rel=0.15)
    assert doc["result"]["omega_kick_rad_s"] == pytest.approx(8.0, rel=0.2)


def test_collide_accepts_greek_mu_unit(capsys):
    rc, out, _ = run(capsys, ["collide", "--disc-radius", "2dμ",
                              "--disc-thickness", ".5dμ",
                              "--temperature", "4.2K",
                              "--pressure", "5e-17Torr", "--json"])
    assert rc == 0
    assert json.loads(out)["result"]["tau_c_min"] == pytest.approx(41.0, rel=0.02)


def test_diffuse_rotation_target(capsys):
    rc, out, _ = run(capsys, ["diffuse", "--mode", "rotation",
                              "--disc-radius", "2du", "--disc-thickness",
                              "0.5du", "--target", "2pi", "--json"])
    assert rc == 0
    doc = json.loads(out)
    assert doc["time_s"] == pytest.approx(70.0, rel=0.10)


def test_diffuse_csl_curve(capsys):
    rc, out, _ = run(capsys, ["diffuse", "--sphere-radius", "1e-5",
                              "--times", "86400", "--f", "1.0"])
    assert rc == 0
    assert out.splitlines()[0] == "t_s,rms,mechanism,mode"
    assert out.splitlines()[1].startswith("86400,6.53")


def test_simulate_determinism(capsys):
    argv = ["simulate", "--n-traj", "300", "--s-inf", "1e-6", "--tau-s", "1",
            "--dt", "0.02", "--t-end", "1", "--seed", "7"]
    rc1, out1, _ = run(capsys, argv)
    rc2, out2, _ = run(capsys, argv)
    assert rc1 == rc2 == 0
    assert out1 == out2
    rc3, out3, _ = run(capsys, argv[:-1] + ["8"])
    assert out3 != out1


def test_simulate_worker_invariance(capsys):
    base = ["simulate", "--n-traj", "300", "--s-inf", "1e-6", "--tau-s", "1",
            "--dt", "0.02", "--t-end", "1", "--seed", "3"]
    _, seq, _ = run(capsys, base)
    _, par, _ = run(capsys, base + ["--workers", "4"])
    assert seq == par


def test_output_file(tmp_path, capsys):
    target = tmp_path / "t1.csv"
    rc, out, _ = run(capsys, ["table1", "--paper-format", "--output",
                              str(target)])
    assert rc == 0 and out == ""
    assert target.read_bytes().decode() == GOLDEN_TABLE1


def test_fig1_and_fig2_datasets(capsys):
    rc, out, _ = run(capsys, ["fig1", "--alphas", "1.0", "--betas", "0.25"])
    assert rc == 0
    assert out.splitlines()[0] == "alpha,beta,f_rot,est_error"
    rc, out, _ = run(capsys, ["fig2", "--a-grid=-6:-4:3",
                              "--lambda-inv-grid=15:17:3"])
    assert rc == 0
    assert out.splitlines()[0] == "log10_a,log10_lambda_inv,c1,c2,c3,c4,c5"
    assert "-5,16,1,0,1,1,0" in out


# ---------------------------------------------------------------------------
# exit codes

def test_exit_code_flag_error():
    with pytest.raises(SystemExit) as err:
        main(["table1", "--no-such-flag"])
    assert err.value.code == 2


def test_exit_code_missing_subcommand(capsys):
    assert main([]) == 2


def test_exit_code_precondition(capsys):
    rc, _, err = run(capsys, ["collide", "--sphere-radius", "1e-5",
                              "--temperature", "4.2K"])
    assert rc == 3
    assert "pressure" in err


def test_exit_code_body_needed(capsys):
    rc, _, err = run(capsys, ["diffuse", "--times", "10"])
    assert rc == 3
    assert "sphere-radius" in err


def test_fig2_writes_boundary_polyline_files(tmp_path, capsys):
    target = tmp_path / "map.csv"
    rc, _, _ = run(capsys, ["fig2", "--a-grid=-6:-4:3",
                            "--lambda-inv-grid=15:17:3",
                            "--output", str(target)])
    assert rc == 0
    assert target.exists()
    for cid in ("ge-radiation", "rot-null", "perception-time",
                "small-displacement", "trans-null"):
        side = tmp_path / f"map_boundary_{cid}.csv"
        assert side.exists(), cid
        lines = side.read_bytes().decode().strip().split("\r\n")
        assert lines[0] == "log10_a,log10_lambda_inv"
        assert len(lines) == 4    # header + one point per a-grid value


def test_real_process_invocation():
    # the module runs as a real process with the same bytes and exit codes
    proc = subprocess.run(
        [sys.executable, "-m", "cslwalk.cli", "table1", "--paper-format"],
        capture_output=True, text=False)
    assert proc.returncode == 0
    assert proc.stdout.decode() == GOLDEN_TABLE1
    bad = subprocess.run(
        [sys.executable, "-m", "cslwalk.cli", "collide",
         "--sphere-radius", "1e-5", "--temperature", "4.2K"],
        capture_output=True)
    assert bad.returncode == 3


def test_exit_code_convergence(monkeypatch, capsys):
    import cslwalk.factors as factors_mod

    def boom(*args, **kwargs):
        raise ConvergenceError("quadrature stalled", achieved=1e-3)

    monkeypatch.setattr(factors_mod, "f_rot_disc", boom)
    rc, _, err = run(capsys, ["fig1", "--alphas", "1.0", "--betas", "0.25"])
    assert rc == 4
    assert "stalled" in err
