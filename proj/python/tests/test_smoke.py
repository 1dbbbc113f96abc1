import os
import subprocess

import numpy as np
import pytest

import twist


def test_paraproduct_shapes_and_constants():
    rng = np.random.default_rng(0)
    F = rng.random((16, 16))
    T = twist.t_d(F, np.ones((16, 16)))
    assert T.shape == (16, 16)
    assert np.abs(T).max() == 0.0
    assert twist.product_identity_residual(F, rng.random((16, 16))) < 1e-12


def test_box_norm_of_one():
    assert twist.box_norm(np.ones((8, 8))) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        twist.box_norm(np.ones((6, 6)))


def test_identities():
    rng = np.random.default_rng(1)
    A, B, C, D = (rng.random((8, 8)) for _ in range(4))
    assert twist.global_telescoping_residual(A, B, C, D) < 1e-12
    assert twist.resummation_residual(A, B, C) < 1e-12
    assert twist.telescoping3d_residual(2, 3) < 1e-12
    assert twist.support_identities_exact(7)


def test_counterexample_strip():
    F, G = twist.counterexample_linfty_lq(4, 4)
    T = twist.t_d(F, G)
    assert (T[0] == 4.0).all()
    assert (T[1:] == 0.0).all()
    assert twist.norm_ratio(F, G, float("inf"), 2.0) == pytest.approx(2.0 / 3.0)


def test_sweep_is_deterministic():
    a = twist.sweep([3, 4], trials=3, steps=5, seed=2)
    assert a == twist.sweep([3, 4], trials=3, steps=5, seed=2)
    assert a.splitlines()[0] == "p,q,ratio,trend"


@pytest.mark.skipif("TWIST_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["TWIST_CLI"]
    ok = subprocess.run([cli, "identities", "--N", "4", "--seed", "7"], capture_output=True, text=True)
    assert ok.returncode == 0
    assert "FAIL" not in ok.stdout
    assert subprocess.run([cli, "sweep", "--bogus"], capture_output=True).returncode == 2
    assert subprocess.run([cli, "sweep", "--grid", "3:x"], capture_output=True).returncode == 2
    cfg = tmp_path / "run.cfg"
    out = tmp_path / "table.csv"
    cfg.write_text(f"nmax=5\nq=2\nout={out}\n")
    assert subprocess.run([cli, "counterexamples", "--config", str(cfg)]).returncode == 0
    assert out.read_text().splitlines()[0] == "n,weak_norm,sup_F,norm_G,ratio,ratio_over_sqrt_n"
    assert len(out.read_text().splitlines()) == 6
