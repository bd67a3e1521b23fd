import json
import os
import subprocess

import numpy as np
import pytest

import lsa

LSA_CLI = os.environ.get("LSA_CLI")


def cli(*args):
    if not LSA_CLI:
        pytest.skip("LSA_CLI not set")
    out = subprocess.run([LSA_CLI, *args], capture_output=True, text=True)
    return out.returncode, out.stdout


def nv():
    return lsa.instantiate_algebra("NV")


def test_algebra_from_numpy():
    # one-dimensional algebra with e1 e1 = e1
    c = np.zeros((1, 1, 1), dtype=complex)
    c[0, 0, 0] = 1
    a = lsa.Algebra(c, ["x"])
    assert a.dim == 1 and a.basis == ["x"]
    assert np.allclose(a.constants, c)
    assert a.left_symmetry_residual() == 0.0
    back = lsa.Algebra.from_json(a.to_json())
    assert np.array_equal(back.constants, a.constants)


def test_catalog_algebras_are_left_symmetric():
    algebras, families = lsa.list_entries()
    assert "NV" in algebras and len(families) == 29
    for aid in ("AI", "AIII", "NV", "T2"):
        rep = lsa.left_symmetry_residual(lsa.instantiate_algebra(aid))
        assert rep["verified"], aid
    rep = lsa.left_symmetry_residual(lsa.instantiate_algebra("NIV_k", {"k": 0.3}))
    assert rep["verified"]


def test_s_residual_member_and_non_member():
    a = nv()
    r = lsa.instantiate_family("SE(NV)-r11", {"r11": 1.5})
    assert lsa.s_residual(a, r)["verified"]
    bad = lsa.s_residual(a, lsa.SymmetricTensor(np.eye(2)))
    assert not bad["verified"] and bad["norm"] > 1e-9


def test_symmetric_tensor_rejects_asymmetric():
    with pytest.raises(ValueError):
        lsa.SymmetricTensor(np.array([[0, 1], [0, 0]], dtype=complex))


def test_lsa_error_is_value_error():
    assert issubclass(lsa.LsaError, ValueError)
    with pytest.raises(lsa.LsaError):
        lsa.instantiate_algebra("nope")


def test_phase_space_and_parakahler():
    a = nv()
    r = lsa.instantiate_family("SE(NV)-r11", {"r11": 1.5})
    p = lsa.build_phase_space(a, r)
    assert p.n == 2 and p.verified
    rep = lsa.check_parakahler(p)
    assert rep["verified"] and rep["plus_dim"] == 2 and rep["minus_dim"] == 2
    # a non-solution still builds, but the report flags it
    q = lsa.build_phase_space(a, lsa.SymmetricTensor(np.eye(2)))
    assert not q.verified and q.s_residual > 1e-9
    assert not lsa.check_parakahler(q)["verified"]


def test_theorem39_helper():
    a = nv()
    r = lsa.instantiate_family("SE(NV)-r11", {"r11": 1.5})
    rep = lsa.theorem39(a, r)
    assert rep["symplectic_isomorphism"]
    assert rep["preserves_plus"] and not rep["preserves_minus"]


def test_solve_and_family_membership():
    rep = lsa.solve(nv(), 60, 5, "NV", {})
    assert rep["converged"] == rep["starts"] == 60
    assert not rep["identically_zero"]
    matched = {f["family"] for c in rep["clusters"][1:] for f in c["families"]}
    assert matched
    assert rep == lsa.solve(nv(), 60, 5, "NV", {})
    r = lsa.instantiate_family("SE(NV)-r11", {"r11": 1.5})
    member, residual, params, _ = lsa.family_membership(r, "SE(NV)-r11")
    assert member and residual < 1e-9 and abs(params["r11"] - 1.5) < 1e-12


def test_cli_matches_library():
    code, out = cli("s-residual", "--catalog", "NV", "--family", "SE(NV)-r11", "--params", "r11=0.5")
    assert code == 0
    r = lsa.instantiate_family("SE(NV)-r11", {"r11": 0.5})
    lib = lsa.s_residual(nv(), r)
    assert json.loads(out)["norm"] == lib["norm"]

    r = np.array([[1, 0.5], [0.5, 0]], dtype=complex)
    doc = json.dumps({"dim": 2, "r": r.real.tolist()})
    code, out = cli("s-residual", "--catalog", "NV", "--r", doc)
    assert code == 1
    assert json.loads(out)["norm"] == lsa.s_residual(nv(), lsa.SymmetricTensor(r))["norm"]


def test_cli_check_iso(tmp_path):
    args = ["--catalog", "NV", "--family", "SE(NV)-r11"]
    code, _ = cli("--output", str(tmp_path / "p0.json"), "build-phase", *args, "--params", "r11=0")
    assert code == 0
    code, _ = cli("--output", str(tmp_path / "p1.json"), "build-phase", *args, "--params", "r11=2")
    assert code == 0
    code, out = cli("theorem39", *args, "--params", "r11=2")
    assert code == 0
    (tmp_path / "phi.json").write_text(json.dumps(json.loads(out)["map"]))
    code, out = cli("check-iso", "--phase1", str(tmp_path / "p0.json"), "--phase2", str(tmp_path / "p1.json"),
                    "--map", str(tmp_path / "phi.json"))
    rep = json.loads(out)
    assert code == 0 and rep["symplectic_isomorphism"] and not rep["parakahler_isomorphism"]


def test_regression_sweep_small():
    rep = lsa.regression_sweep(2, 7)
    fams = {f["family"]: f for f in rep["families"]}
    assert len(fams) == 29
    flagged = {k for k, f in fams.items() if f["discrepancy"]}
    assert flagged == {"SE(AII)-offdiag", "SE(NIV_2)"}
    for k in flagged:
        assert fams[k]["example"]["corrected_s_norm"] < 1e-9
