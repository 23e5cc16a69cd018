import json
import math
import os
import subprocess
import tempfile

import numpy as np
import pytest

chansteer = pytest.importorskip("chansteer")

SQRT2M1 = math.sqrt(2.0) - 1.0


def dephasing_dilation():
    z = np.diag([1.0, -1.0]).astype(complex)
    i2 = np.eye(2, dtype=complex)
    k0, k1 = 0.5 * (i2 + z), 0.5 * (i2 - z)
    # unit-trace Choi of the pointer extension of the dephasing instrument
    chois = []
    for k in (k0, k1):
        j = np.zeros((4, 4), dtype=complex)
        for a in range(2):
            for b in range(2):
                e = np.zeros((2, 2), dtype=complex)
                e[a, b] = 1.0
                j += 0.5 * np.kron(e, k @ e @ k.conj().T)
        chois.append(j)
    return chansteer.pointer_extension(chois, 2, 2)


def test_version():
    assert chansteer.__version__ == "1.0.0"


def test_incoherent_is_unsteerable():
    e = dephasing_dilation()
    # the pointer extension itself is incoherent: Choi-level test must pass
    sa = chansteer.choi_assemblage(e, chansteer.xz_measurements())
    v = chansteer.test_unsteerable(sa)
    assert not v["steerable"]
    assert len(v["model"]) > 0


def test_robustness_anchor():
    e = chansteer.random_extension(2, 2, 2, 5)
    ma = chansteer.random_measurements(2, 2, 2, 6)
    sa = chansteer.choi_assemblage(e, ma)
    v = chansteer.steering_robustness(sa)
    assert v["value"] >= 0.0
    assert v["diagnostics"]["gap"] < 1e-6

    # maximally entangled state with X/Z measurements: SR = sqrt(2) - 1
    psi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            psi[i * 2 + i, j * 2 + j] = 0.5
    sa2 = chansteer.steered_assemblage(psi, 2, chansteer.xz_measurements())
    v2 = chansteer.steering_robustness(sa2)
    assert abs(v2["value"] - SQRT2M1) < 1e-6
    assert v2["steerable"]
    assert len(v2["witness"]) == 2


def test_theorem1_and_ppt():
    e = dephasing_dilation()
    rep = chansteer.verify_theorem1(e, chansteer.xz_measurements())
    assert rep["agree"]
    ppt = chansteer.ppt_check(e, True)
    assert ppt["ppt"] and ppt["consistent"]


def test_complementary_eb():
    sigma = np.array([[0.7, 0.1], [0.1, 0.3]], dtype=complex)
    e = chansteer.fixed_output_extension(sigma, 2)
    assert chansteer.eb_check(chansteer.complementary(e)) == "not-eb"
    assert chansteer.eb_check(chansteer.complementary(dephasing_dilation())) == "eb-certified"


def test_tomography_roundtrip():
    e = chansteer.random_extension(2, 2, 2, 11)
    ma = chansteer.random_measurements(2, 2, 2, 12)
    chois = chansteer.reconstruct_ancilla(e, ma)
    direct = chansteer.choi_assemblage(e, ma)
    for x in range(2):
        total = sum(np.asarray(chois[x][a]) for a in range(len(chois[x])))
        assert np.linalg.norm(total - np.asarray(direct.total())) < 1e-8


def cli_path():
    return os.environ.get("CHANSTEER_CLI", "chansteer")


def test_cli_result_schema():
    jsonschema = pytest.importorskip("jsonschema")
    exe = cli_path()
    try:
        out = subprocess.run([exe, "demo", "dephasing-dilation"],
                             capture_output=True, text=True, timeout=120)
    except FileNotFoundError:
        pytest.skip("CLI binary not on PATH")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    schema_dir = os.path.join(os.path.dirname(__file__), "..", "..", "schemas")
    schema_file = os.path.join(schema_dir, "result-v1.schema.json")
    if not os.path.exists(schema_file):
        pytest.skip("schemas not available in installed layout")
    with open(schema_file) as f:
        schema = json.load(f)
    jsonschema.validate(doc, schema)
    assert doc["status"] == "ok"
    assert abs(doc["result"]["sr"] - SQRT2M1) < 1e-6
