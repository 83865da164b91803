import io
import json
import subprocess
import sys

import pytest

from branchedarc.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def test_branched_build():
    code, out = call("branched", "build", "--n", "2", "--validate-appendix")
    assert code == 0
    assert json.loads(out) == {"ok": True, "dims": [4, 6, 2, 4], "homology": [4, 2, 2, 4]}


def test_kh_one_crossing():
    code, out = call("kh", "x(1)")
    assert code == 0 and json.loads(out) == {"(0,1)": 1, "(0,-1)": 1}


def test_transfer_m3():
    code, out = call("transfer", "--n", "2", "--arity", "3")
    data = json.loads(out)
    assert code == 0 and data["entries"] == 8
    assert {"args": ["f21_1", "f11_3", "f12_1+f12_3"], "value": ["f22_3"]} in data["table"]


def test_parse_error_exit_2():
    code, out = call("kh", "x(1) y(2)")
    assert code == 2 and json.loads(out)["index"] == 2


def test_usage_error_exit_2():
    assert call("branched", "build", "--n", "5")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("transfer", "--n", "2", "--arity", "12")[0] == 2


def test_validation_mismatch_exit_1(monkeypatch):
    from branchedarc import tables
    monkeypatch.setattr(tables, "H2_BLOCK_DIMS", (4, 6, 2, 5))
    code, out = call("branched", "build", "--n", "2", "--validate-appendix")
    data = json.loads(out)
    assert code == 1 and data["cell"]["table"] == "block dims"


def test_rozansky_report():
    code, out = call("rozansky", "", "--tmin", "-1", "--tmax", "0")
    data = json.loads(out)
    assert data["exact"] is True
    assert {"t": 0, "q": 0, "dim": 1} in data["degrees"]


def test_twist_oracle():
    code, out = call("twist-oracle", "x(1)", "--k", "2", "--tmin", "-2", "--tmax", "0")
    data = json.loads(out)
    assert code == 0 and data["a"] == -2 and data["comparable"]


def test_arc_table():
    code, out = call("arc", "--n", "1", "table")
    assert json.loads(out)["table"]["aa-1"]["aa-x"] == ["aa-x"]


def test_strands_dump():
    code, out = call("strands", "--genus", "1", "dump")
    data = json.loads(out)
    assert data["idempotents"] == 2 and len(data["basis"]) == len({json.dumps(r["key"]) for r in data["basis"]})


def test_pretty_grid():
    code, out = call("kh", "x(1) x(1)", "--pretty")
    assert code == 0 and out.splitlines()[0].split()[1:] == ["0", "2"]


@pytest.mark.parametrize("argv", [["transfer", "--n", "2", "--arity", "4"], ["arc", "--n", "2", "table"]])
def test_byte_identical(argv):
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "branchedarc", "kh", "x(1)"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout) == {"(0,-1)": 1, "(0,1)": 1}


SCHEMA_CASES = [
    ("kh", ["kh", "x(1) x(1)"]),
    ("branched", ["branched", "build", "--n", "1"]),
    ("transfer", ["transfer", "--n", "2", "--arity", "3"]),
    ("rozansky", ["rozansky", "x(1)", "--tmin", "-2", "--tmax", "0"]),
    ("twist-oracle", ["twist-oracle", "", "--k", "1"]),
    ("arc", ["arc", "--n", "2", "table"]),
    ("strands", ["strands", "--genus", "1", "dump"]),
    ("error", ["kh", "q(1)"]),
]


@pytest.mark.parametrize("name,argv", SCHEMA_CASES, ids=[c[0] for c in SCHEMA_CASES])
def test_output_matches_schema(name, argv):
    jsonschema = pytest.importorskip("jsonschema")
    from pathlib import Path
    schemas = json.loads((Path(__file__).parents[1] / "docs" / "schemas.json").read_text())
    _, out = call(*argv)
    # "#/dims" refs resolve against the whole file, so validate with it as the root
    jsonschema.validate(json.loads(out), {**schemas, **schemas[name]})
