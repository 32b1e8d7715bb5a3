import io
import json
import random

import pytest
from conftest import FIXTURES, fixture_expected, load_fixture

from dissect.builders import ToricSpec
from dissect.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_PRECONDITION, run
from dissect.corpus import random_hyperplane_spec, random_toric_spec
from dissect.fileformat import ParseError, ValidationError, dump_spec, parse

FIXTURE_NAMES = sorted(p.name for p in FIXTURES.glob("*.json"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(map(str, argv)), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_golden_fixture(name):
    code, out, _ = call("describe", FIXTURES / name, "--format", "json")
    assert code == EXIT_OK
    rep = json.loads(out)
    want = fixture_expected(name)
    assert {k: rep[k] for k in want} == want


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_verifies(name):
    code, out, _ = call("verify", FIXTURES / name)
    assert code == EXIT_OK, out
    assert "FAIL" not in out


def test_command_examples():
    assert call("chambers", FIXTURES / "torus-ex.json")[:2] == (0, "6\n")
    assert call("faces", FIXTURES / "sphere-2circles.json")[:2] == (0, "2 4 4\n")
    assert call("charpoly", FIXTURES / "torus-ex.json")[1] == "t^2 - t + 4\n"
    code, out, _ = call("verify", FIXTURES / "axes.json", "--format", "json")
    assert code == 0 and all(r["status"] == "PASS" for r in json.loads(out)["verification"])


def test_fiber_command():
    axes = FIXTURES / "axes.json"
    assert call("fiber", axes, "--chain", "flat:H1,flat:H0.H1")[1] == "2\n"
    assert call("fiber", axes, "--chain", "flat:X,flat:H1")[1] == "4\n"
    assert call("fiber", axes, "--chain", "flat:H1")[1] == "2\n"
    assert call("fiber", axes, "--chain", "flat:H0,flat:H1")[0] == EXIT_INPUT
    assert call("fiber", axes)[0] == EXIT_INPUT


def test_poset_command():
    code, out, _ = call("poset", FIXTURES / "sphere-2circles.json")
    assert code == 0 and out.startswith("rank 0: flat:X")
    code, out, _ = call("poset", FIXTURES / "axes.json", "--format", "json")
    assert len(json.loads(out)["elements"]) == 4


def test_closedform_command():
    assert call("closedform", "projective", "--n", 3, "--l", 2, "--format", "json")[1] == \
        json.dumps({"f_vector": [3, 6, 4], "family": "projective"}, sort_keys=True) + "\n"
    assert json.loads(call("closedform", "hyperplane", "--n", 3, "--l", 2, "--format", "json")[1])["f_vector"] == [3, 9, 7]
    assert json.loads(call("closedform", "sphere", "--census", "6,3,1", "--l", 2, "--format", "json")[1])["f_vector"] == [6, 12, 8]
    assert json.loads(call("closedform", "toric", "--a0", 2, "--l", 2, "--format", "json")[1])["f_vector"] == [2, 4, 2]
    assert call("closedform", "torus", "--l", 2)[0] == EXIT_INPUT
    assert call("closedform", "projective", "--l", 2)[0] == EXIT_INPUT


def test_error_exit_codes(tmp_path):
    assert call("frobnicate", FIXTURES / "axes.json")[0] == EXIT_INPUT
    assert call("chambers", tmp_path / "missing.json")[0] == EXIT_INPUT
    assert call("chambers")[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("chambers", bad)[0] == EXIT_INPUT
    many = tmp_path / "many.json"
    many.write_text(json.dumps({"type": "hyperplane", "ambient_dim": 1,
                                "hyperplanes": [{"normal": [1], "offset": str(i)} for i in range(6)]}))
    code, _, err = call("chambers", many, "--cap", 5)
    assert code == EXIT_PRECONDITION and "cap" in err
    lonely = tmp_path / "lonely.json"
    lonely.write_text(json.dumps(dump_spec("toric", ToricSpec(2, [((1, 0), 0)]))))
    assert call("chambers", lonely)[0] == EXIT_PRECONDITION


def test_verify_reports_mismatch(monkeypatch):
    from dissect.verification import Check

    monkeypatch.setattr("dissect.cli.verify_model", lambda m: [Check("chambers", 1, 2)])
    code, out, _ = call("verify", FIXTURES / "axes.json")
    assert code == EXIT_MISMATCH and "MISMATCH" in out


# --- parsing ---------------------------------------------------------------------

def test_parse_torus_fixture():
    f = load_fixture("torus-ex.json")
    assert f.type == "toric" and isinstance(f.spec, ToricSpec) and len(f.spec.hypersurfaces) == 3


def test_zero_denominator_rejected():
    doc = {"type": "hyperplane", "ambient_dim": 1, "hyperplanes": [{"normal": ["1"], "offset": "1/0"}]}
    with pytest.raises(ValidationError):
        parse(json.dumps(doc))


def test_missing_poin_c_rejected():
    doc = {"type": "abstract", "ambient_dim": 0, "flats": [{"id": "X", "dim": 0}], "order": []}
    with pytest.raises(ValidationError):
        parse(json.dumps(doc))


@pytest.mark.parametrize("doc", [
    {"type": "hyperplane", "ambient_dim": 1, "hyperplanes": [{"normal": [1.5], "offset": "0"}]},
    {"type": "hyperplane", "hyperplanes": []},
    {"type": "nonsense", "ambient_dim": 1},
    [1, 2],
])
def test_parse_errors_carry_a_path(doc):
    with pytest.raises(ParseError) as exc:
        parse(json.dumps(doc))
    assert exc.value.path


def test_parse_errors_are_input_errors(tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"type": "circle", "points": ["1/0"]}))
    assert call("chambers", p)[0] == EXIT_INPUT


def test_json_report_round_trips():
    code, out, _ = call("describe", FIXTURES / "torus-ex.json", "--format", "json")
    rep = json.loads(out)
    assert json.loads(json.dumps(rep)) == rep
    assert {f["id"] for f in rep["flats"]} >= {"flat:X", "flat:N0"}


def test_dump_parse_round_trip():
    rng = random.Random(4)
    for _ in range(20):
        spec = random_hyperplane_spec(rng)
        assert parse(json.dumps(dump_spec("hyperplane", spec))).spec == spec
    spec = random_toric_spec(rng)
    assert parse(json.dumps(dump_spec("toric", spec))).spec == spec


def test_verify_on_random_specs(tmp_path):
    rng = random.Random(2024)
    for i in range(100):
        p = tmp_path / f"h{i}.json"
        p.write_text(json.dumps(dump_spec("hyperplane", random_hyperplane_spec(rng))))
        code, out, _ = call("verify", p)
        assert code == EXIT_OK, out
