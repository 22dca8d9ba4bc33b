import json

import pytest

from cli import decide_equivalence, main
from config import settings
from conftest import phi_spec
from models import GradingSpec, Series


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--series", "B", "--n", "5")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 3
    assert data["command"] == ["enumerate", "--series", "B", "--n", "5"]


def test_enumerate_out_of_range(capsys):
    code, _ = run(capsys, "enumerate", "--series", "D", "--n", "8")
    assert code == 2


def test_weyl_from_flags(capsys):
    code, out = run(capsys, "weyl", "--series", "C", "--T", "1", "--s", "1")
    assert code == 0
    assert json.loads(out)["weyl"]["order"] == "12"


def test_weyl_of_type_one(capsys):
    code, out = run(capsys, "weyl", "--series", "AI", "--T", "3,3", "--k", "1")
    assert code == 0
    assert json.loads(out)["weyl"]["order"] == "48"


def test_weyl_with_verification(capsys):
    code, out = run(capsys, "weyl", "--series", "B", "--q", "3", "--s", "1", "--verify")
    assert code == 0
    weyl = json.loads(out)["weyl"]
    assert weyl["brute_force_order"] == "12"
    assert weyl["verdict"] == "ok"


def test_weyl_from_spec_json(capsys):
    spec = phi_spec(Series.AII, 0, ["e", "e", "e"])
    code, out = run(capsys, "weyl", "--spec", spec.canonical_json(), "--format", "table")
    assert code == 0
    assert "\t24\t" in out


def test_tau_is_canonicalized(capsys):
    code, out = run(capsys, "weyl", "--series", "D", "--T", "1", "--tau", "e,10")
    assert code == 0
    assert json.loads(out)["specs"][0]["tau"] == ["00", "10"]


def test_invalid_spec_exits_2(capsys):
    code, _ = run(capsys, "weyl", "--series", "C", "--T", "1", "--tau", "00")
    assert code == 2
    code, _ = run(capsys, "weyl", "--spec", '{"series": "B", "r": "x"}')
    assert code == 2


def test_raw_phi_weyl_exits_2(capsys):
    code, _ = run(capsys, "weyl", "--series", "RAW_MPHI", "--tau", "e", "--mu", "")
    assert code == 2


def test_support(capsys):
    code, out = run(capsys, "support", "--series", "AII", "--T", "1", "--tau", "00,10")
    assert code == 0
    data = json.loads(out)
    assert data["presentation"] == {"Z2": 1, "Z4": 1, "Z": 0, "invariants": []}
    assert len(data["support"]) == 8
    assert data["extension"]["split"] is True


def test_support_reports_the_division_refinement(capsys):
    code, out = run(capsys, "support", "--series", "RAW_MPHI", "--tau", "e,e", "--mu", "")
    assert code == 0
    refinement = json.loads(out)["refinement"]
    assert (refinement["r"], refinement["q"], refinement["s"]) == (1, 1, 0)
    assert refinement["tau"] == ["00"]


def test_equiv(capsys):
    a = phi_spec(Series.AII, 1, ["00", "10"]).canonical_json()
    b = phi_spec(Series.AII, 1, ["01", "11"]).canonical_json()
    code, out = run(capsys, "equiv", "--spec", a, "--spec", b)
    assert code == 0
    result = json.loads(out)["equivalence"]
    assert result["equivalent"] is True
    assert result["kind"] == "weak"
    assert "u" in result["witness"]


def test_equiv_needs_two_specs(capsys):
    code, _ = run(capsys, "equiv", "--series", "B")
    assert code == 2


def test_decide_equivalence_across_series():
    b = phi_spec(Series.B, 0, ["e"], s=1)
    d = phi_spec(Series.D, 0, ["e", "e"], s=1)
    assert decide_equivalence(b, d).kind == "series"
    assert not decide_equivalence(b, d).equivalent


def test_decide_equivalence_of_type_one_specs():
    a = GradingSpec(series=Series.AI, pairs=[3], k=1)
    assert decide_equivalence(a, a).equivalent
    b = GradingSpec(series=Series.AI, pairs=[], k=3)
    assert not decide_equivalence(a, b).equivalent


def test_sweep(capsys):
    code, out = run(capsys, "sweep", "--series", "B", "--n", "5")
    assert code == 0
    sweep = json.loads(out)["sweep"]
    assert sweep["total"] == 3
    assert sorted(item["weyl"]["order"] for item in sweep["items"]) == ["12", "120", "8"]


def test_bound_overrides_settings(capsys, monkeypatch):
    monkeypatch.setattr(settings, "closure_bound", settings.closure_bound)
    monkeypatch.setattr(settings, "enumeration_bound", settings.enumeration_bound)
    code, _ = run(capsys, "weyl", "--series", "B", "--q", "5", "--tau", "e,e,e,e,e", "--verify", "--bound", "10")
    assert code == 4


def test_missing_subcommand_exits_nonzero():
    with pytest.raises(SystemExit):
        main([])


def test_type_two_kernel_from_flags(capsys):
    code, out = run(capsys, "weyl", "--series", "AII", "--T", "1", "--q", "1", "--s", "1", "--tau", "e")
    assert code == 0
    kernel = json.loads(out)["weyl"]["term"]["parts"][0]
    assert kernel["name"] == "N"
    assert kernel["order"] == "2"


def test_enumerated_specs_round_trip_through_weyl(capsys):
    _, out = run(capsys, "enumerate", "--series", "C", "--n", "4")
    for spec in json.loads(out)["specs"]:
        code, _ = run(capsys, "weyl", "--spec", json.dumps(spec))
        assert code == 0
