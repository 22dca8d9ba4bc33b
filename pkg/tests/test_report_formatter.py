import json

from algebra.weyl import weyl_closed_form
from conftest import phi_spec
from models import EquivalenceResult, Report, Series
from pipeline.report_formatter import render_json, render_table


def test_json_uses_the_canonical_spec_keys():
    spec = phi_spec(Series.B, 0, ["e"] * 3, s=1)
    report = Report(command=["weyl"], specs=[spec], weyl=weyl_closed_form(spec))
    data = json.loads(render_json(report))
    assert data["specs"][0] == json.loads(spec.canonical_json())
    assert data["weyl"]["order"] == "12"
    assert "sweep" not in data


def test_table_sections():
    spec = phi_spec(Series.B, 0, ["e"] * 3, s=1)
    weyl = weyl_closed_form(spec)
    weyl.kernel_rank = 0
    report = Report(command=["weyl"], specs=[spec], weyl=weyl)
    lines = render_table(report).splitlines()
    assert lines[0] == "series\tspec"
    row = next(line for line in lines if line.startswith("(Sym(3) x W(s))"))
    assert row.split("\t")[1] == "12"
    assert row.split("\t")[3] == "0"


def test_equivalence_table():
    report = Report(command=["equiv"], equivalence=EquivalenceResult(equivalent=False, kind="series"))
    assert render_table(report).splitlines() == ["equivalent\tkind\twitness", "False\tseries\t"]
