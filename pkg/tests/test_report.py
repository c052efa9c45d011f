from fractions import Fraction

import pytest

from sidonlab import GroundSet, energy_report, run_scaling
from sidonlab.report import emit_json, emit_report, emit_series_csv, to_jsonable


def test_fractions_render_as_num_den():
    assert to_jsonable(Fraction(16, 3)) == "16/3"
    assert to_jsonable({"k": Fraction(5, 1)}) == {"k": "5/1"}


def test_floats_rounded_to_12_significant_digits():
    assert to_jsonable(2 / 3) == 0.666666666667
    assert to_jsonable(0.1) == 0.1


def test_energy_report_json_fields_in_order():
    text = emit_json(energy_report(GroundSet((1, 2))))
    keys = [line.split('"')[1] for line in text.splitlines() if '":' in line]
    assert keys == [
        "set_size", "energy_add", "energy_mul", "nontrivial_add", "nontrivial_mul",
        "sumset_size", "productset_size", "cs_lower_add", "cs_lower_mul",
    ]


def test_emit_is_deterministic():
    series = run_scaling("interval", [8, 12, 16, 20], ["energy_add", "sumset_size"])
    assert emit_report(series, "csv") == emit_report(series, "csv")
    assert emit_report(series, "json") == emit_report(series, "json")


def test_series_csv_layout():
    series = run_scaling("interval", [8, 12, 16, 20], ["energy_add", "sumset_size"])
    lines = emit_series_csv(series).splitlines()
    assert lines[0] == "n,set_size,metric,value"
    data = [l for l in lines if not l.startswith("#")]
    fits = [l for l in lines if l.startswith("#")]
    assert len(data) == 1 + 4 * 2
    assert len(fits) == 2 and all("slope=" in l and "r2=" in l for l in fits)


def test_flat_csv_for_reports():
    text = emit_report(energy_report(GroundSet((1, 2))), "csv")
    assert text.startswith("key,value\n")
    assert "cs_lower_add,16/3" in text


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        emit_report({}, "xml")
