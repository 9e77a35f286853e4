import json
import re

import pytest

from koszul_derham.errors import InputError
from koszul_derham.pipeline.orchestrator import verify_main_theorem
from koszul_derham.pipeline.report import emit_report, homology_label, parse_report


@pytest.fixture(scope="module")
def quadric_report(quadric, settings):
    return verify_main_theorem(quadric.h, settings=settings)


def test_json_round_trip(quadric_report):
    text = emit_report(quadric_report, "json")
    assert parse_report(text) == quadric_report
    payload = json.loads(text)
    assert payload["theorem"]["status"] == "verified"
    assert payload["jacobian"]["2"] == {}
    assert payload["input"] == {"f": "x^2 + y^2 + z^2", "vars": ["x", "y", "z"], "weights": [1, 1, 1], "n": 3, "d": 2, "omega": 3}


def test_output_is_byte_stable(quadric, settings, quadric_report):
    again = verify_main_theorem(quadric.h, settings=settings)
    assert emit_report(again) == emit_report(quadric_report)


def test_table_rendering(quadric_report):
    table = emit_report(quadric_report, "table")
    assert "H_{n-1}(∂;R_f)" in table
    assert "theorem status: verified" in table
    assert "seconds" not in table


def test_table_keeps_integers_and_hides_missing_values(quadric_report):
    table = emit_report(quadric_report, "table")
    assert "NaN" not in table and "None" not in table
    assert re.search(r"\b\d+\.0\b", table) is None


def test_unknown_format(quadric_report):
    with pytest.raises(InputError) as excinfo:
        emit_report(quadric_report, "yaml")
    assert excinfo.value.reason == "bad_format"


def test_homology_label():
    assert homology_label(2, 3) == "H_{n-1}(∂;R_f)"
    assert homology_label(1, 3) == "H_1(∂;R_f)"
