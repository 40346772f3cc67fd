import math
from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings, strategies as st

from tablediff.entity_align import EntityKey
from tablediff.schema_align import AttributeKey
from tablediff.value_analysis import (CLASS_INVALIDITY, CLASS_TIMELINESS, classify,
                                      detect_conflicts, detect_incompleteness,
                                      detect_text_divergence, format_number, is_missing,
                                      parse_value, relative_difference)


def ts(year, month, day):
    return datetime(year, month, day, tzinfo=timezone.utc)


ATTR = AttributeKey("death_rate", {})
HEIGHT = AttributeKey("height", {})
E = EntityKey("qid", "Q43512")


# -- parsing -----------------------------------------------------------------

@pytest.mark.parametrize("text,lang,kind,magnitude,unit", [
    ("8,849", "en", "number", 8849.0, None),
    ("8.848", "de", "number", 8848.0, None),
    ("26,5 %", "it", "percentage", 26.5, None),
    ("8,848米", "zh", "number", 8848.0, "m"),
    ("29.5%", "zh", "percentage", 29.5, None),
    ("1.234,5", "nl", "number", 1234.5, None),
    ("5,650 km2", "en", "number", 5650.0, "km2"),
    ("29,032 ft", "en", "number", 29032.0, "ft"),
    ("", "en", "text", None, None),
    ("Himalaya", "de", "text", None, None),
    ("1950-08-15", "en", "text", None, None),
])
def test_parse_value_table(text, lang, kind, magnitude, unit):
    v = parse_value(text, lang)
    assert v.kind == kind
    assert v.magnitude == magnitude
    assert v.unit == unit
    assert v.original == text


def test_parse_ratio_forms():
    v = parse_value("80/302", "de")
    assert (v.kind, v.numerator, v.denominator) == ("ratio", 80, 302)
    assert math.isclose(v.magnitude, 100 * 80 / 302)
    assert parse_value("80 von 302", "de").kind == "ratio"
    assert parse_value("80 out of 302", "en").kind == "ratio"
    assert parse_value("80 su 302", "it").kind == "ratio"
    assert parse_value("80/0", "en").kind == "text"  # zero denominator


def test_missing_vocabulary():
    for marker in ["", "—", "–", "-", "N/A", "n/a", "?", "  — ", "\u00a0"]:
        assert is_missing(marker)
    assert not is_missing("0")
    assert not is_missing("1970–1986")
    assert is_missing("tbd", extra_vocab=("tbd",))


@given(st.integers(0, 10_000_000), st.sampled_from(["en", "de", "zh", "it", "nl"]))
def test_round_trip_integers(value, lang):
    rendered = format_number(float(value), lang)
    assert parse_value(rendered, lang).magnitude == float(value)


@given(st.floats(0.1, 1e6, allow_nan=False, allow_infinity=False),
       st.sampled_from(["en", "de", "it"]))
def test_round_trip_decimals(value, lang):
    rendered = format_number(value, lang)
    parsed = parse_value(rendered, lang)
    assert parsed.kind == "number"
    assert math.isclose(parsed.magnitude, value, rel_tol=1e-12)


# -- conflicts ---------------------------------------------------------------

def values(**by_lang):
    return {E: by_lang}


def test_k2_death_rate_conflict_and_severity():
    by_lang = {
        "zh": parse_value("29.5%", "zh"),
        "it": parse_value("26,5 %", "it"),
        "de": parse_value("80/302", "de"),
    }
    records, findings = detect_conflicts("fam", ATTR, {E: by_lang}, rel_tol=0.0)
    assert findings == []
    assert len(records) == 1
    record = records[0]
    derived = 100 * 80 / 302
    assert 26.45 <= derived <= 26.55
    # severity = (29.5 - derived) / derived, frozen arithmetic
    assert math.isclose(record.severity, (29.5 - derived) / derived, rel_tol=1e-9)
    assert abs(record.severity - 0.1136) < 0.001
    assert set(record.values) == {"zh", "it", "de"}


def test_identical_values_produce_no_record():
    by_lang = {lang: parse_value("8,849" if lang in ("en", "zh") else "8.849", lang)
               for lang in ["en", "de", "zh", "it", "nl"]}
    records, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.0)
    assert records == []


def test_everest_height_tolerance_threshold():
    by_lang = {"en": parse_value("8,849", "en"), "de": parse_value("8.848", "de")}
    records, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.0)
    assert len(records) == 1
    assert math.isclose(records[0].severity, 1 / 8848, rel_tol=1e-9)
    records, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.001)
    assert records == []


def test_ratio_never_conflicts_with_its_rounded_display():
    for num, den in [(80, 302), (64, 280), (1, 7), (123, 997), (5, 6)]:
        pct = 100 * num / den
        display = f"{round(pct, 1):.1f}%"
        by_lang = {"zh": parse_value(display, "zh"),
                   "de": parse_value(f"{num}/{den}", "de")}
        records, _ = detect_conflicts("fam", ATTR, {E: by_lang}, rel_tol=0.0)
        assert records == [], (num, den, display)


def test_unit_conversion_meters_vs_feet():
    by_lang = {"en": parse_value("29,032 ft", "en"), "de": parse_value("8.849 m", "de")}
    records, findings = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.001)
    assert findings == []
    assert records == []  # 29032 ft = 8848.95 m, within 0.1%
    records, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.0)
    assert len(records) == 1  # the rounding residue shows up at zero tolerance


def test_incomparable_units_become_findings_not_crashes():
    by_lang = {"en": parse_value("100 km2", "en"), "de": parse_value("100", "de"),
               "zh": parse_value("99米", "zh")}
    records, findings = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.0)
    assert any(f["kind"] == "incomparable-values" for f in findings)


def test_number_vs_percentage_not_compared():
    by_lang = {"en": parse_value("26.5", "en"), "it": parse_value("26,5 %", "it")}
    records, findings = detect_conflicts("fam", ATTR, {E: by_lang}, rel_tol=0.0)
    assert records == []
    assert findings and findings[0]["kind"] == "incomparable-values"


def test_conflicts_symmetric_under_language_order():
    forward = {"zh": parse_value("29.5%", "zh"), "it": parse_value("26,5 %", "it"),
               "de": parse_value("80/302", "de")}
    backward = dict(reversed(list(forward.items())))
    r1, _ = detect_conflicts("fam", ATTR, {E: forward}, rel_tol=0.0)
    r2, _ = detect_conflicts("fam", ATTR, {E: backward}, rel_tol=0.0)
    assert math.isclose(r1[0].severity, r2[0].severity)


@given(st.lists(st.floats(1.0, 1000.0, allow_nan=False), min_size=2, max_size=6),
       st.floats(0.0, 0.5), st.floats(0.0, 0.5))
@settings(max_examples=200, deadline=None)
def test_monotonicity_in_rel_tol(magnitudes, tol_a, tol_b):
    low, high = sorted([tol_a, tol_b])
    by_lang = {f"l{i}": parse_value(f"{m:.3f}", "en") for i, m in enumerate(magnitudes)}
    at_low, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=low)
    at_high, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=high)
    assert len(at_high) <= len(at_low)


def test_relative_difference_zero_handling():
    assert relative_difference(0.0, 0.0) == 0.0
    assert relative_difference(0.0, 5.0) == math.inf
    assert math.isclose(relative_difference(8849, 8848), 1 / 8848)


# -- classification ----------------------------------------------------------

def conflict_record(values_by_lang):
    records, _ = detect_conflicts("fam", HEIGHT, {E: values_by_lang}, rel_tol=0.0)
    assert len(records) == 1
    return records[0]


def test_classify_timeliness_minority_on_older_page():
    record = conflict_record({
        "en": parse_value("8,849", "en"), "zh": parse_value("8,849", "zh"),
        "de": parse_value("8.848", "de"),
    })
    stamps = {"en": ts(2025, 6, 10), "zh": ts(2025, 6, 11), "de": ts(2024, 9, 1)}
    out = classify(record, stamps, timedelta(days=180))
    assert out.cls == CLASS_TIMELINESS
    # A huge window turns the same record into an invalidity candidate.
    out = classify(record, stamps, timedelta(days=100000))
    assert out.cls == CLASS_INVALIDITY


def test_classify_same_week_revisions_is_invalidity():
    record = conflict_record({
        "zh": parse_value("29.5%", "zh"), "it": parse_value("26,5 %", "it"),
        "de": parse_value("24.9%", "de"),
    })
    stamps = {"zh": ts(2025, 6, 10), "it": ts(2025, 6, 11), "de": ts(2025, 6, 12)}
    assert classify(record, stamps, timedelta(days=180)).cls == CLASS_INVALIDITY


def test_classify_equal_timestamps_tie_is_invalidity():
    record = conflict_record({"en": parse_value("10", "en"), "de": parse_value("11", "de")})
    stamps = {"en": ts(2025, 1, 1), "de": ts(2025, 1, 1)}
    assert classify(record, stamps, timedelta(days=180)).cls == CLASS_INVALIDITY


def test_classify_fresh_minority_is_invalidity():
    # Minority value lives on the NEWER page: not a staleness pattern.
    record = conflict_record({
        "en": parse_value("8,849", "en"), "zh": parse_value("8,849", "zh"),
        "de": parse_value("8.850", "de"),
    })
    stamps = {"en": ts(2024, 1, 1), "zh": ts(2024, 1, 2), "de": ts(2025, 6, 1)}
    assert classify(record, stamps, timedelta(days=180)).cls == CLASS_INVALIDITY


# -- incompleteness ----------------------------------------------------------

class GridStub:
    def __init__(self, family, attributes, languages, present):
        self.family = family
        self.attributes = attributes
        self.languages = languages
        self.present = present


class MatrixStub:
    def __init__(self, languages, rows):
        self.languages = languages
        self.rows = rows
        self.entities = sorted({k for k, _l in rows}, key=lambda e: e.value)

    def languages_of(self, entity):
        return [lang for lang in self.languages if (entity, lang) in self.rows]


def test_schema_incompleteness_gender_only_in_it():
    gender = AttributeKey("gender", {})
    grid = GridStub("fam", [gender], ["en", "de", "zh", "it", "nl"],
                    [[False, False, False, True, False]])
    matrix = MatrixStub(["en", "de", "zh", "it", "nl"], {})
    records = detect_incompleteness(grid, matrix, ["en", "de", "zh", "it", "nl"])
    langs = sorted(next(iter(r.values)) for r in records)
    assert langs == ["de", "en", "nl", "zh"]
    assert all(r.cls == "Incompleteness" for r in records)


def test_attribute_present_everywhere_no_records():
    rank = AttributeKey("rank", {})
    grid = GridStub("fam", [rank], ["en", "de"], [[True, True]])
    records = detect_incompleteness(grid, MatrixStub(["en", "de"], {}), ["en", "de"])
    assert records == []


def test_row_level_incompleteness_names_absent_language():
    q = EntityKey("qid", "Q445860")
    rows = {(q, lang): [(0, 11)] for lang in ["en", "de", "zh", "it"]}
    matrix = MatrixStub(["en", "de", "zh", "it", "nl"], rows)
    grid = GridStub("fam", [], ["en", "de", "zh", "it", "nl"], [])
    records = detect_incompleteness(grid, matrix, ["en", "de", "zh", "it", "nl"])
    assert len(records) == 1
    assert records[0].entity == q
    assert list(records[0].values) == ["nl"]


def test_surface_entities_generate_no_row_level_records():
    s = EntityKey("surface", "everest", "en")
    matrix = MatrixStub(["en", "de"], {(s, "en"): [(0, 0)]})
    grid = GridStub("fam", [], ["en", "de"], [])
    assert detect_incompleteness(grid, matrix, ["en", "de"]) == []


def test_text_divergence_reported_without_class():
    by_lang = {"en": parse_value("Himalayas", "en"), "de": parse_value("Himalaya", "de")}
    findings = detect_text_divergence("fam", AttributeKey("range", {}), {E: by_lang})
    assert len(findings) == 1
    assert findings[0]["kind"] == "text-divergence"
    same = {"en": parse_value("Nepal", "en"), "de": parse_value("Nepal", "de")}
    assert detect_text_divergence("fam", AttributeKey("country", {}), {E: same}) == []


def test_zero_vs_nonzero_conflicts_with_infinite_severity():
    by_lang = {"en": parse_value("0", "en"), "de": parse_value("5", "de")}
    records, _ = detect_conflicts("fam", HEIGHT, {E: by_lang}, rel_tol=0.0)
    assert len(records) == 1
    assert records[0].severity == math.inf
    from tablediff.pipeline import record_to_json
    serialized = record_to_json(records[0])
    assert serialized["severity"] is None  # stays standard-JSON parseable
