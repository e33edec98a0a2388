import numpy as np
import pytest

from omcolors import observed_exponent_span, parse_csv
from omcolors.errors import NoValidRows, ParseError, SchemaError


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_nan_token_masks_row(tmp_path):
    path = write(tmp_path, "time,height,value\n1,2,3e-5\n2,3,NaN\n3,4,4e-4\n")
    series = parse_csv(path)
    assert len(series) == 3
    assert series.n_masked == 1
    assert series.mask.tolist() == [False, True, False]
    assert series.mask_reasons[1] == "missing-value"


def test_negative_value_masked_as_non_positive(tmp_path):
    path = write(tmp_path, "time,height,value\n1,2,-3e-5\n2,3,4e-4\n")
    series = parse_csv(path)
    assert series.mask.tolist() == [True, False]
    assert series.mask_reasons[0] == "non-positive"


def test_header_only_file(tmp_path):
    path = write(tmp_path, "time,height,value\n")
    with pytest.raises(NoValidRows):
        parse_csv(path)


def test_all_rows_masked(tmp_path):
    path = write(tmp_path, "time,height,value\n1,2,NaN\n2,3,-1\n")
    with pytest.raises(NoValidRows):
        parse_csv(path)


def test_missing_column_is_schema_error(tmp_path):
    path = write(tmp_path, "time,height,iwc\n1,2,3e-5\n")
    with pytest.raises(SchemaError):
        parse_csv(path)


def test_value_column_by_name(tmp_path):
    path = write(tmp_path, "time,height,iwc\n1,2,3e-5\n")
    series = parse_csv(path, value_col="iwc")
    assert series.n_valid == 1
    assert series.metadata["variable"] == "iwc"


def test_headerless_positional_fallback(tmp_path):
    path = write(tmp_path, "1,2,3e-5\n2,3,4e-4\n")
    series = parse_csv(path)
    assert series.n_valid == 2
    assert series.value.tolist() == [3e-5, 4e-4]


def test_custom_delimiter(tmp_path):
    path = write(tmp_path, "time;height;value\n1;2;3e-5\n")
    series = parse_csv(path, delimiter=";")
    assert series.n_valid == 1


def test_short_row_is_parse_error(tmp_path):
    path = write(tmp_path, "time,height,value\n1,2,3e-5\n1,2\n")
    with pytest.raises(ParseError, match=":3"):
        parse_csv(path)


def test_unparseable_value_masked(tmp_path):
    path = write(tmp_path, "time,height,value\n1,2,abc\n2,3,1e-4\n")
    series = parse_csv(path)
    assert series.mask_reasons[0] == "unparseable-value"


def test_out_of_range_time_masked(tmp_path):
    path = write(tmp_path, "time,height,value\n25,2,1e-5\n2,3,1e-4\n")
    series = parse_csv(path)
    assert series.mask_reasons[0] == "out-of-range-time"
    assert series.n_valid == 1


def test_custom_ranges(tmp_path):
    path = write(tmp_path, "time,height,value\n47.5,2,1e-5\n")
    series = parse_csv(path, time_range=(0.0, 48.0))
    assert series.n_valid == 1


def test_parse_is_deterministic(tmp_path, day_csv):
    s1 = parse_csv(day_csv)
    s2 = parse_csv(day_csv)
    assert np.array_equal(s1.time, s2.time, equal_nan=True)
    assert np.array_equal(s1.height, s2.height, equal_nan=True)
    assert np.array_equal(s1.value, s2.value, equal_nan=True)
    assert np.array_equal(s1.mask, s2.mask)
    assert s1.mask_reasons == s2.mask_reasons


def test_mask_counts(day_csv):
    series = parse_csv(day_csv)
    counts = series.mask_counts()
    assert counts["missing-value"] == 2  # "NaN" and "-999" tokens
    assert counts["non-positive"] == 1
    assert series.n_masked == 3


def test_masked_rows_do_not_affect_span(tmp_path):
    path = write(
        tmp_path,
        "time,height,value\n1,2,2e-8\n2,3,5e-3\n3,4,-1e+20\n4,5,NaN\n",
    )
    series = parse_csv(path)
    assert observed_exponent_span(series) == (-8, -3)


def test_observed_span_single_value(tmp_path):
    path = write(tmp_path, "time,height,value\n1,2,1.0\n")
    assert observed_exponent_span(parse_csv(path)) == (0, 0)


def test_observed_span_full_range(big_day):
    e_min, e_max = observed_exponent_span(big_day)
    assert e_min == -8
    assert e_max == -2


def test_value_range_positive(day_csv):
    series = parse_csv(day_csv)
    vmin, vmax = series.value_range()
    assert 0.0 < vmin < vmax
