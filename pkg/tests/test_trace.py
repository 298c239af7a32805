"""Trace construction and CSV serialization."""

import numpy as np
import pytest

from molcav.errors import DomainError
from molcav.models.trace import Trace, write_traces_csv
from molcav.utils.common import format_number, read_table_csv


def _trace(**kwargs):
    return Trace([0.0, 0.1, 0.2], [1.0, 2.5, -3e-12], x_label="time", x_unit="s",
                 y_label="counts", y_unit="arb", **kwargs)


def test_arrays_are_read_only():
    trace = _trace()
    with pytest.raises(ValueError):
        trace.y[0] = 5.0


@pytest.mark.parametrize("x, y", [
    ([0.0, 0.0, 1.0], [1.0, 2.0, 3.0]),
    ([0.0, 1.0], [1.0, 2.0, 3.0]),
    ([0.0], [1.0]),
    ([0.0, np.nan], [1.0, 2.0]),
])
def test_invalid_samples(x, y):
    with pytest.raises(DomainError):
        Trace(x, y)


def test_column_length_checked():
    with pytest.raises(DomainError, match="column 'sigma'"):
        _trace(columns={"sigma": ([1.0, 1.0], "arb")})


def test_step_and_uniformity():
    trace = _trace()
    assert trace.step == pytest.approx(0.1)
    assert trace.is_uniform()
    assert not Trace([0.0, 1.0, 3.0], [0.0, 0.0, 0.0]).is_uniform()


def test_format_number_shortest_round_trip():
    assert format_number(0.1) == "0.1"
    assert format_number(np.float64(1e-12)) == "1e-12"
    assert format_number(np.int64(3)) == "3"
    assert format_number(True) == "True"


def test_csv_round_trip(tmp_path):
    trace = _trace(columns={"sigma": ([0.1, 0.1, 0.2], "arb")}, tags={"model": "eq1"})
    path = trace.write_csv(tmp_path / "traces" / "t.csv")

    names, units, rows = read_table_csv(path)
    assert names == ["time", "counts", "sigma", "model"]
    assert units == ["s", "arb", "arb", ""]
    assert rows[0] == ["0.0", "1.0", "0.1", "eq1"]

    back = Trace.read_csv(path)
    np.testing.assert_array_equal(back.x, trace.x)
    np.testing.assert_array_equal(back.y, trace.y)
    np.testing.assert_array_equal(back.sigma, [0.1, 0.1, 0.2])
    assert back.tags == {"model": "eq1"}
    assert (back.x_unit, back.y_unit) == ("s", "arb")


def test_stacked_traces_share_one_file(tmp_path):
    linear = _trace(tags={"model": "linear"})
    eq1 = _trace(tags={"model": "eq1"})
    path = write_traces_csv(tmp_path / "extinction.csv", [linear, eq1])
    _, _, rows = read_table_csv(path)
    assert len(rows) == 6
    assert [r[-1] for r in rows] == ["linear"] * 3 + ["eq1"] * 3


def test_stacked_traces_must_match(tmp_path):
    with pytest.raises(ValueError, match="share columns and tags"):
        write_traces_csv(tmp_path / "bad.csv", [_trace(tags={"model": "linear"}), _trace()])


def test_derivations_keep_metadata():
    trace = _trace(tags={"model": "linear"})
    scaled = trace.with_y(2.0 * trace.y, y_label="double")
    assert scaled.y_label == "double"
    assert scaled.tags == {"model": "linear"}
    assert trace.with_tags(run="a").tags == {"model": "linear", "run": "a"}
    assert "sigma" in trace.with_column("sigma", [1.0, 1.0, 1.0]).columns
