"""Tests for output encoding, digests, random streams and the task pool."""

from __future__ import annotations

import math
from operator import neg

import numpy as np
import pytest

from gasket_resistance.errors import ArgumentError, OutputError
from gasket_resistance.utils.csvio import format_csv, format_json, read_csv, write_csv
from gasket_resistance.utils.digest import digest_files, file_digest, mismatched_digests
from gasket_resistance.utils.pool import run_tasks
from gasket_resistance.utils.rng import Stream, make_rng
from gasket_resistance.utils.toon import encode_toon


class TestToon:
    def test_scalars(self):
        assert encode_toon({"status": "success", "count": 3, "ok": True, "value": None}) == (
            "status: success\ncount: 3\nok: true\nvalue: null"
        )

    def test_uniform_rows_are_tabular(self):
        text = encode_toon({"rows": [{"scale": 2.0, "median": 1.5}, {"scale": 4.0, "median": math.inf}]})
        assert text == "rows[2]{scale,median}:\n  2.0,1.5\n  4.0,inf"

    def test_nested_and_quoted(self):
        text = encode_toon({"walk": {"start": 0}, "error": "a: b", "files": []})
        assert text == 'walk:\n  start: 0\nerror: "a: b"\nfiles[0]:'

    def test_numpy_values(self):
        assert encode_toon({"n": np.int64(4), "xs": np.array([1, 2])}) == "n: 4\nxs[2]: 1,2"


class TestCsvJson:
    def test_fixed_layout(self):
        text = format_csv(("x", "r"), [(0, 0.5), (1, math.nan), (2, True)])
        assert text == "x,r\n0,0.5\n1,nan\n2,true\n"

    def test_row_width_checked(self):
        with pytest.raises(ValueError):
            format_csv(("a", "b"), [(1,)])

    def test_roundtrip(self, tmp_path):
        path = write_csv(tmp_path / "deep" / "t.csv", ("a", "b"), [(1, 2.25)])
        assert read_csv(path) == [{"a": "1", "b": "2.25"}]

    def test_json_sorted(self):
        assert format_json({"b": 1, "a": 2}).index('"a"') < format_json({"b": 1, "a": 2}).index('"b"')


class TestDigest:
    def test_digest_and_mismatch(self, tmp_path):
        a = tmp_path / "a.txt"
        a.write_text("alpha\n")
        digests = digest_files([a], tmp_path)
        assert list(digests) == ["a.txt"]
        assert mismatched_digests(digests, tmp_path) == []
        a.write_text("beta\n")
        assert mismatched_digests(digests, tmp_path) == ["a.txt"]
        a.unlink()
        assert mismatched_digests(digests, tmp_path) == ["a.txt"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(OutputError):
            file_digest(tmp_path / "none")


class TestStreams:
    def test_keys_reproduce(self):
        a = make_rng(5, 2, Stream.WALK).random(4)
        b = make_rng(5, 2, Stream.WALK).random(4)
        np.testing.assert_array_equal(a, b)

    def test_keys_are_independent(self):
        base = make_rng(5, 2, Stream.WALK).random(4)
        assert not np.array_equal(base, make_rng(5, 3, Stream.WALK).random(4))
        assert not np.array_equal(base, make_rng(5, 2, Stream.POISSON).random(4))
        assert not np.array_equal(base, make_rng(6, 2, Stream.WALK).random(4))

    def test_negative_seed(self):
        with pytest.raises(ArgumentError):
            make_rng(-1)


def test_run_tasks_keeps_order():
    assert run_tasks(neg, [1, 2, 3]) == [-1, -2, -3]
    assert run_tasks(neg, [1, 2, 3], threads=2) == [-1, -2, -3]
