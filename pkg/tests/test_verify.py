"""Suite drivers: grids, determinism, and report schema."""

import json

import pytest

from semilie import INFINITY, SweepConfig, run_suite
from semilie.verify import suite_miracle, suite_quaternion

SMALL = SweepConfig(r_max=2, sum_bc_max=3, ve_max=3, vda_max=2, quaternion_samples=20, precision=3)


def test_default_grid_shape():
    config = SweepConfig()
    assert config.vda_values() == [0, 1, 2, 3, 4, 5, 6, INFINITY]
    assert config.sum_bc_values() == [1, 3, 5, 7, 9, 11]
    reduced = list(config.reduced_tuples())
    assert len(reduced) == 7 * 6 * 11 * 8
    full = sum(1 for _ in config.full_tuples())
    assert full == 7 * sum(6 + s + 1 for s in (1, 3, 5, 7, 9, 11)) * 11 * 8


def test_runs_are_deterministic():
    a = suite_miracle(SMALL).to_json()
    b = suite_miracle(SMALL).to_json()
    assert a == b
    qa = suite_quaternion(SMALL).to_json()
    qb = suite_quaternion(SMALL).to_json()
    assert qa == qb


def test_reports_are_json_serialisable():
    for result in run_suite("intersection", SMALL):
        json.dumps(result.to_json())


def test_run_suite_aliases():
    names = [r.name for r in run_suite("intersection", SMALL)]
    assert names == ["miracle", "afl"]
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("bogus", SMALL)


def test_empty_ranges_rejected():
    with pytest.raises(ValueError):
        SweepConfig(r_max=-1)
