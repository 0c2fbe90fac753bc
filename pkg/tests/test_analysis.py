import random

import numpy as np
import pytest

from dialign.analysis import (
    export_geo,
    permutation_contrast,
    summarize,
)
from dialign.corpus import GroupMap
from dialign.errors import (
    DegenerateContrast,
    MissingCoordinates,
    UnmappedLocation,
)
from dialign.triple import ChangeRecord


def make_groups(n_ls=10, n_other=10):
    assignments = {}
    for i in range(n_ls):
        assignments[f"ls{i:02d}"] = "LS"
    for i in range(n_other):
        assignments[f"fr{i:02d}"] = "FR"
    return GroupMap(assignments)


def make_records(groups, rng, conv_shift_ls=0.0, n_words=30):
    records = []
    for loc, group in groups.assignments.items():
        shift = conv_shift_ls if group == "LS" else 0.0
        for w in range(n_words):
            conv = max(0.0, rng.gauss(0.02, 0.01) + shift)
            div = max(0.0, rng.gauss(0.014, 0.01))
            records.append(ChangeRecord(loc, f"w{w:02d}", conv, div, 10))
    return records


def test_summarize_headline_numbers():
    groups = make_groups()
    records = [
        ChangeRecord(loc, f"w{i}", 0.02, 0.014, 10)
        for loc in groups.assignments
        for i in range(5)
    ]
    summaries = {s.group: s for s in summarize(records, groups)}
    overall = summaries["ALL"]
    assert overall.mean_conv == pytest.approx(0.02)
    assert overall.mean_div == pytest.approx(0.014)
    assert overall.mean_conv + overall.mean_div == pytest.approx(0.034)
    assert summaries["GR"].n_records == 0
    assert summaries["GR"].mean_conv is None


def test_summarize_single_record():
    groups = GroupMap({"x": "LS"})
    summaries = {s.group: s for s in summarize([ChangeRecord("x", "w", 0.1, 0.2, 5)], groups)}
    assert summaries["LS"].mean_conv == 0.1
    assert summaries["LS"].mean_div == 0.2
    assert summaries["LS"].locations == ("x",)


def test_summarize_order_invariant():
    groups = make_groups(3, 3)
    rng = random.Random(1)
    records = make_records(groups, rng)
    shuffled = records[:]
    random.Random(2).shuffle(shuffled)
    assert summarize(records, groups) == summarize(shuffled, groups)


def test_summarize_unmapped_location():
    with pytest.raises(UnmappedLocation):
        summarize([ChangeRecord("nowhere", "w", 0.0, 0.0, 1)], GroupMap({}))


def test_contrast_deterministic_and_identity_statistic():
    groups = make_groups()
    records = make_records(groups, random.Random(5), conv_shift_ls=0.01)
    r1 = permutation_contrast(records, groups, "conv", n_perm=999, seed=42)
    r2 = permutation_contrast(records, groups, "conv", n_perm=999, seed=42)
    assert r1 == r2
    # observed statistic equals the group mean difference of location means
    by_loc = {}
    for r in records:
        by_loc.setdefault(r.location, []).append(r.conv)
    ls = [np.mean(v) for loc, v in by_loc.items() if groups.is_ls(loc)]
    other = [np.mean(v) for loc, v in by_loc.items() if not groups.is_ls(loc)]
    assert r1.statistic == pytest.approx(np.mean(ls) - np.mean(other))
    assert r1.direction == "conv_higher_in_ls"


def test_contrast_detects_injected_shift():
    groups = make_groups()
    hits = 0
    for seed in range(10):
        records = make_records(groups, random.Random(seed), conv_shift_ls=0.01)
        result = permutation_contrast(records, groups, "conv", n_perm=999, seed=seed)
        hits += result.p_value < 0.05
    assert hits >= 8  # power check: shift found in the clear majority of runs


def test_contrast_degenerate():
    groups = GroupMap({"a": "LS", "b": "LS"})
    records = [ChangeRecord("a", "w", 0.1, 0.1, 5), ChangeRecord("b", "w", 0.1, 0.1, 5)]
    with pytest.raises(DegenerateContrast):
        permutation_contrast(records, groups, "conv", n_perm=999, seed=0)


def test_contrast_rejects_low_n_perm():
    groups = make_groups(2, 2)
    records = make_records(groups, random.Random(0))
    with pytest.raises(ValueError):
        permutation_contrast(records, groups, "conv", n_perm=10, seed=0)


def test_export_geo():
    groups = make_groups(2, 2)
    records = make_records(groups, random.Random(0), n_words=3)
    coords = {loc: (5.0 + i, 52.0 + i) for i, loc in enumerate(sorted(groups.assignments))}
    csv_text = export_geo(records, coords)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "location,lon,lat,mean_conv,mean_div"
    assert len(lines) == 5


def test_export_geo_empty_records():
    assert export_geo([], {}) == "location,lon,lat,mean_conv,mean_div\n"


def test_export_geo_missing_coordinates():
    records = [ChangeRecord("x", "w", 0.1, 0.1, 5)]
    with pytest.raises(MissingCoordinates) as exc:
        export_geo(records, {})
    assert "x" in str(exc.value)
