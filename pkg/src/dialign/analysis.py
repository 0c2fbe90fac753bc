"""Aggregation of change records and the LS vs non-LS permutation contrast.

The contrast permutes location labels, not word records: words within a
location are correlated, so the location is the exchangeable unit under
the null hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import GROUPS, GroupMap
from .errors import DegenerateContrast, MissingCoordinates, UnmappedLocation
from .triple import ChangeRecord


@dataclass(frozen=True)
class GroupSummary:
    group: str
    mean_conv: float | None
    mean_div: float | None
    n_records: int
    locations: tuple[str, ...]


@dataclass(frozen=True)
class ContrastResult:
    measure: str  # "conv" or "div"
    statistic: float  # mean over LS location means minus non-LS
    p_value: float
    n_permutations: int
    direction: str  # e.g. "conv_higher_in_ls"


def summarize(
    records: list[ChangeRecord], groups: GroupMap
) -> list[GroupSummary]:
    """One summary per dialect group, plus an overall summary ("ALL")."""
    for r in records:
        if r.location not in groups.assignments:
            raise UnmappedLocation(f"location {r.location!r} has no group")
    # fixed reduction order makes results independent of input order
    records = sorted(records, key=lambda r: (r.location, r.word))

    summaries = []
    for group in GROUPS + ("ALL",):
        members = [
            r
            for r in records
            if group == "ALL" or groups.group(r.location) == group
        ]
        locations = tuple(sorted({r.location for r in members}))
        if members:
            mean_conv = sum(r.conv for r in members) / len(members)
            mean_div = sum(r.div for r in members) / len(members)
        else:
            mean_conv = mean_div = None
        summaries.append(
            GroupSummary(group, mean_conv, mean_div, len(members), locations)
        )
    return summaries


def _location_means(records: list[ChangeRecord], measure: str) -> dict[str, float]:
    sums: dict[str, list[float]] = {}
    for r in sorted(records, key=lambda r: (r.location, r.word)):
        value = r.conv if measure == "conv" else r.div
        sums.setdefault(r.location, []).append(value)
    return {loc: float(np.mean(vals)) for loc, vals in sums.items()}


def permutation_contrast(
    records: list[ChangeRecord],
    groups: GroupMap,
    measure: str,
    n_perm: int = 9999,
    seed: int = 0,
) -> ContrastResult:
    """Two-sided location-permutation test of the LS vs non-LS contrast.

    The statistic is the difference between the mean of per-location
    means in the LS group and in the combined other groups. The p-value
    uses the add-one correction.
    """
    if measure not in ("conv", "div"):
        raise ValueError(f"measure must be 'conv' or 'div', got {measure!r}")
    if n_perm < 999:
        raise ValueError("n_perm must be >= 999")
    for r in records:
        if r.location not in groups.assignments:
            raise UnmappedLocation(f"location {r.location!r} has no group")

    loc_means = _location_means(records, measure)
    locations = sorted(loc_means)
    values = np.array([loc_means[loc] for loc in locations])
    is_ls = np.array([groups.is_ls(loc) for loc in locations])
    n_ls = int(is_ls.sum())
    if n_ls == 0 or n_ls == len(locations):
        raise DegenerateContrast(
            f"contrast needs locations on both sides (LS={n_ls} of {len(locations)})"
        )

    observed = float(values[is_ls].mean() - values[~is_ls].mean())
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(n_perm):
        perm = rng.permutation(is_ls)
        stat = values[perm].mean() - values[~perm].mean()
        if abs(stat) >= abs(observed):
            hits += 1
    p_value = (hits + 1) / (n_perm + 1)
    direction = f"{measure}_{'higher' if observed > 0 else 'lower'}_in_ls"
    return ContrastResult(measure, observed, p_value, n_perm, direction)


def export_geo(
    records: list[ChangeRecord], coords: dict[str, tuple[float, float]]
) -> str:
    """CSV of per-location mean convergence/divergence for external plotting."""
    by_loc: dict[str, list[ChangeRecord]] = {}
    for r in records:
        by_loc.setdefault(r.location, []).append(r)
    lines = ["location,lon,lat,mean_conv,mean_div"]
    for loc in sorted(by_loc):
        if loc not in coords:
            raise MissingCoordinates(f"no coordinates for location {loc!r}")
        lon, lat = coords[loc]
        rs = by_loc[loc]
        mean_conv = sum(r.conv for r in rs) / len(rs)
        mean_div = sum(r.div for r in rs) / len(rs)
        lines.append(f"{loc},{lon:.6f},{lat:.6f},{mean_conv:.6f},{mean_div:.6f}")
    return "\n".join(lines) + "\n"
