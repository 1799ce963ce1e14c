"""Synthetic dataset builders shared across the test suite."""

from __future__ import annotations

import random

from schemamatch import Dataset, GroundTruth, from_columns

CATEGORY_POOLS = {
    "species": ["eucalyptus rossii", "acacia dealbata", "callitris pinea",
                "banksia serrata", "melaleuca alternifolia"],
    "stratum": ["upper", "mid", "ground"],
    "landform": ["plain", "ridge", "gully", "dune", "slope", "crest",
                 "flat", "scarp"],
}

NUMERIC_MIX = {
    # label -> (anchor coefficient, noise scale, offset)
    "height": (1.0, 0.0, 0.0),       # the anchor column itself
    "cover": (0.9, 3.0, 5.0),
    "density": (-0.8, 4.0, 120.0),
    "slope": (0.4, 8.0, 12.0),
    "aspect": (0.0, 10.0, 180.0),
}


def correlated_columns(n_rows: int, seed: int) -> dict[str, list]:
    """Columns with an engineered spread of correlations to the anchor."""
    rng = random.Random(seed)
    anchor = [rng.uniform(0.0, 30.0) for _ in range(n_rows)]
    columns: dict[str, list] = {}
    for label, (coeff, noise, offset) in NUMERIC_MIX.items():
        if label == "height":
            columns[label] = list(anchor)
        else:
            columns[label] = [
                offset + coeff * a + rng.gauss(0.0, noise) for a in anchor
            ]
    for label, pool in CATEGORY_POOLS.items():
        weights = [2.0 ** -i for i in range(len(pool))]
        columns[label] = rng.choices(pool, weights=weights, k=n_rows)
    return columns


def renamed_copy_pair(
    n_rows: int = 1200, seed: int = 7
) -> tuple[Dataset, Dataset, GroundTruth]:
    """Source table plus an exact copy with renamed headers, and its truth."""
    columns = correlated_columns(n_rows, seed)
    source = from_columns(
        "field_survey", {f"{label}_obs": v for label, v in columns.items()}
    )
    dest = from_columns(
        "registry", {f"{label}_rec": v for label, v in columns.items()}
    )
    truth = GroundTruth(
        tuple((f"{label}_obs", f"{label}_rec") for label in columns)
    )
    return source, dest, truth


def noised_copy_pair(
    n_rows: int = 400, seed: int = 7, noise_fraction: float = 0.2
) -> tuple[Dataset, Dataset, GroundTruth]:
    """Renamed copy whose destination has a fraction of cells perturbed."""
    columns = correlated_columns(n_rows, seed)
    rng = random.Random(seed + 1)
    noised: dict[str, list] = {}
    for label, values in columns.items():
        out = list(values)
        for i in range(n_rows):
            if rng.random() >= noise_fraction:
                continue
            if isinstance(out[i], float):
                out[i] = out[i] + rng.gauss(0.0, 5.0)
            else:
                pool = CATEGORY_POOLS[label]
                out[i] = rng.choice(pool)
        noised[label] = out
    source = from_columns(
        "field_survey", {f"{label}_obs": v for label, v in columns.items()}
    )
    dest = from_columns(
        "registry", {f"{label}_rec": v for label, v in noised.items()}
    )
    truth = GroundTruth(
        tuple((f"{label}_obs", f"{label}_rec") for label in columns)
    )
    return source, dest, truth


def mirrored_trio_pair(n_rows: int = 300, seed: int = 3) -> tuple[Dataset, Dataset]:
    """3x3 datasets whose within-table correlation structures mirror exactly.

    a2/b2 track the anchor strongly, a3/b3 are independent of it; the
    destination columns hold the same data under different names.
    """
    rng = random.Random(seed)
    a1 = [rng.uniform(0.0, 10.0) for _ in range(n_rows)]
    a2 = [0.8 * v + rng.gauss(0.0, 1.0) for v in a1]
    a3 = [rng.uniform(0.0, 10.0) for _ in range(n_rows)]
    source = from_columns("plots", {"a1": a1, "a2": a2, "a3": a3})
    dest = from_columns("registry", {"b1": a1, "b2": a2, "b3": a3})
    return source, dest


def random_dataset(
    name: str, n_attrs: int, n_rows: int, seed: int, null_rate: float = 0.05
) -> Dataset:
    """Arbitrary mixed-kind dataset for fuzz/property tests."""
    rng = random.Random(seed)
    columns: dict[str, list] = {}
    for i in range(n_attrs):
        col_name = rng.choice(
            [f"col{i}", f"attr_{i}", f"field{i}Code", f"u_value_{i}"]
        )
        if rng.random() < 0.5:
            col = [rng.gauss(rng.uniform(-5, 5), rng.uniform(0.5, 3.0))
                   for _ in range(n_rows)]
        else:
            pool = [f"v{j}" for j in range(rng.randint(1, 6))]
            col = [rng.choice(pool) for _ in range(n_rows)]
        columns[col_name] = [
            # keep row 0 so no column is ever entirely null
            v if j == 0 else (None if rng.random() < null_rate else v)
            for j, v in enumerate(col)
        ]
    return from_columns(name, columns)
