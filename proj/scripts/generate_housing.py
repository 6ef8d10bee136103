#!/usr/bin/env python3
"""Regenerate data/housing_synth.csv, the bundled synthetic housing table.

The table mimics a metropolitan listings extract: coordinates, distance to
the central business district, dwelling size fields, and a price-per-sqm
response. Prices are deliberately right-skewed — a broad suburban bulk plus
a thin, expensive inner-city tail — which is the response shape the
oversampled estimator targets. Only the Python standard library is used and
the output is fully determined by SEED.
"""

import csv
import math
import random
from pathlib import Path

SEED = 20240817
ROWS = 2000
CBD_LON, CBD_LAT = 144.96, -37.81
OUT = Path(__file__).resolve().parent.parent / "data" / "housing_synth.csv"


def main() -> None:
    rng = random.Random(SEED)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["longitude", "latitude", "distance_cbd_km", "rooms", "land_sqm", "price_per_sqm"])
        for _ in range(ROWS):
            lon = rng.uniform(144.6, 145.4)
            lat = rng.uniform(-38.1, -37.5)
            # flat-earth approximation is plenty at metro scale
            east_km = (lon - CBD_LON) * 88.0
            north_km = (lat - CBD_LAT) * 111.0
            dist = math.hypot(east_km, north_km) + abs(rng.gauss(0.0, 0.3))
            rooms = rng.choices([1, 2, 3, 4, 5], weights=[8, 24, 38, 22, 8])[0]
            land = rng.uniform(120.0, 900.0)
            price = (
                1800.0
                + 9000.0 * math.exp(-((dist / 3.5) ** 2))  # inner-city spike
                + 150.0 * rooms
                - 0.4 * land
                + rng.gauss(0.0, 250.0)
            )
            price = max(price, 400.0)
            writer.writerow([
                f"{lon:.6f}",
                f"{lat:.6f}",
                f"{dist:.4f}",
                rooms,
                f"{land:.2f}",
                f"{price:.2f}",
            ])
    print(f"wrote {ROWS} rows to {OUT}")


if __name__ == "__main__":
    main()
