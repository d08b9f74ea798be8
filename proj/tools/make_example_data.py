#!/usr/bin/env python3
"""Regenerate the synthetic example type days in data/example/profiles.

Each profile is a base load plus a morning, a midday and an evening peak.
Seasons differ in shape (long winter evenings, a summer midday bump) while
daily energy stays close, since the seasonal level comes from the monthly
totals. Weekends have a later, broader morning peak. Spring and autumn share
the "transition" profiles.
"""

import math
import pathlib

DT = 0.25
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "example" / "profiles"

SEASONS = {
    # base, morning, midday, evening
    "winter": (0.50, 1.10, 0.10, 1.70),
    "transition": (0.55, 1.00, 0.30, 1.30),
    "summer": (0.55, 0.80, 0.80, 0.90),
}

DAY_TYPES = {
    "weekday": ((7.0, 1.0), (13.5, 2.0), (19.0, 1.8)),
    "weekend": ((9.5, 1.8), (13.5, 2.0), (18.5, 2.2)),
}


def bump(t, centre, width):
    return math.exp(-0.5 * ((t - centre) / width) ** 2)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    steps = int(round(24 / DT))
    for season, (base, morning, midday, evening) in SEASONS.items():
        for day_type, ((m_c, m_w), (d_c, d_w), (e_c, e_w)) in DAY_TYPES.items():
            rows = ["time_h,value"]
            for k in range(steps):
                t = k * DT
                v = base + morning * bump(t, m_c, m_w) + midday * bump(t, d_c, d_w) + evening * bump(t, e_c, e_w)
                rows.append(f"{t:g},{v:.4f}")
            (OUT / f"{season}_{day_type}.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
