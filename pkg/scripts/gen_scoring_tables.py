#!/usr/bin/env python3
"""Regenerate the bundled assessment scoring tables (CSV with citations).

Transcription sources:
  RULA tables A/B/C  - McAtamney & Corlett (1993), Appl Ergon 24(2)
  REBA tables A/B/C  - Hignett & McAtamney (2000), Appl Ergon 31(2)
  OWAS categories    - Karhu, Kansi & Kuorinka (1977), as commonly tabulated
  NIOSH FM/CM        - Waters, Putz-Anderson, Garg & Fine (1993) and the
                       Applications Manual for the Revised Lifting Equation
  Snook subset       - Snook & Ciriello (1991), Liberty Mutual tables
                       (lift + carry, 75th percentile subset)

Run from the repo root: python scripts/gen_scoring_tables.py
"""

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "openj" / "data" / "tables"

RULA_CITE = "McAtamney & Corlett (1993) RULA, Appl Ergon 24(2)"
REBA_CITE = "Hignett & McAtamney (2000) REBA, Appl Ergon 31(2)"
OWAS_CITE = "Karhu et al. (1977) OWAS action categories"
NIOSH_CITE = "Waters et al. (1993) revised NIOSH lifting equation"
SNOOK_CITE = "Snook & Ciriello (1991) Liberty Mutual tables, 75th percentile subset"

# ---------------------------------------------------------------------------
# RULA Table A: [upper arm 1-6][lower arm 1-3][wrist 1-4] -> (twist1, twist2)
RULA_A = {
    1: {1: [(1, 2), (2, 2), (2, 3), (3, 3)],
        2: [(2, 2), (2, 2), (3, 3), (3, 3)],
        3: [(2, 3), (3, 3), (3, 3), (4, 4)]},
    2: {1: [(2, 3), (3, 3), (3, 4), (4, 4)],
        2: [(3, 3), (3, 3), (3, 4), (4, 4)],
        3: [(3, 4), (4, 4), (4, 4), (5, 5)]},
    3: {1: [(3, 3), (4, 4), (4, 4), (5, 5)],
        2: [(3, 4), (4, 4), (4, 4), (5, 5)],
        3: [(4, 4), (4, 4), (4, 5), (5, 5)]},
    4: {1: [(4, 4), (4, 4), (4, 5), (5, 5)],
        2: [(4, 4), (4, 4), (4, 5), (5, 5)],
        3: [(4, 4), (4, 5), (5, 5), (6, 6)]},
    5: {1: [(5, 5), (5, 5), (5, 6), (6, 7)],
        2: [(5, 6), (6, 6), (6, 7), (7, 7)],
        3: [(6, 6), (6, 7), (7, 7), (7, 8)]},
    6: {1: [(7, 7), (7, 7), (7, 8), (8, 9)],
        2: [(8, 8), (8, 8), (8, 9), (9, 9)],
        3: [(9, 9), (9, 9), (9, 9), (9, 9)]},
}

# RULA Table B: [neck 1-6][trunk 1-6] -> (legs1, legs2)
RULA_B = {
    1: [(1, 3), (2, 3), (3, 4), (5, 5), (6, 6), (7, 7)],
    2: [(2, 3), (2, 3), (4, 5), (5, 5), (6, 7), (7, 7)],
    3: [(3, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 7)],
    4: [(5, 5), (5, 6), (6, 7), (7, 7), (7, 7), (8, 8)],
    5: [(7, 7), (7, 7), (7, 8), (8, 8), (8, 8), (8, 8)],
    6: [(8, 8), (8, 8), (8, 8), (8, 9), (9, 9), (9, 9)],
}

# RULA Table C: rows score C (wrist/arm, 1..8+), cols score D (neck/trunk/legs, 1..7+)
RULA_C = [
    [1, 2, 3, 3, 4, 5, 5],
    [2, 2, 3, 4, 4, 5, 5],
    [3, 3, 3, 4, 4, 5, 6],
    [3, 3, 3, 4, 5, 6, 6],
    [4, 4, 4, 5, 6, 7, 7],
    [4, 4, 5, 6, 6, 7, 7],
    [5, 5, 6, 6, 7, 7, 7],
    [5, 5, 6, 7, 7, 7, 7],
]

# REBA Table A: [neck 1-3][trunk 1-5] -> legs 1-4
REBA_A = {
    1: {1: [1, 2, 3, 4], 2: [2, 3, 4, 5], 3: [2, 4, 5, 6], 4: [3, 5, 6, 7], 5: [4, 6, 7, 8]},
    2: {1: [1, 2, 3, 4], 2: [3, 4, 5, 6], 3: [4, 5, 6, 7], 4: [5, 6, 7, 8], 5: [6, 7, 8, 9]},
    3: {1: [3, 3, 5, 6], 2: [4, 5, 6, 7], 3: [5, 6, 7, 8], 4: [6, 7, 8, 9], 5: [7, 8, 9, 9]},
}

# REBA Table B: [lower arm 1-2][upper arm 1-6] -> wrist 1-3
REBA_B = {
    1: {1: [1, 2, 2], 2: [1, 2, 3], 3: [3, 4, 5], 4: [4, 5, 5], 5: [6, 7, 8], 6: [7, 8, 8]},
    2: {1: [1, 2, 3], 2: [2, 3, 4], 3: [4, 5, 5], 4: [5, 6, 7], 5: [7, 8, 8], 6: [8, 9, 9]},
}

# REBA Table C: rows score A 1-12, cols score B 1-12
REBA_C = [
    [1, 1, 1, 2, 3, 3, 4, 5, 6, 7, 7, 7],
    [1, 2, 2, 3, 4, 4, 5, 6, 6, 7, 7, 8],
    [2, 3, 3, 3, 4, 5, 6, 7, 7, 8, 8, 8],
    [3, 4, 4, 4, 5, 6, 7, 8, 8, 9, 9, 9],
    [4, 4, 4, 5, 6, 7, 8, 8, 9, 9, 9, 9],
    [6, 6, 6, 7, 8, 8, 9, 9, 10, 10, 10, 10],
    [7, 7, 7, 8, 9, 9, 9, 10, 10, 11, 11, 11],
    [8, 8, 8, 9, 10, 10, 10, 10, 10, 11, 11, 11],
    [9, 9, 9, 10, 10, 10, 11, 11, 11, 12, 12, 12],
    [10, 10, 10, 11, 11, 11, 11, 12, 12, 12, 12, 12],
    [11, 11, 11, 11, 12, 12, 12, 12, 12, 12, 12, 12],
    [12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12],
]

# OWAS action categories: [back 1-4][arms 1-3][legs 1-7] -> "<load1><load2><load3>"
OWAS = {
    1: {1: ["111", "111", "111", "222", "222", "111", "111"],
        2: ["111", "111", "111", "222", "222", "111", "111"],
        3: ["111", "111", "111", "223", "223", "112", "112"]},
    2: {1: ["223", "223", "223", "334", "334", "223", "233"],
        2: ["223", "223", "233", "344", "344", "334", "234"],
        3: ["334", "223", "333", "344", "444", "444", "234"]},
    3: {1: ["111", "111", "112", "333", "444", "111", "111"],
        2: ["223", "111", "112", "444", "444", "333", "111"],
        3: ["223", "111", "233", "444", "444", "444", "111"]},
    4: {1: ["233", "223", "223", "444", "444", "444", "234"],
        2: ["334", "234", "334", "444", "444", "444", "234"],
        3: ["444", "234", "334", "444", "444", "444", "234"]},
}

# NIOSH frequency multiplier: freq (lifts/min) -> {duration: (V<75cm, V>=75cm)}
NIOSH_FM = [
    (0.2, (1.00, 1.00), (0.95, 0.95), (0.85, 0.85)),
    (0.5, (0.97, 0.97), (0.92, 0.92), (0.81, 0.81)),
    (1.0, (0.94, 0.94), (0.88, 0.88), (0.75, 0.75)),
    (2.0, (0.91, 0.91), (0.84, 0.84), (0.65, 0.65)),
    (3.0, (0.88, 0.88), (0.79, 0.79), (0.55, 0.55)),
    (4.0, (0.84, 0.84), (0.72, 0.72), (0.45, 0.45)),
    (5.0, (0.80, 0.80), (0.60, 0.60), (0.35, 0.35)),
    (6.0, (0.75, 0.75), (0.50, 0.50), (0.27, 0.27)),
    (7.0, (0.70, 0.70), (0.42, 0.42), (0.22, 0.22)),
    (8.0, (0.60, 0.60), (0.35, 0.35), (0.18, 0.18)),
    (9.0, (0.52, 0.52), (0.30, 0.30), (0.00, 0.15)),
    (10.0, (0.45, 0.45), (0.26, 0.26), (0.00, 0.13)),
    (11.0, (0.41, 0.41), (0.00, 0.23), (0.00, 0.00)),
    (12.0, (0.37, 0.37), (0.00, 0.21), (0.00, 0.00)),
    (13.0, (0.00, 0.34), (0.00, 0.00), (0.00, 0.00)),
    (14.0, (0.00, 0.31), (0.00, 0.00), (0.00, 0.00)),
    (15.0, (0.00, 0.28), (0.00, 0.00), (0.00, 0.00)),
]

NIOSH_CM = {"good": (1.00, 1.00), "fair": (0.95, 1.00), "poor": (0.90, 0.90)}

# Snook/Liberty Mutual subset: (action, sex, percentile) -> {distance: {freq: kg}}
_FREQS = (0.2, 0.5, 1.0, 4.3, 6.7, 12.0)
SNOOK = {
    ("lift", "male", 75): {
        25: (30, 27, 25, 20, 17, 14),
        51: (27, 25, 23, 18, 15, 12),
        76: (25, 23, 21, 16, 13, 10),
    },
    ("lift", "female", 75): {
        25: (18, 17, 16, 13, 11, 9),
        51: (16, 15, 14, 11, 9, 8),
        76: (15, 14, 13, 10, 8, 7),
    },
    ("carry", "male", 75): {
        2.1: (30, 28, 26, 21, 18, 14),
        4.3: (28, 26, 24, 19, 16, 12),
        8.5: (25, 23, 21, 17, 14, 10),
    },
    ("carry", "female", 75): {
        2.1: (19, 18, 17, 14, 12, 9),
        4.3: (17, 16, 15, 12, 10, 8),
        8.5: (15, 14, 13, 10, 8, 6),
    },
}


def write_csv(name, header, rows):
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in row) for row in rows]
    (OUT / name).write_text("\n".join(lines) + "\n")
    print(f"{name}: {len(rows)} rows")


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    rows = []
    for ua, lowers in RULA_A.items():
        for la, wrists in lowers.items():
            for wi, (t1, t2) in enumerate(wrists, start=1):
                rows.append([ua, la, wi, 1, t1, f'"{RULA_CITE} Table A"'])
                rows.append([ua, la, wi, 2, t2, f'"{RULA_CITE} Table A"'])
    write_csv("rula_table_a.csv",
              ["upper_arm", "lower_arm", "wrist", "wrist_twist", "score", "source_citation"], rows)

    rows = []
    for neck, trunks in RULA_B.items():
        for ti, (l1, l2) in enumerate(trunks, start=1):
            rows.append([neck, ti, 1, l1, f'"{RULA_CITE} Table B"'])
            rows.append([neck, ti, 2, l2, f'"{RULA_CITE} Table B"'])
    write_csv("rula_table_b.csv", ["neck", "trunk", "legs", "score", "source_citation"], rows)

    rows = []
    for c, row in enumerate(RULA_C, start=1):
        for d, grand in enumerate(row, start=1):
            rows.append([c, d, grand, f'"{RULA_CITE} Table C"'])
    write_csv("rula_table_c.csv", ["score_c", "score_d", "grand", "source_citation"], rows)

    rows = []
    for neck, trunks in REBA_A.items():
        for trunk, legs in trunks.items():
            for li, score in enumerate(legs, start=1):
                rows.append([trunk, neck, li, score, f'"{REBA_CITE} Table A"'])
    write_csv("reba_table_a.csv", ["trunk", "neck", "legs", "score", "source_citation"], rows)

    rows = []
    for la, uppers in REBA_B.items():
        for ua, wrists in uppers.items():
            for wi, score in enumerate(wrists, start=1):
                rows.append([ua, la, wi, score, f'"{REBA_CITE} Table B"'])
    write_csv("reba_table_b.csv",
              ["upper_arm", "lower_arm", "wrist", "score", "source_citation"], rows)

    rows = []
    for a, row in enumerate(REBA_C, start=1):
        for b, score in enumerate(row, start=1):
            rows.append([a, b, score, f'"{REBA_CITE} Table C"'])
    write_csv("reba_table_c.csv", ["score_a", "score_b", "score", "source_citation"], rows)

    rows = []
    for back, arms_map in OWAS.items():
        for arms, legs_list in arms_map.items():
            for legs, cats in enumerate(legs_list, start=1):
                for load, cat in enumerate(cats, start=1):
                    rows.append([back, arms, legs, load, int(cat), f'"{OWAS_CITE}"'])
    write_csv("owas_categories.csv",
              ["back", "arms", "legs", "load", "category", "source_citation"], rows)

    rows = []
    for freq, d1, d2, d8 in NIOSH_FM:
        for duration, pair in (("1h", d1), ("2h", d2), ("8h", d8)):
            rows.append([freq, duration, f"{pair[0]:.2f}", f"{pair[1]:.2f}",
                         f'"{NIOSH_CITE} Table 5 (FM)"'])
    write_csv("niosh_fm.csv",
              ["freq_per_min", "duration", "v_below_75", "v_at_or_above_75", "source_citation"],
              rows)

    rows = [
        [name, f"{lo:.2f}", f"{hi:.2f}", f'"{NIOSH_CITE} Table 7 (CM)"']
        for name, (lo, hi) in NIOSH_CM.items()
    ]
    write_csv("niosh_cm.csv",
              ["coupling", "v_below_75", "v_at_or_above_75", "source_citation"], rows)

    rows = []
    for (action, sex, pct), grid in SNOOK.items():
        for dist, limits in grid.items():
            for freq, kg in zip(_FREQS, limits):
                rows.append([action, sex, pct, freq, dist, kg, f'"{SNOOK_CITE}"'])
    write_csv("snook.csv",
              ["action", "sex", "percentile", "frequency_per_min", "distance", "limit_kg",
               "source_citation"], rows)


if __name__ == "__main__":
    main()
