#!/usr/bin/env python3
"""Builds the golden fixture and its expected outputs by plain arithmetic.

Every value is placed by hand below: a base (F1, F2) per speaker and vowel
plus a fixed offset column per realization. The expected metrics are then
worked out step by step (speaker means and SDs, z-scores as written to
normalized.csv, medians, distances, SDs, averages) and the intermediate
numbers go to worksheet.csv so each cell can be checked by eye.

Run from this directory: python3 make_golden.py
"""

import csv
import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))

# Offsets for realization k = 0..9, scaled per speaker.
D1 = [-24, -15, -8, -3, 0, 4, 9, 14, 22, 31]
D2 = [-60, -41, -22, -10, 0, 8, 19, 33, 47, 70]

# Default pipeline parameters, as embedded in every output.
PARAMS = {
    "analysis_rate": 10000,
    "lpc_order": 12,
    "preemphasis": 0.97,
    "lpc_frame_ms": 30.0,
    "lifter_ms": 3.2,
    "frame_ms": 25.0,
    "hop_ms": 10.0,
    "threshold_db": 10.0,
    "min_silence_ms": 50.0,
    "min_voiced_ms": 60.0,
    "floor_headroom_db": 30.0,
    "f1_min": 150.0,
    "f1_max": 1200.0,
    "f2_min": 500.0,
    "f2_max": 3500.0,
    "max_bandwidth": 400.0,
    "inventory": "bundled",
    "summary_weighting": "per-vowel",
    "matrix_vowels": "all",
}

# (system, speaker, src, tgt, role, spread, {vowel: (F1, F2)})
SPEAKERS = [
    ("natural", "de_male", "DE", "DE", "anchor", 0.5,
     {"i": (280, 2250), "u": (300, 750), "y": (280, 1700)}),
    ("natural", "ko_male", "KO", "KO", "anchor", 0.5,
     {"i": (290, 2200), "e": (450, 1900), "a": (750, 1250), "ʌ": (580, 1000),
      "o": (420, 800), "u": (330, 850), "ɯ": (340, 1350)}),
    ("tacotron", "en_female", "EN", "DE", "test", 1.0,
     {"i": (330, 2650), "u": (360, 1150), "y": (340, 2350)}),
    ("tacotron", "ja_female", "JA", "KO", "test", 1.0,
     {"i": (340, 2500), "u": (370, 1400), "ɯ": (360, 1550)}),
    ("glow", "en_female", "EN", "DE", "test", 0.6,
     {"i": (320, 2700), "u": (350, 1000), "y": (330, 2150)}),
    ("glow", "ja_female", "JA", "KO", "test", 0.6,
     {"i": (335, 2550), "u": (380, 1300), "ɯ": (365, 1700)}),
]

# Shared vowels of the two pairs under the bundled inventories.
SHARED = {("EN", "DE"): {"i", "u", "ə", "ɪ", "ɛ", "ɔ", "ʊ"}, ("JA", "KO"): {"a", "e", "i", "o", "u"}}


def g6(x):
    if x == 0:
        x = 0.0
    return "%.6g" % x


def r6(x):
    return float(g6(x))


def median(values):
    v = sorted(values)
    n = len(v)
    return v[n // 2] if n % 2 else (v[n // 2 - 1] + v[n // 2]) / 2.0


def mean(values):
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def pop_sd(values):
    m = mean(values)
    ss = 0.0
    for v in values:
        ss += (v - m) * (v - m)
    return math.sqrt(ss / len(values))


def radial_sd(points):
    n = len(points)
    m1 = mean([p[0] for p in points])
    m2 = mean([p[1] for p in points])
    ss = 0.0
    for z1, z2 in points:
        ss += (z1 - m1) * (z1 - m1) + (z2 - m2) * (z2 - m2)
    return math.sqrt(ss / n)


def param_lines():
    out = []
    for key in sorted(PARAMS):
        v = PARAMS[key]
        out.append("# %s = %s" % (key, v if isinstance(v, str) else json.dumps(v)))
    return out


def build_rows():
    rows = []
    for system, speaker, src, tgt, role, spread, vowels in SPEAKERS:
        for vi, (vowel, (b1, b2)) in enumerate(vowels.items()):
            for k in range(10):
                # Rotate the offset columns per vowel so vowels do not move in lockstep.
                # Later vowels in a list are also spread a little wider.
                j = (k + 3 * vi) % 10
                s = spread * (1.0 + 0.25 * vi)
                # Values are kept exactly as formants.csv spells them.
                f1 = r6(b1 + s * D1[j])
                f2 = r6(b2 + s * D2[(j + 5) % 10])
                rows.append(dict(system=system, speaker=speaker, src=src, tgt=tgt, vowel=vowel,
                                 role=role, idx=k, f1=f1, f2=f2))
    return rows


def main():
    rows = build_rows()
    work = []

    with open(os.path.join(HERE, "formants.csv"), "w", encoding="utf-8", newline="") as f:
        f.write("\n".join(param_lines()) + "\n")
        f.write("system,speaker,src_lang,tgt_lang,vowel,role,idx,f1_hz,f2_hz\n")
        for r in rows:
            f.write("%s,%s,%s,%s,%s,%s,%d,%s,%s\n" % (r["system"], r["speaker"], r["src"], r["tgt"], r["vowel"],
                                                      r["role"], r["idx"], g6(r["f1"]), g6(r["f2"])))

    # Step 1: per (system, speaker) Lobanov statistics; z as stored in normalized.csv.
    by_speaker = {}
    for r in rows:
        by_speaker.setdefault((r["system"], r["speaker"]), []).append(r)
    for (system, speaker), rs in sorted(by_speaker.items()):
        f1s = [r["f1"] for r in rs]
        f2s = [r["f2"] for r in rs]
        m1, m2, s1, s2 = mean(f1s), mean(f2s), pop_sd(f1s), pop_sd(f2s)
        work.append(["speaker", system, speaker, "", "", "mean_f1", repr(m1)])
        work.append(["speaker", system, speaker, "", "", "mean_f2", repr(m2)])
        work.append(["speaker", system, speaker, "", "", "sd_f1", repr(s1)])
        work.append(["speaker", system, speaker, "", "", "sd_f2", repr(s2)])
        for r in rs:
            r["z1"] = r6((r["f1"] - m1) / s1)
            r["z2"] = r6((r["f2"] - m2) / s2)

    # Step 2: anchors pooled per (target language, vowel), component-wise median.
    anchor_pts = {}
    for r in rows:
        if r["role"] == "anchor":
            anchor_pts.setdefault((r["tgt"], r["vowel"]), []).append((r["z1"], r["z2"]))
    anchors = {}
    for key, pts in sorted(anchor_pts.items()):
        anchors[key] = (median([p[0] for p in pts]), median([p[1] for p in pts]))
        work.append(["anchor", "", "", key[0], key[1], "median_z", "%r %r" % anchors[key]])

    # Step 3: test sets per (system, src, tgt, vowel), speakers pooled.
    tests = {}
    for r in rows:
        if r["role"] == "test":
            tests.setdefault((r["system"], r["src"], r["tgt"], r["vowel"]), []).append((r["z1"], r["z2"]))
    metric_rows = []
    for (system, src, tgt, vowel), pts in sorted(tests.items()):
        rep = (median([p[0] for p in pts]), median([p[1] for p in pts]))
        a = anchors[(tgt, vowel)]
        dist = math.hypot(rep[0] - a[0], rep[1] - a[1])
        comp = radial_sd(pts)
        shared = vowel in SHARED[(src, tgt)]
        metric_rows.append((system, src, tgt, vowel, shared, dist, comp, len(pts)))
        work.append(["test", system, src + ">" + tgt, tgt, vowel, "median_z", "%r %r" % rep])
        work.append(["test", system, src + ">" + tgt, tgt, vowel, "distance", repr(dist)])
        work.append(["test", system, src + ">" + tgt, tgt, vowel, "compactness", repr(comp)])

    expected = os.path.join(HERE, "expected")
    os.makedirs(expected, exist_ok=True)
    with open(os.path.join(expected, "metrics.csv"), "w", encoding="utf-8", newline="") as f:
        f.write("system,src_lang,tgt_lang,vowel,shared,distance,compactness,n\n")
        for system, src, tgt, vowel, shared, dist, comp, n in metric_rows:
            f.write("%s,%s,%s,%s,%s,%s,%s,%d\n" % (system, src, tgt, vowel, "true" if shared else "false",
                                                   g6(dist), g6(comp), n))

    # Step 4: per-system averages over vowels, split by the shared flag.
    systems = {}
    for system in sorted({m[0] for m in metric_rows}):
        block = {}
        for side, flag in (("shared", True), ("non-shared", False)):
            sel = [m for m in metric_rows if m[0] == system and m[4] == flag]
            if not sel:
                block[side] = None
                continue
            block[side] = {"distance": r6(mean([m[5] for m in sel])), "sd": r6(mean([m[6] for m in sel]))}
            work.append(["summary", system, side, "", "", "distance", repr(mean([m[5] for m in sel]))])
            work.append(["summary", system, side, "", "", "sd", repr(mean([m[6] for m in sel]))])
        systems[system] = block
    summary = {"parameters": PARAMS, "weighting": "per-vowel", "systems": systems}

    # Step 5: source x target mean distance per system; empty cells are null.
    matrices = {}
    for system in sorted({m[0] for m in metric_rows}):
        sel = [m for m in metric_rows if m[0] == system]
        langs = sorted({m[1] for m in sel} | {m[2] for m in sel})
        grid = []
        for s in langs:
            line = []
            for t in langs:
                cell = [m[5] for m in sel if m[1] == s and m[2] == t]
                line.append(r6(mean(cell)) if cell else None)
            grid.append(line)
        matrices[system] = {"languages": langs, "distance": grid}
    pair = {"parameters": PARAMS, "layout": {"rows": "source", "columns": "target"}, "vowels": "all",
            "systems": matrices}

    for name, doc in (("summary.json", summary), ("pair_matrix.json", pair)):
        with open(os.path.join(expected, name), "w", encoding="utf-8", newline="") as f:
            f.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")

    with open(os.path.join(HERE, "worksheet.csv"), "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["step", "system", "who", "tgt_lang", "vowel", "quantity", "value"])
        w.writerows(work)


if __name__ == "__main__":
    main()
