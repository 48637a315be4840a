#!/usr/bin/env python3
"""Assemble the UCI benchmark CSVs under data/ from locally available copies.

Sources (no network access to the UCI archive is assumed):
  iris, wine      scikit-learn bundled data (sklearn/datasets/data)
  pima, tae       KEEL copies shipped in the `keel-ds` wheel
  zoo             Orange3 wheel (Orange/datasets/zoo.tab)
  glass, yeast    rebuilt from the KEEL one-vs-rest binarizations in `keel-ds`

Usage: python3 scripts/prepare_datasets.py <dir with keel-ds and orange3 wheels>
"""
import collections
import csv
import glob
import io
import os
import sys
import zipfile

import numpy as np
from scipy.optimize import linear_sum_assignment

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def write(name, header, rows):
    path = os.path.join(OUT, name + ".csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r)
    counts = collections.Counter(r[-1] for r in rows)
    print(f"{name}: {len(rows)} rows, {len(header) - 1} features, classes {dict(counts)}")


def fmt(v):
    return repr(float(v)).rstrip("0").rstrip(".") if "." in repr(float(v)) else repr(float(v))


def keel_rows(zf, member):
    rows = []
    for line in io.TextIOWrapper(zf.open(member), encoding="utf-8"):
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        parts = [p.strip() for p in line.split(",")]
        rows.append((tuple(float(v) for v in parts[:-1]), parts[-1]))
    return rows


def main(wheel_dir):
    os.makedirs(OUT, exist_ok=True)
    import sklearn.datasets as skd

    skdata = os.path.join(os.path.dirname(skd.__file__), "data")

    # iris
    with open(os.path.join(skdata, "iris.csv")) as f:
        lines = list(csv.reader(f))[1:]
    names = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
    write(
        "iris",
        ["sepal_length", "sepal_width", "petal_length", "petal_width", "class"],
        [r[:4] + [names[int(r[4])]] for r in lines],
    )

    # wine
    with open(os.path.join(skdata, "wine_data.csv")) as f:
        lines = list(csv.reader(f))[1:]
    cols = ["alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium", "total_phenols",
            "flavanoids", "nonflavanoid_phenols", "proanthocyanins", "color_intensity", "hue",
            "od280_od315", "proline"]
    write("wine", cols + ["class"], [r[:13] + [str(int(r[13]) + 1)] for r in lines])

    keel = zipfile.ZipFile(glob.glob(os.path.join(wheel_dir, "keel_ds-*.whl"))[0])
    raw = "keel_ds/data/imbalanced/raw/"
    bal = "keel_ds/data/balanced/raw/"

    # pima
    rows = keel_rows(keel, bal + "pima.dat")
    cols = ["preg", "plas", "pres", "skin", "insu", "mass", "pedi", "age"]
    write("pima", cols + ["class"], [[fmt(v) for v in x] + [c] for x, c in rows])

    # teaching assistant evaluation
    rows = keel_rows(keel, bal + "tae.dat")
    cols = ["native_speaker", "instructor", "course", "semester", "class_size"]
    write("teaching", cols + ["class"], [[fmt(v) for v in x] + [c] for x, c in rows])

    # zoo
    orange = zipfile.ZipFile(glob.glob(os.path.join(wheel_dir, "orange3-*.whl"))[0])
    text = io.TextIOWrapper(orange.open("Orange/datasets/zoo.tab"), encoding="utf-8").read()
    lines = [l.split("\t") for l in text.strip().split("\n")]
    header, body = lines[0], lines[3:]
    write("zoo", header[1:], [r[1:] for r in body])

    # glass: glass2 keeps the original attribute values; the other binarizations
    # carry small perturbations, so rows are matched by minimum-cost assignment.
    reference = keel_rows(keel, raw + "glass2.dat")
    perturbed = {n: keel_rows(keel, raw + f"glass{n}.dat") for n in (0, 1, 4, 5, 6)}
    base = [x for x, _ in perturbed[0]]
    for n, rows in perturbed.items():
        assert collections.Counter(x for x, _ in rows) == collections.Counter(base), n
    label_of = {}
    for n, cls in [(0, "1"), (1, "2"), (4, "5"), (5, "6"), (6, "7")]:
        for x, c in perturbed[n]:
            if c == "positive":
                label_of[x] = cls
    a = np.array(base)
    b = np.array([x for x, _ in reference])
    # Ba and Fe carry the largest perturbations; match on RI..Ca by relative error.
    rel = np.abs(a[:, None, :7] - b[None, :, :7]) / (np.abs(b[None, :, :7]) + 0.05)
    cost = rel.max(-1)
    ri, ci = linear_sum_assignment(cost)
    assert cost[ri, ci].max() < 0.1, cost[ri, ci].max()
    out = []
    for i, j in sorted(zip(ri, ci), key=lambda p: p[1]):
        x, c = reference[j]
        cls = "3" if c == "positive" else label_of.get(base[i])
        assert cls is not None and (c != "positive" or base[i] not in label_of)
        out.append([fmt(v) for v in x] + [cls])
    cols = ["RI", "Na", "Mg", "Al", "Si", "K", "Ca", "Ba", "Fe"]
    write("glass", cols + ["class"], out)

    # yeast
    full = [x for x, _ in keel_rows(keel, raw + "yeast1.dat")]
    pool = list(full)
    taken = [None] * len(pool)

    def take(cls, members, key=lambda x: x):
        want = collections.Counter(key(x) for x in members)
        for i, x in enumerate(pool):
            if taken[i] is None and want[key(x)] > 0:
                want[key(x)] -= 1
                taken[i] = cls
        assert sum(want.values()) == 0, cls

    pos = lambda f, w="positive": [x for x, c in keel_rows(keel, raw + f + ".dat") if c == w]
    take("NUC", pos("yeast1"))
    take("ME3", pos("yeast3"))
    take("ME2", pos("yeast4"))
    take("ME1", pos("yeast5"))
    take("EXC", pos("yeast6"))
    take("VAC", pos("yeast-1_vs_7"), key=lambda x: x[:5] + x[6:] if len(x) == 8 else x)
    take("POX", pos("yeast-2_vs_8"), key=lambda x: x[:5] + x[6:] if len(x) == 8 else x)
    take("CYT", pos("yeast-2_vs_4", "negative"))
    for i, x in enumerate(pool):
        if taken[i] is None:
            # the erl attribute is 1.0 exactly for the ER-lumen class
            taken[i] = "ERL" if x[4] == 1.0 else "MIT"
    cols = ["mcg", "gvh", "alm", "mit", "erl", "pox", "vac", "nuc"]
    write("yeast", cols + ["class"], [[fmt(v) for v in x] + [c] for x, c in zip(pool, taken)])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
