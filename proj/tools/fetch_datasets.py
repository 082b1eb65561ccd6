#!/usr/bin/env python3
"""Generate the bundled CSV fixtures and, when network access exists, fetch
the two UCI datasets that cannot be redistributed from scikit-learn.

Offline (always works):
    python3 tools/fetch_datasets.py            # writes data/wine.csv, data/cancer_wdbc.csv

With network access to archive.ics.uci.edu:
    python3 tools/fetch_datasets.py --fetch    # also writes data/cancer.csv, data/car.csv

wine.csv         Wine recognition data, 178 x 13, three cultivars.
cancer_wdbc.csv  Diagnostic Breast Cancer (WDBC), 569 x 30, two classes.
cancer.csv       Original Wisconsin Breast Cancer, 683 x 9 after dropping the
                 16 rows with missing bare-nuclei values. Needs --fetch.
car.csv          Car Evaluation, 1728 rows, six categorical attributes.
                 Needs --fetch.
"""
import argparse
import csv
import io
import pathlib
import sys
import urllib.request

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

CANCER_COLUMNS = [
    "clump_thickness", "uniformity_cell_size", "uniformity_cell_shape",
    "marginal_adhesion", "single_epithelial_cell_size", "bare_nuclei",
    "bland_chromatin", "normal_nucleoli", "mitoses",
]
CAR_COLUMNS = ["buying", "maint", "doors", "persons", "lug_boot", "safety"]


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def sklearn_fixtures():
    from sklearn.datasets import load_breast_cancer, load_wine

    wine = load_wine()
    names = [n.replace("/", "_").replace(" ", "_") for n in wine.feature_names]
    rows = [[repr(float(v)) for v in x] + [str(int(y) + 1)]
            for x, y in zip(wine.data, wine.target)]
    write_csv(DATA_DIR / "wine.csv", names + ["class"], rows)

    wdbc = load_breast_cancer()
    names = [n.replace(" ", "_") for n in wdbc.feature_names]
    rows = [[repr(float(v)) for v in x] + [wdbc.target_names[y]]
            for x, y in zip(wdbc.data, wdbc.target)]
    write_csv(DATA_DIR / "cancer_wdbc.csv", names + ["class"], rows)


def fetch(url):
    print(f"fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as r:
        return r.read().decode("utf-8")


def uci_fixtures():
    raw = fetch(f"{UCI}/breast-cancer-wisconsin/breast-cancer-wisconsin.data")
    rows = []
    for line in csv.reader(io.StringIO(raw)):
        if not line:
            continue
        if "?" in line:
            continue  # 16 incomplete records
        features = line[1:10]  # drop the sample id
        label = "benign" if line[10] == "2" else "malignant"
        rows.append(features + [label])
    assert len(rows) == 683, f"expected 683 complete rows, got {len(rows)}"
    write_csv(DATA_DIR / "cancer.csv", CANCER_COLUMNS + ["class"], rows)

    raw = fetch(f"{UCI}/car/car.data")
    rows = [line for line in csv.reader(io.StringIO(raw)) if line]
    assert len(rows) == 1728, f"expected 1728 rows, got {len(rows)}"
    write_csv(DATA_DIR / "car.csv", CAR_COLUMNS + ["class"], rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fetch", action="store_true",
                        help="also download the UCI-only datasets")
    args = parser.parse_args()

    DATA_DIR.mkdir(exist_ok=True)
    sklearn_fixtures()
    if args.fetch:
        try:
            uci_fixtures()
        except Exception as e:  # noqa: BLE001
            print(f"fetch failed: {e}", file=sys.stderr)
            print("cancer.csv / car.csv require network access to UCI", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
