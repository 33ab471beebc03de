#!/usr/bin/env python3
"""Builds the HDBSCAN blob fixture and freezes reference labels.

Three blobs of 20 unit vectors each around orthogonal axes in R^8; the
center separation (sqrt(2)) is well over 10x the within-blob spread.
Reference labels come from scikit-learn's HDBSCAN (Excess-of-Mass,
min_cluster_size=5, min_samples=5, euclidean), run before the C++
implementation existed.

Outputs:
  tests/data/hdbscan_blobs.tsv           embedding-file format
  tests/data/hdbscan_blobs_expected.json ground truth + reference labels

Run from the repository root.
"""

import json

import numpy as np
from sklearn.cluster import HDBSCAN
from sklearn.metrics import adjusted_rand_score

DIM = 8
PER_BLOB = 20
NOISE = 0.02


def main():
    rng = np.random.default_rng(42)
    points = []
    truth = []
    for blob in range(3):
        center = np.zeros(DIM)
        center[blob] = 1.0
        for _ in range(PER_BLOB):
            v = center + rng.normal(0.0, NOISE, DIM)
            v /= np.linalg.norm(v)
            points.append(v)
            truth.append(blob)
    x = np.asarray(points)

    spread = max(
        np.linalg.norm(x[i] - x[j])
        for b in range(3)
        for i in range(b * PER_BLOB, (b + 1) * PER_BLOB)
        for j in range(b * PER_BLOB, (b + 1) * PER_BLOB)
    )
    sep = np.sqrt(2.0)
    assert sep >= 10 * spread, (sep, spread)

    clus = HDBSCAN(min_cluster_size=5, min_samples=5, metric="euclidean",
                   cluster_selection_method="eom")
    labels = clus.fit_predict(x)
    ari = adjusted_rand_score(truth, labels)
    print(f"blobs: spread={spread:.4f} sep={sep:.4f} sklearn ARI={ari:.4f} "
          f"labels={sorted(set(labels.tolist()))}")
    assert ari >= 0.9

    with open("tests/data/hdbscan_blobs.tsv", "w", encoding="utf-8") as f:
        f.write(f"#dim={DIM} source=synthetic-blobs\n")
        for i, row in enumerate(x):
            vals = " ".join(repr(float(v)) for v in row)
            f.write(f"blob-{i:03d}\t{vals}\n")
    with open("tests/data/hdbscan_blobs_expected.json", "w", encoding="utf-8") as f:
        json.dump({"ground_truth": truth, "reference_labels": labels.tolist(),
                   "reference_ari": float(ari)}, f, indent=1)

    # Degenerate case probe: identical points.
    same = np.tile(x[0], (10, 1))
    same_labels = HDBSCAN(min_cluster_size=5, min_samples=5).fit_predict(same)
    print(f"identical-points labels: {same_labels.tolist()}")


if __name__ == "__main__":
    main()
