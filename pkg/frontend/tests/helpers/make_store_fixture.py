"""Write the shared store fixture plus kernel-side expected values.

Usage: python3 make_store_fixture.py <outdir>

Creates:
  <outdir>/matrix/   chunked store: X (multi-chunk rows), embedding, codes
  <outdir>/pyramid/  3-level image pyramid
  <outdir>/expected.json  sha256 + values computed via the kernel package
"""
import hashlib
import json
import os
import sys
from pathlib import Path

os.environ.setdefault("PLOTMORPH_DISABLED", "1")

REPO_ROOT = Path(__file__).resolve().parents[3]
sys.path.insert(0, str(REPO_ROOT / "tests"))

import numpy as np  # noqa: E402

from conftest import make_matrix  # noqa: E402
from plotmorph.stats import dotplot_stats  # noqa: E402
from plotmorph.store import StoreBuilder, export_image_pyramid, load_array  # noqa: E402


def sha(arr: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(arr).tobytes()).hexdigest()


def main(outdir: str) -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    am = make_matrix(n_obs=130, n_var=7, n_groups=3, seed=21)

    matrix_dir = out / "matrix"
    b = StoreBuilder(matrix_dir, overwrite=True)
    b.add_array("X", am.X, "f32", (50, am.n_var))  # 3 row chunks
    b.add_array("embedding", am.embeddings["X_pca"], "f32", (50, 2))
    cat = am.obs_columns["louvain"]
    b.add_array("codes", cat.codes, "i32", (50,))
    b.set_attribute("labels", cat.categories)
    b.set_attribute("obs_ids", am.obs_ids)
    b.set_attribute("var_ids", am.var_ids)
    b.finish()

    rng = np.random.default_rng(22)
    image = rng.random((1, 40, 56)).astype(np.float32)
    export_image_pyramid(image, out / "pyramid", min_dim=16, overwrite=True)

    features = ["Fth1", "gene_3", "gene_5"]
    stats = dotplot_stats(am, "louvain", features)

    expected = {
        "matrix": {
            "X": {
                "shape": list(am.X.shape),
                "sha256": sha(load_array(matrix_dir, "X")),
            },
            "X_region_120_130": {
                "sha256": sha(load_array(matrix_dir, "X", region=[(120, 130), (0, 7)])),
                "values": load_array(matrix_dir, "X", region=[(120, 130), (0, 7)])
                .ravel()
                .tolist(),
            },
            "embedding": {"sha256": sha(load_array(matrix_dir, "embedding"))},
            "codes": {"sha256": sha(load_array(matrix_dir, "codes"))},
        },
        "pyramid": {
            "levels": [
                {
                    "shape": list(load_array(out / "pyramid", f"levels/{k}").shape),
                    "sha256": sha(load_array(out / "pyramid", f"levels/{k}")),
                }
                for k in range(3)
            ]
        },
        "dotplot": {
            "features": features,
            "groups": stats.groups,
            "fraction": stats.fraction_expressing.tolist(),
            "mean": stats.mean_expression.tolist(),
        },
    }
    (out / "expected.json").write_text(json.dumps(expected), encoding="utf-8")
    print(json.dumps({"outdir": str(out)}))


if __name__ == "__main__":
    main(sys.argv[1])
