import numpy as np
import pytest
from scipy import sparse

from plotmorph.data import AnnotatedMatrix, Categorical, SpatialElements

GOLDEN_DIR_NAME = "golden"


def make_matrix(n_obs=100, n_var=20, n_groups=3, seed=7, sparse_x=False):
    """Seeded annotated matrix: ~60% zeros, 3 clusters, pca/umap/spatial
    embeddings, and one numeric pair for scatter plots."""
    rng = np.random.default_rng(seed)
    X = rng.random((n_obs, n_var)) * (rng.random((n_obs, n_var)) > 0.6)
    X = X.astype(np.float32)
    var_ids = ["Fth1"] + [f"gene_{i}" for i in range(1, n_var)]
    codes = rng.integers(0, n_groups, n_obs).astype(np.int32)
    return AnnotatedMatrix(
        X=sparse.csr_matrix(X) if sparse_x else X,
        obs_ids=[f"cell_{i}" for i in range(n_obs)],
        var_ids=var_ids,
        obs_columns={
            "louvain": Categorical(codes, [str(g) for g in range(n_groups)]),
            "n_counts": rng.random(n_obs).astype(np.float32) * 1000,
            "n_genes": rng.random(n_obs).astype(np.float32) * 100,
        },
        embeddings={
            "X_pca": rng.standard_normal((n_obs, 2)).astype(np.float32),
            "X_umap": rng.standard_normal((n_obs, 2)).astype(np.float32),
            "spatial": (rng.random((n_obs, 2)) * 80).astype(np.float32),
        },
    )


def make_spatial(seed=7):
    rng = np.random.default_rng(seed)
    table = make_matrix(seed=seed)
    circles = np.column_stack(
        [
            table.embeddings["spatial"],
            np.full(table.n_obs, 1.5, dtype=np.float32),
        ]
    ).astype(np.float32)
    labels = rng.integers(0, 5, (64, 64)).astype(np.int32)
    return SpatialElements(
        images={"hne": (rng.random((1, 96, 80)) * 255).astype(np.float32)},
        circles={"spots": circles},
        points={"transcripts": (rng.random((50, 2)) * 80).astype(np.float32)},
        labels={"segmentation": labels},
        table=table,
    )


@pytest.fixture
def am():
    return make_matrix()


@pytest.fixture
def am_sparse():
    return make_matrix(sparse_x=True)


@pytest.fixture
def elements():
    return make_spatial()


@pytest.fixture
def golden_dir(request):
    return request.path.parent / GOLDEN_DIR_NAME
