import json
import urllib.request

import numpy as np
import pytest

from plotmorph import serve
from plotmorph.bridge import (
    Environment,
    detect_environment,
    display,
    export_config,
    materialize,
    served_config,
)
from plotmorph.data import AnnotatedMatrix
from plotmorph.errors import InvalidOverride, UnknownBasis
from plotmorph.translate import (
    IMAGE,
    SHAPES,
    SpatialLayerStack,
    push_spatial_layer,
    translate_dotplot,
    translate_embedding,
    translate_spatial_show,
    translate_violin,
)
from plotmorph.viewmodel import deserialize, validate


class _NotebookShell:
    kernel = object()


class _TerminalShell:
    pass


def _fetch(url):
    with urllib.request.urlopen(url) as response:
        return response.status, response.read()


@pytest.fixture
def embedding_handle(am):
    return materialize(translate_embedding(am, "X_pca", color="louvain"), am)


# -- materialize -----------------------------------------------------------------


def test_materialize_serves_valid_config(embedding_handle):
    status, body = _fetch(embedding_handle.config_url)
    assert status == 200
    cfg = deserialize(body.decode("utf-8"))
    assert validate(cfg) == []
    for ds in cfg.datasets:
        for f in ds.files:
            assert f.url.startswith(serve.base_url())
            assert _fetch(f.url)[0] == 200


def test_materialize_exports_load_back(am, tmp_path):
    handle = materialize(translate_embedding(am, "X_pca", color="louvain"), am)
    prefix = handle.config_url[: -len("config.json")]
    # fetch the embedding store manifest and a chunk through HTTP
    status, manifest_bytes = _fetch(prefix + "embedding-X_pca/manifest.json")
    manifest = json.loads(manifest_bytes)
    assert manifest["arrays"]["embedding"]["shape"] == [100, 2]
    status, chunk = _fetch(prefix + "embedding-X_pca/embedding/c0_0.bin")
    assert status == 200
    values = np.frombuffer(chunk, dtype="<f4").reshape(100, 2)
    assert np.array_equal(values, am.embeddings["X_pca"])


def test_materialize_twice_distinct_mounts_same_config_modulo_prefix(am):
    result = translate_embedding(am, "X_pca", color="louvain")
    h1 = materialize(result, am)
    h2 = materialize(result, am)
    assert h1.mount_uid != h2.mount_uid
    a = _fetch(h1.config_url)[1].decode().replace(f"/{h1.mount_uid}/", "/M/")
    b = _fetch(h2.config_url)[1].decode().replace(f"/{h2.mount_uid}/", "/M/")
    assert a == b


def test_materialize_viewer_url_carries_config(embedding_handle):
    assert embedding_handle.viewer_url.startswith(serve.base_url() + "/viewer/index.html?config=")
    # the config url is percent-encoded in the query
    assert "config=http%3A%2F%2F" in embedding_handle.viewer_url


def test_materialize_propagates_unknown_basis(am):
    result = translate_embedding(am, "X_pca")
    stripped = AnnotatedMatrix(
        X=am.X, obs_ids=am.obs_ids, var_ids=am.var_ids, obs_columns={}, embeddings={}
    )
    with pytest.raises(UnknownBasis):
        materialize(result, stripped)


def test_materialize_dotplot_and_violin_stores(am):
    handle = materialize(
        translate_dotplot(am, ["Fth1", "gene_1"], "louvain"), am
    )
    prefix = handle.config_url[: -len("config.json")]
    status, body = _fetch(prefix + "obs-louvain/manifest.json")
    assert json.loads(body)["attributes"]["labels"] == ["0", "1", "2"]

    handle = materialize(translate_violin(am, ["Fth1"], "louvain"), am)
    prefix = handle.config_url[: -len("config.json")]
    status, body = _fetch(prefix + "violin-louvain/manifest.json")
    manifest = json.loads(body)
    assert manifest["arrays"]["summary/Fth1"]["shape"][1] == 5


def test_materialize_sparse_equals_dense(tmp_path):
    from conftest import make_matrix
    from plotmorph.bridge import execute_export_plan
    from plotmorph.translate import translate_heatmap

    dense = make_matrix(n_obs=40, n_var=6, seed=31)
    as_sparse = make_matrix(n_obs=40, n_var=6, seed=31, sparse_x=True)
    result = translate_heatmap(dense, ["Fth1", "gene_2"])
    execute_export_plan(result, dense, tmp_path / "dense")
    execute_export_plan(result, as_sparse, tmp_path / "sparse")
    dense_chunks = sorted((tmp_path / "dense").rglob("*.bin"))
    sparse_chunks = sorted((tmp_path / "sparse").rglob("*.bin"))
    assert dense_chunks and len(dense_chunks) == len(sparse_chunks)
    for a, b in zip(dense_chunks, sparse_chunks):
        assert a.read_bytes() == b.read_bytes()


def test_materialize_spatial(elements):
    stack = push_spatial_layer(SpatialLayerStack(elements), IMAGE, "hne")
    stack = push_spatial_layer(stack, SHAPES, "spots", {"color": "Fth1"})
    handle = materialize(translate_spatial_show(stack), elements)
    prefix = handle.config_url[: -len("config.json")]
    status, body = _fetch(prefix + "image-hne/manifest.json")
    manifest = json.loads(body)
    assert manifest["attributes"]["pyramid"]["levels"] >= 1
    status, body = _fetch(prefix + "circles-spots/manifest.json")
    assert json.loads(body)["arrays"]["circles"]["shape"] == [100, 3]


# -- display and environment -----------------------------------------------------


def test_detect_environment_injected():
    assert detect_environment(_NotebookShell()) is Environment.NOTEBOOK
    assert detect_environment(_TerminalShell()) is Environment.PLAIN


def test_detect_environment_default_ci():
    assert detect_environment() is Environment.PLAIN


def test_display_notebook_emits_iframe(embedding_handle):
    html = display(embedding_handle, environment=Environment.NOTEBOOK)
    assert html.startswith("<iframe")
    assert embedding_handle.viewer_url in html
    assert 'width="900"' in html and 'height="600"' in html


def test_display_plain_returns_url(embedding_handle):
    out = display(embedding_handle, environment=Environment.PLAIN)
    assert out == embedding_handle.viewer_url


def test_display_is_stateless(embedding_handle):
    a = display(embedding_handle, environment=Environment.NOTEBOOK)
    b = display(embedding_handle, environment=Environment.NOTEBOOK)
    assert a == b


def test_repr_html_contains_iframe(embedding_handle):
    assert "<iframe" in embedding_handle._repr_html_()


# -- export_config -----------------------------------------------------------------


def test_export_config_without_override(embedding_handle, tmp_path):
    path = export_config(embedding_handle, tmp_path / "cfg.json")
    written = deserialize((tmp_path / "cfg.json").read_text(encoding="utf-8"))
    assert validate(written) == []
    served = served_config(embedding_handle)
    assert written == served


def test_export_config_with_override(embedding_handle, tmp_path):
    export_config(
        embedding_handle, tmp_path / "cfg.json", base_url_override="https://example.org/data"
    )
    written = deserialize((tmp_path / "cfg.json").read_text(encoding="utf-8"))
    assert validate(written) == []
    urls = [f.url for ds in written.datasets for f in ds.files]
    assert urls
    for url in urls:
        assert url.startswith("https://example.org/data/")
    # suffixes preserved character-for-character
    local = serve.base_url()
    for before, after in zip(
        [f.url for ds in served_config(embedding_handle).datasets for f in ds.files], urls
    ):
        assert after == "https://example.org/data" + before[len(local):]


def test_export_config_rejects_relative_override(embedding_handle, tmp_path):
    with pytest.raises(InvalidOverride):
        export_config(embedding_handle, tmp_path / "cfg.json", base_url_override="foo/bar")
    with pytest.raises(InvalidOverride):
        export_config(embedding_handle, tmp_path / "cfg.json", base_url_override="ftp://x/y")
