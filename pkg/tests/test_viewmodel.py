import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plotmorph.errors import DuplicateName, InvalidConfig, ParseError, UnknownView
from plotmorph.viewmodel import (
    ComponentKind,
    CoordinationType,
    DatasetFile,
    FileKind,
    Grid,
    View,
    ViewConfig,
    add_dataset,
    add_view,
    deserialize,
    link_views,
    scope_name,
    serialize,
    validate,
)


def _file(url="store/manifest.json"):
    return DatasetFile(url=url, kind=FileKind.MATRIX_STORE, options={"role": "matrix"})


# -- naming ---------------------------------------------------------------------


def test_scope_name_sequence():
    assert [scope_name(i) for i in (0, 1, 25, 26, 27, 51, 52)] == [
        "A",
        "B",
        "Z",
        "AA",
        "AB",
        "AZ",
        "BA",
    ]


def test_dataset_uids_in_insertion_order():
    cfg = ViewConfig(name="t")
    assert add_dataset(cfg, "first", [_file()]) == "A"
    assert add_dataset(cfg, "second", [_file("other/manifest.json")]) == "B"


def test_duplicate_dataset_name_rejected():
    cfg = ViewConfig(name="t")
    add_dataset(cfg, "first", [_file()])
    with pytest.raises(DuplicateName):
        add_dataset(cfg, "first", [_file()])


def test_dataset_requires_files():
    with pytest.raises(ValueError):
        add_dataset(ViewConfig(name="t"), "first", [])


# -- linking -----------------------------------------------------------------------


def test_link_two_views_shares_one_scope():
    cfg = ViewConfig(name="t")
    a = add_view(cfg, ComponentKind.SCATTERPLOT, 0, 0, 8, 12)
    b = add_view(cfg, ComponentKind.OBS_SET_LIST, 8, 0, 4, 12)
    scope = link_views(cfg, [a, b], CoordinationType.EMBEDDING_TYPE, "PCA")
    assert scope == "A"
    assert a.coordination[CoordinationType.EMBEDDING_TYPE] == "A"
    assert b.coordination[CoordinationType.EMBEDDING_TYPE] == "A"
    assert cfg.coordination_space[CoordinationType.EMBEDDING_TYPE]["A"] == "PCA"


def test_link_scope_names_count_per_type():
    cfg = ViewConfig(name="t")
    v = add_view(cfg, ComponentKind.HEATMAP, 0, 0, 8, 12)
    assert link_views(cfg, [v], CoordinationType.FEATURE_SELECTION, ["g"]) == "A"
    assert link_views(cfg, [v], CoordinationType.FEATURE_SELECTION, ["h"]) == "B"
    assert link_views(cfg, [v], CoordinationType.DATASET, "A") == "A"


def test_link_empty_view_list_creates_unreferenced_scope():
    cfg = ViewConfig(name="t")
    scope = link_views(cfg, [], CoordinationType.SPATIAL_ZOOM, 1.0)
    assert cfg.coordination_space[CoordinationType.SPATIAL_ZOOM] == {"A": 1.0}
    assert scope == "A"


def test_link_foreign_view_rejected():
    cfg = ViewConfig(name="t")
    foreign = View(component=ComponentKind.HEATMAP)
    with pytest.raises(UnknownView):
        link_views(cfg, [foreign], CoordinationType.DATASET, "A")


# -- validation -----------------------------------------------------------------------


def test_validate_empty_config():
    assert validate(ViewConfig(name="t")) == []


def test_validate_missing_scope_names_view_and_scope():
    cfg = ViewConfig(name="t")
    view = add_view(cfg, ComponentKind.HEATMAP, 0, 0, 8, 12)
    view.coordination[CoordinationType.FEATURE_SELECTION] = "A"
    violations = validate(cfg)
    assert len(violations) == 1
    assert "layout[0] (heatmap)" in violations[0]
    assert "'A'" in violations[0]


def test_validate_grid_bounds():
    cfg = ViewConfig(name="t")
    add_view(cfg, ComponentKind.HEATMAP, 1, 0, 12, 12)
    violations = validate(cfg)
    assert len(violations) == 1
    assert "x+w=13" in violations[0]

    cfg = ViewConfig(name="t")
    add_view(cfg, ComponentKind.HEATMAP, 0, 0, 0, 12)
    assert any("w=0" in v for v in validate(cfg))


def test_validate_component_required_scopes():
    cfg = ViewConfig(name="t")
    add_view(cfg, ComponentKind.SCATTERPLOT, 0, 0, 8, 12)
    assert any("embeddingType" in v for v in validate(cfg))

    cfg = ViewConfig(name="t")
    add_view(cfg, ComponentKind.SPATIAL, 0, 0, 8, 12)
    missing = validate(cfg)
    for scope in ("spatialZoom", "spatialTargetX", "spatialTargetY"):
        assert any(scope in v for v in missing)


def test_validate_obs_color_encoding_values():
    cfg = ViewConfig(name="t")
    link_views(cfg, [], CoordinationType.OBS_COLOR_ENCODING, "rainbow")
    assert any("invalid value 'rainbow'" in v for v in validate(cfg))
    cfg = ViewConfig(name="t")
    link_views(cfg, [], CoordinationType.OBS_COLOR_ENCODING, "cellSetSelection")
    assert validate(cfg) == []


def test_validate_duplicate_uid_and_dataset_scope():
    cfg = ViewConfig(name="t")
    add_dataset(cfg, "a", [_file()])
    cfg.datasets.append(cfg.datasets[0])
    assert any("duplicate uid" in v for v in validate(cfg))

    cfg = ViewConfig(name="t")
    link_views(cfg, [], CoordinationType.DATASET, "Z")
    assert any("unknown dataset uid 'Z'" in v for v in validate(cfg))


def test_validate_is_total_and_never_raises():
    cfg = ViewConfig(name="t")
    view = add_view(cfg, ComponentKind.SPATIAL, -1, 0, 0, 0)
    view.coordination[CoordinationType.SPATIAL_LAYERS] = "missing"
    assert len(validate(cfg)) >= 4


# -- serialization -----------------------------------------------------------------------


def _fig1c_style_config():
    cfg = ViewConfig(name="embedding")
    add_dataset(cfg, "data", [_file("embedding-X_pca/manifest.json"), _file("obs-louvain/manifest.json")])
    scatter = add_view(cfg, ComponentKind.SCATTERPLOT, 0, 0, 8, 12)
    sets = add_view(cfg, ComponentKind.OBS_SET_LIST, 8, 0, 4, 12)
    link_views(cfg, [scatter, sets], CoordinationType.DATASET, "A")
    link_views(cfg, [scatter], CoordinationType.EMBEDDING_TYPE, "PCA")
    link_views(cfg, [scatter, sets], CoordinationType.OBS_COLOR_ENCODING, "cellSetSelection")
    return cfg


def test_round_trip_structural_equality():
    cfg = _fig1c_style_config()
    assert deserialize(serialize(cfg)) == cfg


def test_serialize_deterministic_bytes():
    assert serialize(_fig1c_style_config()) == serialize(_fig1c_style_config())


def test_serialize_top_level_keys_and_no_trailing_whitespace():
    text = serialize(_fig1c_style_config())
    doc = json.loads(text)
    assert list(doc.keys()) == ["version", "name", "datasets", "coordinationSpace", "layout"]
    for line in text.splitlines():
        assert line == line.rstrip()
    assert not text.endswith("\n")


def test_serialize_rejects_invalid():
    cfg = ViewConfig(name="t")
    add_view(cfg, ComponentKind.HEATMAP, 0, 0, 13, 1)
    with pytest.raises(InvalidConfig):
        serialize(cfg)


def test_parse_error_on_truncation():
    text = serialize(_fig1c_style_config())
    with pytest.raises(ParseError):
        deserialize(text[: len(text) // 2])


def test_parse_error_locations():
    with pytest.raises(ParseError) as err:
        deserialize("{not json")
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError) as err:
        deserialize('{"version": "0.1.0", "name": "x", "datasets": [], '
                     '"coordinationSpace": {}, "layout": [{"component": "wat", '
                     '"coordination": {}, "x": 0, "y": 0, "w": 1, "h": 1}]}')
    assert "layout[0]" in str(err.value)


# -- property: round-trip over generated valid configs ------------------------------------

_names = st.text(
    alphabet="abcdefghijklmnopqrstuvwxyz_0123456789", min_size=1, max_size=12
)
_values = st.one_of(
    st.none(),
    st.integers(-1000, 1000),
    st.floats(allow_nan=False, allow_infinity=False, width=32),
    _names,
    st.lists(_names, max_size=3),
)


@st.composite
def _configs(draw):
    cfg = ViewConfig(name=draw(_names))
    for ds_name in draw(st.lists(_names, max_size=3, unique=True)):
        try:
            add_dataset(cfg, ds_name, [_file(f"{ds_name}/manifest.json")])
        except DuplicateName:
            pass
    kinds = draw(
        st.lists(
            st.sampled_from(
                [ComponentKind.HEATMAP, ComponentKind.VIOLIN, ComponentKind.FEATURE_LIST]
            ),
            max_size=4,
        )
    )
    for kind in kinds:
        x = draw(st.integers(0, 11))
        add_view(cfg, kind, x, draw(st.integers(0, 20)), draw(st.integers(1, 12 - x)), draw(st.integers(1, 12)))
    for ctype in draw(
        st.lists(
            st.sampled_from(
                [
                    CoordinationType.FEATURE_SELECTION,
                    CoordinationType.SPATIAL_ZOOM,
                    CoordinationType.OBS_SET_SELECTION,
                ]
            ),
            max_size=3,
        )
    ):
        subset = [v for v in cfg.layout if draw(st.booleans())]
        link_views(cfg, subset, ctype, draw(_values))
    return cfg


@settings(max_examples=50, deadline=None)
@given(_configs())
def test_round_trip_property(cfg):
    assert validate(cfg) == []
    text = serialize(cfg)
    again = deserialize(text)
    assert again == cfg
    assert serialize(again) == text
