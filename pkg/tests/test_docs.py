import json
from pathlib import Path

import jsonschema
import pytest

from conftest import make_matrix
from plotmorph.translate import render_supported_table, translate_embedding
from plotmorph.viewmodel import serialize

DOCS = Path(__file__).parent.parent / "docs"


def test_supported_table_in_sync():
    assert (DOCS / "supported.md").read_text(encoding="utf-8") == render_supported_table()


@pytest.fixture(scope="module")
def schema():
    return json.loads((DOCS / "viewconfig.schema.json").read_text(encoding="utf-8"))


def test_schema_accepts_translator_output(schema):
    cfg = translate_embedding(make_matrix(), "X_pca", color="louvain").config
    jsonschema.validate(json.loads(serialize(cfg)), schema)


def test_schema_accepts_goldens(schema):
    for golden in (Path(__file__).parent / "golden").glob("*.json"):
        jsonschema.validate(json.loads(golden.read_text(encoding="utf-8")), schema)


def test_schema_rejects_unknown_component(schema):
    doc = json.loads(
        serialize(translate_embedding(make_matrix(), "X_pca").config)
    )
    doc["layout"][0]["component"] = "wat"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, schema)
