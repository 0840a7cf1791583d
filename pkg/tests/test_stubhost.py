import plotmorph
from conftest import make_matrix, make_spatial
from plotmorph.stubhost import SpatialData, StaticPlot
from plotmorph.stubhost import pl


def test_matrix_functions_record_calls():
    am = make_matrix()
    out = plotmorph.run_static(lambda: pl.dotplot(am, ["Fth1"], groupby="louvain"))
    assert isinstance(out, StaticPlot)
    assert out.function == "dotplot"
    assert out.params == {"var_names": ["Fth1"], "groupby": "louvain"}


def test_spatial_chain_records_layers_in_order():
    sdata = SpatialData(make_spatial())

    def chain():
        return (
            sdata.pl.render_images(element="hne")
            .pl.render_shapes(element="spots", color="Fth1")
            .pl.show()
        )

    out = plotmorph.run_static(chain)
    assert isinstance(out, StaticPlot)
    names = [name for name, _ in out.params["layers"]]
    assert names == ["render_images", "render_shapes"]


def test_show_on_fresh_accessor_is_empty():
    sdata = SpatialData(make_spatial())
    out = plotmorph.run_static(lambda: sdata.pl.show())
    assert out.params["layers"] == []
