import math

import pytest

from cheeger_forge import InvalidInput
from cheeger_forge.constructions import ContactSet
from cheeger_forge.geometry import ArcEdge, ArcGon, RegionSet
from cheeger_forge.render import render_svg, write_svg

from conftest import disc, square


def test_svg_structure_and_y_flip():
    doc = render_svg([("domain", disc())])
    assert doc.startswith("<svg ")
    assert 'xmlns="http://www.w3.org/2000/svg"' in doc
    # y axis flips through a negative-scale matrix, not per-point negation
    assert "matrix(" in doc and "0 0 -" in doc
    assert doc.rstrip().endswith("</svg>")


def test_svg_is_deterministic():
    layers = [("ambient", square(2.0, -0.5, -0.5)), ("domain", disc())]
    assert render_svg(layers) == render_svg(layers)


def test_sweep_flags_follow_curvature():
    convex = ArcGon(
        (
            ArcEdge((1.0, 0.0), (-1.0, 0.0), 0.8),
            ArcEdge((-1.0, 0.0), (1.0, 0.0), 0.8),
        )
    )
    doc = render_svg([("domain", convex)])
    assert "A " in doc
    assert " 0 0 1 " in doc  # counterclockwise arcs sweep positive
    bite = ArcGon(
        (
            ArcEdge((1.0, 0.0), (-1.0, 0.0), 0.8),
            ArcEdge((-1.0, 0.0), (1.0, 0.0), -0.4),
        )
    )
    doc2 = render_svg([("domain", bite)])
    assert " 0 0 0 " in doc2  # the concave edge flips its sweep flag


def test_segments_render_as_lines():
    doc = render_svg([("domain", square(1.0))])
    assert "L " in doc
    assert "A " not in doc.split("viewBox")[1]


def test_region_set_renders_components_and_points():
    rs = RegionSet(components=(disc(r=0.5),), points=((2.0, 0.0),))
    doc = render_svg([("erosion", rs)])
    assert doc.count("<path") == 1
    assert doc.count("<circle") == 1


def test_contact_layer_renders_intervals_and_points():
    host = disc()
    per = host.perimeter()
    cs = ContactSet(((1.0, 0.0),), ((0.0, per / 8.0), (per / 2.0, per / 2.0 + per / 8.0)))
    doc = render_svg([("domain", host), ("contact", (cs, host))])
    assert doc.count("<circle") == 1
    assert 'id="layer-1-contact"' in doc
    # two interval stretches, each its own subpath move
    contact_part = doc.split('id="layer-1-contact"')[1]
    assert contact_part.count("M ") == 2


def test_unknown_label_gets_fallback_style():
    doc = render_svg([("scratch", disc())])
    assert 'id="layer-0-scratch"' in doc


def test_empty_layers_rejected():
    with pytest.raises(InvalidInput):
        render_svg([])
    with pytest.raises(InvalidInput):
        render_svg([("domain", 42)])


def test_write_svg_roundtrip(tmp_path):
    out = tmp_path / "fig.svg"
    write_svg(out, [("domain", disc())], width=360)
    text = out.read_text()
    assert text == render_svg([("domain", disc())], width=360)
    assert 'width="360"' in text
