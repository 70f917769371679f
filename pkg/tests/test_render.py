import pytest

from xraycross.generators import standard_simplex_xray
from xraycross.render import render_svg


def test_svg_shape(ncp4):
    svg = render_svg(ncp4, {0: "1", 1: "0", 2: "1"})
    assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert 'viewBox="0 0 800 800"' in svg
    assert svg.endswith("</svg>\n")
    assert svg.count("<line") == 5
    assert svg.count("<circle") == 5
    assert svg.count("<text") == 3


def test_svg_deterministic(ncp4):
    labels = {0: "1", 1: "0", 2: "1"}
    assert render_svg(ncp4, labels) == render_svg(ncp4, labels)


def test_svg_line_rendering(cp3):
    svg = render_svg(cp3, {0: "1", 1: "0", 2: "1"})
    assert svg.count("<line") == 1
    assert svg.count("<circle") == 4
    assert svg.count("<text") == 3


def test_svg_escapes_labels(cp3):
    svg = render_svg(cp3, {0: "<1>&"})
    assert "&lt;1&gt;&amp;" in svg
    assert "<1>" not in svg


def test_svg_no_labels(cp4):
    svg = render_svg(cp4, None)
    assert "<text" not in svg
    assert svg.count("<line") == 10


def test_render_rejects_high_dimension():
    cube3 = standard_simplex_xray(3)
    with pytest.raises(ValueError, match="d <= 2"):
        render_svg(cube3, None)
