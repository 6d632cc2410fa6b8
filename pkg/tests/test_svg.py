import math
import re
import xml.etree.ElementTree as ET

import pytest

from logbundle.arrangement import arrangement_from_strings
from logbundle.errors import NonRealField
from logbundle.exactalg import QQ
from logbundle.svg import DEFAULT_WINDOW, clip_line, emit_svg, implicit_segments

NS = "{http://www.w3.org/2000/svg}"


def _parse(text):
    return ET.fromstring(text)


def test_conic_only_plot():
    arr = arrangement_from_strings(QQ, ["x0^2 + x1^2 - 16*x2^2"])
    root = _parse(emit_svg(arr))
    assert [c.tag for c in root] == [NS + "rect", NS + "path"]


def test_deterministic(example2):
    assert emit_svg(example2, grid=60) == emit_svg(example2, grid=60)


def test_non_real_field(example1):
    with pytest.raises(NonRealField):
        emit_svg(example1)


def test_element_order():
    arr = arrangement_from_strings(QQ, ["x0 - x2", "x0^2 + x1^2 - 4*x2^2"])
    extras = {"lines": [(0, 1, -1), (1, 1, 100)], "points": [(1, 2, 1), (1, 0, 0), (3, 3, 1)]}
    root = _parse(emit_svg(arr, extras, grid=40))
    tags = [c.tag[len(NS):] for c in root]
    # the far line and the point at infinity are not drawn
    assert tags == ["rect", "line", "path", "line", "circle", "circle"]
    assert root[3].get("stroke-dasharray") == "6,4"


def test_six_decimal_formatting():
    arr = arrangement_from_strings(QQ, ["x0 - x2", "x0^2 + x1^2 - 4*x2^2"])
    text = emit_svg(arr, grid=30)
    nums = re.findall(r"-?\d+\.\d+", text)
    assert nums and all(len(n.split(".")[1]) == 6 for n in nums)
    assert "-0.000000" not in text


def test_clip_line():
    win = (-1.0, 1.0, -1.0, 1.0)
    assert clip_line(1, 0, 0, win) == ((0.0, -1.0), (0.0, 1.0))
    assert clip_line(0, 1, -0.5, win) == ((-1.0, 0.5), (1.0, 0.5))
    assert clip_line(1, 1, 10, win) is None


def test_implicit_segments_lie_on_the_curve():
    arr = arrangement_from_strings(QQ, ["x0^2 + x1^2 - 9*x2^2"])
    segs = implicit_segments(arr.components[0], DEFAULT_WINDOW, 120)
    assert len(segs) > 100
    h = 16 / 120
    for p, q in segs:
        for x, y in (p, q):
            assert abs(math.hypot(x, y) - 3) < h


def test_example2_with_real_lines(example2, example2_report):
    lines = [s.line for s in example2_report.real_lines()]
    root = _parse(emit_svg(example2, {"lines": lines}, grid=60))
    assert sum(1 for c in root if c.tag == NS + "path") == 3
    dashed = [c for c in root if c.get("stroke-dasharray")]
    assert 0 < len(dashed) <= 11
