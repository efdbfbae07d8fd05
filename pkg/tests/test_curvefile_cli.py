import json
import re
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus_curve, library_verdict, regular_polygon, write_corpus
from immersed.cli import main, perturb
from immersed.construct import minimal_curve
from immersed.curve import ClosedCurve, GenericityError, GenericityKind, validate
from immersed.curvefile import CurveFileError, dumps, loads, read_curve_with_metadata, write_curve
from immersed.svg import NEGATIVE_COLOR, POSITIVE_COLOR, svg_text
from immersed.whitney import analyze


def markers(svg):
    return re.findall(r'<circle class="crossing (positive|negative)"', svg)


class TestCurveFile:
    def test_round_trip_minimal(self, tmp_path):
        c = minimal_curve(1)
        write_curve(c, tmp_path / "c.json", {"genus": 1})
        back, meta = read_curve_with_metadata(tmp_path / "c.json")
        assert back.vertices == c.vertices
        assert meta == {"genus": 1}

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 199))
    def test_round_trip_random(self, seed):
        c = corpus_curve(seed)
        assert loads(dumps(c))[0].vertices == c.vertices

    @settings(max_examples=50)
    @given(st.lists(st.tuples(st.floats(allow_nan=False, allow_infinity=False),
                              st.floats(allow_nan=False, allow_infinity=False)), min_size=3, max_size=10))
    def test_round_trip_any_floats(self, pts):
        c = ClosedCurve(pts)
        assert loads(dumps(c))[0].vertices == c.vertices

    def test_malformed_json(self):
        with pytest.raises(CurveFileError, match="line 1"):
            loads('{"format": "icurve-v1", "vertices": [')

    def test_wrong_tag(self):
        with pytest.raises(CurveFileError, match="format"):
            loads('{"format": "other", "vertices": []}')

    def test_bad_vertex_named(self):
        with pytest.raises(CurveFileError, match=r"vertices\[1\]"):
            loads('{"format": "icurve-v1", "vertices": [[0, 0], [1], [0, 1]]}')

    def test_two_vertices(self):
        with pytest.raises(GenericityError) as exc:
            loads('{"format": "icurve-v1", "vertices": [[0, 0], [1, 0]]}')
        assert exc.value.kind is GenericityKind.TOO_FEW_VERTICES


class TestSvg:
    def test_minimal_1(self):
        c = minimal_curve(1)
        svg = svg_text(c, analyze(c))
        assert len(markers(svg)) == 4
        assert 'class="base"' in svg and 'class="arrow"' in svg
        assert "index -1" in svg

    def test_minimal_2(self):
        c = minimal_curve(2)
        svg = svg_text(c, analyze(c))
        m = markers(svg)
        assert len(m) == 6 and m.count("positive") == 1
        assert svg.count(f'fill="{POSITIVE_COLOR}"') == 1
        assert svg.count(f'fill="{NEGATIVE_COLOR}"') == 5

    def test_circle_without_report(self):
        svg = svg_text(regular_polygon())
        assert '<path class="curve"' in svg
        assert markers(svg) == []
        assert 'class="base"' not in svg

    def test_well_formed_xml(self):
        import xml.etree.ElementTree as ET

        c = minimal_curve(3)
        root = ET.fromstring(svg_text(c, analyze(c)))
        assert root.tag.endswith("svg")


class TestCli:
    def test_generate_then_verify(self, tmp_path, capsys):
        f = tmp_path / "g3.json"
        assert main(["generate", "--genus", "3", "-o", str(f), "--svg", str(tmp_path / "g3.svg")]) == 0
        assert main(["verify", str(f)]) == 0
        assert capsys.readouterr().out.startswith("OK index=-5")
        assert len(markers((tmp_path / "g3.svg").read_text())) == 8

    def test_verify_two_vertices(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text('{"format": "icurve-v1", "vertices": [[0, 0], [1, 0]]}')
        assert main(["verify", str(f)]) == 1
        assert "TooFewVertices" in capsys.readouterr().out

    def test_verify_malformed(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text("{not json")
        assert main(["verify", str(f)]) == 1
        assert "ParseError" in capsys.readouterr().out

    def test_verify_missing_file(self, tmp_path):
        assert main(["verify", str(tmp_path / "nope.json")]) == 1

    def test_analyze_json(self, tmp_path, capsys):
        f = tmp_path / "g1.json"
        main(["generate", "--genus", "1", "-o", str(f)])
        capsys.readouterr()
        assert main(["analyze", str(f), "--json"]) == 0
        first = capsys.readouterr().out
        doc = json.loads(first)
        assert doc["index"] == -1 and doc["n_minus"] == 3 and doc["mu"] == 1 and doc["n_plus"] == 1
        main(["analyze", str(f), "--json"])
        assert capsys.readouterr().out == first

    def test_analyze_table(self, tmp_path, capsys):
        f = tmp_path / "g2.json"
        main(["generate", "--genus", "2", "-o", str(f)])
        assert main(["analyze", str(f)]) == 0
        out = capsys.readouterr().out
        assert "candidate genus" in out and "holds" in out

    @pytest.mark.parametrize("argv", [
        [], ["bogus"], ["generate"], ["generate", "--genus", "x", "-o", "f"],
        ["generate", "--genus", "0", "-o", "f"], ["random", "--seed", "1"],
        ["random", "--seed", "1", "--modes", "2", "--samples", "10", "-o", "f"],
    ])
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 2

    def test_random(self, tmp_path):
        f = tmp_path / "r.json"
        assert main(["random", "--seed", "42", "--modes", "4", "--samples", "256", "-o", str(f)]) == 0
        meta = read_curve_with_metadata(f)[1]
        assert meta["seed"] == 42
        assert main(["verify", str(f)]) == 0

    def test_random_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for f in (a, b):
            main(["random", "--seed", "9", "--modes", "3", "--samples", "128", "-o", str(f)])
        assert a.read_bytes() == b.read_bytes()

    def test_render(self, tmp_path):
        f = tmp_path / "g1.json"
        main(["generate", "--genus", "1", "-o", str(f)])
        assert main(["render", str(f), "--svg", str(tmp_path / "o.svg")]) == 0
        assert len(markers((tmp_path / "o.svg").read_text())) == 4

    def test_render_degenerate_has_no_markers(self, tmp_path):
        f = tmp_path / "d.json"
        write_curve(ClosedCurve([(0, 0), (1, 1), (2, 0), (2, 3), (0, 3)]), f)
        assert main(["render", str(f), "--svg", str(tmp_path / "o.svg")]) == 0
        assert markers((tmp_path / "o.svg").read_text()) == []

    def test_perturb_rescues_tied_minimum(self, tmp_path, capsys):
        f = tmp_path / "tie.json"
        write_curve(ClosedCurve([(0, 0), (1, 1), (2, 0), (2, 3), (0, 3)]), f)
        assert main(["analyze", str(f)]) == 1
        capsys.readouterr()
        assert main(["analyze", str(f), "--perturb", "7", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["index"] == 1 and doc["identity_holds"]

    def test_perturb_leaves_generic_curve_alone(self, tmp_path, capsys):
        f = tmp_path / "g1.json"
        write_curve(minimal_curve(1), f)
        main(["analyze", str(f), "--json"])
        plain = capsys.readouterr().out
        main(["analyze", str(f), "--json", "--perturb", "3"])
        assert capsys.readouterr().out == plain

    def test_perturb_is_small_and_deterministic(self):
        c = regular_polygon(16)
        p, q = perturb(c, 3), perturb(c, 3)
        assert p == q
        assert max(max(abs(a - b) for a, b in zip(u, v)) for u, v in zip(c.vertices, p.vertices)) <= 1e-8
        validate(p)

    def test_module_entry_point(self, tmp_path):
        f = tmp_path / "g1.json"
        write_curve(minimal_curve(1), f)
        proc = subprocess.run([sys.executable, "-m", "immersed", "verify", str(f)], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.startswith("OK")


def test_verify_matches_library_on_corpus(tmp_path):
    paths = write_corpus(tmp_path)
    assert len(paths) >= 20
    for p in paths:
        assert main(["verify", str(p)]) == library_verdict(p), p.name
