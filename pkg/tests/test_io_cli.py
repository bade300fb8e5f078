import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from latwidth import cli, io
from latwidth.corpus import CorpusSpec, generate_corpus
from latwidth.errors import ParseError
from latwidth.polytope import HPolyhedron, VPolytope, hull_canonicalize

from conftest import CUBE2, HALF_CUBE

F = Fraction
CUBE_JSON = '{"dim":2,"vertices":[[1,1],[1,-1],[-1,1],[-1,-1]]}'
CROSS_JSON = '{"dim":2,"vertices":[[1,0],[-1,0],[0,1],[0,-1]]}'
TRIANGLE_JSON = '{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}'


class TestParse:
    def test_cube(self):
        assert io.parse_instance(CUBE_JSON) == CUBE2

    def test_half_cube(self):
        text = '{"dim":2,"vertices":[["1/2","1/2"],["-1/2","-1/2"],["1/2","-1/2"],["-1/2","1/2"]]}'
        assert io.parse_instance(text) == HALF_CUBE

    def test_slab(self):
        text = '{"dim":2,"inequalities":[{"normal":[0,1],"rhs":0},{"normal":[0,-1],"rhs":-1}]}'
        S = io.parse_instance(text)
        assert isinstance(S, HPolyhedron)
        assert S.constraints == (((0, -1), -1), ((0, 1), 0))

    @pytest.mark.parametrize("text,fragment", [
        ('{"dim":2,"vertices":[[0.5,1]]}', "vertices[0][0]"),
        ('{"dim":2,"vertices":[["sqrt(2)",1]]}', "not a rational"),
        ('{"dim":2,"vertices":[[1,1]],"inequalities":[]}', "exactly one"),
        ('{"dim":2}', "exactly one"),
        ('{"vertices":[[1]]}', "dim"),
        ('{"dim":2,"vertices":[[1]]}', "vertices[0]"),
        ('{"dim":2,"vertices":[[true,1]]}', "boolean"),
        ('{"dim":1,"inequalities":[{"normal":["1/2"],"rhs":0}]}', "inequalities[0].normal[0]"),
        ('{"dim":2,\n "vertices": [[1,1],]}', "line 2"),
        ('[]', "top level"),
    ])
    def test_errors(self, text, fragment):
        with pytest.raises(ParseError) as exc:
            io.parse_instance(text)
        assert fragment in str(exc.value)


rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)


class TestRoundTrip:
    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(rat, rat, rat), min_size=1, max_size=7))
    def test_v_instances(self, pts):
        P = hull_canonicalize(pts)
        text = io.serialize_instance(P)
        assert io.parse_instance(text) == P
        assert io.serialize_instance(io.parse_instance(text)) == text

    def test_h_instance(self):
        S = HPolyhedron.from_constraints(2, [((0, 2), F(1, 3)), ((0, -1), -1), ((1, 1), -4)])
        assert io.parse_instance(io.serialize_instance(S)) == S

    def test_report_round_trip(self):
        report, code = cli.dispatch("check-main", cli.build_parser().parse_args(["check-main"]),
                                    io.parse_instance(CROSS_JSON))
        text = io.dumps(report)
        assert io.parse_report(text) == report
        assert io.dumps(io.parse_report(text)) == text

    def test_rationals_never_floats(self):
        text = io.dumps({"x": F(-7, 3), "y": F(4)})
        assert text == '{"x":"-7/3","y":4}'
        with pytest.raises(TypeError):
            io.dumps({"x": 0.5})


class TestCorpus:
    def test_deterministic(self):
        spec = CorpusSpec(seed=1, dim=2, family="cube", bound=3, count=1)
        a = [io.serialize_instance(P) for P in generate_corpus(spec)]
        b = [io.serialize_instance(P) for P in generate_corpus(spec)]
        assert a == b and len(a) == 1

    def test_random_symmetric_valid(self):
        from latwidth.minkowski import standing_hypotheses
        corpus = generate_corpus(CorpusSpec(seed=2, dim=2, family="random-symmetric", bound=2, count=10))
        assert len(corpus) == 10
        for P in corpus:
            standing_hypotheses(P)

    def test_orbit_and_errors(self):
        corpus = generate_corpus(CorpusSpec(seed=3, dim=2, family="unimodular-orbit", count=4, base=CUBE2))
        assert len(corpus) == 4
        with pytest.raises(ValueError):
            CorpusSpec(seed=0, dim=2, family="nope")
        with pytest.raises(ValueError):
            CorpusSpec(seed=0, dim=2, family="unimodular-orbit")

    def test_general_is_rational(self):
        corpus = generate_corpus(CorpusSpec(seed=4, dim=3, family="random-general", bound=2, count=5))
        assert all(isinstance(P, VPolytope) and P.is_full_dimensional for P in corpus)


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {"cube": CUBE_JSON, "cross": CROSS_JSON, "tri": TRIANGLE_JSON,
                       "bad": '{"dim":2,"vertices":[[0.5,0]]}'}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


class TestCLI:
    def test_width(self, files, capsys):
        code, cap = run(capsys, "width", files["cube"])
        rep = json.loads(cap.out)
        assert code == 0 and rep["witnesses"]["width"] == 2 and rep["verdict"] == "pass"
        assert set(rep) == {"command", "instance_digest", "verdict", "witnesses", "timing"}

    def test_check_main(self, files, capsys):
        code, cap = run(capsys, "check-main", files["cross"])
        rep = json.loads(cap.out)
        assert code == 0 and rep["witnesses"]["count"] == 8
        assert rep["witnesses"]["cross_witness"]["scale"] == 1

    def test_hypothesis_error(self, files, capsys):
        code, cap = run(capsys, "verify-3d", files["tri"])
        assert code == 2
        assert "hypothesis: central symmetry failed" in json.loads(cap.out)["witnesses"]["error"]
        assert "hypothesis: central symmetry failed" in cap.err

    def test_parse_error(self, files, capsys):
        code, cap = run(capsys, "width", files["bad"])
        assert code == 2 and "vertices[0][0]" in cap.err

    def test_unknown_command(self, files, capsys):
        code, _ = run(capsys, "frobnicate", files["cube"])
        assert code == 2

    def test_violation_exit_code(self, monkeypatch):
        from latwidth import minkowski
        from latwidth.report import VerifierReport

        def broken(P):
            rep = VerifierReport("verify-3d")
            rep.check("count <= 3^d", False)
            return rep

        monkeypatch.setattr(minkowski, "verify_3d_bound", broken)
        flags = cli.build_parser().parse_args(["verify-3d"])
        report, code = cli.dispatch("verify-3d", flags, CUBE2)
        assert code == 1 and report["verdict"] == "fail"

    def test_all_commands(self, files, capsys, tmp_path):
        for cmd in ("directions", "dual-body", "verify-3d", "verify-vertex-bound", "verify-packing",
                    "verify-equality", "recognize-cube", "recognize-cross", "layering"):
            code, cap = run(capsys, cmd, files["cube"])
            assert code == 0, (cmd, cap.err)
        code, cap = run(capsys, "mod3", files["cube"], "--x", "1,1", "--y", "1,0")
        assert code == 0 and json.loads(cap.out)["witnesses"]["z"] == [1, -1]
        code, cap = run(capsys, "oracle", files["tri"], "--radius", "3")
        assert code == 0 and len(json.loads(cap.out)["witnesses"]["directions"]) == 6

    def test_recenter(self, tmp_path, capsys):
        p = tmp_path / "shifted.json"
        p.write_text('{"dim":2,"vertices":[[0,0],[2,0],[0,2],[2,2]]}')
        code, _ = run(capsys, "verify-3d", str(p))
        assert code == 2
        code, cap = run(capsys, "recognize-cube", str(p), "--recenter")
        assert code == 0 and json.loads(cap.out)["witnesses"]["accepted"]

    def test_gen_deterministic(self, capsys):
        args = ("gen", "--seed", "1", "--family", "cube", "--bound", "3", "--count", "3")
        _, a = run(capsys, *args)
        _, b = run(capsys, *args)
        assert a.out == b.out
        doc = json.loads(a.out)
        assert len(doc["instances"]) == 3
        for inst in doc["instances"]:
            io.instance_from_dict(inst)

    def test_out_and_svg(self, files, capsys, tmp_path):
        out, svg = tmp_path / "r.json", tmp_path / "p.svg"
        code, cap = run(capsys, "width", files["tri"], "--out", str(out), "--svg", str(svg))
        assert code == 0 and cap.out == ""
        assert json.loads(out.read_text())["witnesses"]["count"] == 6
        import xml.etree.ElementTree as ET
        root = ET.fromstring(svg.read_text())
        assert root.tag.endswith("svg") and len(root) == 1 + 6

    def test_verdict_stable_under_reserialization(self):
        flags = cli.build_parser().parse_args(["width"])
        corpus = generate_corpus(CorpusSpec(seed=5, dim=2, family="random-general", bound=3, count=10))
        for P in corpus:
            again = io.parse_instance(io.serialize_instance(P))
            r1, c1 = cli.dispatch("width", flags, P)
            r2, c2 = cli.dispatch("width", flags, again)
            assert c1 == c2 and r1["witnesses"] == r2["witnesses"]
            assert r1["instance_digest"] == r2["instance_digest"]
