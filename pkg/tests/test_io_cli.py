import io
import json
from fractions import Fraction as F

import pytest

from eqehrhart import cli, reproduce as rep
from eqehrhart.algebra import CycloNum, Poly, rf_reduce
from eqehrhart.equivariant import RouteMismatch, hstar_series, validate_setup
from eqehrhart.families import example_simplex, thm37_hstar
from eqehrhart.io import (MalformedInput, canonical, cyclo_from_json, cyclo_to_json,
                          group_from_json, hstar_to_json, polytope_from_json, polytope_to_json,
                          rational_from_json, rational_to_json, rf_from_json, rf_to_json)


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


class TestCodecs:
    @pytest.mark.parametrize("q", [F(0), F(3), F(-7, 2), F(5, 12)])
    def test_rational(self, q):
        assert rational_from_json(json.loads(json.dumps(rational_to_json(q)))) == q

    def test_rational_rejects(self):
        for bad in ("x", "1/0", 1.5, None, True):
            with pytest.raises(MalformedInput):
                rational_from_json(bad)

    def test_rf_and_cyclo(self):
        f = rf_reduce(Poly([1, 0, 1]), Poly([1, -1]) * Poly([1, 0, -1]))
        assert rf_from_json(rf_to_json(f)) == f
        z = CycloNum.zeta(5, 2) + CycloNum.zeta(5, 3)
        assert cyclo_from_json(cyclo_to_json(z)) == z

    def test_polytope_roundtrip(self):
        obj = {"ambient_dim": 2, "vertices": [[1, 0], [-1, 0], [0, "1/2"], [0, "-1/2"]]}
        P = polytope_from_json(obj)
        again = polytope_from_json(json.loads(canonical(polytope_to_json(P))))
        assert again.vertex_set() == P.vertex_set()
        assert canonical(polytope_to_json(again)) == canonical(polytope_to_json(P))

    def test_halfspaces_only(self):
        obj = {"ambient_dim": 2, "halfspaces": [
            {"normal": [-1, 0], "offset": 0}, {"normal": [0, -1], "offset": 0},
            [1, 1, 1]]}
        assert polytope_from_json(obj).vertex_set() == {(0, 0), (1, 0), (0, 1)}

    @pytest.mark.parametrize("obj", [
        {"vertices": [[0, 0]]},
        {"ambient_dim": 2, "vertices": [[0, 0, 0]]},
        {"ambient_dim": 2, "vertices": []},
        {"ambient_dim": 2, "vertices": [[0, 0]], "colour": "red"},
        {"ambient_dim": 2},
        {"ambient_dim": -1, "vertices": [[0]]},
        [1, 2, 3],
    ])
    def test_malformed_polytopes(self, obj):
        with pytest.raises(MalformedInput):
            polytope_from_json(obj)

    def test_hstar_report_roundtrip(self):
        R = hstar_series(validate_setup(*example_simplex()))
        data = hstar_to_json(R)
        assert canonical(json.loads(canonical(data))) == canonical(data)
        assert data["is_polynomial"] is True and data["multiplicities"] == [[1, 0]]


class TestGroupJson:
    def test_cyclic_preset(self):
        G, T = group_from_json({"generators": [[[0, 1], [1, 0]]], "preset": "cyclic",
                                "labels": {"g": 0}})
        assert G.order == 2 and len(T) == 2

    def test_dihedral_preset(self):
        r = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
        s = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
        G, T = group_from_json({"generators": [r, s], "preset": "dihedral",
                                "labels": {"r": 0, "s": 1}})
        assert G.order == 6 and T.labels[:2] == ["psi1", "psi2"]

    def test_product_preset(self):
        a = [[-1, 0], [0, 1]]
        b = [[1, 0], [0, -1]]
        G, T = group_from_json({"generators": [a, b], "preset": "product",
                                "labels": {"factors": [["cyclic", 2], ["cyclic", 2]],
                                           "images": {"0.g": 0, "1.g": 1}}})
        assert G.order == 4 and len(T) == 4

    def test_user_table(self):
        G, T = group_from_json({"generators": [[[0, 1], [1, 0]]], "table": {
            "class_reps": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
            "rows": [[1, 1], [1, -1]], "labels": ["a", "b"]}})
        assert T.labels == ["a", "b"]

    @pytest.mark.parametrize("obj", [
        {"generators": []},
        {"generators": [[[1, 0], [0, 1]]], "preset": "weird"},
        {"generators": [[[0, 1], [1, 0]]], "preset": "cyclic", "labels": {}},
        {"generators": [[[0, 1], [1, 0]]], "extra": 1},
        {"generators": [[[0, 1], [1, 0]]], "table": {
            "class_reps": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "rows": [[1, 1], [1, 0]]}},
    ])
    def test_malformed(self, obj):
        with pytest.raises(MalformedInput):
            group_from_json(obj)


class TestExitCodes:
    def test_ehrhart_cross(self):
        code, out = run("ehrhart", "--family", "cross", "--k", "1", "--d", "2", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["period"] == 1 and data["denominator"] == 2 and data["pip"] is True

    def test_ehrhart_cycle3(self):
        code, out = run("ehrhart", "--family", "sep-cycle", "--d", "3", "--format", "json")
        assert code == 0 and json.loads(out)["hstar"] == [1, 4, 1]

    def test_not_a_polytope(self, tmp_path):
        path = write(tmp_path, {"hello": "world"})
        assert run("ehrhart", "--input", path)[0] == 2
        assert run("ehrhart", "--input", write(tmp_path, "{not json", "b.json"))[0] == 2
        assert run("ehrhart", "--input", str(tmp_path / "missing.json"))[0] == 2

    def test_bad_arguments(self):
        assert run("ehrhart")[0] == 2
        assert run("bogus")[0] == 2
        assert run("hstar", "--family", "cross", "--k", "1", "--d", "2", "--order", "0")[0] == 2
        assert run("ehrhart", "--family", "cross", "--k", "2", "--d", "2")[0] == 2

    def test_not_invariant_is_input_error(self, tmp_path):
        path = write(tmp_path, {"polytope": {"ambient_dim": 2, "vertices": [[0, 0], [2, 0], [0, 1]]},
                                "group": {"generators": [[[0, 1], [1, 0]]], "preset": "cyclic",
                                          "labels": {"g": 0}}})
        assert run("hstar", "--input", path)[0] == 2

    def test_hstar_not_effective_exit4(self):
        args = ("hstar", "--family", "cross", "--k", "1", "--d", "2", "--group", "axis=2",
                "--format", "json")
        code, out = run(*args)
        data = json.loads(out)
        assert code == 0 and data["is_polynomial"] is True and data["is_effective"] is False
        assert data["multiplicities"] == [[1, 0], [1, -1], [1, 0]]
        assert run(*args, "--expect-effective")[0] == 4

    def test_hstar_from_file(self, tmp_path):
        path = write(tmp_path, {
            "polytope": {"ambient_dim": 4, "vertices": [[1, 0, 0, 0], [0, 1, 0, 0],
                                                        [0, 0, 1, 0], [0, 0, 0, 1]]},
            "group": {"generators": [[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]],
                      "preset": "cyclic", "labels": {"g": 0}}})
        code, out = run("hstar", "--input", path, "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["multiplicities"] == [[1, 0]] and data["index"] == 4

    def test_hstar_s_only_matches_oracle(self):
        code, out = run("hstar", "--family", "sep-cycle", "--d", "5", "--group", "s-only",
                        "--format", "json")
        assert code == 0
        assert [tuple(r) for r in json.loads(out)["multiplicities"]] == thm37_hstar(5)

    def test_check_failure_exit3(self, monkeypatch):
        def boom(*a, **k):
            raise RouteMismatch("forced")
        monkeypatch.setattr(cli, "equivariant_series", boom)
        assert run("hstar", "--family", "simplex-ex22")[0] == 3

    def test_mismatch_exit1(self, monkeypatch):
        bad = rep.Reproduction("ex22", {}, [1], [2], ok=False, counterexample={"m": 0})
        monkeypatch.setitem(rep.TARGETS, "ex22", lambda ns: bad)
        assert run("reproduce", "ex22")[0] == 1

    def test_table_and_json_same_data(self):
        base = ("hstar", "--family", "cross", "--k", "1", "--d", "2", "--group", "axis=2")
        _, js = run(*base, "--format", "json")
        _, tab = run(*base, "--format", "table")
        assert tab.strip() == cli.render_table(json.loads(js))
        for key in json.loads(js):
            assert key in tab


class TestReproduce:
    def test_dihedral_p5_exit0(self):
        assert run("reproduce", "thm33", "--p", "5")[0] == 0

    def test_cross_counterexample_json(self):
        code, out = run("reproduce", "ex45", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["ok"] is True
        assert data["pipeline"]["hstar"] == [[1, 0], [1, -1], [1, 0]]
        assert data["pipeline"]["is_effective"] is False

    def test_cross_counterexample_table(self):
        code, out = run("reproduce", "ex45")
        assert code == 0 and "chi1 - chi2" in out

    def test_inequality_d21(self):
        code, out = run("reproduce", "lemma34", "--d", "21", "--format", "json")
        assert code == 0 and json.loads(out)["ok"] is True

    def test_unknown_target(self):
        assert run("reproduce", "thm99")[0] == 2
