from __future__ import annotations

import json
from pathlib import Path

import pytest

from reconfkit import formats
from reconfkit.cli import run
from reconfkit.gadgets import MccInstance, build_ccsr
from reconfkit.generators import random_planar_instance
from reconfkit.graph import Graph
from reconfkit.kernel import kernelize
from reconfkit.reconfig import Move, ReconfInstance, ReconfSequence, Variant


def p3_instance():
    g = Graph(3, [(0, 1), (1, 2)])
    return ReconfInstance(
        Variant.CDS, g, frozenset({0, 1}), frozenset({1, 2}), 2
    )


def write_p3(tmp_path) -> Path:
    path = tmp_path / "p3.json"
    path.write_text(formats.serialize_instance(p3_instance()))
    return path


def write_triangle_mcc(tmp_path) -> Path:
    mcc = MccInstance(Graph(3, [(0, 1), (0, 2), (1, 2)]), (1, 2, 3), 3)
    path = tmp_path / "triangle-mcc.json"
    path.write_text(formats.serialize_mcc(mcc))
    return path


class TestInstanceFormat:
    def test_round_trip_plain(self):
        inst = p3_instance()
        text = formats.serialize_instance(inst)
        parsed, rotation = formats.parse_instance(text)
        assert parsed == inst
        assert rotation is None
        assert formats.serialize_instance(parsed) == text

    def test_round_trip_with_rotation_and_colors(self):
        inst, rs = random_planar_instance(8, 8, 5)
        text = formats.serialize_instance(inst, rs)
        parsed, rs2 = formats.parse_instance(text)
        assert parsed == inst
        assert rs2 == rs
        assert formats.serialize_instance(parsed, rs2) == text

    def test_missing_colors_named(self):
        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        inst = ReconfInstance(
            Variant.CCS, g, frozenset({0, 1}), frozenset({0, 1}), 2,
            colors=(1, 2, 2),
        )
        data = formats.instance_to_dict(inst)
        del data["colors"]
        with pytest.raises(formats.FormatError) as exc:
            formats.parse_instance(json.dumps(data))
        assert exc.value.field == "colors"

    def test_self_loop_named(self):
        data = formats.instance_to_dict(p3_instance())
        data["edges"].append([0, 0])
        with pytest.raises(formats.FormatError, match="self-loop"):
            formats.parse_instance(json.dumps(data))

    def test_out_of_range_vertex_named(self):
        data = formats.instance_to_dict(p3_instance())
        data["source"] = [0, 99]
        with pytest.raises(formats.FormatError) as exc:
            formats.parse_instance(json.dumps(data))
        assert exc.value.field == "source"

    def test_infeasible_source_reported(self):
        data = formats.instance_to_dict(p3_instance())
        data["source"] = [0]
        with pytest.raises(formats.FormatError) as exc:
            formats.parse_instance(json.dumps(data))
        assert exc.value.field == "source"

    def test_malformed_json_reported(self):
        with pytest.raises(formats.FormatError, match="malformed"):
            formats.parse_instance(b"{nope")

    def test_mcc_round_trip(self):
        mcc = MccInstance(Graph(2, [(0, 1)]), (1, 2), 2)
        text = formats.serialize_mcc(mcc)
        assert formats.parse_mcc(text) == mcc
        with pytest.raises(formats.FormatError):
            formats.parse_instance(text)  # reconf parser refuses mcc files


class TestSequenceFormat:
    def test_round_trip(self):
        seq = ReconfSequence(
            frozenset({0, 1}), (Move("remove", 0), Move("add", 2))
        )
        text = formats.serialize_sequence(seq)
        assert formats.parse_sequence(text) == seq
        assert formats.serialize_sequence(formats.parse_sequence(text)) == text

    def test_ill_defined_replay_rejected(self):
        text = formats.serialize_sequence(
            ReconfSequence(frozenset({0}), (Move("remove", 5),))
        )
        with pytest.raises(formats.FormatError, match="replay"):
            formats.parse_sequence(text)

    def test_unknown_op_rejected(self):
        data = {
            "format": formats.SEQUENCE_TAG,
            "initial": [0],
            "moves": [{"op": "swap", "vertex": 0}],
        }
        with pytest.raises(formats.FormatError, match="op"):
            formats.parse_sequence(json.dumps(data))


class TestTraceAndLayoutFormats:
    def test_trace_round_trip(self):
        inst = _thick_diamond_instance()
        res = kernelize(inst)
        assert len(res.trace) >= 1
        text = formats.serialize_trace(res.trace)
        parsed = formats.parse_trace(text)
        assert parsed == res.trace
        assert formats.serialize_trace(parsed) == text
        assert parsed.replay(inst.graph) == res.instance.graph

    def test_layout_serializes(self):
        mcc = MccInstance(Graph(2, [(0, 1)]), (1, 2), 2)
        _, layout = build_ccsr(mcc, r_max=2)
        data = json.loads(formats.serialize_layout(layout))
        assert data["format"] == formats.LAYOUT_TAG
        assert data["bound"] == 4
        assert len(data["copies"]) == 2 * 2 * 2


def _thick_diamond_instance():
    t = 18
    edges = [(0, 1)] + [(0, x) for x in range(2, t + 2)] + [
        (1, x) for x in range(2, t + 2)
    ]
    g = Graph(t + 2, edges)
    return ReconfInstance(Variant.CDS, g, frozenset({0}), frozenset({0}), 1)


class TestDotAndDimacs:
    def test_dot_mentions_all_edges(self):
        g = Graph(3, [(0, 1), (1, 2)])
        dot = formats.to_dot(g, source=frozenset({0}))
        assert "0 -- 1;" in dot and "1 -- 2;" in dot
        assert "graph" in dot

    def test_dimacs_import(self):
        text = "c comment\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n"
        g = formats.parse_dimacs(text)
        assert g.n == 4 and g.m == 3
        assert g.has_edge(0, 1) and g.has_edge(2, 3)

    def test_dimacs_errors(self):
        with pytest.raises(formats.FormatError):
            formats.parse_dimacs("e 1 2\n")
        with pytest.raises(formats.FormatError):
            formats.parse_dimacs("p edge 2 1\ne 1 9\n")


class TestCli:
    def test_solve_writes_two_move_sequence(self, tmp_path, capsys):
        inst_path = write_p3(tmp_path)
        out = tmp_path / "seq.json"
        assert run(["solve", str(inst_path), "-o", str(out)]) == 0
        seq = formats.parse_sequence(out.read_bytes())
        assert seq.length == 2

    def test_solve_unreachable_is_exit_one(self, tmp_path):
        g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        inst = ReconfInstance(
            Variant.CDS, g, frozenset({0, 1}), frozenset({2, 3}), 2
        )
        path = tmp_path / "islands.json"
        path.write_text(formats.serialize_instance(inst))
        assert run(["solve", str(path), "-o", str(tmp_path / "x.json")]) == 1

    def test_solve_budget_is_exit_two(self, tmp_path):
        g = Graph(9, [(i, i + 1) for i in range(8)])
        inst = ReconfInstance(
            Variant.DS, g, frozenset(range(9)), frozenset({1, 4, 7}), 9
        )
        path = tmp_path / "big.json"
        path.write_text(formats.serialize_instance(inst))
        assert run(["solve", str(path), "--budget", "3",
                    "-o", str(tmp_path / "x.json")]) == 2

    def test_verify_roundtrip_and_tamper(self, tmp_path):
        inst_path = write_p3(tmp_path)
        seq_path = tmp_path / "seq.json"
        assert run(["solve", str(inst_path), "-o", str(seq_path)]) == 0
        assert run(["verify", str(inst_path), str(seq_path)]) == 0
        data = json.loads(seq_path.read_text())
        data["moves"][0] = {"op": "remove", "vertex": 2}
        seq_path.write_text(json.dumps(data))
        assert run(["verify", str(inst_path), str(seq_path)]) == 1

    def test_gen_gadget_pipes_into_solve(self, tmp_path):
        mcc_path = write_triangle_mcc(tmp_path)
        inst_path = tmp_path / "gadget.json"
        layout_path = tmp_path / "layout.json"
        assert run([
            "gen-gadget", str(mcc_path), "--rep", "2",
            "-o", str(inst_path), "--layout", str(layout_path),
        ]) == 0
        assert run(["solve", str(inst_path), "-o", str(tmp_path / "s.json")]) == 0
        assert json.loads(layout_path.read_text())["format"] == formats.LAYOUT_TAG

    def test_gen_gadget_to_cds(self, tmp_path):
        mcc_path = write_triangle_mcc(tmp_path)
        inst_path = tmp_path / "gadget-cds.json"
        assert run([
            "gen-gadget", str(mcc_path), "--rep", "2", "--to-cds",
            "-o", str(inst_path),
        ]) == 0
        inst, _ = formats.parse_instance(inst_path.read_bytes())
        assert inst.variant is Variant.CDS

    def test_gen_random_planar_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["gen-random-planar", "--n", "9", "--k", "9", "--seed", "7"]
        assert run(argv + ["-o", str(a)]) == 0
        assert run(argv + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_gen_random_planar_bound_too_small(self, tmp_path):
        assert run([
            "gen-random-planar", "--n", "12", "--k", "1", "--seed", "1",
            "-o", str(tmp_path / "x.json"),
        ]) == 2

    def test_embed_round_trip_and_k5(self, tmp_path):
        inst_path = write_p3(tmp_path)
        out = tmp_path / "embedded.json"
        assert run(["embed", str(inst_path), "-o", str(out)]) == 0
        _, rs = formats.parse_instance(out.read_bytes())
        assert rs is not None
        k5 = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
        inst = ReconfInstance(
            Variant.CDS, k5, frozenset({0}), frozenset({1}), 2
        )
        k5_path = tmp_path / "k5.json"
        k5_path.write_text(formats.serialize_instance(inst))
        assert run(["embed", str(k5_path), "-o", str(tmp_path / "y.json")]) == 1

    def test_kernelize_emits_instance_and_trace(self, tmp_path):
        inst_path = tmp_path / "diamond.json"
        inst_path.write_text(formats.serialize_instance(_thick_diamond_instance()))
        out = tmp_path / "reduced.json"
        trace = tmp_path / "trace.json"
        dot = tmp_path / "reduced.dot"
        assert run([
            "kernelize", str(inst_path), "-o", str(out),
            "--trace", str(trace), "--dot", str(dot),
        ]) == 0
        reduced, rs = formats.parse_instance(out.read_bytes())
        assert rs is not None
        assert reduced.graph.n < 20
        assert len(formats.parse_trace(trace.read_bytes()).entries) >= 1
        assert "--" in dot.read_text()

    def test_core_command(self, tmp_path, capsys):
        inst_path = write_p3(tmp_path)
        assert run(["core", str(inst_path)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert set(data["core"]) >= {0, 1, 2} - {9}

    def test_stats_with_dimacs(self, tmp_path, capsys):
        dimacs = tmp_path / "g.col"
        dimacs.write_text("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
        assert run(["stats", "--dimacs", str(dimacs)]) == 0
        out = capsys.readouterr().out
        assert "vertices 4" in out and "degeneracy 1" in out

    def test_stats_on_instance(self, tmp_path, capsys):
        inst_path = write_p3(tmp_path)
        assert run(["stats", str(inst_path)]) == 0
        out = capsys.readouterr().out
        assert "variant cds" in out and "planar yes" in out

    def test_unknown_flag_exits_two(self, capsys):
        assert run(["solve", "--frobnicate"]) == 2

    def test_unknown_command_exits_two(self, capsys):
        assert run(["dance"]) == 2

    def test_missing_file_exits_two(self, capsys):
        assert run(["solve", "/nonexistent/file.json"]) == 2

    def test_parse_error_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        assert run(["solve", str(bad)]) == 2
