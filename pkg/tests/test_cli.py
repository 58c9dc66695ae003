from naecut.cli import main

K3_CNF = "p cnf 3 1\n1 2 3 0\n"
SPLIT_CNF = "p cnf 5 2\n1 2 3 0\n1 4 5 0\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_transform_golden_output(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(SPLIT_CNF)
    out = tmp_path / "out.cnf"
    map_file = tmp_path / "map.txt"
    code, _ = run(capsys, "transform", str(src), "-o", str(out), "--map", str(map_file))
    assert code == 0
    assert out.read_text() == (
        "p cnf 6 3\n1 2 3 0\n6 4 5 0\n1 -6 0\n"
        "c map 1 1 6\nc map 2 2\nc map 3 3\nc map 4 4\nc map 5 5\n"
    )
    assert map_file.read_text().splitlines()[0] == "map 1 1 6"


def test_transform_identity_to_stdout(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(K3_CNF)
    code, out = run(capsys, "transform", str(src))
    assert code == 0
    assert out.startswith("p cnf 3 1\n1 2 3 0\n")


def test_transform_rejects_non_monotone(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text("p cnf 2 1\n1 -2 0\n")
    code, _ = run(capsys, "transform", str(src))
    assert code == 2


def test_reduce_single_clause_report(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(K3_CNF)
    code, out = run(capsys, "reduce", str(src))
    assert code == 0
    assert "vertices 3" in out
    assert "max degree 2" in out
    assert "colours 3" in out


def test_reduce_writes_graph_and_map(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(SPLIT_CNF)
    graph_file = tmp_path / "out.graph"
    map_file = tmp_path / "rmap.txt"
    code, out = run(
        capsys, "reduce", str(src), "-o", str(graph_file), "--map", str(map_file)
    )
    assert code == 0
    assert "vertices 9" in out and "edges 15" in out and "triangles 9" in out
    assert "max degree" in out and "colours" in out
    assert graph_file.read_text().startswith("p edge 9 15\n")
    assert "gad 3 1 6 7 8 9" in map_file.read_text()


def test_reduce_bounds_over_random_instances(tmp_path, capsys):
    import re

    from naecut import emit_cnf, generate_instance

    for seed in (3, 5, 11):
        src = tmp_path / f"in{seed}.cnf"
        src.write_text(emit_cnf(generate_instance(seed, 9, 11)))
        code, out = run(capsys, "reduce", str(src))
        assert code == 0
        assert int(re.search(r"max degree (\d+)", out).group(1)) <= 8
        assert int(re.search(r"colours (\d+)", out).group(1)) <= 5


def test_reduce_skip_transform_requires_properties(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text("p cnf 4 2\n1 2 3 0\n1 2 4 0\n")
    code, _ = run(capsys, "reduce", str(src), "--skip-transform")
    assert code == 2


def test_reduce_skip_transform_accepts_split_input(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text("p cnf 6 3\n1 2 3 0\n6 4 5 0\n1 -6 0\n")
    code, out = run(capsys, "reduce", str(src), "--skip-transform")
    assert code == 0
    assert "vertices 9" in out


def test_solve_nae_satisfiable(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(K3_CNF)
    witness_file = tmp_path / "wit.txt"
    code, out = run(capsys, "solve-nae", str(src), "-o", str(witness_file))
    assert code == 0
    assert out == "s NAE-SATISFIABLE\nv -1 -2 3 0\n"
    assert witness_file.read_text() == out


def test_solve_nae_unsatisfiable(tmp_path, capsys):
    import itertools

    clauses = "".join(
        f"{a} {b} {c} 0\n" for a, b, c in itertools.combinations(range(1, 6), 3)
    )
    src = tmp_path / "in.cnf"
    src.write_text(f"p cnf 5 10\n{clauses}")
    code, out = run(capsys, "solve-nae", str(src))
    assert code == 1
    assert out == "s NAE-UNSATISFIABLE\n"


def test_solve_cut_found_and_not_found(tmp_path, capsys):
    k3 = tmp_path / "k3.graph"
    k3.write_text("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    code, out = run(capsys, "solve-cut", str(k3))
    assert code == 0
    assert out == "s CUT-FOUND\nv 3 0\n"

    k6_edges = [(u, v) for u in range(1, 7) for v in range(u + 1, 7)]
    k6 = tmp_path / "k6.graph"
    k6.write_text(
        "p edge 6 15\n" + "".join(f"e {u} {v}\n" for u, v in k6_edges)
    )
    code, out = run(capsys, "solve-cut", str(k6))
    assert code == 1
    assert out == "s NO-CUT\n"


def test_solve_budget_exceeded_exit_code(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NAE_REDUCE_BUDGET", "4")
    src = tmp_path / "in.cnf"
    src.write_text(K3_CNF)
    code, _ = run(capsys, "solve-nae", str(src))
    assert code == 3


def test_color_command(tmp_path, capsys):
    k3 = tmp_path / "k3.graph"
    k3.write_text("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    code, out = run(capsys, "color", str(k3), "-k", "3")
    assert code == 0
    assert out == "s COLOURING-FOUND\nk 3\n1 1\n2 2\n3 3\n"
    code, out = run(capsys, "color", str(k3), "-k", "2")
    assert code == 1
    assert out == "s NO-COLOURING\n"


def test_triangles_command(tmp_path, capsys):
    k3 = tmp_path / "k3.graph"
    k3.write_text("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    code, out = run(capsys, "triangles", str(k3))
    assert code == 0
    assert out == "triangles 1\nt 1 2 3\n"


def test_verify_assignment(tmp_path, capsys):
    src = tmp_path / "f.cnf"
    src.write_text(K3_CNF)
    good = tmp_path / "good.txt"
    good.write_text("s NAE-SATISFIABLE\nv -1 -2 3 0\n")
    assert run(capsys, "verify", "assignment", str(src), str(good))[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("s NAE-SATISFIABLE\nv 1 2 3 0\n")
    code, out = run(capsys, "verify", "assignment", str(src), str(bad))
    assert code == 1
    assert "clause 1" in out


def test_verify_assignment_equality_clause_violation(tmp_path, capsys):
    src = tmp_path / "f.cnf"
    src.write_text("p cnf 6 3\n1 2 3 0\n6 4 5 0\n1 -6 0\n")
    bad = tmp_path / "bad.txt"
    bad.write_text("s NAE-SATISFIABLE\nv 1 -2 -3 -4 5 -6 0\n")
    code, out = run(capsys, "verify", "assignment", str(src), str(bad))
    assert code == 1
    assert "clause 3" in out


def test_verify_cut_prints_offending_triangle(tmp_path, capsys):
    graph = tmp_path / "g.graph"
    graph.write_text(
        "p edge 5 6\ne 1 2\ne 1 3\ne 2 3\ne 1 4\ne 1 5\ne 4 5\n"
    )
    good = tmp_path / "good.txt"
    good.write_text("s CUT-FOUND\nv 1 0\n")
    assert run(capsys, "verify", "cut", str(graph), str(good))[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("s CUT-FOUND\nv 1 2 3 0\n")
    code, out = run(capsys, "verify", "cut", str(graph), str(bad))
    assert code == 1
    assert "monochromatic triangle 1 2 3" in out


def test_verify_cut_cross_checks_assignment_via_map(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(SPLIT_CNF)
    cnf2 = tmp_path / "split.cnf"
    graph_file = tmp_path / "g.graph"
    map_file = tmp_path / "rmap.txt"
    assert run(capsys, "transform", str(src), "-o", str(cnf2))[0] == 0
    assert run(
        capsys, "reduce", str(cnf2), "--skip-transform",
        "-o", str(graph_file), "--map", str(map_file),
    )[0] == 0
    wit_file = tmp_path / "wit.txt"
    assert run(capsys, "solve-nae", str(cnf2), "-o", str(wit_file))[0] == 0
    cut_file = tmp_path / "cut.txt"
    assert run(capsys, "solve-cut", str(graph_file), "-o", str(cut_file))[0] == 0
    code, _ = run(
        capsys, "verify", "cut", str(graph_file), str(cut_file),
        "--map", str(map_file), "--assignment", str(wit_file),
    )
    assert code == 0


def test_verify_coloring(tmp_path, capsys):
    graph = tmp_path / "g.graph"
    graph.write_text("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    cert = tmp_path / "c.txt"
    cert.write_text("k 3\n1 1\n2 2\n3 3\n")
    assert run(capsys, "verify", "coloring", str(graph), str(cert))[0] == 0
    cert.write_text("k 3\n1 1\n2 1\n3 3\n")
    code, out = run(capsys, "verify", "coloring", str(graph), str(cert))
    assert code == 1
    assert "edge 1 2" in out


def test_verify_rejects_malformed_certificate(tmp_path, capsys):
    src = tmp_path / "f.cnf"
    src.write_text(K3_CNF)
    cert = tmp_path / "c.txt"
    cert.write_text("garbage\n")
    assert run(capsys, "verify", "assignment", str(src), str(cert))[0] == 2


def test_roundtrip_all_pass(capsys):
    code, out = run(
        capsys, "roundtrip", "--seed", "5", "-n", "10", "-m", "8", "--trials", "12"
    )
    assert code == 0
    assert "trials 12 passed 12 failed 0" in out


def test_roundtrip_zero_trials(capsys):
    code, out = run(capsys, "roundtrip", "--seed", "1", "-n", "5", "-m", "3", "--trials", "0")
    assert code == 0
    assert "trials 0 passed 0 failed 0" in out


def test_roundtrip_break_gadget_detects_failures(capsys):
    # n=4, m=6 guarantees repeated variables and therefore gadgets.
    code, out = run(
        capsys,
        "roundtrip", "--seed", "5", "-n", "4", "-m", "6",
        "--trials", "6", "--break-gadget",
    )
    assert code == 1
    assert "FAIL" in out
    assert "gadget-triangles" in out


def test_exit_code_2_on_missing_file(capsys):
    assert run(capsys, "solve-nae", "/nonexistent/x.cnf")[0] == 2


def test_byte_identical_reruns(tmp_path, capsys):
    src = tmp_path / "in.cnf"
    src.write_text(SPLIT_CNF)
    outputs = []
    for _ in range(2):
        code, out = run(capsys, "solve-nae", str(src))
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
