#!/usr/bin/env python3
"""
End-to-end tests for the growth_cli subcommands and exit statuses
"""

from math import comb

import pytest

from growth_cli import main


def _run(scenarios_dir, tmp_path, command, scenario, *extra):
    out = tmp_path / "out"
    code = main(["--quiet", command, "--config", str(scenarios_dir / scenario), "--out", str(out), *extra])
    return code, out


def test_growth_polynomial_one_variable(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "growth", "polynomial_1_growth.toml")
    assert code == 0
    expected = "n,dim\n" + "".join(f"{n},{n + 1}\n" for n in range(1, 11))
    assert (out / "growth.csv").read_text() == expected


def test_growth_abelian_lie(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "growth", "abelian_3_lie_growth.toml")
    assert code == 0
    assert (out / "growth.csv").read_text() == "n,dim\n" + "".join(f"{n},3\n" for n in range(1, 7))


def test_growth_commutator_from_yaml(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "growth", "m2_commutator_growth.yaml")
    assert code == 0
    rows = (out / "growth.csv").read_text().splitlines()[1:]
    assert [int(r.split(",")[1]) for r in rows] == [2, 3, 3, 3, 3, 3]


def test_growth_kind_override(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "growth", "polynomial_1_growth.toml", "--kind", "commutator", "--nmax", "3")
    assert code == 0
    # F[x] is commutative: only span(1, x) survives
    assert (out / "growth.csv").read_text() == "n,dim\n1,2\n2,2\n3,2\n"


@pytest.mark.parametrize("kind", ["assoc", "commutator"])
def test_associative_growth_of_lie_section_is_rejected(scenarios_dir, tmp_path, capsys, kind):
    code, out = _run(scenarios_dir, tmp_path, "growth", "sl2_pipeline.toml", "--kind", kind, "--nmax", "4")
    assert code == 2
    err = capsys.readouterr().err
    assert "growth.kind" in err and "algebra.kind" in err
    assert not (out / "growth.csv").exists()


def test_lie_growth_of_lie_section(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "growth", "sl2_pipeline.toml", "--kind", "lie", "--nmax", "4")
    assert code == 0
    # V = span(e, h, f) is already all of sl2
    assert (out / "growth.csv").read_text() == "n,dim\n1,3\n2,3\n3,3\n4,3\n"


def test_missing_n_max_exits_with_config_error(tmp_path, capsys):
    path = tmp_path / "s.toml"
    path.write_text('[algebra]\nkind = "polynomial"\nvariables = 1\n[[elements]]\nterms = [["x", 1]]\n')
    code = main(["--quiet", "growth", "--config", str(path), "--out", str(tmp_path / "out")])
    assert code == 2
    assert "n_max" in capsys.readouterr().err
    assert main(["--quiet", "growth", "--config", str(path), "--out", str(tmp_path / "out"), "--nmax", "2"]) == 0


def test_verify_lemma_polynomial_one(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "verify-lemma", "polynomial_1_lemma.toml", "--nmax", "4")
    assert code == 0
    lines = [l for l in (out / "report.txt").read_text().splitlines() if not l.startswith("#")]
    assert lines == [
        "phi_homomorphism PASS", "commutator_image PASS", "inclusion_eq1 PASS", "growth_bound PASS"]
    assert (out / "g_A.csv").read_text() == "n,dim\n1,2\n2,3\n3,4\n4,5\n"
    assert (out / "g_B_prime.csv").read_text().startswith("n,dim,bound\n1,2,8\n")


@pytest.mark.slow
def test_verify_lemma_polynomial_two(scenarios_dir, tmp_path):
    code, _ = _run(scenarios_dir, tmp_path, "verify-lemma", "polynomial_2_lemma.toml")
    assert code == 0


def test_verify_lemma_field_bound_column(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "verify-lemma", "field_lemma.toml")
    assert code == 0
    rows = (out / "g_B_prime.csv").read_text().splitlines()[1:]
    bounds = [int(r.split(",")[2]) for r in rows]
    assert bounds == [(n + 1) ** 2 for n in range(1, 9)]


def test_corrupted_multiplication_exits_one(scenarios_dir, tmp_path, capsys):
    code, out = _run(scenarios_dir, tmp_path, "verify-lemma", "polynomial_1_lemma.toml",
                     "--nmax", "3", "--corrupt-multiplication")
    assert code == 1
    assert "commutator_image FAIL" in capsys.readouterr().out
    assert "commutator_image FAIL" in (out / "report.txt").read_text()


def test_nonunital_base_exits_three(scenarios_dir, tmp_path):
    code, _ = _run(scenarios_dir, tmp_path, "verify-lemma", "nonunital_lemma.toml")
    assert code == 3


def test_jacobi_violation_exits_four(scenarios_dir, tmp_path, capsys):
    code, _ = _run(scenarios_dir, tmp_path, "pipeline", "bad_jacobi.toml")
    assert code == 4
    assert "x, y, z" in capsys.readouterr().err


def test_pipeline_abelian(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "pipeline", "abelian_2_pipeline.toml", "--nmax", "3")
    assert code == 0
    expected = "n,dim\n" + "".join(f"{n},{comb(n + 2, 2)}\n" for n in range(1, 4))
    assert (out / "g_U.csv").read_text() == expected
    for name in ("report.txt", "g_A.csv", "g_B_prime.csv", "g_lie_C.csv", "g_assoc_C.csv"):
        assert (out / name).exists()


def test_oracle_short_run(scenarios_dir, tmp_path):
    path = tmp_path / "oracle.toml"
    path.write_text((scenarios_dir / "oracle_default.toml").read_text().replace("trials = 500", "trials = 25"))
    code = main(["--quiet", "oracle", "--config", str(path), "--out", str(tmp_path / "out")])
    assert code == 0
    text = (tmp_path / "out" / "oracle.txt").read_text()
    assert text.startswith("# seed: 42\n")
    assert text.endswith("oracle PASS 25/25 agree\n")


@pytest.mark.slow
def test_oracle_default_run(scenarios_dir, tmp_path):
    code, out = _run(scenarios_dir, tmp_path, "oracle", "oracle_default.toml")
    assert code == 0


def test_outputs_are_deterministic(scenarios_dir, tmp_path):
    first = tmp_path / "first"
    second = tmp_path / "second"
    args = ["verify-lemma", "--config", str(scenarios_dir / "polynomial_1_lemma.toml"), "--nmax", "3"]
    assert main(["--quiet", *args, "--out", str(first)]) == 0
    assert main(["--quiet", *args, "--out", str(second), "--jobs", "4"]) == 0
    for name in ("report.txt", "g_A.csv", "g_B_prime.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()

    oracle = tmp_path / "oracle.toml"
    oracle.write_text((scenarios_dir / "oracle_default.toml").read_text().replace("trials = 500", "trials = 10"))
    for out in (first, second):
        assert main(["--quiet", "oracle", "--config", str(oracle), "--out", str(out), "--seed", "7"]) == 0
    assert (first / "oracle.txt").read_bytes() == (second / "oracle.txt").read_bytes()
