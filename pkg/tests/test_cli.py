import json

import pytest

from submon.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_csv(capsys):
    code, out, err = run(capsys, "count", "--monoid", "chain:1 x chain:1", "--n", "2")
    assert code == 0 and err == ""
    assert out == "n,count\n0,7\n1,61\n2,449\n"


def test_count_is_deterministic(capsys):
    first = run(capsys, "count", "--monoid", "mk:3", "--n", "3")
    second = run(capsys, "count", "--monoid", "mk:3", "--n", "3")
    assert first == second


def test_count_json_with_oracle(capsys):
    code, out, _ = run(
        capsys, "count", "--monoid", "cyclic:2", "--n", "1",
        "--oracle", "--format", "json",
    )
    assert code == 0
    assert json.loads(out) == {"monoid": "cyclic:2", "values": [2, 5]}


def test_count_trivial_chain(capsys):
    code, out, _ = run(capsys, "count", "--monoid", "chain:0", "--n", "5")
    assert code == 0
    assert [line.split(",")[1] for line in out.splitlines()[1:]] == [
        "1", "2", "4", "8", "16", "32",
    ]


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--monoid", "chain:1 x chain:1")
    assert code == 0
    assert out.splitlines() == [
        "eigenvalue,coefficient,normalized",
        "2,1/2,4",
        "3,1,-3",
        "4,-12,-48",
        "6,35/2,-420",
    ]


def test_spectrum_includes_vanishing_row(capsys):
    code, out, _ = run(capsys, "spectrum", "--monoid", "mk:3")
    assert code == 0
    assert "4,0,0" in out.splitlines()


def test_spectrum_n5_eigenvalues(capsys):
    code, out, _ = run(capsys, "spectrum", "--monoid", "n5", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["eigenvalue"] for r in rows] == [2, 3, 4, 5, 6, 8]


def test_matrix_json(capsys):
    code, out, _ = run(capsys, "matrix", "--monoid", "chain:1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["legend"] == ["0x1", "0x3"]
    assert payload["rows"] == [[2, 0], [2, 3]]


def test_ogf_output(capsys):
    code, out, _ = run(capsys, "ogf", "--monoid", "chain:1")
    assert code == 0
    assert out == "numerator,2,-3\ndenominator_roots,2,3\n"


def test_polybernoulli(capsys):
    code, out, _ = run(capsys, "polybernoulli", "--m", "9", "--n", "9")
    assert code == 0 and out.strip() == "44222780245622"


def test_sattr_counts(capsys):
    code, out, _ = run(capsys, "sattr", "--lattice", "chain:1", "--n", "1")
    assert code == 0
    assert out == "n,count\n0,2\n1,7\n"


def test_sattr_list(capsys):
    code, out, _ = run(capsys, "sattr", "--lattice", "chain:1", "--list")
    assert code == 0
    assert json.loads(out) == {"lattice": "chain:1", "systems": [[], [[0, 1]]]}


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "count", "--monoid", "junk:1", "--n", "1")
    assert code == 2 and "junk" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "count", "--monoid", "bool:5", "--n", "1")
    assert code == 3 and "budget" in err


def test_not_idempotent_exit_code(capsys):
    code, _, err = run(capsys, "spectrum", "--monoid", "cyclic:2")
    assert code == 4 and "idempotent" in err


def test_unknown_suite_exit_code(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2 and "unknown suite" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "triangular", "--monoid", "chain:2"),
        ("verify", "recurrence", "--monoid", "mk:2"),
        ("verify", "oracle", "--monoid", "chain:2", "--n", "2"),
        ("verify", "transfer-iso", "--monoid", "chain:1 x chain:1"),
        ("verify", "appendix",),
    ],
)
def test_verify_suites_pass(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert "ok" in out


def test_verify_oracle_parallel(capsys):
    code, out, _ = run(
        capsys, "verify", "oracle", "--monoid", "chain:1", "--n", "2", "--jobs", "2"
    )
    assert code == 0
    assert out.count("ok oracle") == 3
