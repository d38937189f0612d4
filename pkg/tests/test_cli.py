import json

import pytest

from ising_lab.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, jsonable, main, parse_complex, parse_number, UsageError
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "c3.txt"
    p.write_text("3\n0 1\n1 2\n2 0\n")
    return str(p)


@pytest.mark.parametrize(
    "text, value",
    [("0.3", 0.3), ("-2i", -2j), ("i", 1j), ("1e-3-2e-2i", 1e-3 - 2e-2j), ("0.1+0.2i", 0.1 + 0.2j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_number_and_jsonable():
    assert parse_number("1/4") == Fraction(1, 4)
    assert parse_number("0.5i") == 0.5j
    with pytest.raises(UsageError):
        parse_complex("abc")
    assert jsonable({"z": 1 + 2j, "f": Fraction(1, 3), "inf": float("inf")}) == {
        "z": {"re": 1.0, "im": 2.0},
        "f": "1/3",
        "inf": None,
    }


def test_exact_and_even(capsys, triangle):
    code, doc = run(capsys, "exact", "--graph", triangle)
    assert code == EXIT_OK and doc["z_ising"] == ["0", "6", "0", "2"]
    code, doc = run(capsys, "even", "--named", "K4")
    assert doc["z_even"] == ["1", "0", "0", "4", "3"] and doc["cycle_space_dimension"] == 3


def test_verify_vdw(capsys):
    code, doc = run(capsys, "verify-vdw", "--named", "petersen", "--x", "0.3+0.4i")
    assert code == EXIT_OK and doc["holds"]


def test_blocks_and_block_paths(capsys):
    code, doc = run(capsys, "blocks", "--named", "bowtie")
    assert code == EXIT_OK
    code, doc = run(capsys, "block-paths", "--named", "C4", "--v", "0", "--U", "2", "--even")
    assert code == EXIT_OK


def test_verify_decomposition_all(capsys):
    code, doc = run(capsys, "verify-decomposition", "--named", "K4", "--all")
    assert code == EXIT_OK


def test_walks(capsys):
    code, doc = run(capsys, "walks", "--named", "petersen", "--v", "0")
    assert code == EXIT_OK


def test_region(capsys):
    code, doc = run(capsys, "region", "--delta", "3")
    assert code == EXIT_OK and doc["n_delta"] == 0.125


def test_zeros_graph_and_family(capsys, tmp_path):
    code, doc = run(capsys, "zeros", "--named", "C5")
    assert code == EXIT_OK
    out, svg = tmp_path / "z.jsonl", tmp_path / "z.svg"
    code, doc = run(
        capsys, "zeros", "--family", "cycles", "--n-min", "3", "--n-max", "6", "--delta", "3",
        "--out", str(out), "--svg", str(svg),
    )
    assert code == EXIT_OK
    assert len(out.read_text().splitlines()) == 4 and svg.read_text().startswith("<svg")
    # K4 has zeros at |x| = 1/sqrt(3), inside a disk of radius 0.6
    code, doc = run(capsys, "zeros", "--family", "complete", "--n-min", "4", "--n-max", "4", "--delta", "3",
                    "--radius", "0.6")
    assert code == EXIT_FAIL and doc["violations"] == ["complete:4"]
    assert run(capsys, "zeros", "--family", "cycles", "--n-max", "5", "--delta", "3", "--radius", "1.01")[0] == EXIT_USAGE


def test_fptas(capsys):
    code, doc = run(capsys, "fptas", "--named", "cube", "--x", "0.1", "--eps", "1e-6")
    assert code == EXIT_OK and doc["relative_error"] <= 1e-6
    code, doc = run(capsys, "fptas", "--named", "C3", "--b", "1.2")
    assert code == EXIT_OK
    assert run(capsys, "fptas", "--named", "cube", "--x", "0.9")[0] == EXIT_USAGE
    assert run(capsys, "fptas", "--named", "cube")[0] == EXIT_USAGE


def test_block_poly(capsys, tmp_path):
    code, doc = run(capsys, "block-poly", "--named", "bowtie", "--invariant", "even:x=1/4",
                    "--certify", "a=0.5", "--gk", "--gate-trials", "20")
    assert code == EXIT_OK and doc["gate_passed"]
    assert doc["z_block"] == "4225/4096"
    assert doc["gruber_kunz"]["block_not_worse"]
    target = tmp_path / "k3.txt"
    target.write_text("3\n0 1\n1 2\n2 0\n")
    code, doc = run(capsys, "block-poly", "--named", "C4", "--invariant", f"hom:target={target}", "--gate-trials", "10")
    assert code == EXIT_OK
    assert run(capsys, "block-poly", "--named", "C4", "--invariant", "bogus:x=1")[0] == EXIT_USAGE
    assert run(capsys, "block-poly", "--named", "C4", "--invariant", "even:x=1", "--gk")[0] == EXIT_USAGE


def test_corpus(capsys, tmp_path):
    code, doc = run(capsys, "corpus", "--family", "random-regular", "--d", "3", "--sizes", "8,10",
                    "--count", "4", "--seed", "1", "--out", str(tmp_path / "c"))
    assert code == EXIT_OK and doc["count"] == 4
    manifest = json.loads((tmp_path / "c" / "manifest.json").read_text())
    assert [g["n"] for g in manifest["graphs"]] == [8, 10, 8, 10]
    assert all((tmp_path / "c" / g["file"]).exists() for g in manifest["graphs"])


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "exact")[0] == EXIT_USAGE
    assert run(capsys, "exact", "--graph", str(tmp_path / "missing.txt"))[0] == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0 5\n")
    assert run(capsys, "exact", "--graph", str(bad))[0] == EXIT_USAGE
    assert run(capsys, "exact", "--named", "nope")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_output_file_is_written(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["--output", str(out), "region", "--delta", "4"]) == EXIT_OK
    assert json.loads(out.read_text())["delta"] == 4
