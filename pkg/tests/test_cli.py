import io
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from gkmfaces.cli import main

from helpers import corpus_path


def run_cli(*argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(list(argv))
    return code, buffer.getvalue()


def path(name):
    return str(corpus_path(name))


def test_matroid_flats_u23():
    code, out = run_cli("matroid", "flats", path("u23.wt"))
    assert code == 0
    assert out.startswith("flats: 5\n")
    assert "{1,2,3} rank 2 drk 3" in out


def test_matroid_flats_json_and_dot():
    code, out = run_cli("matroid", "flats", path("b2.wt"), "--json")
    assert code == 0 and '"kind": "poset"' in out
    code, out = run_cli("matroid", "flats", path("b2.wt"), "--dot")
    assert code == 0 and out.startswith("digraph poset {")


def test_matroid_check_coll():
    code, out = run_cli("matroid", "check", path("coll.wt"))
    assert code == 0
    assert "geometric lattice: pass" in out
    assert "coherent with multiplicity weights: pass" in out
    assert "independence degree: 1" in out


def test_matroid_wedge_pass():
    code, out = run_cli("matroid", "wedge", path("u23.wt"))
    assert code == 0
    assert "wedge prediction: pass" in out
    assert "mobius magnitude: 2" in out


def test_poset_check_glued_plain():
    code, out = run_cli("poset", "check", path("glued.poset"))
    assert code == 0
    assert "locally geometric: pass (rank 2)" in out


def test_poset_check_glued_gkm_coherent_fails():
    code, out = run_cli("poset", "check", path("glued.poset"), "--gkm-coherent")
    assert code == 1
    assert "gkm-coherent: fail at element top" in out
    assert "sum 2" in out and "sum 3" in out


def test_poset_constructions_emit_parseable_text():
    from gkmfaces.formats import parse_poset

    code, out = run_cli("poset", "glue", path("glued.poset"), path("glued.poset"))
    assert code == 0
    assert len(parse_poset(out).elements) == 15
    code, out = run_cli("poset", "projectivize", path("glued.poset"))
    assert code == 1  # glued poset has no unique bottom
    code, out = run_cli("poset", "homology", path("glued.poset"), "--proper")
    assert code == 1  # and no unique bottom either, so no proper part


def test_poset_homology_plain():
    code, out = run_cli("poset", "homology", path("glued.poset"))
    assert code == 0
    assert "b~0 = 0" in out  # has a top, hence contractible


B2_POSET = (
    "element bot rank 0\n"
    "element a rank 1\n"
    "element b rank 1\n"
    "element top rank 2\n"
    "cover bot < a\ncover bot < b\ncover a < top\ncover b < top\n"
)


def test_poset_compactify_and_projectivize_cli(tmp_path):
    src = tmp_path / "b2.poset"
    src.write_text(B2_POSET)
    code, out = run_cli("poset", "compactify", str(src))
    assert code == 0
    assert out.count("element") == 5
    assert "element 0' rank 0" in out
    code, out = run_cli("poset", "projectivize", str(src))
    assert code == 0
    assert out.count("element") == 3


def test_gkm_validate_cp2():
    code, out = run_cli("gkm", "validate", path("cp2.gkm"))
    assert code == 0
    assert out.strip() == "valid: dimension 2, rank 2"


def test_gkm_faces_square():
    code, out = run_cli("gkm", "faces", path("square.gkm"))
    assert code == 0
    assert out.startswith("faces: 9\n")


def test_gkm_tg_faces_g6():
    code, out = run_cli("gkm", "tg-faces", path("g6.gkm"))
    assert code == 0
    assert out.startswith("faces: 19\n")


def test_gkm_connection_derive_square():
    code, out = run_cli("gkm", "connection", path("square.gkm"))
    assert code == 0
    assert "connection l at v00 -> r via b" in out


def test_gkm_connection_validate_g6_file():
    code, out = run_cli("gkm", "connection", path("g6.gkm"))
    assert code == 0
    assert out.strip() == "connection: pass"


def test_gkm_reconstruct_g6_with_galois():
    code, out = run_cli("gkm", "reconstruct", path("g6.gkm"), "--verify-galois")
    assert code == 0
    assert out.startswith("faces: 16\n")
    assert "galois: pass" in out
    assert "diagnostics: none" in out


def test_gkm_reconstruct_tg_mode():
    code, out = run_cli("gkm", "reconstruct", path("g6.gkm"), "--mode", "tg")
    assert code == 0
    assert out.startswith("faces: 16\n")


def test_gkm_reconstruct_cap_error():
    code, out = run_cli("gkm", "reconstruct", path("g6.gkm"), "--cap", "5")
    assert code == 1


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.wt"
    bad.write_text("ambient_rank: 2\nw1 = (0,0)\n")
    code, out = run_cli("matroid", "flats", str(bad))
    assert code == 2


def test_missing_file_is_an_error(tmp_path):
    code, out = run_cli("matroid", "flats", str(tmp_path / "absent.wt"))
    assert code == 1


def test_corpus_listing_and_cat():
    code, out = run_cli("corpus")
    assert code == 0 and out.strip().endswith("data")
    code, out = run_cli("corpus", "u23.wt")
    assert code == 0 and "w3 = (1,1)" in out
    code, out = run_cli("corpus", "missing.wt")
    assert code == 1


ALL_COMMANDS = [
    ("matroid", "flats", "b2.wt"),
    ("matroid", "flats", "u23.wt"),
    ("matroid", "flats", "coll.wt"),
    ("matroid", "check", "u23.wt"),
    ("matroid", "wedge", "coll.wt"),
    ("poset", "check", "glued.poset"),
    ("gkm", "validate", "g6.gkm"),
    ("gkm", "faces", "cp2.gkm"),
    ("gkm", "tg-faces", "square.gkm"),
    ("gkm", "reconstruct", "s2.gkm"),
    ("gkm", "reconstruct", "g6.gkm"),
]


@pytest.mark.parametrize("command", ALL_COMMANDS, ids=lambda c: "-".join(c))
def test_cli_outputs_are_deterministic(command):
    argv = [*command[:-1], path(command[-1])]
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first == second


def test_worker_flag_does_not_change_bytes():
    for name in ("cp2.gkm", "g6.gkm"):
        base = run_cli("gkm", "reconstruct", path(name), "--workers", "1")
        four = run_cli("gkm", "reconstruct", path(name), "--workers", "4")
        assert base == four


def test_console_entry_point_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "gkmfaces.cli", "gkm", "validate", path("s2.gkm")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "valid: dimension 1, rank 1"


def test_unknown_subcommand_usage_exit():
    result = subprocess.run(
        [sys.executable, "-m", "gkmfaces.cli", "bogus"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 2
    assert "usage" in result.stderr
