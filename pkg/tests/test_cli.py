"""Command-line interface: ideal files, subcommands, exit codes."""

from __future__ import annotations

import json

import pytest

from cmreg.cli import format_ideal_file, main, parse_ideal_file
from cmreg.groebner import Ideal
from cmreg.ring import GREVLEX, PolyRing, PrimeField, QQ


def test_ideal_file_roundtrip():
    R = PolyRing(("x", "y", "z"), PrimeField(32003), GREVLEX)
    x, y, z = R.gens()
    I = Ideal(R, [x * z - y * y, x ** 3 - z ** 3])
    text = format_ideal_file(I, comments=("answer: 42",))
    J = parse_ideal_file(text)
    assert J.ring.names == R.names
    assert J.same_ideal(Ideal(J.ring, [J.ring.from_string(str(g)) for g in I.gens]))
    assert "# answer: 42" in text


def test_ideal_file_char_zero_roundtrip():
    R = PolyRing(("x", "y"), QQ, GREVLEX)
    x, y = R.gens()
    I = Ideal(R, [x * x - y * y])
    J = parse_ideal_file(format_ideal_file(I))
    assert getattr(J.ring.field, "p", 0) == 0
    assert len(J.gens) == 1


def test_parse_rejects_bad_headers():
    with pytest.raises(ValueError):
        parse_ideal_file("gens:\nx\n")  # missing header
    with pytest.raises(ValueError):
        parse_ideal_file("ring: char=32003 vars=[x,y] order=lex\ngens:\nx\n")
    with pytest.raises(ValueError):
        parse_ideal_file("ring: char=32003 vars=[x,y] order=grevlex\nx - y\n")


def test_family_then_betti_then_reg(tmp_path, capsys):
    fam_file = tmp_path / "fam.txt"
    assert main(["family", "--m", "2", "--n", "2",
                 "--out", str(fam_file)]) == 0
    text = fam_file.read_text()
    I = parse_ideal_file(text)
    assert len(I.gens) == 3
    assert "# meta:" in text
    meta = json.loads(text.split("# meta:", 1)[1].splitlines()[0])
    assert meta["m"] == 2 and meta["n"] == 2 and meta["primed"] is False

    assert main(["betti", "--in", str(fam_file), "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["regularity"] == 6  # reg of the quotient the table resolves
    assert obj["pdim"] >= 2

    assert main(["reg", "--in", str(fam_file)]) == 0
    out = capsys.readouterr().out
    assert "reg(ideal) = 7" in out
    assert "reg(quotient) = 6" in out


def test_betti_text_format(tmp_path, capsys):
    fam_file = tmp_path / "fam.txt"
    main(["family", "--m", "1", "--n", "2", "--primed", "--out", str(fam_file)])
    assert main(["betti", "--in", str(fam_file)]) == 0
    out = capsys.readouterr().out
    assert "total" in out


def test_verify_single_claim_exit_zero(capsys):
    code = main(["verify", "prop32", "--m", "2", "--n", "2", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "pass"
    assert obj["reports"][0]["claim"] == "prop32"


def test_verify_all_for_one_instance(capsys):
    code = main(["verify", "all", "--m", "1", "--n", "2", "--primed",
                 "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out)
    claims = [r["claim"] for r in obj["reports"]]
    assert "prop22" in claims and "lemma21" in claims and "thm11" in claims
    assert "prop32" not in claims  # unprimed-only checks are excluded
    # the saturated instance makes lemma12 a skip, not a failure
    lemma12 = [r for r in obj["reports"] if r["claim"] == "lemma12"][0]
    assert lemma12["verdict"] == "skip"


def test_verify_requires_m_and_n_together(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "prop32", "--m", "2"])


def test_verify_csv_format(capsys):
    code = main(["verify", "remark33", "--m", "2", "--n", "2",
                 "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "claim,m,n,primed,subcheck,status,values,note"
    assert any("remark33" in line for line in out.splitlines()[1:])
