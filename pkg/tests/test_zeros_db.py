import gzip

import mpmath
import pytest
from mpmath import mpf

from explicit_mertens import constants as C, zeros_db
from explicit_mertens.errors import EmptyTableError, ParseError


def _write(tmp_path, lines, name="z.txt"):
    p = tmp_path / name
    p.write_text("\n".join(lines) + "\n")
    return p


def test_first_ordinate_matches_oracle(zeros_to_H):
    z = zeros_to_H[0]
    assert mpmath.nstr(z.gamma, 12) == "14.134725142"
    assert z.source_precision == 9
    assert z.uncertainty == mpf("1e-9")
    with mpmath.workdps(30):
        assert abs(mpmath.zetazero(1).imag - z.gamma) < mpf("1e-9")


def test_exact_decimal_parse(tmp_path):
    p = _write(tmp_path, ["14.134725142", "21.022039639"])
    zs = zeros_db.load_zeros(p)
    with mpmath.workprec(C.WORKPREC):
        assert zs[0].gamma == mpf("14.134725142")


def test_cutoff_below_first_zero(tmp_path):
    assert zeros_db.load_zeros(gamma_max=14.0, allow_empty=True) == []
    with pytest.raises(EmptyTableError):
        zeros_db.load_zeros(gamma_max=14.0)


def test_count_to_H(zeros_to_H):
    main = zeros_db.riemann_von_mangoldt(C.H())
    assert abs(main - 2702) < 1
    assert abs(len(zeros_to_H) - main) <= 2
    assert zeros_db.count_check(zeros_to_H, C.H())


def test_count_check_detects_truncation(zeros_to_H):
    assert not zeros_db.count_check(zeros_to_H[:-3], C.H())
    # one missing zero is inside the tolerance only if the main term allows it
    short = zeros_to_H[:1000] + zeros_to_H[1001:]
    assert zeros_db.count_check(short, C.H()) == (abs(len(short) - zeros_db.riemann_von_mangoldt(C.H())) <= 2)


def test_count_below_100():
    zs = zeros_db.load_zeros(gamma_max=100)
    assert len(zs) == 29
    assert zeros_db.count_check(zs, 100)


def test_non_numeric_line(tmp_path):
    p = _write(tmp_path, ["14.134725142", "abc", "25.010857580"])
    with pytest.raises(ParseError) as e:
        zeros_db.load_zeros(p)
    assert e.value.lineno == 2


def test_non_monotone_line(tmp_path):
    p = _write(tmp_path, ["14.134725142", "25.010857580", "21.022039639"])
    with pytest.raises(ParseError) as e:
        zeros_db.load_zeros(p)
    assert e.value.lineno == 3


def test_blank_lines_skipped_and_gzip(tmp_path):
    p = tmp_path / "z.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("14.134725142\n\n21.022039639\n")
    assert len(zeros_db.load_zeros(p)) == 2


def test_env_var_path(tmp_path, monkeypatch):
    p = _write(tmp_path, ["14.134725142"])
    monkeypatch.setenv(zeros_db.ZEROS_ENV, str(p))
    assert zeros_db.default_zeros_path() == p
    assert len(zeros_db.load_zeros()) == 1


def test_gaps_positive_and_not_tiny(zeros_to_H):
    gaps = [b.gamma - a.gamma for a, b in zip(zeros_to_H, zeros_to_H[1:])]
    assert min(gaps) > mpf("1e-2")


def test_reload_is_deterministic(zeros_to_H):
    again = zeros_db.load_to_H()
    assert again == zeros_to_H


def test_riemann_height_literal():
    with mpmath.workprec(C.WORKPREC):
        assert mpmath.nstr(C.H(), 9) == "3236.35598"
    assert C.H_HAT == 3_000_175_332_800
