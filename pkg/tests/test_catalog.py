import math
import shutil

import pytest

from cstar.catalog import (
    PACKAGE_DATA,
    PRESETS,
    MissingCodeFile,
    builtin,
    extended_hamming8,
    golay24,
    load_code,
    load_main_code_set,
    preset,
    reed_muller,
)
from cstar.gf2_codes import (
    CodeError,
    contains_all_ones,
    dual,
    is_self_dual,
    is_self_orthogonal,
    is_subcode,
    min_hamming_distance,
    parity,
    repetition,
    weight_enumerator,
)


def test_repetition_and_parity():
    assert (repetition(8).k, min_hamming_distance(repetition(8))) == (1, 8)
    assert (parity(8).k, min_hamming_distance(parity(8))) == (7, 2)


@pytest.mark.parametrize("r, m", [(r, m) for m in range(1, 6) for r in range(m + 1)])
def test_reed_muller_parameters(r, m):
    code = reed_muller(r, m)
    assert (code.n, code.k) == (2**m, sum(math.comb(m, i) for i in range(r + 1)))
    if code.k <= 20:
        assert min_hamming_distance(code) == 2 ** (m - r)
    if r < m:
        assert is_subcode(code, reed_muller(r + 1, m))
        assert dual(code) == reed_muller(m - r - 1, m)


def test_reed_muller_range():
    with pytest.raises(CodeError):
        reed_muller(3, 2)


def test_golay():
    code = golay24()
    assert (code.n, code.k) == (24, 12)
    we = weight_enumerator(code)
    assert we[8] == 759 and we[12] == 2576 and we[24] == 1
    assert is_self_dual(code)


def test_extended_hamming_is_rm13():
    assert extended_hamming8() == reed_muller(1, 3)


@pytest.mark.parametrize(
    "name, nk",
    [("golay24", (24, 12)), ("ext-hamming8", (8, 4)), ("rm-1-4", (16, 5)), ("repetition-6", (6, 1)), ("parity-6", (6, 5))],
)
def test_builtin_ids(name, nk):
    code = builtin(name)
    assert (code.n, code.k) == nk


def test_builtin_unknown():
    with pytest.raises(CodeError):
        builtin("hamming7")


# -- files --------------------------------------------------------------------


def test_load_valid(tmp_path):
    f = tmp_path / "h8.txt"
    f.write_text("# extended Hamming\n# d=4\n11111111\n01010101\n00110011\n00001111\n")
    assert load_code(f) == extended_hamming8()


def test_load_dependent_rows_warns(tmp_path):
    f = tmp_path / "dep.txt"
    f.write_text("1100\n0011\n1111\n")
    with pytest.warns(UserWarning, match="dependent"):
        code = load_code(f)
    assert code.k == 2


def test_load_wrong_distance_header(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("# d=6\n11111111\n01010101\n00110011\n00001111\n")
    with pytest.raises(CodeError):
        load_code(f)


def test_load_empty(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    with pytest.raises(CodeError):
        load_code(f)


def test_load_explicit_set(tmp_path):
    f = tmp_path / "set.txt"
    f.write_text("# explicit\n000000\n110110\n")
    main = load_main_code_set(f, 3)
    assert (main.n, main.size) == (2, 2)
    with pytest.raises(CodeError):
        load_code(f)


@pytest.mark.parametrize("name, nk, d", [("sd14.txt", (14, 7), 4), ("c18.txt", (18, 9), 6), ("sd40.txt", (40, 20), 8)])
def test_shipped_code_files(name, nk, d):
    code = load_code(PACKAGE_DATA / name)
    assert (code.n, code.k) == nk
    assert min_hamming_distance(code) == d


def test_shipped_c40_23():
    code = load_code(PACKAGE_DATA / "c40_23.txt")
    assert (code.n, code.k) == (40, 23)
    assert min_hamming_distance(code) == 8
    assert not is_self_orthogonal(code)


# -- presets ------------------------------------------------------------------


@pytest.mark.parametrize("name", list(PRESETS))
def test_presets_resolve(name):
    main, p = preset(name)
    assert main.n == p.n
    c2 = main.body.c2
    assert (is_self_orthogonal(c2) and contains_all_ones(c2)) == p.lattice_expected


def test_no_dim16_preset():
    with pytest.raises(CodeError):
        preset("dim16")


def test_missing_file(tmp_path):
    with pytest.raises(MissingCodeFile):
        preset("dim14_selfdual", data=tmp_path)


def test_fail_closed_validation(tmp_path):
    # a [14,7] file that is not self-dual must be refused
    rows = ["".join("1" if j in (i, 7 + i) else "0" for j in range(14)) for i in range(6)]
    rows.append("11" + "0" * 12)
    (tmp_path / "sd14.txt").write_text("\n".join(rows) + "\n")
    with pytest.raises(CodeError, match="self-dual|distance|d ="):
        preset("dim14_selfdual", data=tmp_path)


def test_env_data_dir(tmp_path, monkeypatch):
    shutil.copy(PACKAGE_DATA / "c18.txt", tmp_path / "c18.txt")
    monkeypatch.setenv("CSTAR_DATA_DIR", str(tmp_path))
    main, _ = preset("dim18_nonlattice")
    assert main.n == 18
    with pytest.raises(MissingCodeFile):
        preset("dim40_extremal")
