import pytest

from conftest import cube
from sijections.codec import FormatError
from sijections.oracles import (ASMError, asm_formula, asm_list, asm_to_mt, check_asm,
                                monomial_shift, mt_to_asm, operator_formula, operator_terms,
                                parse_asm_text)
from sijections.triangles import mt_counts, mt_set

SAMPLE_ASM = [[0, 0, 0, 1, 0, 0],
              [0, 1, 0, -1, 1, 0],
              [1, -1, 0, 1, -1, 1],
              [0, 1, 0, -1, 1, 0],
              [0, 0, 0, 1, 0, 0],
              [0, 0, 1, 0, 0, 0]]
SAMPLE_MT = ((4,), (2, 5), (1, 4, 6), (1, 2, 5, 6), (1, 2, 4, 5, 6), (1, 2, 3, 4, 5, 6))


def test_monomial_shift():
    assert monomial_shift(("P", "Q", "PQ"), 3) == ((1, 1, -2), -1)


def test_grouped_terms_sum_over_monomials():
    # each pair contributes 1 + 1 - 1
    for n in range(1, 5):
        assert sum(operator_terms(n).values()) == 1


def test_operator_methods_agree():
    for k in [(1, 2, 3), (0, 0, 2), (3, -1, 2)]:
        assert operator_formula(k, method="monomials") == operator_formula(k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_operator_equals_mt_size(n):
    for k in cube(3, n):
        p, q = mt_counts(k)
        assert operator_formula(k) == p - q, k


def test_operator_on_one_to_n():
    assert [operator_formula(tuple(range(1, n + 1))) for n in range(1, 7)] == [1, 2, 7, 42, 429, 7436]


def test_operator_cap():
    with pytest.raises(ValueError):
        operator_formula(range(8))
    with pytest.raises(ValueError):
        operator_formula((1, 2), method="nope")


def test_asm_formula():
    assert [asm_formula(n) for n in range(1, 9)] == [1, 2, 7, 42, 429, 7436, 218348, 10850216]
    with pytest.raises(ValueError):
        asm_formula(0)


def test_asm_enumeration():
    assert [len(asm_list(n)) for n in range(1, 6)] == [1, 2, 7, 42, 429]


def test_sample_asm():
    assert asm_to_mt(SAMPLE_ASM) == SAMPLE_MT
    assert mt_to_asm(SAMPLE_MT) == tuple(tuple(r) for r in SAMPLE_ASM)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_asm_bridge_round_trip(n):
    k = tuple(range(1, n + 1))
    triangles = {rows for rows, _ in mt_set(k).elements()}
    images = set()
    for A in asm_list(n):
        rows = asm_to_mt(A)
        assert rows in triangles
        assert mt_to_asm(rows) == A
        images.add(rows)
    assert images == triangles


def test_asm_errors_name_the_lines():
    with pytest.raises(ASMError, match="row 1.*row 2") as info:
        check_asm([[1, 1], [0, 0]])
    assert "column" not in str(info.value)
    with pytest.raises(ASMError, match="column 2"):
        check_asm([[1, 0], [1, 0]])
    with pytest.raises(ASMError, match="not in"):
        check_asm([[2]])
    with pytest.raises(ASMError, match="square"):
        check_asm([[1, 0]])


def test_mt_to_asm_rejects():
    with pytest.raises(FormatError, match="bottom row"):
        mt_to_asm(((1,), (1, 3)))
    with pytest.raises(FormatError, match="strictly"):
        mt_to_asm(((2,), (2, 2), (1, 2, 3)))
    with pytest.raises(FormatError, match="interlace"):
        mt_to_asm(((3,), (1, 2)))


def test_parse_asm_text():
    assert parse_asm_text("[[0,1],[1,0]]") == [[0, 1], [1, 0]]
    assert parse_asm_text("0 1\n1 0\n") == [[0, 1], [1, 0]]
    for bad in ("[[0,1],[1,", "a b", "[1, 2]", "[[true]]"):
        with pytest.raises(FormatError):
            parse_asm_text(bad)
