import random

import pytest
from hypothesis import given, strategies as st

from netcode.codes import (ExplicitCode, MDSCode, ParityCheckCode,
                           RepetitionCode, Symbol, Word, all_words, gf_mul,
                           hamming_distance, load_explicit_code,
                           save_explicit_code)
from netcode.errors import CapacityError, ParameterError


def test_symbol_bits_msb_first():
    assert Symbol(5, 4).bits == "0101"
    assert Symbol(1, 3).bits == "001"
    assert (Symbol(5, 4) ^ Symbol(3, 4)).value == 6


def test_symbol_range_checks():
    with pytest.raises(ParameterError):
        Symbol(4, 2)
    with pytest.raises(ParameterError):
        Symbol(0, 0)


def test_word_roundtrip_and_order():
    w = Word.from_values([1, 2, 3], 2)
    assert w.bits == "011011"
    assert w.index() == int("011011", 2)
    assert Word.from_index(w.index(), 3, 2) == w
    listed = [w.values for w in all_words(2, 1)]
    assert listed == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_repetition_membership():
    rep = RepetitionCode(3, 2)
    assert rep.contains(Word.from_values([2, 2, 2], 2))
    assert not rep.contains(Word.from_values([2, 2, 1], 2))
    assert rep.min_distance() == 3
    assert rep.dimension() == 1


def test_parity_membership_and_dimension():
    pc = ParityCheckCode(3, 2)
    w = Word.from_values([1, 2, 1 ^ 2], 2)
    assert pc.contains(w)
    assert not pc.contains(Word.from_values([1, 2, 1], 2))
    assert pc.min_distance() == 2


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [1, 2])
def test_parity_size_and_dimension(n, m):
    pc = ParityCheckCode(n, m)
    words = list(pc.codewords())
    assert len(words) == 2 ** (m * (n - 1)) == pc.size()
    assert pc.dimension() == n - 1
    # membership filter over the whole space agrees
    assert sum(pc.contains(w) for w in all_words(n, m)) == pc.size()


def test_enumeration_examples():
    assert [w.values for w in RepetitionCode(2, 1).codewords()] == [(0, 0), (1, 1)]
    assert [w.values for w in ParityCheckCode(2, 1).codewords()] == [(0, 0), (1, 1)]
    assert len(list(ParityCheckCode(3, 2).codewords())) == 16


def test_enumeration_is_lexicographic():
    for code in (ParityCheckCode(3, 2), RepetitionCode(3, 2), MDSCode(3, 2, 2)):
        indices = [w.index() for w in code.codewords()]
        assert indices == sorted(indices)


def test_enumeration_budget():
    with pytest.raises(CapacityError):
        list(ParityCheckCode(4, 2).codewords(budget=10))


def test_hamming_examples():
    x = Word.from_values([1, 1, 1], 2)
    assert hamming_distance(x, x) == 0
    assert hamming_distance(x, Word.from_values([1, 2, 1], 2)) == 1
    with pytest.raises(ParameterError):
        hamming_distance(x, Word.from_values([1, 1], 2))


def test_hamming_against_recount():
    rng = random.Random(7)
    for _ in range(50):
        a = [rng.randrange(4) for _ in range(4)]
        b = [rng.randrange(4) for _ in range(4)]
        count = 0
        for i in range(4):
            if a[i] != b[i]:
                count += 1
        assert hamming_distance(Word.from_values(a, 2), Word.from_values(b, 2)) == count


def test_min_distance_explicit_against_all_pairs():
    words = [Word.from_values(v, 2) for v in [(0, 0, 0), (1, 1, 2), (2, 2, 1), (3, 3, 3)]]
    code = ExplicitCode(3, 2, words)
    best = 3 + 1
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            best = min(best, hamming_distance(words[i], words[j]))
    assert code.min_distance() == best


@pytest.mark.parametrize("code", [
    RepetitionCode(3, 2), ParityCheckCode(3, 2), MDSCode(4, 2, 2),
    ExplicitCode(3, 2, [Word.from_values(v, 2) for v in [(0, 0, 0), (1, 1, 1), (2, 2, 3)]]),
])
def test_min_distance_matches_enumeration(code):
    words = list(code.codewords())
    pairwise = min(hamming_distance(x, y)
                   for i, x in enumerate(words) for y in words[i + 1:])
    assert code.min_distance() == pairwise
    assert pairwise >= 2


def test_nearest_codeword():
    rep = RepetitionCode(3, 2)
    cw = Word.from_values([1, 1, 1], 2)
    assert rep.nearest_codeword(cw) == (cw, 0)
    got, dist = rep.nearest_codeword(Word.from_values([1, 1, 2], 2))
    assert got == cw and dist == 1


def test_nearest_codeword_against_scan():
    code = ParityCheckCode(3, 2)
    rng = random.Random(3)
    for _ in range(20):
        w = Word.from_values([rng.randrange(4) for _ in range(3)], 2)
        best, best_d = None, 99
        for c in code.codewords():
            d = hamming_distance(w, c)
            if d < best_d:
                best, best_d = c, d
        assert code.nearest_codeword(w) == (best, best_d)


@given(st.integers(0, 63))
def test_contains_iff_nearest_distance_zero(idx):
    code = ParityCheckCode(3, 2)
    w = Word.from_index(idx, 3, 2)
    _, dist = code.nearest_codeword(w)
    assert code.contains(w) == (dist == 0)


def test_distance_below_two_rejected():
    words = [Word.from_values(v, 1) for v in [(0, 0), (0, 1)]]
    with pytest.raises(ParameterError):
        ExplicitCode(2, 1, words)


def test_gf_mul_field_axioms():
    # spot-check associativity and the known AES-style reduction for m=4
    assert gf_mul(1, 9, 4) == 9
    for a in range(16):
        assert gf_mul(a, 0, 4) == 0
    assert gf_mul(gf_mul(3, 5, 4), 7, 4) == gf_mul(3, gf_mul(5, 7, 4), 4)


@pytest.mark.parametrize("n,k,m,d", [(4, 2, 2, 3), (3, 2, 2, 2), (4, 3, 2, 2), (5, 2, 3, 4)])
def test_mds_distance(n, k, m, d):
    code = MDSCode(n, k, m)
    assert code.min_distance() == d == n - k + 1
    assert code.dimension() == k
    assert code.size() == 2 ** (m * k)


def test_mds_membership_closed_under_enumeration():
    code = MDSCode(4, 2, 2)
    members = sum(code.contains(w) for w in all_words(4, 2))
    assert members == code.size()


def test_mds_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        MDSCode(5, 2, 2)  # needs 5 distinct points in GF(4)
    with pytest.raises(ParameterError):
        MDSCode(4, 4, 2)


def test_explicit_dimension_example():
    # |C| = 2^(2m) at n=4 gives dimension exactly 2
    code = MDSCode(4, 2, 2)
    listed = ExplicitCode(4, 2, list(code.codewords()))
    assert listed.dimension() == 2


def test_explicit_dimension_irrational_rejected():
    words = [Word.from_values(v, 2) for v in [(0, 0, 0), (1, 1, 1), (2, 2, 2)]]
    code = ExplicitCode(3, 2, words)
    with pytest.raises(ParameterError):
        code.dimension()


def test_code_file_roundtrip(tmp_path):
    code = ExplicitCode(3, 2, [Word.from_values(v, 2)
                               for v in [(0, 0, 0), (1, 1, 1), (2, 3, 2)]])
    path = tmp_path / "code.txt"
    save_explicit_code(code, path)
    text = path.read_text().splitlines()
    assert text[0] == "3 2"
    assert all(len(ln) == 2 for ln in text[1:])  # ceil(6/4) hex digits
    loaded = load_explicit_code(path)
    assert [w.values for w in loaded.codewords()] == [w.values for w in code.codewords()]
