import pytest
from hypothesis import given, strategies as st

from neuralideal.code import (
    CodeFormatError,
    Codeword,
    NeuralCode,
    all_words,
    bitflip_code,
    code_from_mask,
    enumerate_codes,
    format_code,
    parse_code,
    support,
)


def words(code):
    return {str(w) for w in code.words}


def test_parse_shorthand_example():
    assert words(parse_code("e,3,13,23", 3)) == {"000", "001", "101", "011"}


def test_parse_single_binary_token():
    assert words(parse_code("00", 2)) == {"00"}


def test_parse_mixed_and_whitespace():
    assert words(parse_code(" 10 , 2,∅ ", 2)) == {"10", "01", "00"}


def test_duplicates_collapse():
    assert len(parse_code("12,11,12", 2)) == 1


@pytest.mark.parametrize(
    "text,n",
    [
        ("14", 3),          # digit above n
        ("010", 2),         # binary of wrong length
        ("", 2),            # empty list
        ("1,,2", 2),        # empty token
        ("1a", 2),          # neither format
        ("102", 3),         # 0 inside a shorthand token of the wrong length
        ("11", 3),          # repeated neuron
    ],
)
def test_parse_errors(text, n):
    with pytest.raises(CodeFormatError):
        parse_code(text, n)


@pytest.mark.parametrize(
    "bits,expected",
    [((0, 1, 1), {2, 3}), ((0, 0, 0), set()), ((1, 0, 1), {1, 3})],
)
def test_support(bits, expected):
    assert support(Codeword(bits)) == expected


def test_bitflip_examples():
    assert words(bitflip_code(parse_code("10,01", 2), 1)) == {"00", "11"}
    assert words(bitflip_code(parse_code("000", 3), 3)) == {"001"}
    with pytest.raises(IndexError):
        bitflip_code(parse_code("000", 3), 4)


@pytest.mark.parametrize("n,count", [(1, 3), (2, 15), (3, 255)])
def test_enumerate_counts(n, count):
    codes = list(enumerate_codes(n))
    assert len(codes) == count
    assert len(set(codes)) == count
    assert all(codes)


def test_enumerate_n1_contents_and_empty_flag():
    assert [words(c) for c in enumerate_codes(1)] == [{"0"}, {"1"}, {"0", "1"}]
    assert len(list(enumerate_codes(2, include_empty_code=True))) == 16


def test_enumerate_cap():
    with pytest.raises(ValueError):
        next(enumerate_codes(5))


def test_code_from_mask_matches_enumeration():
    assert [code_from_mask(2, m) for m in range(1, 16)] == list(enumerate_codes(2))


def test_codes_are_immutable():
    c = parse_code("1", 1)
    with pytest.raises(Exception):
        c.n = 2


codes_n = st.integers(1, 5).flatmap(
    lambda n: st.sets(st.integers(0, 2**n - 1)).map(
        lambda ks: NeuralCode(n, [all_words(n)[k] for k in ks])
    )
)


@given(codes_n.filter(bool))
def test_format_parse_round_trip(code):
    for notation in ("binary", "support"):
        assert parse_code(format_code(code, notation), code.n) == code


@given(codes_n, st.data())
def test_bitflip_involution_and_bijection(code, data):
    i = data.draw(st.integers(1, code.n))
    flipped = bitflip_code(code, i)
    assert len(flipped) == len(code)
    assert bitflip_code(flipped, i) == code
    for w in flipped:
        assert w.flip(i) in code


def test_canonical_output_sorted():
    assert format_code(parse_code("11,00,10", 2)) == "00,10,11"
    assert format_code(parse_code("e,3,13,23", 3), "support") == "13,23,3,e"
