import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import schemes
from suci_pad.errors import LengthPreconditionError, PaddingError, SchemeError
from suci_pad.padding import SchemeInstance, pad_bytes, padded_length, parse, render, unpad_bytes


def test_parse_examples():
    s = parse("taBlk-6-15-30")
    assert (s.kind, s.params) == ("taBlk", (6, 15, 30))
    assert (s.l, s.m, s.r) == (6, 15, 30)
    assert parse("pwr-2-16") == SchemeInstance("pwr", (2, 16))
    assert parse("identity") == SchemeInstance("identity")
    assert render(parse("rndBlk-4-3-8")) == "rndBlk-4-3-8"


@pytest.mark.parametrize(
    "code",
    ["blk-4-2", "foo-1", "taBlk-7-6-30", "taBlk-6-15", "pwr-1-4", "identity-3",
     "maxL-0", "rndBlk-2-0-2", "blk-0-0", "TABLK-6-15-30", "blk--4-4", ""],
)
def test_parse_errors(code):
    with pytest.raises(SchemeError):
        parse(code)


def dist(code, u):
    return padded_length(parse(code), u).as_dict()


def test_padded_length_examples():
    assert dist("taBlk-6-15-30", 4) == {6: 1.0}
    assert dist("taBlk-6-15-30", 10) == {10: 1.0}
    assert dist("taBlk-6-15-30", 20) == {30: 1.0}
    assert dist("taBlk-6-15-30", 6) == {6: 1.0}
    assert dist("taBlk-6-15-30", 15) == {15: 1.0}
    assert dist("taBlk-6-15-30", 16) == {30: 1.0}
    assert dist("blk-4-4", 5) == {8: 1.0}
    assert dist("pwr-3-3", 10) == {27: 1.0}
    assert dist("pwr-2-16", 3) == {16: 1.0}
    assert dist("pwr-2-1", 1) == {1: 1.0}
    assert dist("maxL-50", 7) == {50: 1.0}
    assert dist("identity", 7) == {7: 1.0}
    d = dist("rndBlk-4-3-8", 5)
    assert sorted(d) == [8, 12, 16] and all(w == pytest.approx(1 / 3) for w in d.values())
    d = dist("rndLen-2", 4)
    assert sorted(d) == [4, 5, 6] and all(w == pytest.approx(1 / 3) for w in d.values())
    assert dist("rndLen-0", 4) == {4: 1.0}


def test_padded_length_preconditions():
    with pytest.raises(LengthPreconditionError) as exc:
        padded_length(parse("taBlk-6-15-30"), 31)
    assert (exc.value.length, exc.value.bound) == (31, 30)
    with pytest.raises(LengthPreconditionError):
        padded_length(parse("maxL-10"), 11)
    with pytest.raises(SchemeError):
        padded_length(parse("identity"), 0)


def test_pad_bytes_examples():
    assert pad_bytes(parse("taBlk-6-15-30"), b"anna") == b"anna\x00\x00"
    assert pad_bytes(parse("identity"), b"bob") == b"bob"
    assert pad_bytes(parse("blk-8-8"), b"x") == b"x" + b"\x00" * 7
    with pytest.raises(PaddingError):
        pad_bytes(parse("identity"), b"a\x00b")
    with pytest.raises(PaddingError):
        pad_bytes(parse("identity"), b"")
    with pytest.raises(LengthPreconditionError):
        pad_bytes(parse("taBlk-6-15-30"), b"y" * 31)


def test_unpad_bytes_examples():
    assert unpad_bytes(b"anna\x00\x00") == b"anna"
    assert unpad_bytes(b"bob") == b"bob"
    with pytest.raises(PaddingError):
        unpad_bytes(b"\x00\x00")


def test_pad_bytes_seeded_is_reproducible():
    s = parse("rndLen-10")
    a = [pad_bytes(s, b"abc", random.Random(7)) for _ in range(3)]
    assert len(set(a)) == 1


@given(schemes(max_input=40), st.integers(1, 40))
def test_support_never_shrinks(s, u):
    d = padded_length(s, u)
    assert min(d.lengths) >= u
    assert sum(w for _, w in d) == pytest.approx(1.0, abs=1e-12)
    if s.deterministic:
        assert len(d) == 1


@given(schemes(max_input=40), st.integers(1, 40), st.integers(1, 40))
def test_deterministic_monotone(s, u1, u2):
    if not s.deterministic:
        return
    u1, u2 = sorted((u1, u2))
    assert padded_length(s, u1).lengths[0] <= padded_length(s, u2).lengths[0]


@given(schemes(max_input=30),
       st.text(alphabet=st.characters(min_codepoint=33, max_codepoint=126), min_size=1, max_size=30),
       st.integers(0, 2**32))
@settings(max_examples=300)
def test_roundtrip_and_layer_agreement(s, name, seed):
    raw = name.encode()
    out = pad_bytes(s, raw, random.Random(seed))
    assert unpad_bytes(out) == raw
    assert len(out) in padded_length(s, len(raw))


@given(st.integers(1, 200))
def test_blk_1_1_is_identity(u):
    assert padded_length(parse("blk-1-1"), u) == padded_length(parse("identity"), u)


@given(schemes())
def test_code_roundtrip(s):
    assert parse(render(s)) == s
