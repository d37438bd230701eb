import random

import pytest

from suci_pad.errors import MacMismatchError, SuciError
from suci_pad.freqdist import FrequencyTable
from suci_pad.metrics import alpha2
from suci_pad.padding import padded_length, parse
from suci_pad.suci import (
    Nai,
    SuciMessage,
    conceal,
    ecies_decrypt,
    ecies_encrypt,
    generate_keypair,
    observed_length,
    public_key_from_private,
    reveal,
)

# TS 33.501 Annex C.4.3 Profile A test data
HOME_SK = bytes.fromhex("c53c22208b61860b06c62e5406a7b330c2b577aa5558981510d128247d38bd1d")
HOME_PK = bytes.fromhex("5a8d38864820197c3394b92613b20b91633cbd897119273bf8e4a6f4eec0a650")
EPH_SK = bytes.fromhex("c80949f13ebe61af4ebdbd293ea4f942696b9e815d7e8f0096bbf6ed7de62256")
EPH_PK = bytes.fromhex("b2e92f836055a255837debf850b528997ce0201cb82adfe4be1f587d07d8457d")
PLAINTEXT = bytes.fromhex("00012080f6")
CIPHERTEXT = bytes.fromhex("cb02352410")
TAG = bytes.fromhex("cddd9e730ef3fa87")


@pytest.fixture(scope="module")
def keys():
    return generate_keypair()


def test_profile_a_test_vector():
    assert public_key_from_private(HOME_SK) == HOME_PK
    eph, ct, tag = ecies_encrypt(PLAINTEXT, HOME_PK, EPH_SK)
    assert (eph, ct, tag) == (EPH_PK, CIPHERTEXT, TAG)
    assert ecies_decrypt(EPH_PK, CIPHERTEXT, TAG, HOME_SK) == PLAINTEXT


def test_nai_validation():
    assert Nai.parse("anna@corp.example") == Nai("anna", "corp.example")
    for bad in ("anna", "@corp", "anna@", "a\x00b@corp", "åsa@corp"):
        with pytest.raises(SuciError):
            Nai.parse(bad)


@pytest.mark.parametrize("scheme", ["null", "profileA"])
@pytest.mark.parametrize("pad", ["identity", "blk-8-8", "taBlk-6-15-30", "rndLen-5", "rndBlk-4-3-8"])
def test_roundtrip(keys, scheme, pad):
    sk, pk = keys
    nai = Nai("anna.berg", "corp.example")
    msg = conceal(nai, scheme, parse(pad), pk, random.Random(1))
    assert reveal(msg, parse(pad), sk) == nai


def test_length_leak_and_fix(keys):
    _, pk = keys
    ident, ta = parse("identity"), parse("taBlk-6-15-30")
    short, long_ = Nai("abcd", "r.example"), Nai("x" * 20, "r.example")
    assert observed_length(conceal(short, "profileA", ident, pk)) == 4
    assert observed_length(conceal(long_, "profileA", ident, pk)) == 20
    a = conceal(Nai("y" * 16, "r.example"), "profileA", ta, pk)
    b = conceal(Nai("z" * 25, "r.example"), "profileA", ta, pk)
    assert observed_length(a) == observed_length(b) == 30


def test_observed_length_examples(keys):
    _, pk = keys
    assert observed_length(conceal(Nai("u" * 12, "r"), "profileA", parse("identity"), pk)) == 12
    assert observed_length(conceal(Nai("bo", "r"), "profileA", parse("maxL-50"), pk)) == 50
    assert observed_length(conceal(Nai("bob", "r"), "null", parse("identity"))) == 3


def test_tamper_and_wrong_key(keys):
    sk, pk = keys
    msg = conceal(Nai("anna", "corp"), "profileA", parse("blk-8-8"), pk)
    flipped = bytearray(msg.ciphertext)
    flipped[0] ^= 1
    bad = SuciMessage(msg.supi_type, msg.home_network_id, msg.routing_indicator, msg.scheme_id,
                      msg.home_key_id, msg.ephemeral_public_key, bytes(flipped), msg.mac_tag)
    with pytest.raises(MacMismatchError):
        reveal(bad, parse("blk-8-8"), sk)
    other_sk, _ = generate_keypair()
    with pytest.raises(MacMismatchError):
        reveal(msg, parse("blk-8-8"), other_sk)


def test_reveal_rejects_impossible_length(keys):
    sk, pk = keys
    msg = conceal(Nai("anna", "corp"), "profileA", parse("blk-8-8"), pk)
    with pytest.raises(SuciError, match="not a possible output"):
        reveal(msg, parse("identity"), sk)


def test_freshness(keys):
    _, pk = keys
    nai, pad = Nai("anna", "corp"), parse("taBlk-6-15-30")
    a, b = conceal(nai, "profileA", pad, pk), conceal(nai, "profileA", pad, pk)
    assert a.ephemeral_public_key != b.ephemeral_public_key
    assert a.ciphertext != b.ciphertext
    assert observed_length(a) == observed_length(b) == 6


def test_cleartext_fields_hide_username(keys):
    _, pk = keys
    nai = Nai("zebulon", "corp.example")
    msg = conceal(nai, "profileA", parse("blk-8-8"), pk)
    text = msg.to_text()
    assert "zebulon" not in text and b"zebulon".hex() not in text
    assert b"zebulon" not in msg.to_bytes()


@pytest.mark.parametrize("scheme", ["null", "profileA"])
def test_wire_forms_roundtrip(keys, scheme):
    _, pk = keys
    msg = conceal(Nai("anna", "corp.example"), scheme, parse("blk-8-8"), pk,
                  routing_indicator="0123", home_key_id=7)
    assert SuciMessage.from_text(msg.to_text()) == msg
    assert SuciMessage.from_bytes(msg.to_bytes()) == msg
    assert msg.to_text().startswith(f"suci:nsi:corp.example:0123:{scheme}:7:")


@pytest.mark.parametrize("text", ["suci:nsi:r:0:profileA:1", "xuci:nsi:r:0:null:1:61",
                                  "suci:nsi:r:0:profileA:1:00", "suci:nsi:r:12345:null:1:61",
                                  "suci:nsi:r:0:bogus:1:61", "suci:nsi:r:0:null:1:zz"])
def test_from_text_errors(text):
    with pytest.raises(SuciError):
        SuciMessage.from_text(text)


@pytest.mark.parametrize("pad", ["identity", "blk-4-4", "taBlk-4-9-16", "pwr-2-4", "rndLen-3", "rndBlk-2-3-4"])
def test_empirical_anonymity_matches_alpha2(keys, pad):
    # Attacker groups observed lengths; each group's size is an anonymity set.
    _, pk = keys
    rng = random.Random(5)
    table = FrequencyTable({2: 3, 4: 9, 5: 14, 7: 6, 9: 2, 13: 1, 16: 2})
    s = parse(pad)
    seen: dict[int, set[int]] = {}
    for u, count in table:
        for i in range(count):
            for _ in range(20 if not s.deterministic else 1):
                msg = conceal(Nai(chr(97 + i % 26) * u, "r"), "profileA", s, pk, rng)
                seen.setdefault(observed_length(msg), set()).add(u)
    possible: dict[int, set[int]] = {}
    for u, _ in table:
        for p in padded_length(s, u).lengths:
            possible.setdefault(p, set()).add(u)
    # sampling can miss an output, never invent one
    assert all(us <= possible[p] for p, us in seen.items())
    empirical = min(sum(table[u] for u in us) for us in seen.values())
    if s.deterministic:
        assert seen == possible
        assert empirical == alpha2(table, s)
