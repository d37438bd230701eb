"""SUCI concealment with ECIES Profile A and a padding hook.

The username of a ``username@realm`` identifier is padded *before* it is
encrypted, so the ciphertext length (which AES-CTR preserves exactly) only
reveals the padded length.

Profile A: X25519 key agreement with an ephemeral key, ANSI X9.63 KDF over
SHA-256 with the ephemeral public key as shared info, producing a 16-octet
AES key, a 16-octet initial counter block and a 32-octet HMAC key.  The
ciphertext is AES-128-CTR; the tag is HMAC-SHA-256 truncated to 8 octets.
"""

from __future__ import annotations

import enum
import hmac as _hmac
import random
import struct
from dataclasses import dataclass
from typing import Optional

from cryptography.hazmat.primitives import hashes, hmac, serialization
from cryptography.hazmat.primitives.asymmetric.x25519 import X25519PrivateKey, X25519PublicKey
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
from cryptography.hazmat.primitives.kdf.x963kdf import X963KDF

from .errors import MacMismatchError, SuciError
from .padding import SchemeInstance, pad_bytes, padded_length, unpad_bytes

__all__ = [
    "SupiType",
    "ProtectionScheme",
    "Nai",
    "SuciMessage",
    "generate_keypair",
    "public_key_from_private",
    "ecies_encrypt",
    "ecies_decrypt",
    "conceal",
    "reveal",
    "observed_length",
]

ENC_KEY_LEN = 16
ICB_LEN = 16
MAC_KEY_LEN = 32
MAC_LEN = 8
KEY_LEN = 32


class SupiType(str, enum.Enum):
    IMSI = "imsi"
    NSI = "nsi"


class ProtectionScheme(str, enum.Enum):
    NULL = "null"
    PROFILE_A = "profileA"


@dataclass(frozen=True)
class Nai:
    """Network access identifier ``username@realm``."""

    username: str
    realm: str

    def __post_init__(self) -> None:
        if not self.username:
            raise SuciError("NAI username is empty")
        if not self.realm:
            raise SuciError("NAI realm is empty")
        if "@" in self.username:
            raise SuciError("NAI username must not contain '@'")
        if "\x00" in self.username or "\x00" in self.realm:
            raise SuciError("NAI must not contain NUL")
        if not self.username.isascii() or not self.username.isprintable():
            raise SuciError("NAI username must be printable ASCII")
        if not self.realm.isascii() or not self.realm.isprintable() or ":" in self.realm:
            raise SuciError(f"invalid NAI realm {self.realm!r}")

    @classmethod
    def parse(cls, text: str) -> "Nai":
        username, sep, realm = text.rpartition("@")
        if not sep:
            raise SuciError(f"not a username@realm identifier: {text!r}")
        return cls(username, realm)

    def __str__(self) -> str:
        return f"{self.username}@{self.realm}"


@dataclass(frozen=True)
class SuciMessage:
    supi_type: SupiType
    home_network_id: str
    routing_indicator: str
    scheme_id: ProtectionScheme
    home_key_id: int
    ephemeral_public_key: Optional[bytes]
    ciphertext: bytes
    mac_tag: Optional[bytes]

    def __post_init__(self) -> None:
        object.__setattr__(self, "supi_type", SupiType(self.supi_type))
        object.__setattr__(self, "scheme_id", ProtectionScheme(self.scheme_id))
        ri = self.routing_indicator
        if not (1 <= len(ri) <= 4 and ri.isdigit() and ri.isascii()):
            raise SuciError(f"routing indicator must be 1-4 digits, got {ri!r}")
        if not 0 <= self.home_key_id <= 255:
            raise SuciError(f"home key id must be in 0..255, got {self.home_key_id}")
        if not self.home_network_id or ":" in self.home_network_id:
            raise SuciError(f"invalid home network id {self.home_network_id!r}")
        if self.scheme_id is ProtectionScheme.PROFILE_A:
            if self.ephemeral_public_key is None or len(self.ephemeral_public_key) != KEY_LEN:
                raise SuciError("profileA needs a 32-octet ephemeral public key")
            if self.mac_tag is None or len(self.mac_tag) != MAC_LEN:
                raise SuciError("profileA needs an 8-octet MAC tag")
        elif self.ephemeral_public_key is not None or self.mac_tag is not None:
            raise SuciError("null scheme carries no ephemeral key or MAC tag")

    @property
    def scheme_output(self) -> bytes:
        """Ephemeral key || ciphertext || tag (profileA), or the ciphertext (null)."""
        if self.scheme_id is ProtectionScheme.NULL:
            return self.ciphertext
        return self.ephemeral_public_key + self.ciphertext + self.mac_tag

    def to_text(self) -> str:
        return ":".join([
            "suci",
            self.supi_type.value,
            self.home_network_id,
            self.routing_indicator,
            self.scheme_id.value,
            str(self.home_key_id),
            self.scheme_output.hex(),
        ])

    @classmethod
    def from_text(cls, text: str) -> "SuciMessage":
        parts = text.strip().split(":")
        if len(parts) != 7 or parts[0] != "suci":
            raise SuciError("malformed SUCI text: expected 7 ':'-separated fields starting with 'suci'")
        _, supi_type, hnid, ri, scheme, key_id, hexout = parts
        try:
            out = bytes.fromhex(hexout)
            kid = int(key_id)
            supi = SupiType(supi_type)
            sch = ProtectionScheme(scheme)
        except ValueError as exc:
            raise SuciError(f"malformed SUCI text: {exc}") from None
        return cls._from_output(supi, hnid, ri, sch, kid, out)

    @classmethod
    def _from_output(cls, supi, hnid, ri, sch, kid, out: bytes) -> "SuciMessage":
        if sch is ProtectionScheme.NULL:
            return cls(supi, hnid, ri, sch, kid, None, out, None)
        if len(out) <= KEY_LEN + MAC_LEN:
            raise SuciError("profileA scheme output too short")
        return cls(supi, hnid, ri, sch, kid, out[:KEY_LEN], out[KEY_LEN:-MAC_LEN], out[-MAC_LEN:])

    def to_bytes(self) -> bytes:
        """Length-prefixed field sequence (each field: 2-octet big-endian length, value)."""
        fields = [
            self.supi_type.value.encode(),
            self.home_network_id.encode(),
            self.routing_indicator.encode(),
            self.scheme_id.value.encode(),
            bytes([self.home_key_id]),
            self.scheme_output,
        ]
        return b"".join(struct.pack(">H", len(f)) + f for f in fields)

    @classmethod
    def from_bytes(cls, data: bytes) -> "SuciMessage":
        fields, pos = [], 0
        while pos < len(data):
            if pos + 2 > len(data):
                raise SuciError("truncated SUCI encoding")
            (n,) = struct.unpack_from(">H", data, pos)
            pos += 2
            if pos + n > len(data):
                raise SuciError("truncated SUCI encoding")
            fields.append(data[pos:pos + n])
            pos += n
        if len(fields) != 6 or len(fields[4]) != 1:
            raise SuciError("malformed SUCI encoding")
        try:
            supi = SupiType(fields[0].decode())
            sch = ProtectionScheme(fields[3].decode())
            hnid, ri = fields[1].decode(), fields[2].decode()
        except (ValueError, UnicodeDecodeError) as exc:
            raise SuciError(f"malformed SUCI encoding: {exc}") from None
        return cls._from_output(supi, hnid, ri, sch, fields[4][0], fields[5])


def generate_keypair() -> tuple[bytes, bytes]:
    """Fresh X25519 ``(private, public)`` raw 32-octet keys."""
    sk = X25519PrivateKey.generate()
    return _raw_private(sk), _raw_public(sk.public_key())


def _raw_private(sk: X25519PrivateKey) -> bytes:
    return sk.private_bytes(
        serialization.Encoding.Raw, serialization.PrivateFormat.Raw, serialization.NoEncryption()
    )


def _raw_public(pk: X25519PublicKey) -> bytes:
    return pk.public_bytes(serialization.Encoding.Raw, serialization.PublicFormat.Raw)


def _load_private(key: bytes) -> X25519PrivateKey:
    if len(key) != KEY_LEN:
        raise SuciError(f"private key must be {KEY_LEN} octets, got {len(key)}")
    return X25519PrivateKey.from_private_bytes(key)


def _load_public(key: bytes) -> X25519PublicKey:
    if len(key) != KEY_LEN:
        raise SuciError(f"public key must be {KEY_LEN} octets, got {len(key)}")
    return X25519PublicKey.from_public_bytes(key)


def public_key_from_private(private_key: bytes) -> bytes:
    return _raw_public(_load_private(private_key).public_key())


def _derive(shared: bytes, eph_pub: bytes) -> tuple[bytes, bytes, bytes]:
    kdf = X963KDF(
        algorithm=hashes.SHA256(), length=ENC_KEY_LEN + ICB_LEN + MAC_KEY_LEN, sharedinfo=eph_pub
    )
    okm = kdf.derive(shared)
    return okm[:ENC_KEY_LEN], okm[ENC_KEY_LEN:ENC_KEY_LEN + ICB_LEN], okm[-MAC_KEY_LEN:]


def _ctr(key: bytes, icb: bytes, data: bytes) -> bytes:
    enc = Cipher(algorithms.AES(key), modes.CTR(icb)).encryptor()
    return enc.update(data) + enc.finalize()


def _tag(mac_key: bytes, ciphertext: bytes) -> bytes:
    h = hmac.HMAC(mac_key, hashes.SHA256())
    h.update(ciphertext)
    return h.finalize()[:MAC_LEN]


def ecies_encrypt(
    plaintext: bytes, home_public_key: bytes, ephemeral_private_key: Optional[bytes] = None
) -> tuple[bytes, bytes, bytes]:
    """Profile A encryption; returns ``(ephemeral public key, ciphertext, tag)``."""
    home = _load_public(home_public_key)
    eph = X25519PrivateKey.generate() if ephemeral_private_key is None else _load_private(ephemeral_private_key)
    eph_pub = _raw_public(eph.public_key())
    enc_key, icb, mac_key = _derive(eph.exchange(home), eph_pub)
    ct = _ctr(enc_key, icb, plaintext)
    return eph_pub, ct, _tag(mac_key, ct)


def ecies_decrypt(eph_pub: bytes, ciphertext: bytes, tag: bytes, home_private_key: bytes) -> bytes:
    home = _load_private(home_private_key)
    try:
        shared = home.exchange(_load_public(eph_pub))
    except ValueError:
        raise MacMismatchError("MAC mismatch: invalid ephemeral public key") from None
    enc_key, icb, mac_key = _derive(shared, eph_pub)
    if not _hmac.compare_digest(_tag(mac_key, ciphertext), tag):
        raise MacMismatchError("MAC mismatch: SUCI was tampered with or the home network key is wrong")
    return _ctr(enc_key, icb, ciphertext)


def conceal(
    nai: Nai,
    scheme: ProtectionScheme | str,
    pad: SchemeInstance,
    home_public_key: Optional[bytes] = None,
    rng: Optional[random.Random] = None,
    *,
    routing_indicator: str = "0",
    home_key_id: int = 1,
) -> SuciMessage:
    """Pad the username with ``pad`` and conceal it under ``scheme``.

    ``rng`` drives randomized padding only; the ephemeral key always comes
    from the operating system's CSPRNG.
    """
    scheme = ProtectionScheme(scheme)
    padded = pad_bytes(pad, nai.username.encode("ascii"), rng)
    if scheme is ProtectionScheme.NULL:
        return SuciMessage(SupiType.NSI, nai.realm, routing_indicator, scheme,
                           home_key_id, None, padded, None)
    if home_public_key is None:
        raise SuciError("profileA needs the home network public key")
    eph_pub, ct, tag = ecies_encrypt(padded, home_public_key)
    return SuciMessage(SupiType.NSI, nai.realm, routing_indicator, scheme,
                       home_key_id, eph_pub, ct, tag)


def reveal(msg: SuciMessage, pad: SchemeInstance, home_private_key: Optional[bytes] = None) -> Nai:
    """Home-network side: verify, decrypt, strip padding, rebuild the NAI."""
    if msg.supi_type is not SupiType.NSI:
        raise SuciError("only NSI-type SUCIs carry a username")
    if msg.scheme_id is ProtectionScheme.NULL:
        padded = msg.ciphertext
    else:
        if home_private_key is None:
            raise SuciError("profileA needs the home network private key")
        padded = ecies_decrypt(msg.ephemeral_public_key, msg.ciphertext, msg.mac_tag, home_private_key)
    username = unpad_bytes(padded)
    if len(padded) not in padded_length(pad, len(username)):
        raise SuciError(
            f"padded length {len(padded)} is not a possible output of {pad.code} "
            f"for a {len(username)}-octet username"
        )
    try:
        return Nai(username.decode("ascii"), msg.home_network_id)
    except UnicodeDecodeError:
        raise SuciError("decrypted username is not ASCII") from None


def observed_length(msg: SuciMessage) -> int:
    """What an eavesdropper learns: the concealed identifier's length in octets."""
    return len(msg.ciphertext)
