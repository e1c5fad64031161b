# Copyright (c) 2026 strokemark developers
# MIT License

"""
Message whitening with a 128-bit secret key, and message parsing.

The keystream is AES-128 in counter mode over the bit index (block
counter starting at 0, empty nonce), so that bit ``i`` is always XORed
with the same keystream bit for a given key.  Whitening is an
involution: ``unwhiten(whiten(m, k), k) == m``.
"""

import logging
import re

import numpy as np
from Crypto.Cipher import AES


logger = logging.getLogger(__name__)


def parse_key(key):
    """
    Parse the 128-bit key given as 32 hexadecimal digits.

    Returns
    -------
    key : bytes or None
        ``None`` for an empty key (whitening disabled).
    """
    if key is None or key == "" or isinstance(key, bytes):
        return key or None
    key = key.strip().lower()
    if key.startswith("0x"):
        key = key[2:]
    if not re.fullmatch(r"[0-9a-f]{32}", key):
        raise ValueError("key must be 32 hexadecimal digits (128 bits)")
    return bytes.fromhex(key)


def keystream(key, n):
    """The first ``n`` keystream bits (``uint8`` 0/1 array)."""
    key = parse_key(key)
    if key is None:
        return np.zeros(n, dtype=np.uint8)
    nbytes = (n + 7) // 8
    cipher = AES.new(key, AES.MODE_CTR, nonce=b"", initial_value=0)
    stream = cipher.encrypt(bytes(nbytes))
    return np.unpackbits(np.frombuffer(stream, dtype=np.uint8))[:n]


def whiten(bits, key):
    """XOR the message bits with the keystream of the key."""
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if bits.size and bits.max() > 1:
        raise ValueError("message bits must be 0 or 1")
    return np.bitwise_xor(bits, keystream(key, bits.size))


unwhiten = whiten


def parse_message(text, length=None):
    """
    Parse a message given as hexadecimal digits (optionally prefixed by
    ``0x``) or as a bit string prefixed by ``0b``.

    Parameters
    ----------
    length : int, optional
        Truncate (or zero-pad on the left) to this number of bits.
    """
    text = text.strip().replace("_", "").lower()
    if text.startswith("0b"):
        digits = text[2:]
        if not re.fullmatch(r"[01]+", digits):
            raise ValueError("invalid bit string: %s" % text)
        bits = [int(c) for c in digits]
    else:
        digits = text[2:] if text.startswith("0x") else text
        if not re.fullmatch(r"[0-9a-f]+", digits):
            raise ValueError("invalid hexadecimal message: %s" % text)
        bits = [int(b) for c in digits for b in format(int(c, 16), "04b")]
    if length is not None:
        if len(bits) > length:
            bits = bits[-length:]
        else:
            bits = [0] * (length - len(bits)) + bits
    return np.array(bits, dtype=np.uint8)


def format_message(bits):
    """Hexadecimal digits if the length is a multiple of 4, else 0b..."""
    bits = [int(b) for b in np.asarray(bits).ravel()]
    if bits and len(bits) % 4 == 0:
        return "".join("%x" % int("".join(map(str, bits[i:i+4])), 2)
                       for i in range(0, len(bits), 4))
    return "0b" + "".join(map(str, bits))
