"""Wire formats for generated bitstreams.

Three encodings of one canonical bit order (blocks in emission order, each
block most-significant-bit-first):

- raw:     bits packed 8 per byte, MSB first; the final byte is zero-padded.
- ascii01: one '0'/'1' character per bit, a newline after every 80 chars and
           a terminating newline (the layout external bit-level suites read).
- u32:     successive 32-bit groups of the stream, one decimal integer per
           line; the final group is zero-padded on the right.

Decoding a written file reproduces the exact bitstream (pass n_bits to strip
the padding the encoders add).
"""

from enum import Enum

import numpy as np

_ASCII_WIDTH = 80


class OutputFormat(Enum):
    RAW = "raw"
    ASCII01 = "ascii01"
    U32 = "u32"


def _check_bits(bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 1 or bits.size == 0:
        raise ValueError("bit stream must be a non-empty 1-d array")
    if bits.max() > 1:
        raise ValueError("bit stream may contain only 0 and 1")
    return bits


def encode_raw(bits) -> bytes:
    return np.packbits(_check_bits(bits)).tobytes()


def decode_raw(data: bytes, n_bits: int | None = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    return bits if n_bits is None else bits[:n_bits]


def encode_ascii01(bits) -> bytes:
    chars = _check_bits(bits) + ord("0")
    lines = [chars[i:i + _ASCII_WIDTH].tobytes()
             for i in range(0, chars.size, _ASCII_WIDTH)]
    return b"\n".join(lines) + b"\n"


def decode_ascii01(data: bytes, n_bits: int | None = None) -> np.ndarray:
    arr = np.frombuffer(data, dtype=np.uint8)
    arr = arr[arr != ord("\n")]
    if arr.size == 0:
        raise ValueError("no bits found")
    if not np.all((arr == ord("0")) | (arr == ord("1"))):
        raise ValueError("ascii01 file may contain only '0', '1' and newlines")
    bits = (arr - ord("0")).astype(np.uint8)
    return bits if n_bits is None else bits[:n_bits]


def encode_u32(bits) -> bytes:
    bits = _check_bits(bits)
    pad = (-bits.size) % 32
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 32).astype(np.uint64)
    shifts = np.arange(31, -1, -1, dtype=np.uint64)
    words = (groups << shifts).sum(axis=1)
    return ("\n".join(str(int(w)) for w in words) + "\n").encode("ascii")


def decode_u32(data: bytes, n_bits: int | None = None) -> np.ndarray:
    lines = [ln for ln in data.decode("ascii").splitlines() if ln.strip()]
    if not lines:
        raise ValueError("no words found")
    words = np.array([int(ln) for ln in lines], dtype=np.uint64)
    if words.size and int(words.max()) >= 2 ** 32:
        raise ValueError("u32 file contains a value not representable in 32 bits")
    shifts = np.arange(31, -1, -1, dtype=np.uint64)
    bits = ((words[:, None] >> shifts) & 1).astype(np.uint8).ravel()
    return bits if n_bits is None else bits[:n_bits]


_ENCODERS = {
    OutputFormat.RAW: encode_raw,
    OutputFormat.ASCII01: encode_ascii01,
    OutputFormat.U32: encode_u32,
}

_DECODERS = {
    OutputFormat.RAW: decode_raw,
    OutputFormat.ASCII01: decode_ascii01,
    OutputFormat.U32: decode_u32,
}


def encode(bits, fmt: OutputFormat) -> bytes:
    return _ENCODERS[OutputFormat(fmt)](bits)


def decode(data: bytes, fmt: OutputFormat, n_bits: int | None = None) -> np.ndarray:
    return _DECODERS[OutputFormat(fmt)](data, n_bits)
