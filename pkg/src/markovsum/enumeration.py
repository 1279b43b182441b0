"""Best-first enumeration of the Markov tree.

Markov numbers are produced in non-decreasing order of the triple maximum
by expanding the tree frontier through a heap.  Child maxima strictly
exceed the parent maximum, so a pop is final: nothing smaller can appear
later.  Strictness of the increase across *emissions* is exactly the
uniqueness conjecture at that scale, which is why duplicates are emitted
and flagged rather than dropped.

A stream is single-owner and advanced sequentially; for long runs its
exact state round-trips through a versioned, checksummed binary
checkpoint.
"""

from __future__ import annotations

import heapq
import struct
import zlib
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .triples import SINGULAR_CHAIN, TREE_ROOT, MarkovTriple

_MAGIC = b"MKST"
_VERSION = 1


class CheckpointError(ValueError):
    """Base class for checkpoint restore failures."""


class CheckpointVersionError(CheckpointError):
    """The blob is well-formed but written by an incompatible version."""


class CheckpointCorruptedError(CheckpointError):
    """The blob fails structural or checksum validation."""


class Emission(NamedTuple):
    """One step of the stream.

    n is the 1-based index among *distinct* values; a duplicate emission
    (a uniqueness-conjecture counterexample witness) repeats the previous
    n and sets the flag.
    """

    n: int
    value: int
    triple: MarkovTriple
    duplicate: bool


@dataclass(frozen=True)
class FrontierNode:
    """A pending tree node: its triple and the maximum it will emit."""

    max: int
    triple: MarkovTriple

    def __post_init__(self) -> None:
        if self.max != self.triple.z:
            raise ValueError(f"max {self.max} is not the triple maximum {self.triple.z}")

    def __lt__(self, other: "FrontierNode") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple[int, int, int]:
        # Ties on max are broken by (y, x) so emission order is total and
        # hypothetical duplicates surface adjacently.
        return (self.max, self.triple.y, self.triple.x)


class MarkovStream:
    """Heap-ordered producer of Markov numbers in increasing order.

    The singular chain (1,1,1), (1,1,2) is emitted first; afterwards the
    heap, seeded with the tree root (1,2,5), expands the binary tree and
    every node is pushed exactly once.
    """

    def __init__(self) -> None:
        self._pending: list[tuple[int, int, int]] = [t.as_tuple() for t in SINGULAR_CHAIN]
        root = TREE_ROOT.as_tuple()
        self._heap: list[tuple[int, int, int]] = [(root[2], root[1], root[0])]
        self.emitted = 0
        self.distinct = 0
        self.last_value: int | None = None

    def peek_next_value(self) -> int:
        """The maximum the next emission will carry, without advancing."""
        if self._pending:
            return self._pending[0][2]
        return self._heap[0][0]

    def next_markov(self) -> Emission:
        """Advance one step.  The stream is infinite; this never raises."""
        if self._pending:
            x, y, z = self._pending.pop(0)
        else:
            z, y, x = heapq.heappop(self._heap)
            heapq.heappush(self._heap, (3 * y * z - x, z, y))
            heapq.heappush(self._heap, (3 * x * z - y, z, x))
        duplicate = z == self.last_value
        if not duplicate:
            self.distinct += 1
        self.emitted += 1
        self.last_value = z
        return Emission(self.distinct, z, MarkovTriple(x, y, z), duplicate)

    def __iter__(self) -> Iterator[Emission]:
        while True:
            yield self.next_markov()

    @property
    def frontier_size(self) -> int:
        return len(self._pending) + len(self._heap)

    def frontier(self) -> list[FrontierNode]:
        """Snapshot of pending nodes in emission order (sorted copy)."""
        nodes = [FrontierNode(z, MarkovTriple(x, y, z)) for x, y, z in self._pending]
        nodes += [FrontierNode(z, MarkovTriple(x, y, z)) for z, y, x in self._heap]
        return sorted(nodes)

    # -- checkpointing ----------------------------------------------------

    def checkpoint(self) -> bytes:
        """Serialize the exact stream state.

        The payload keeps the heap in its internal list order, so a
        restored stream replays byte-identically: identical subsequent
        operations produce identical emissions and identical re-checkpoints.
        """
        parts = [
            _encode_int(self.emitted),
            _encode_int(self.distinct),
            b"\x01" + _encode_int(self.last_value) if self.last_value is not None else b"\x00",
            _encode_int(len(self._pending)),
        ]
        for x, y, z in self._pending:
            parts += [_encode_int(x), _encode_int(y), _encode_int(z)]
        parts.append(_encode_int(len(self._heap)))
        for z, y, x in self._heap:
            parts += [_encode_int(z), _encode_int(y), _encode_int(x)]
        payload = b"".join(parts)
        header = _MAGIC + struct.pack("<H", _VERSION) + struct.pack("<Q", len(payload))
        return header + payload + struct.pack("<I", zlib.crc32(payload))

    @classmethod
    def restore(cls, blob: bytes) -> "MarkovStream":
        """Rebuild a stream from :meth:`checkpoint` output.

        Raises CheckpointVersionError for a foreign version and
        CheckpointCorruptedError for anything structurally or checksum-wise
        wrong; the two are distinct so callers can react differently.
        """
        if len(blob) < len(_MAGIC) + 2 + 8 + 4:
            raise CheckpointCorruptedError("blob too short for a checkpoint")
        if blob[: len(_MAGIC)] != _MAGIC:
            raise CheckpointCorruptedError("bad magic bytes")
        (version,) = struct.unpack_from("<H", blob, len(_MAGIC))
        if version != _VERSION:
            raise CheckpointVersionError(f"checkpoint version {version}, expected {_VERSION}")
        (length,) = struct.unpack_from("<Q", blob, len(_MAGIC) + 2)
        start = len(_MAGIC) + 2 + 8
        if len(blob) != start + length + 4:
            raise CheckpointCorruptedError("payload length mismatch")
        payload = blob[start : start + length]
        (crc,) = struct.unpack_from("<I", blob, start + length)
        if zlib.crc32(payload) != crc:
            raise CheckpointCorruptedError("checksum mismatch")

        reader = _Reader(payload)
        stream = cls.__new__(cls)
        stream.emitted = reader.read_int()
        stream.distinct = reader.read_int()
        stream.last_value = reader.read_int() if reader.read_byte() else None
        stream._pending = [
            (reader.read_int(), reader.read_int(), reader.read_int())
            for _ in range(reader.read_int())
        ]
        stream._heap = [
            (reader.read_int(), reader.read_int(), reader.read_int())
            for _ in range(reader.read_int())
        ]
        reader.expect_end()
        return stream


def next_markov(stream: MarkovStream) -> Emission:
    return stream.next_markov()


def checkpoint(stream: MarkovStream) -> bytes:
    return stream.checkpoint()


def restore(blob: bytes) -> MarkovStream:
    return MarkovStream.restore(blob)


def _encode_int(v: int) -> bytes:
    """Sign byte, little-endian u32 byte count, little-endian magnitude."""
    sign = b"\x01" if v < 0 else b"\x00"
    mag = abs(v)
    data = mag.to_bytes((mag.bit_length() + 7) // 8, "little") if mag else b""
    return sign + struct.pack("<I", len(data)) + data


class _Reader:
    def __init__(self, payload: bytes) -> None:
        self._data = payload
        self._pos = 0

    def read_byte(self) -> int:
        if self._pos + 1 > len(self._data):
            raise CheckpointCorruptedError("truncated payload")
        b = self._data[self._pos]
        self._pos += 1
        if b not in (0, 1):
            raise CheckpointCorruptedError(f"invalid flag byte {b}")
        return b

    def read_int(self) -> int:
        sign = self.read_byte()
        if self._pos + 4 > len(self._data):
            raise CheckpointCorruptedError("truncated payload")
        (n,) = struct.unpack_from("<I", self._data, self._pos)
        self._pos += 4
        if self._pos + n > len(self._data):
            raise CheckpointCorruptedError("truncated payload")
        mag = int.from_bytes(self._data[self._pos : self._pos + n], "little")
        self._pos += n
        return -mag if sign else mag

    def expect_end(self) -> None:
        if self._pos != len(self._data):
            raise CheckpointCorruptedError("trailing bytes in payload")
