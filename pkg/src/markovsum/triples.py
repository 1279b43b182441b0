"""Exact integer arithmetic on Markov triples.

A Markov triple is a positive integer solution of

    x^2 + y^2 + z^2 = 3xyz

stored here in normalized (ascending) order.  All arithmetic is on
Python's unbounded integers; values near the top of long enumeration
runs have hundreds of digits, so nothing in this module may ever round.

Triples are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

COORDINATES = ("x", "y", "z")


def is_markov(x: int, y: int, z: int) -> bool:
    """True iff (x, y, z) solves the Markov cubic exactly.

    Non-positive inputs are a domain error, not a False: callers must be
    able to distinguish "not a solution" from "not a valid question".
    """
    if x < 1 or y < 1 or z < 1:
        raise ValueError(f"coordinates must be positive integers, got ({x}, {y}, {z})")
    return x * x + y * y + z * z == 3 * x * y * z


@dataclass(frozen=True)
class MarkovTriple:
    """A normalized Markov triple x <= y <= z.

    The constructor validates the cubic, so every reachable instance is a
    genuine solution; use :meth:`of` to build from unsorted coordinates.
    """

    x: int
    y: int
    z: int

    def __post_init__(self) -> None:
        if self.x < 1 or self.y < 1 or self.z < 1:
            raise ValueError(f"coordinates must be positive, got {self.as_tuple()}")
        if not (self.x <= self.y <= self.z):
            raise ValueError(f"triple must be sorted ascending, got {self.as_tuple()}")
        if not is_markov(self.x, self.y, self.z):
            raise ValueError(f"{self.as_tuple()} does not solve x^2+y^2+z^2=3xyz")

    @classmethod
    def of(cls, a: int, b: int, c: int) -> "MarkovTriple":
        """Build a normalized triple from coordinates in any order."""
        x, y, z = sorted((a, b, c))
        return cls(x, y, z)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def is_singular(self) -> bool:
        """True for (1,1,1) and (1,1,2), the triples with a repeated entry."""
        return self.x == self.y or self.y == self.z

    def coordinate(self, name: str) -> int:
        if name not in COORDINATES:
            raise ValueError(f"coordinate must be one of {COORDINATES}, got {name!r}")
        return getattr(self, name)

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


#: The hard-coded chain below the binary tree: (1,1,1) -> (1,1,2) -> root.
SINGULAR_CHAIN = (MarkovTriple(1, 1, 1), MarkovTriple(1, 1, 2))

#: Root of the binary Markov tree.  Rooting at (1,2,5) avoids the duplicate
#: children produced by the symmetric singular triples above it.
TREE_ROOT = MarkovTriple(1, 2, 5)


def vieta(t: MarkovTriple, coordinate: str) -> MarkovTriple:
    """Apply the Vieta move replacing `coordinate` by 3*(product of the
    other two) minus itself, and renormalize.

    The move is an involution on normalized triples once the label is
    tracked through the re-sort; see :func:`vieta_landing`.
    """
    triple, _ = vieta_landing(t, coordinate)
    return triple


def vieta_landing(t: MarkovTriple, coordinate: str) -> tuple[MarkovTriple, str]:
    """Vieta move plus the coordinate label where the new value landed.

    Applying the move again at the returned label restores the original
    triple, which makes involution checks well-defined even though the
    result is re-sorted.
    """
    old = t.coordinate(coordinate)
    others = [v for name, v in zip(COORDINATES, t.as_tuple()) if name != coordinate]
    new = 3 * others[0] * others[1] - old
    moved = MarkovTriple.of(others[0], others[1], new)
    # With repeated values any matching position restores the original;
    # scan z, y, x so generic (child) moves report the landing as "z".
    for name in reversed(COORDINATES):
        if moved.coordinate(name) == new:
            return moved, name
    raise AssertionError("new value must appear in the re-sorted triple")


def children(t: MarkovTriple) -> tuple[MarkovTriple, MarkovTriple]:
    """The two Vieta moves that grow the maximum, as (replace-x, replace-y).

    Both children of a non-singular normalized triple are automatically
    normalized and have maximum strictly greater than t.z; the replace-z
    move regenerates the parent and is excluded.  Singular triples are
    expanded by the dedicated chain in the enumeration stream, never here.
    """
    if t.is_singular:
        raise ValueError(f"singular triple {t} has no tree children")
    x, y, z = t.as_tuple()
    return (
        MarkovTriple(y, z, 3 * y * z - x),
        MarkovTriple(x, z, 3 * x * z - y),
    )
