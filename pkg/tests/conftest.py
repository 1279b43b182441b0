import heapq

import pytest

from markovsum import MarkovStream
from oracles import markov_triples_brute


@pytest.fixture(scope="session")
def brute_triples_1e4() -> set[tuple[int, int, int]]:
    return markov_triples_brute(10**4)


@pytest.fixture(scope="session")
def brute_numbers_1e4(brute_triples_1e4) -> list[int]:
    return sorted({z for _, _, z in brute_triples_1e4})


def stream_values(count: int) -> list[int]:
    """First `count` emitted values from a fresh stream."""
    stream = MarkovStream()
    return [stream.next_markov().value for _ in range(count)]


def stream_triples_up_to(bound: int) -> list:
    """Emissions of a fresh stream while the value stays <= bound."""
    stream = MarkovStream()
    out = []
    while stream.peek_next_value() <= bound:
        out.append(stream.next_markov())
    return out


def duplicated_stream() -> MarkovStream:
    """A stream whose frontier contains a forged duplicate tree node.

    The uniqueness conjecture holds at every reachable scale, so the
    duplicate-handling paths can only be exercised against a corrupted
    frontier: after the root is expanded, one of its children is pushed a
    second time.
    """
    stream = MarkovStream()
    for _ in range(3):  # 1, 2, 5
        stream.next_markov()
    heapq.heappush(stream._heap, (13, 5, 1))
    return stream
