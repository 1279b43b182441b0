"""Direct verification of the Markov uniqueness conjecture.

The conjecture says a Markov number determines its normalized triple.
Over the enumeration stream that becomes: emitted maxima are strictly
increasing.  The checker consumes the stream up to a bound (on the value
or on the distinct count), records every violation with both witness
triples, and treats limit exhaustion as success.

Memory stays flat: only duplicates keep their triples.  At the scales
where this matters the integers have a thousand digits and there are a
million of them, so retaining everything is not an option.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field

from .enumeration import MarkovStream
from .triples import MarkovTriple

PROGRESS_EVERY = 10_000


@dataclass(frozen=True)
class DuplicateWitness:
    """Two normalized triples sharing one maximum.

    first is None only when the earlier triple was emitted before a
    restored checkpoint and is no longer available; the violation is
    still recorded.
    """

    value: int
    first: MarkovTriple | None
    second: MarkovTriple


@dataclass
class MucReport:
    """Outcome of a bounded uniqueness check.

    duplicates is empty exactly when the emission sequence was strictly
    increasing up to the limit.
    """

    limit_kind: str  # "max_value" or "count"
    limit: int
    verified_distinct: int
    max_value: int | None
    duplicates: list[DuplicateWitness] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def holds(self) -> bool:
        return not self.duplicates

    def to_dict(self) -> dict:
        """JSON-ready form; wall_time is the only non-deterministic field."""
        return {
            "limit_kind": self.limit_kind,
            "limit": self.limit,
            "verified_distinct": self.verified_distinct,
            "max_value": self.max_value,
            "holds": self.holds,
            "duplicates": [
                {
                    "value": w.value,
                    "first": list(w.first.as_tuple()) if w.first is not None else None,
                    "second": list(w.second.as_tuple()),
                }
                for w in self.duplicates
            ],
            "wall_time_s": self.wall_time,
        }


def check_muc(
    max_value: int | None = None,
    count: int | None = None,
    stream: MarkovStream | None = None,
    progress: bool = False,
) -> MucReport:
    """Consume the stream up to one limit and report all duplicate maxima.

    Exactly one of max_value (largest Markov number to examine) or count
    (number of distinct values) must be given.  A caller-supplied stream
    may come from a checkpoint, in which case counters continue from the
    restored state.  With progress=True a liveness line goes to stderr
    every 10^4 emissions.
    """
    if (max_value is None) == (count is None):
        raise ValueError("give exactly one of max_value or count")
    if max_value is not None and max_value < 1:
        raise ValueError(f"max_value must be >= 1, got {max_value}")
    if count is not None and count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if stream is None:
        stream = MarkovStream()

    started = time.perf_counter()
    duplicates: list[DuplicateWitness] = []
    first_of_value: MarkovTriple | None = None
    last_value: int | None = stream.last_value

    def emit_one() -> None:
        nonlocal first_of_value, last_value
        emission = stream.next_markov()
        if emission.duplicate:
            duplicates.append(DuplicateWitness(emission.value, first_of_value, emission.triple))
        else:
            first_of_value = emission.triple
        last_value = emission.value
        if progress and stream.emitted % PROGRESS_EVERY == 0:
            print(
                f"checked {stream.emitted} emissions, {stream.distinct} distinct, "
                f"current value has {len(str(emission.value))} digits, "
                f"frontier holds {stream.frontier_size} nodes",
                file=sys.stderr,
            )

    if max_value is not None:
        while stream.peek_next_value() <= max_value:
            emit_one()
    else:
        while stream.distinct < count:
            emit_one()
        # drain duplicates of the boundary value so a counterexample at the
        # limit itself is never silently cut off
        while stream.peek_next_value() == last_value:
            emit_one()

    kind = "max_value" if max_value is not None else "count"
    return MucReport(
        limit_kind=kind,
        limit=max_value if max_value is not None else count,
        verified_distinct=stream.distinct,
        max_value=stream.last_value,
        duplicates=duplicates,
        wall_time=time.perf_counter() - started,
    )


def report_json(report: MucReport, indent: int = 2) -> str:
    """Stable-key JSON; byte-identical across runs apart from wall_time."""
    return json.dumps(report.to_dict(), sort_keys=True, indent=indent) + "\n"
