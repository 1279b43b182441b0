"""Slopes of simple closed curves and the geometry-arithmetic bridge.

A slope is a primitive projective pair [p:q] indexing a simple closed
curve on the once-punctured torus via its homology line.  Two
independent routes compute the associated Markov number:

* :func:`farey_markov` -- Stern-Brocot descent carrying value triples
  with the mediant rule 3*left*right - opposite;
* :func:`holonomy_trace` -- the trace of the Christoffel-word matrix
  product in a fixed SL(2,Z) holonomy pair, which equals three times the
  Markov number.

Their agreement (tested exhaustively, never assumed) is what pins the
word and sign conventions below.  The six-element dihedral action on
slopes has exactly two three-element orbits, those of [1:1] and [1:-1];
every other orbit has six elements, and the Markov value is constant on
orbits.

Everything here is a pure function over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import mpmath as mp

from .precision import PrecisionReal, _require_prec

Mat = tuple[int, int, int, int]  # row-major 2x2


def _mat_mul(m: Mat, n: Mat) -> Mat:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mat_inv(m: Mat) -> Mat:
    # valid for determinant 1 only
    a, b, c, d = m
    return (d, -b, -c, a)


def _mat_trace(m: Mat) -> int:
    return m[0] + m[3]


def _mat_det(m: Mat) -> int:
    return m[0] * m[3] - m[1] * m[2]


_IDENTITY: Mat = (1, 0, 0, 1)


@dataclass(frozen=True)
class Slope:
    """Canonical primitive projective pair [p:q]: q > 0, or (p,q) = (1,0)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError(f"[{self.p}:{self.q}] is not primitive")
        if not (self.q > 0 or (self.p, self.q) == (1, 0)):
            raise ValueError(f"[{self.p}:{self.q}] is not canonical (need q > 0 or [1:0])")

    @classmethod
    def from_pair(cls, p: int, q: int) -> "Slope":
        """Canonicalize the sign of a primitive pair; rejects non-coprime input."""
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    def __str__(self) -> str:
        return f"{self.p}:{self.q}"


INFINITY_SLOPE = Slope(1, 0)


@dataclass(frozen=True)
class HolonomyPair:
    """Lifted holonomies of the two marking curves, as SL(2,Z) matrices.

    Validity means: both determinants 1, commutator trace exactly -2 (the
    puncture is parabolic), and the trace triple (tr a, tr b, tr ab) on
    the cubic x^2 + y^2 + z^2 = xyz.
    """

    a: Mat
    b: Mat

    def __post_init__(self) -> None:
        if _mat_det(self.a) != 1 or _mat_det(self.b) != 1:
            raise ValueError("holonomy matrices must have determinant 1")
        if self.commutator_trace() != -2:
            raise ValueError(f"commutator trace is {self.commutator_trace()}, need -2")
        x, y, z = self.trace_triple()
        if x * x + y * y + z * z != x * y * z:
            raise ValueError(f"trace triple {self.trace_triple()} is off the cubic")

    def commutator_trace(self) -> int:
        m = _mat_mul(_mat_mul(self.a, self.b), _mat_mul(_mat_inv(self.a), _mat_inv(self.b)))
        return _mat_trace(m)

    def trace_triple(self) -> tuple[int, int, int]:
        return (_mat_trace(self.a), _mat_trace(self.b), _mat_trace(_mat_mul(self.a, self.b)))


#: The fixed pair with trace triple (3,3,3), the integral point matching
#: the triple (1,1,1) scaled by 3.  Any conjugate pair gives the same traces.
MODULAR_PAIR = HolonomyPair((1, 1, 1, 2), (1, -1, -1, 2))


def farey_markov(s: Slope) -> int:
    """Markov number of the curve of slope s, by Stern-Brocot descent.

    The descent carries (left, mediant, right) values anchored at
    m([0:1]) = m([1:0]) = 1 and m([1:1]) = 2, refining one Farey triangle
    per step with the rule new = 3*left*right - opposite.  Negative
    slopes are first rotated into the nonnegative sector by the order-3
    element of the dihedral action, which preserves the Markov value;
    a plain p -> -p mirror would not (it breaks orbit constancy).
    """
    p, q = s.p, s.q
    if p < 0:
        a = -p
        if a >= q:
            return farey_markov(Slope.from_pair(q, a - q))
        return farey_markov(Slope.from_pair(q - a, a))
    if (p, q) in ((0, 1), (1, 0)):
        return 1
    if (p, q) == (1, 1):
        return 2
    pl, ql, ml = 0, 1, 1
    pr, qr, mr = 1, 0, 1
    pm, qm, mm = 1, 1, 2
    while (pm, qm) != (p, q):
        if p * qm < pm * q:
            # target lies in the left triangle (L, mediant(L, M), M)
            pr, qr, mr, mm = pm, qm, mm, 3 * ml * mm - mr
        else:
            pl, ql, ml, mm = pm, qm, mm, 3 * mm * mr - ml
        pm, qm = pl + pr, ql + qr
    return mm


def christoffel_word(s: Slope) -> str:
    """The primitive word of slope s over 'a' (marking curve) and 'b'/'B'.

    Lower Christoffel word with q letters 'a' and |p| second letters; the
    second letter is 'B' (the inverse generator) for p >= 0 and 'b' for
    p < 0.  This is the orientation under which the word trace equals
    three times the Markov number -- enforced by the oracle-agreement
    tests, not assumed.
    """
    p, q = s.p, s.q
    if (p, q) == (1, 0):
        return "B"
    second = "B" if p >= 0 else "b"
    rises = abs(p)
    n = rises + q
    word = []
    prev = 0
    for i in range(1, n + 1):
        cur = (i * rises) // n
        word.append(second if cur != prev else "a")
        prev = cur
    return "".join(word)


def holonomy_trace(s: Slope, pair: HolonomyPair = MODULAR_PAIR) -> int:
    """|trace| of the Christoffel-word product for slope s.

    Always a positive integer divisible by 3; lifts to SL(2) are defined
    only up to sign, hence the absolute value.
    """
    letters = {"a": pair.a, "b": pair.b, "B": _mat_inv(pair.b)}
    m = _IDENTITY
    for ch in christoffel_word(s):
        m = _mat_mul(m, letters[ch])
    return abs(_mat_trace(m))


@lru_cache(maxsize=1)
def dihedral_group() -> tuple[Mat, ...]:
    """The six-element image of the isometry group in PGL(2,Z).

    Generated by the rotation (0 1; -1 -1) of order 3 and the swap
    (0 1; 1 0); closure is computed rather than hard-coded.
    """
    rotation: Mat = (0, 1, -1, -1)
    swap: Mat = (0, 1, 1, 0)
    elements = {_IDENTITY}
    frontier = [_IDENTITY]
    while frontier:
        m = frontier.pop()
        for g in (rotation, swap):
            n = _mat_mul(g, m)
            if n not in elements:
                elements.add(n)
                frontier.append(n)
    assert len(elements) == 6
    return tuple(sorted(elements))


def apply_projective(m: Mat, s: Slope) -> Slope:
    """Act on the column vector (p, q) and re-canonicalize the sign."""
    a, b, c, d = m
    return Slope.from_pair(a * s.p + b * s.q, c * s.p + d * s.q)


def dihedral_orbit(s: Slope) -> frozenset[Slope]:
    """Orbit of s under the six-element dihedral action; size 3 or 6."""
    return frozenset(apply_projective(g, s) for g in dihedral_group())


def mcshane_term(s: Slope, prec: int) -> PrecisionReal:
    """The length-series term 1/(1 + e^len) for the geodesic of slope s.

    Evaluated from the integer trace via e^(len/2) = (tau + sqrt(tau^2-4))/2.
    """
    return mcshane_term_from_trace(holonomy_trace(s), prec)


def mcshane_term_from_trace(tau: int, prec: int) -> PrecisionReal:
    """1/(1 + e^len) where the trace-length relation gives e^(len/2)."""
    _require_prec(prec)
    if tau < 3:
        raise ValueError(f"traces of simple closed geodesics are >= 3, got {tau}")
    with mp.workdps(prec):
        half = (tau + mp.sqrt(mp.mpf(tau) ** 2 - 4)) / 2
        return PrecisionReal(1 / (1 + half**2), prec)


def mcshane_term_sqrt_form(tau: int, prec: int) -> PrecisionReal:
    """The algebraically identical form (1 - sqrt(1 - 4/tau^2))/2.

    Kept as a second route so the per-term identity can be asserted to a
    couple of ulp instead of trusted.
    """
    _require_prec(prec)
    if tau < 3:
        raise ValueError(f"traces of simple closed geodesics are >= 3, got {tau}")
    with mp.workdps(prec):
        return PrecisionReal((1 - mp.sqrt(1 - mp.mpf(4) / (mp.mpf(tau) ** 2))) / 2, prec)


def canonical_slopes(bound: int):
    """Yield [1:0] and then every canonical slope with |p| <= bound, q <= bound.

    Slopes arrive in rings of growing height k = max(|p|, q), each ring
    sorted by (q, p), so the prefix up to ring k is exactly the box of
    bound k.  Deterministic order matters: truncated sums over this
    sequence are reproducible and extendable.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    yield INFINITY_SLOPE
    for k in range(1, bound + 1):
        ring = []
        for p in range(-k, k + 1):
            if gcd(abs(p), k) == 1:
                ring.append(Slope(p, k))
        for q in range(1, k):
            if gcd(k, q) == 1:
                ring.append(Slope(k, q))
                ring.append(Slope(-k, q))
        ring.sort(key=lambda s: (s.q, s.p))
        yield from ring
