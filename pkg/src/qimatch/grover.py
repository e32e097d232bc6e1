"""Amplitude amplification over the big-image position register.

The engine works on the 4**n-dimensional subspace spanned by the big-image
position states.  One amplification round is a phase flip of the marked
indices followed by inversion about the mean (the diffusion operator
D = 2P - I, with P the rank-one projector onto the uniform state).

With a single marked index the state holds at most two distinct values at
every round, so the whole evolution collapses to a two-term recurrence

    marked'   = -2*marked/a**2 - 2*unmarked/a**2 + 2*unmarked + marked
    unmarked' = -2*marked/a**2 - 2*unmarked/a**2 + unmarked

with a = 2**n.  :func:`recurrence_step` implements it with plain Python
arithmetic so it runs exactly on :class:`fractions.Fraction` inputs as well as
on floats; every denominator reachable from 1/a is a power of two, so float64
results are bit-exact too for moderate iteration counts.

Iteration planning offers three modes:

* ``EXACT``: smallest integer i >= 1 with
  i**4 + 4i**3 + (2-3a**2)i**2 + (-1-6a**2)i + 1.5a**4 - 1.5a**2 < 0,
  located by integer bisection in exact arithmetic.  The closed radical form
  of the same quartic's root is evaluated in complex floating point as a
  cross-check; disagreements are warned about, never silently resolved.
* ``FIT``: round(0.7962*a - 0.6057), a published linear fit of the exact
  mode.  Documented to sit within +/-1 of the exact count.
* ``OPTIMAL``: first local maximum of the marked probability along the
  recurrence, which can undershoot the quartic-derived count at large a.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

Amplitude = float | Fraction

RADICAL_IMAG_TOL = 1e-6


@dataclass(frozen=True)
class SubspaceState:
    """Real amplitude vector over the 4**n position states plus marked set.

    ``ops`` counts amplitude-element updates performed so far (phase flip
    touches one element per marked index; diffusion reads and rewrites the
    whole vector, 2 * 4**n element-ops per round).  It is carried along so
    work growth can be asserted without timing anything.
    """

    n: int
    amplitudes: np.ndarray
    marked: frozenset[int]
    ops: int = 0

    @property
    def size(self) -> int:
        return len(self.amplitudes)

    def norm_squared(self) -> float:
        return float(np.sum(self.amplitudes * self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return self.amplitudes * self.amplitudes


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def init_subspace(n: int, marked: Iterable[int]) -> SubspaceState:
    """Uniform state over 4**n position indices with the given marked set.

    Every amplitude is 1/2**n regardless of how many indices are marked; the
    marking stage only decides *which* indices get their phase flipped.
    """
    size = 1 << (2 * n)
    marked_set = frozenset(int(k) for k in marked)
    for k in marked_set:
        if not 0 <= k < size:
            raise ValueError(f"marked index {k} out of range [0, {size})")
    return SubspaceState(
        n=n,
        amplitudes=_frozen(np.full(size, 1.0 / (1 << n))),
        marked=marked_set,
        ops=0,
    )


def phase_flip(state: SubspaceState) -> SubspaceState:
    """Negate the amplitude of every marked index (phase rotation by pi)."""
    amps = state.amplitudes.copy()
    idx = sorted(state.marked)
    amps[idx] = -amps[idx]
    return SubspaceState(
        n=state.n,
        amplitudes=_frozen(amps),
        marked=state.marked,
        ops=state.ops + len(idx),
    )


def diffuse(state: SubspaceState) -> SubspaceState:
    """Invert every amplitude about the mean: s -> 2*mean - s.

    Equal to applying the matrix with 2/4**n everywhere and 2/4**n - 1 on the
    diagonal, and to the Hadamard-conjugated reflection about the all-zero
    state.  The mean uses numpy's pairwise summation, so results are
    deterministic and independent of any internal parallelism.
    """
    mean = float(np.sum(state.amplitudes)) / state.size
    amps = 2.0 * mean - state.amplitudes
    return SubspaceState(
        n=state.n,
        amplitudes=_frozen(amps),
        marked=state.marked,
        ops=state.ops + 2 * state.size,
    )


def run_grover(state: SubspaceState, iterations: int) -> SubspaceState:
    """Apply (phase flip, diffuse) the requested number of times."""
    if iterations < 0:
        raise ValueError("iteration count must be non-negative")
    for _ in range(iterations):
        state = diffuse(phase_flip(state))
    return state


def sample_measurement(state: SubspaceState, seed: int, samples: int) -> dict[int, int]:
    """Draw position indices i.i.d. with probability amplitude**2.

    Deterministic for a fixed seed.  Returns a sparse histogram mapping index
    to observed count (indices never drawn are omitted).
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(state.size, size=samples, p=probs)
    counts = np.bincount(draws, minlength=state.size)
    return {int(i): int(c) for i, c in enumerate(counts) if c > 0}


# ---------------------------------------------------------------------------
# Two-value recurrence and its closed forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmplitudePair:
    """The two amplitude values of a single-marked state after ``iteration`` rounds.

    Fields are plain numbers; pass :class:`fractions.Fraction` values to run
    the recurrence exactly.  Invariant: (side**2 - 1)*unmarked**2 + marked**2
    stays 1.
    """

    unmarked: Amplitude
    marked: Amplitude
    iteration: int
    side: int


def initial_pair(side: int) -> AmplitudePair:
    """Uniform starting point: both values 1/side, iteration 0 (float)."""
    return AmplitudePair(unmarked=1.0 / side, marked=1.0 / side, iteration=0, side=side)


def recurrence_step(pair: AmplitudePair) -> AmplitudePair:
    """One amplification round (flip + diffuse) on the two-value state."""
    a2 = pair.side * pair.side
    t, t0 = pair.unmarked, pair.marked
    shift = -2 * t0 / a2 - 2 * t / a2
    return AmplitudePair(
        unmarked=shift + t,
        marked=shift + 2 * t + t0,
        iteration=pair.iteration + 1,
        side=pair.side,
    )


def closed_form_pair(i: int, side: int | Fraction) -> AmplitudePair:
    """Explicit polynomial values of the recurrence for 1 <= i <= 4.

    Coefficients beyond i = 4 are not tabulated; the recurrence covers the
    general case.  ``side`` may be an int, float, or Fraction; division
    follows the input type, so Fraction input yields exact output.
    """
    a = side
    marked = {
        1: 3 / a - 4 / a**3,
        2: 5 / a - 20 / a**3 + 16 / a**5,
        3: 7 / a - 56 / a**3 + 112 / a**5 - 64 / a**7,
        4: 9 / a - 120 / a**3 + 432 / a**5 - 576 / a**7 + 256 / a**9,
    }
    unmarked = {
        1: 1 / a - 4 / a**3,
        2: 1 / a - 12 / a**3 + 16 / a**5,
        3: 1 / a - 24 / a**3 + 80 / a**5 - 64 / a**7,
        4: 1 / a - 40 / a**3 + 240 / a**5 - 448 / a**7 + 256 / a**9,
    }
    if i not in marked:
        raise ValueError(f"closed form tabulated for 1 <= i <= 4 only, got {i}")
    return AmplitudePair(unmarked=unmarked[i], marked=marked[i], iteration=i, side=int(side))


# ---------------------------------------------------------------------------
# Iteration planning
# ---------------------------------------------------------------------------


class PlanMode(enum.Enum):
    EXACT = "exact"
    FIT = "fit"
    OPTIMAL = "optimal"


@dataclass(frozen=True)
class IterationPlan:
    side: int
    mode: PlanMode
    iterations: int
    predicted_success: float
    lower_bound: float


def _quartic_doubled(i: int, a: int) -> int:
    # Twice the planning quartic, so every coefficient is an exact integer.
    return (
        2 * i**4
        + 8 * i**3
        + 2 * (2 - 3 * a * a) * i * i
        + 2 * (-1 - 6 * a * a) * i
        + 3 * a**4
        - 3 * a * a
    )


def _scan_exact(a: int) -> int:
    """Smallest integer i >= 1 making the planning quartic negative.

    The quartic decreases monotonically on [1, a] (its derivative stays
    negative until well past the crossing) and is provably negative at i = a,
    so bisection over exact integers finds the sign change.
    """
    if _quartic_doubled(1, a) < 0:
        return 1
    lo, hi = 1, a
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _quartic_doubled(mid, a) < 0:
            hi = mid
        else:
            lo = mid
    return hi


def closed_form_iterations(a: int) -> complex:
    """Radical expression for the planning quartic's relevant root.

    Evaluated with complex arithmetic and principal roots; the imaginary part
    of the combined value should be negligible.  Used only to cross-check the
    integer scan.
    """
    c = 2.0 - 3.0 * a * a
    d = -1.0 - 6.0 * a * a
    e = 1.5 * a**4 - 1.5 * a * a
    b = 4.0
    alpha = c * c - 3 * b * d + 12 * e
    beta = 2 * c**3 - 9 * b * c * d + 27 * d * d + 27 * b * b * e - 72 * c * e
    inner = cmath.sqrt(complex(beta * beta - 4 * alpha**3))
    cube = (beta + inner) ** (1.0 / 3.0)
    big_a = 2 ** (1.0 / 3.0) * alpha / (3.0 * cube)
    big_b = cube / (3.0 * 2 ** (1.0 / 3.0))
    return (
        -1.0
        + 0.5 * cmath.sqrt(4.0 - (2.0 / 3.0) * c + big_a + big_b)
        - 0.5 * cmath.sqrt(8.0 - (4.0 / 3.0) * c - big_a - big_b)
    )


def _scan_optimal(a: int) -> int:
    """First local maximum of the marked probability along the recurrence."""
    pair = initial_pair(a)
    best = pair.marked * pair.marked
    limit = 4 * a + 4  # peak sits near 0.79*a; generous safety margin
    for i in range(1, limit):
        nxt = recurrence_step(pair)
        p = nxt.marked * nxt.marked
        if p < best:
            return max(1, pair.iteration)
        best, pair = p, nxt
    raise RuntimeError(f"no probability peak within {limit} rounds for side {a}")


def _success_at(a: int, iterations: int) -> float:
    pair = initial_pair(a)
    for _ in range(iterations):
        pair = recurrence_step(pair)
    return float(pair.marked * pair.marked)


def probability_lower_bound(a: int) -> float:
    """Closed-form floor under the success probability at the exact-mode count.

    Only a true bound from side 4 upward (at side 2 the expression exceeds 1
    while the actual success probability is exactly 1 after one round).
    """
    if a < 2:
        raise ValueError("side must be at least 2")
    return (0.9194 + 0.0567 / a + 0.2302 / a**2 - 0.0336 / a**3) ** 2


def plan_iterations(side: int, mode: PlanMode = PlanMode.EXACT) -> IterationPlan:
    """Choose an iteration count for a single-marked instance of width ``side``.

    The predicted success probability is the recurrence value at the chosen
    count; the lower bound is the closed-form guarantee, independent of mode.
    """
    if side < 2 or side & (side - 1):
        raise ValueError(f"side must be a power of two >= 2, got {side}")
    if mode is PlanMode.EXACT:
        iterations = _scan_exact(side)
        root = closed_form_iterations(side)
        if abs(root.imag) > RADICAL_IMAG_TOL:
            warnings.warn(
                f"radical root check at side {side} kept imaginary part {root.imag:.3g}",
                stacklevel=2,
            )
        elif math.ceil(root.real) != iterations:
            warnings.warn(
                f"radical root check at side {side}: ceil({root.real!r}) != scan {iterations}",
                stacklevel=2,
            )
    elif mode is PlanMode.FIT:
        iterations = max(1, math.floor(0.7962 * side - 0.6057 + 0.5))
    else:
        iterations = _scan_optimal(side)
    return IterationPlan(
        side=side,
        mode=mode,
        iterations=iterations,
        predicted_success=_success_at(side, iterations),
        lower_bound=probability_lower_bound(side),
    )


def plan_csv(plans: Iterable[IterationPlan]) -> str:
    """Serialize plans as CSV: a, mode, iterations, predicted_success, lower_bound."""
    lines = ["a,mode,iterations,predicted_success,lower_bound"]
    for p in plans:
        lines.append(
            f"{p.side},{p.mode.value},{p.iterations},{p.predicted_success!r},{p.lower_bound!r}"
        )
    return "\n".join(lines) + "\n"
