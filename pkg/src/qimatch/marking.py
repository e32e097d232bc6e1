"""Structured simulation of the compare-and-mark stage.

The entangled register over both images is stored sparsely: one branch per
(big position, small position) pair, each branch tracking the two intensity
registers, the two position registers, and the marking flag.  The comparison
step XORs the small intensity into the big intensity register (a ladder of
CNOTs, one per bit plane); the marking step raises the flag on branches whose
difference register is all-zero while the small position register is zero.
The phase-kickback ancilla is untouched by both steps and is therefore not
materialized here; it only matters once amplification flips signs, which the
:mod:`qimatch.grover` engine realizes directly.

Amplitudes are real throughout: every state reachable by this circuit family
from a real initial state stays real.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .images import GqirImage, MatchDims, ValidationError


class Stage(enum.Enum):
    PREPARED = "prepared"
    COMPARED = "compared"
    MARKED = "marked"


class StageError(RuntimeError):
    """Operation applied to a state in the wrong pipeline stage."""


@dataclass(frozen=True)
class Branch:
    """One basis branch: flag, both intensity registers, both positions."""

    flag: int
    val_a: int
    pos_a: int
    val_b: int
    pos_b: int
    amplitude: float


@dataclass(frozen=True)
class JointState:
    """Sparse joint state: exactly 4**n * 4**m branches in (pos_a, pos_b) order."""

    dims: MatchDims
    flag: np.ndarray
    val_a: np.ndarray
    pos_a: np.ndarray
    val_b: np.ndarray
    pos_b: np.ndarray
    amplitude: np.ndarray
    stage: Stage

    @property
    def branch_count(self) -> int:
        return len(self.amplitude)

    def norm_squared(self) -> float:
        return float(np.sum(self.amplitude * self.amplitude))

    def branches(self) -> Iterator[Branch]:
        for i in range(self.branch_count):
            yield Branch(
                int(self.flag[i]),
                int(self.val_a[i]),
                int(self.pos_a[i]),
                int(self.val_b[i]),
                int(self.pos_b[i]),
                float(self.amplitude[i]),
            )

    def branch(self, pos_a: int, pos_b: int) -> Branch:
        i = pos_a * (1 << (2 * self.dims.m)) + pos_b
        return Branch(
            int(self.flag[i]),
            int(self.val_a[i]),
            int(self.pos_a[i]),
            int(self.val_b[i]),
            int(self.pos_b[i]),
            float(self.amplitude[i]),
        )


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def prepare_initial(big: GqirImage, small: GqirImage) -> JointState:
    """Build the uniform product state over every (pos_a, pos_b) pair.

    Each of the 4**n * 4**m branches starts with flag 0 and amplitude
    1/2**(n+m).
    """
    if big.side_log2 <= small.side_log2:
        raise ValidationError("big image side must exceed small image side")
    if big.bit_depth != small.bit_depth:
        raise ValidationError("images must share a bit depth after widening")
    n, m = big.side_log2, small.side_log2
    dims = MatchDims(n=n, m=m, bit_depth=big.bit_depth, side=big.side)
    na, nb = 1 << (2 * n), 1 << (2 * m)
    pos_a = np.repeat(np.arange(na, dtype=np.int64), nb)
    pos_b = np.tile(np.arange(nb, dtype=np.int64), na)
    val_a = np.repeat(np.asarray(big.values, dtype=np.int64), nb)
    val_b = np.tile(np.asarray(small.values, dtype=np.int64), na)
    amplitude = np.full(na * nb, 1.0 / (1 << (n + m)))
    flag = np.zeros(na * nb, dtype=np.int64)
    return JointState(
        dims=dims,
        flag=_frozen(flag),
        val_a=_frozen(val_a),
        pos_a=_frozen(pos_a),
        val_b=_frozen(val_b),
        pos_b=_frozen(pos_b),
        amplitude=_frozen(amplitude),
        stage=Stage.PREPARED,
    )


def apply_comparison(state: JointState) -> JointState:
    """XOR the small intensity into the big intensity register, bitwise.

    Equivalent to one CNOT per bit plane; matching pixels leave an all-zero
    difference register.  Amplitudes are untouched.
    """
    if state.stage is not Stage.PREPARED:
        raise StageError(f"comparison expects a prepared state, got {state.stage.value}")
    return JointState(
        dims=state.dims,
        flag=state.flag,
        val_a=_frozen(state.val_a ^ state.val_b),
        pos_a=state.pos_a,
        val_b=state.val_b,
        pos_b=state.pos_b,
        amplitude=state.amplitude,
        stage=Stage.COMPARED,
    )


def apply_marking(state: JointState) -> JointState:
    """Raise the flag on branches with zero difference and small position zero.

    This is the multi-controlled NOT over the difference register and the
    small position register; only the flag field changes.
    """
    if state.stage is not Stage.COMPARED:
        raise StageError(f"marking expects a compared state, got {state.stage.value}")
    flag = np.where((state.val_a == 0) & (state.pos_b == 0), 1, state.flag)
    return JointState(
        dims=state.dims,
        flag=_frozen(flag.astype(np.int64)),
        val_a=state.val_a,
        pos_a=state.pos_a,
        val_b=state.val_b,
        pos_b=state.pos_b,
        amplitude=state.amplitude,
        stage=Stage.MARKED,
    )


def marked_set(state: JointState) -> set[int]:
    """Big-image position indices carrying a raised flag.

    By construction this equals { k : A[k] == B[0] }: the marking predicate
    compares each big pixel against the small image's top-left pixel only.
    """
    if state.stage is not Stage.MARKED:
        raise StageError(f"marked_set expects a marked state, got {state.stage.value}")
    return set(int(k) for k in np.unique(state.pos_a[state.flag == 1]))


def dump_branches(state: JointState) -> str:
    """Debug dump: one line per branch, "flag val_a pos_a val_b pos_b amplitude".

    Lines appear in (pos_a, pos_b) lexicographic order, which is the storage
    order.
    """
    lines = []
    for b in state.branches():
        lines.append(f"{b.flag} {b.val_a} {b.pos_a} {b.val_b} {b.pos_b} {b.amplitude!r}")
    return "\n".join(lines) + "\n"
