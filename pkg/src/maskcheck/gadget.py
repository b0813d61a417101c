"""Arithmetic sharing and the masked Cooley-Tukey butterfly.

A secret s is split into two shares (s0, s1) with s0 + s1 = s (mod q).
A butterfly stage with public twiddle tw turns inputs (a, b) into
a' = a + tw*b and b' = a - tw*b.  With a fresh output mask m the four
observable output wires are

    wire0 = a' - m        wire1 = m
    wire2 = b' - m        wire3 = m

Each wire is affine in m: either the bijection m -> c - m (wires 0, 2)
or the identity (wires 1, 3).  Wires 1 and 3 are kept as two distinct,
always-equal fields: the shared mask is exactly the structural weakness
that surfaces under second-order probing, and the four-wire indexing
stays literal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .zq import Modulus, ZqElement, _same_modulus

__all__ = [
    "ShareQuad",
    "ButterflyStage",
    "ButterflyWires",
    "share",
    "reconstruct",
    "butterfly_output",
    "select_wire",
    "remask",
    "WIRE_INDICES",
]

# Valid output-wire indices; select_wire validates against this range.
WIRE_INDICES = (0, 1, 2, 3)


@dataclass(frozen=True)
class ShareQuad:
    """Pipeline state: two 2-share sharings, a = a0 + a1 and b = b0 + b1."""

    a0: ZqElement
    a1: ZqElement
    b0: ZqElement
    b1: ZqElement

    def __post_init__(self) -> None:
        _same_modulus(self.a0, self.a1, self.b0, self.b1)

    @property
    def modulus(self) -> Modulus:
        return self.a0.modulus

    def secret_a(self) -> ZqElement:
        return self.a0 + self.a1

    def secret_b(self) -> ZqElement:
        return self.b0 + self.b1

    @classmethod
    def of_ints(cls, q: "Modulus | int", a0: int, a1: int, b0: int, b1: int) -> "ShareQuad":
        mod = q if isinstance(q, Modulus) else Modulus(q)
        return cls(mod.element(a0), mod.element(a1), mod.element(b0), mod.element(b1))


@dataclass(frozen=True)
class ButterflyStage:
    """One pipeline stage's public twiddle factor."""

    tw: ZqElement

    @property
    def modulus(self) -> Modulus:
        return self.tw.modulus

    @classmethod
    def of_int(cls, q: "Modulus | int", tw: int) -> "ButterflyStage":
        mod = q if isinstance(q, Modulus) else Modulus(q)
        return cls(mod.element(tw))


@dataclass(frozen=True)
class ButterflyWires:
    """The four output wires of one masked butterfly."""

    wire0: ZqElement
    wire1: ZqElement
    wire2: ZqElement
    wire3: ZqElement

    def as_tuple(self) -> tuple[ZqElement, ZqElement, ZqElement, ZqElement]:
        return (self.wire0, self.wire1, self.wire2, self.wire3)

    def values(self) -> tuple[int, int, int, int]:
        return (self.wire0.value, self.wire1.value, self.wire2.value, self.wire3.value)


def share(secret: ZqElement, mask: ZqElement) -> tuple[ZqElement, ZqElement]:
    """Split secret into (secret - mask, mask); the sum reconstructs it.

    Deterministic given the mask: callers inject randomness, so exhaustive
    checkers keep total control of the enumeration domain.
    """
    _same_modulus(secret, mask)
    return (secret - mask, mask)


def reconstruct(s0: ZqElement, s1: ZqElement) -> ZqElement:
    """s0 + s1 mod q."""
    _same_modulus(s0, s1)
    return s0 + s1


def butterfly_output(stage: ButterflyStage, shares: ShareQuad, m: ZqElement) -> ButterflyWires:
    """Evaluate one masked butterfly on reconstructed inputs.

    The model is the algebraic wire-value model: inputs are reconstructed
    internally and the four wires are computed from the unmasked butterfly
    outputs a' and b' plus the fresh output mask m.
    """
    _same_modulus(stage.tw, shares.a0, m)
    a = shares.secret_a()
    b = shares.secret_b()
    t = stage.tw * b
    a_out = a + t
    b_out = a - t
    return ButterflyWires(a_out - m, m, b_out - m, m)


def select_wire(i: int, wires: ButterflyWires) -> ZqElement:
    """The i-th output wire, i in {0, 1, 2, 3}."""
    if i not in WIRE_INDICES:
        raise ValueError(f"wire index must be in {WIRE_INDICES}, got {i}")
    return wires.as_tuple()[i]


def remask(state: ShareQuad, r_a: ZqElement, r_b: ZqElement) -> ShareQuad:
    """Refresh both sharings: (a0 - rA, a1 + rA, b0 - rB, b1 + rB).

    The share sums are unchanged: (a0 - rA) + (a1 + rA) = a0 + a1.
    """
    _same_modulus(state.a0, r_a, r_b)
    return ShareQuad(state.a0 - r_a, state.a1 + r_a, state.b0 - r_b, state.b1 + r_b)
