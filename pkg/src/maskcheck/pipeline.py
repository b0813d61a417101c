"""k-stage masked NTT pipelines: per-stage randomness and state recursion.

One pipeline models a single butterfly lane (one coefficient pair pushed
through k stages).  Each stage consumes three fresh values: bf_mask (the
butterfly output mask) plus remask_a / remask_b (inter-stage refresh of
the a- and b-path sharings).  The state recursion is

    stage 0:    butterfly(stages[0], initial shares, bf_mask[0])
    stage n+1:  repack the four stage-n wires as the share quad
                ((wire0, wire1), (wire2, wire3)), refresh it with
                (remask_a[n], remask_b[n]), then apply
                butterfly(stages[n+1], ., bf_mask[n+1])

so remask values of stage n are consumed between stages n and n+1.  The
repacking is forced by mask-correctness: wire0 + wire1 = a' and
wire2 + wire3 = b', hence (wire0, wire1) and (wire2, wire3) are valid
sharings of the next stage's inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Sequence

from .gadget import ButterflyStage, ButterflyWires, ShareQuad, butterfly_output, remask
from .report import DEFAULT_MAX_EXHAUSTIVE, CheckReport, Stopwatch, Verdict
from .zq import Modulus, ZqElement, _same_modulus, as_modulus

__all__ = [
    "StageRandomness",
    "PipelineRandomness",
    "NttPipeline",
    "PipelineInput",
    "RANDOMNESS_FIELDS",
    "initial_shares",
    "repack_wires",
    "pipeline_state_at",
    "update_randomness",
    "check_update_future_invariance",
    "sample_randomness",
]

# Field update order is part of the documented enumeration order for
# witnesses, so keep this tuple stable.
RANDOMNESS_FIELDS = ("bf_mask", "remask_a", "remask_b")


@dataclass(frozen=True)
class StageRandomness:
    """Fresh values consumed by one stage."""

    bf_mask: ZqElement
    remask_a: ZqElement
    remask_b: ZqElement

    def __post_init__(self) -> None:
        _same_modulus(self.bf_mask, self.remask_a, self.remask_b)

    @classmethod
    def of_ints(cls, q: "Modulus | int", bf_mask: int, remask_a: int, remask_b: int) -> "StageRandomness":
        mod = as_modulus(q)
        return cls(mod.element(bf_mask), mod.element(remask_a), mod.element(remask_b))

    def as_ints(self) -> tuple[int, int, int]:
        return (self.bf_mask.value, self.remask_a.value, self.remask_b.value)


@dataclass(frozen=True)
class PipelineRandomness:
    """The k-vector of per-stage randomness (q^(3k) possible values)."""

    per_stage: tuple[StageRandomness, ...]

    def __len__(self) -> int:
        return len(self.per_stage)

    def __getitem__(self, i: int) -> StageRandomness:
        return self.per_stage[i]

    def __iter__(self) -> Iterator[StageRandomness]:
        return iter(self.per_stage)

    def update(self, j: int, field_name: str, new_value: ZqElement) -> "PipelineRandomness":
        if not 0 <= j < len(self.per_stage):
            raise IndexError(f"stage index {j} out of range for k={len(self.per_stage)}")
        if field_name not in RANDOMNESS_FIELDS:
            raise ValueError(f"unknown randomness field {field_name!r}")
        updated = replace(self.per_stage[j], **{field_name: new_value})
        stages = self.per_stage[:j] + (updated,) + self.per_stage[j + 1 :]
        return PipelineRandomness(stages)

    def as_ints(self) -> list[tuple[int, int, int]]:
        return [s.as_ints() for s in self.per_stage]

    @classmethod
    def zeros(cls, q: "Modulus | int", k: int) -> "PipelineRandomness":
        mod = as_modulus(q)
        return cls(tuple(StageRandomness.of_ints(mod, 0, 0, 0) for _ in range(k)))

    @classmethod
    def of_ints(cls, q: "Modulus | int", triples: Sequence[tuple[int, int, int]]) -> "PipelineRandomness":
        mod = as_modulus(q)
        return cls(tuple(StageRandomness.of_ints(mod, *t) for t in triples))


@dataclass(frozen=True)
class NttPipeline:
    """An ordered sequence of butterfly stages over one modulus."""

    q: Modulus
    stages: tuple[ButterflyStage, ...]

    def __post_init__(self) -> None:
        for s in self.stages:
            if s.modulus != self.q:
                raise ValueError(f"stage twiddle modulus {s.modulus} != pipeline modulus {self.q}")

    @property
    def k(self) -> int:
        return len(self.stages)

    def twiddle_ints(self) -> list[int]:
        return [s.tw.value for s in self.stages]

    @classmethod
    def from_twiddles(cls, q: "Modulus | int", twiddles: Sequence[int]) -> "NttPipeline":
        mod = as_modulus(q)
        return cls(mod, tuple(ButterflyStage.of_int(mod, t) for t in twiddles))


@dataclass(frozen=True)
class PipelineInput:
    """Secrets (a, b) and the initial input masks (a1, b1)."""

    a: ZqElement
    b: ZqElement
    a1: ZqElement
    b1: ZqElement

    def __post_init__(self) -> None:
        _same_modulus(self.a, self.b, self.a1, self.b1)

    @classmethod
    def of_ints(cls, q: "Modulus | int", a: int, b: int, a1: int = 0, b1: int = 0) -> "PipelineInput":
        mod = as_modulus(q)
        return cls(mod.element(a), mod.element(b), mod.element(a1), mod.element(b1))

    def as_ints(self) -> tuple[int, int, int, int]:
        return (self.a.value, self.b.value, self.a1.value, self.b1.value)


def initial_shares(inp: PipelineInput) -> ShareQuad:
    """The stage-0 share quad (a - a1, a1, b - b1, b1)."""
    return ShareQuad(inp.a - inp.a1, inp.a1, inp.b - inp.b1, inp.b1)


def repack_wires(wires: ButterflyWires) -> ShareQuad:
    """Reinterpret stage-n output wires as the next stage's share quad."""
    return ShareQuad(wires.wire0, wires.wire1, wires.wire2, wires.wire3)


def pipeline_state_at(
    p: NttPipeline,
    rands: PipelineRandomness,
    i: int,
    inp: PipelineInput,
) -> ButterflyWires:
    """The four output wires after stage i (0-based), for fixed randomness."""
    if not 0 <= i < p.k:
        raise IndexError(f"stage index {i} out of range for k={p.k}")
    if len(rands) != p.k:
        raise ValueError(f"randomness length {len(rands)} != pipeline depth {p.k}")
    wires = butterfly_output(p.stages[0], initial_shares(inp), rands[0].bf_mask)
    for n in range(i):
        quad = remask(repack_wires(wires), rands[n].remask_a, rands[n].remask_b)
        wires = butterfly_output(p.stages[n + 1], quad, rands[n + 1].bf_mask)
    return wires


def update_randomness(
    rands: PipelineRandomness, j: int, field_name: str, new_value: ZqElement
) -> PipelineRandomness:
    """Copy of rands with one field at stage j replaced."""
    return rands.update(j, field_name, new_value)


def sample_randomness(q: "Modulus | int", k: int, rng: random.Random) -> PipelineRandomness:
    mod = as_modulus(q)
    return PipelineRandomness.of_ints(
        mod,
        [tuple(rng.randrange(mod.q) for _ in range(3)) for _ in range(k)],  # type: ignore[misc]
    )


def check_update_future_invariance(
    p: NttPipeline,
    rands: PipelineRandomness,
    i: int,
    j: int,
    inp: PipelineInput,
    *,
    max_exhaustive: int = DEFAULT_MAX_EXHAUSTIVE,
    samples: int = 1000,
    seed: int | None = None,
    state_fn: Callable[[NttPipeline, PipelineRandomness, int, PipelineInput], ButterflyWires] = pipeline_state_at,
) -> CheckReport:
    """Verify the state at stage i ignores randomness changes at stage j > i.

    Enumerates every field of stage j's randomness and every replacement
    value in Z_q (exhaustive when q fits the budget, sampled otherwise)
    and compares the full four-wire state at stage i bit for bit.  The
    state function is injectable so the checker itself can be validated
    against deliberately broken recursions.
    """
    if not 0 <= i < j < p.k:
        raise IndexError(f"need 0 <= i < j < k, got i={i}, j={j}, k={p.k}")
    q = p.q.q
    exhaustive = q <= max_exhaustive
    if exhaustive:
        values = range(q)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        values = [rng.randrange(q) for _ in range(samples)]  # type: ignore[assignment]
        mode = "sampled"

    with Stopwatch() as sw:
        baseline = state_fn(p, rands, i, inp).values()
        checked = 0
        witness = None
        for field_name in RANDOMNESS_FIELDS:
            for v in values:
                mutated = rands.update(j, field_name, p.q.element(v))
                got = state_fn(p, mutated, i, inp).values()
                checked += 1
                if got != baseline:
                    wire = next(w for w in range(4) if got[w] != baseline[w])
                    witness = {
                        "i": i,
                        "j": j,
                        "field": field_name,
                        "new_value": v,
                        "wire": wire,
                        "value_before": baseline[wire],
                        "value_after": got[wire],
                    }
                    break
            if witness is not None:
                break

    if witness is not None:
        verdict = Verdict.FAIL
    elif exhaustive:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.INCONCLUSIVE_PASS
    return CheckReport(
        property_name="future-randomness-invariance",
        verdict=verdict,
        mode=mode,
        contexts_checked=checked,
        witness=witness,
        seed=None if exhaustive else seed,
        elapsed=sw.elapsed,
        q=q,
        k=p.k,
        twiddles=p.twiddle_ints(),
    )
