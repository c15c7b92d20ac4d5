"""Search moves: propose, apply, and exactly revert single-network updates.

Three update types are supported: reassigning one gate operand, swapping
operands between two gates, and redrawing all three operands of a gate.
Every proposal is constructed so that the mutated network stays valid, and
applying then reverting restores network and cache bit-exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .network import (
    PI_BASE,
    EvalCache,
    LogicNetwork,
    cleaned_gate_count,
    random_gate_codes,
    recompute_from,
)

REASSIGN_ONE = "reassign-one"
SWAP_BETWEEN = "swap-between-gates"
REASSIGN_ALL = "reassign-all"


@dataclass
class MoveProposal:
    """One pending update plus everything needed to undo it."""

    kind: str
    gate: int
    slot: int = 0
    gate2: int | None = None
    slot2: int | None = None
    new_codes: tuple[int, ...] = ()
    old_codes: tuple[int, ...] = ()
    undo_cols: list = field(default_factory=list)
    old_error: int = 0
    old_score: int = 0


def replacement_pool(net: LogicNetwork, gate: int, slot: int) -> list[int]:
    """Legal replacement codes for a slot, before excluding its current literal.

    The pool keeps operand sources pairwise distinct, references only earlier
    sources, and is restricted to primary inputs when the other two slots
    would otherwise leave a leafy gate without one.
    """
    row = net.codes[gate]
    o1 = row[slot - 2] >> 1
    o2 = row[slot - 1] >> 1
    n = net.n
    cons = net.constraints
    if cons.leafy and not (PI_BASE <= o1 < PI_BASE + n or PI_BASE <= o2 < PI_BASE + n):
        lo, hi = PI_BASE, PI_BASE + n
    else:
        lo, hi = 0, PI_BASE + n + gate
    pool = []
    inverters = cons.inverters_allowed
    for s in range(lo, hi):
        if s == o1 or s == o2:
            continue
        pool.append(s << 1)
        if inverters and s >= PI_BASE:
            pool.append(s << 1 | 1)
    return pool


def propose_reassign_one(net: LogicNetwork, rng: random.Random,
                         gate: int | None = None, slot: int | None = None,
                         pool: list[int] | None = None) -> MoveProposal | None:
    """Replace one operand with a different literal drawn uniformly from the
    legal pool.  Returns None when the chosen slot admits no replacement."""
    tries = 16 if gate is None or slot is None else 1
    for _ in range(tries):
        g = rng.randrange(len(net.codes)) if gate is None else gate
        s = rng.randrange(3) if slot is None else slot
        codes = pool if pool is not None else replacement_pool(net, g, s)
        cur = net.codes[g][s]
        # the current literal is always in the pool, so len-1 real choices
        if len(codes) < 2:
            continue
        while True:
            new = codes[rng.randrange(len(codes))]
            if new != cur:
                break
        return MoveProposal(REASSIGN_ONE, g, s, new_codes=(new,), old_codes=(cur,))
    return None


def _slot_accepts(net: LogicNetwork, gate: int, slot: int, code: int) -> bool:
    sid = code >> 1
    n = net.n
    if sid >= PI_BASE + n + gate:
        return False
    row = net.codes[gate]
    o1 = row[slot - 2] >> 1
    o2 = row[slot - 1] >> 1
    if sid == o1 or sid == o2:
        return False
    if net.constraints.leafy and not any(
            PI_BASE <= s < PI_BASE + n for s in (sid, o1, o2)):
        return False
    return True


def propose_swap_between_gates(net: LogicNetwork, rng: random.Random,
                               gate: int | None = None, slot: int | None = None,
                               max_tries: int = 16) -> MoveProposal | None:
    """Exchange two operands of two different gates, if both stay valid."""
    p = len(net.codes)
    if p < 2:
        return None
    for _ in range(max_tries):
        g1 = rng.randrange(p) if gate is None else gate
        s1 = rng.randrange(3) if slot is None else slot
        g2 = rng.randrange(p - 1)
        if g2 >= g1:
            g2 += 1
        s2 = rng.randrange(3)
        l1 = net.codes[g1][s1]
        l2 = net.codes[g2][s2]
        if l1 == l2:
            continue
        if _slot_accepts(net, g1, s1, l2) and _slot_accepts(net, g2, s2, l1):
            return MoveProposal(SWAP_BETWEEN, g1, s1, gate2=g2, slot2=s2,
                                new_codes=(l2, l1), old_codes=(l1, l2))
    return None


def propose_reassign_all(net: LogicNetwork, rng: random.Random,
                         gate: int | None = None) -> MoveProposal:
    """Redraw all three operands of one gate as in network initialization."""
    g = rng.randrange(len(net.codes)) if gate is None else gate
    new = random_gate_codes(net.n, g, net.constraints, rng)
    return MoveProposal(REASSIGN_ALL, g, new_codes=tuple(new),
                        old_codes=tuple(net.codes[g]))


def apply_proposal(net: LogicNetwork, cache: EvalCache,
                   proposal: MoveProposal) -> int:
    """Mutate the network, refresh the cache incrementally, and return the
    combined-score delta."""
    proposal.old_error = cache.error
    proposal.old_score = cache.score
    undo = proposal.undo_cols
    undo.clear()
    if proposal.kind == REASSIGN_ONE:
        net.codes[proposal.gate][proposal.slot] = proposal.new_codes[0]
        recompute_from(net, cache, proposal.gate, undo)
    elif proposal.kind == SWAP_BETWEEN:
        net.codes[proposal.gate][proposal.slot] = proposal.new_codes[0]
        net.codes[proposal.gate2][proposal.slot2] = proposal.new_codes[1]
        first, second = sorted((proposal.gate, proposal.gate2))
        recompute_from(net, cache, first, undo)
        recompute_from(net, cache, second, undo)
    elif proposal.kind == REASSIGN_ALL:
        net.codes[proposal.gate][:] = proposal.new_codes
        recompute_from(net, cache, proposal.gate, undo)
    else:
        raise ValueError(f"unknown move kind {proposal.kind!r}")
    if cache.error:
        cache.score = cache.error
    else:
        cache.score = cleaned_gate_count(net) - net.constraints.max_nodes
    return cache.score - proposal.old_score


def revert_proposal(net: LogicNetwork, cache: EvalCache,
                    proposal: MoveProposal) -> None:
    """Undo an applied proposal, restoring network and cache bit-exactly."""
    if proposal.kind == REASSIGN_ONE:
        net.codes[proposal.gate][proposal.slot] = proposal.old_codes[0]
    elif proposal.kind == SWAP_BETWEEN:
        net.codes[proposal.gate][proposal.slot] = proposal.old_codes[0]
        net.codes[proposal.gate2][proposal.slot2] = proposal.old_codes[1]
    else:
        net.codes[proposal.gate][:] = proposal.old_codes
    cols = cache.cols
    for sid, col in reversed(proposal.undo_cols):
        cols[sid] = col
    cache.out_col = cache.literal_column(net.output_code)
    cache.error = proposal.old_error
    cache.score = proposal.old_score
