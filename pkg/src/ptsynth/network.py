"""Majority-gate logic networks: representation, bit-parallel evaluation,
incremental re-evaluation, cleanup, and scoring.

Networks are topologically sorted lists of 3-input majority gates.  Each
operand is packed into one integer code ``source_id << 1 | inverted`` where
source ids enumerate constant 0, constant 1, the n primary inputs, then the
gates in list order.  All per-source output columns over the 2^n input
vectors live in single Python integers, so one bitwise expression evaluates
a gate on every input at once.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .truthtable import TruthTable

CONST = "const"
INPUT = "input"
GATE = "gate"

# source ids 0 and 1 are the constants; primary inputs start here
PI_BASE = 2


@dataclass(frozen=True)
class Literal:
    """One gate operand: a constant, primary input, or earlier gate output."""

    kind: str
    index: int
    inverted: bool = False

    def __post_init__(self) -> None:
        if self.kind not in (CONST, INPUT, GATE):
            raise ValueError(f"unknown literal kind {self.kind!r}")
        if self.index < 0:
            raise ValueError("literal index must be non-negative")
        if self.kind == CONST:
            if self.index not in (0, 1):
                raise ValueError("constant literal index must be 0 or 1")
            if self.inverted:
                # an inverted constant is just the other constant
                object.__setattr__(self, "index", 1 - self.index)
                object.__setattr__(self, "inverted", False)

    def __str__(self) -> str:
        prefix = "~" if self.inverted else ""
        if self.kind == CONST:
            return str(self.index)
        if self.kind == INPUT:
            return f"{prefix}x{self.index}"
        return f"{prefix}g{self.index}"


CONST0 = Literal(CONST, 0)
CONST1 = Literal(CONST, 1)


@dataclass(frozen=True)
class Gate:
    """Three-input majority gate over literals."""

    inputs: tuple[Literal, Literal, Literal]

    def __post_init__(self) -> None:
        if len(self.inputs) != 3:
            raise ValueError("a majority gate takes exactly 3 inputs")
        object.__setattr__(self, "inputs", tuple(self.inputs))


@dataclass(frozen=True)
class NetworkConstraints:
    """Structural search constraints: node budget, gate set, leafiness."""

    max_nodes: int
    inverters_allowed: bool = True
    leafy: bool = False

    def __post_init__(self) -> None:
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")


def encode_literal(lit: Literal, n: int) -> int:
    if lit.kind == CONST:
        return lit.index << 1
    if lit.kind == INPUT:
        if lit.index >= n:
            raise ValueError(f"input index {lit.index} out of range for n={n}")
        return (PI_BASE + lit.index) << 1 | lit.inverted
    return (PI_BASE + n + lit.index) << 1 | lit.inverted


def decode_literal(code: int, n: int) -> Literal:
    sid, inv = code >> 1, bool(code & 1)
    if sid < PI_BASE:
        return Literal(CONST, sid, inv)
    if sid < PI_BASE + n:
        return Literal(INPUT, sid - PI_BASE, inv)
    return Literal(GATE, sid - PI_BASE - n, inv)


class LogicNetwork:
    """Mutable gate list with a designated output literal.

    ``codes`` holds one ``[a, b, c]`` operand-code triple per gate; the
    output is usually the last gate but may be any literal (a cleaned
    network can collapse to a plain wire).
    """

    __slots__ = ("n", "constraints", "codes", "output_code")

    def __init__(self, n: int, constraints: NetworkConstraints,
                 codes: list[list[int]] | None = None,
                 output_code: int | None = None) -> None:
        if not 1 <= n <= 20:
            raise ValueError(f"input count must be in 1..20, got {n}")
        self.n = n
        self.constraints = constraints
        self.codes = codes if codes is not None else []
        if output_code is None:
            if not self.codes:
                raise ValueError("a network without gates needs an explicit output")
            output_code = (PI_BASE + n + len(self.codes) - 1) << 1
        self.output_code = output_code

    @classmethod
    def from_gates(cls, n: int, gates: list[Gate],
                   constraints: NetworkConstraints | None = None,
                   output: Literal | None = None) -> "LogicNetwork":
        if constraints is None:
            constraints = NetworkConstraints(max_nodes=max(1, len(gates)))
        codes = [[encode_literal(lit, n) for lit in g.inputs] for g in gates]
        out = None if output is None else encode_literal(output, n)
        return cls(n, constraints, codes, out)

    @property
    def num_gates(self) -> int:
        return len(self.codes)

    @property
    def gates(self) -> list[Gate]:
        n = self.n
        return [Gate(tuple(decode_literal(c, n) for c in row)) for row in self.codes]

    @property
    def output(self) -> Literal:
        return decode_literal(self.output_code, self.n)

    def gate_literals(self, g: int) -> tuple[Literal, Literal, Literal]:
        return tuple(decode_literal(c, self.n) for c in self.codes[g])

    def set_literal(self, g: int, slot: int, lit: Literal) -> None:
        self.codes[g][slot] = encode_literal(lit, self.n)

    def copy(self) -> "LogicNetwork":
        return LogicNetwork(self.n, self.constraints,
                            [row[:] for row in self.codes], self.output_code)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogicNetwork):
            return NotImplemented
        return (self.n == other.n and self.constraints == other.constraints
                and self.codes == other.codes and self.output_code == other.output_code)

    def __repr__(self) -> str:
        return f"<LogicNetwork n={self.n} gates={self.num_gates} output={self.output}>"


def is_valid(net: LogicNetwork) -> tuple[bool, str | None]:
    """Check every structural invariant; returns (ok, first violation)."""
    n, cons = net.n, net.constraints
    base = PI_BASE + n
    if net.num_gates > cons.max_nodes:
        return False, f"{net.num_gates} gates exceed the budget of {cons.max_nodes}"
    for g, row in enumerate(net.codes):
        if len(row) != 3:
            return False, f"gate g{g} has {len(row)} operands"
        sources = [c >> 1 for c in row]
        for c, sid in zip(row, sources):
            if sid >= base + g:
                return False, f"gate g{g} references a non-earlier source {decode_literal(c, n)}"
            if (c & 1) and not cons.inverters_allowed:
                return False, f"gate g{g} uses inverted operand {decode_literal(c, n)} without inverters"
            if (c & 1) and sid < PI_BASE:
                return False, f"gate g{g} carries an inverted constant"
        if len(set(sources)) != 3:
            return False, f"gate g{g} repeats an operand source"
        if cons.leafy and not any(PI_BASE <= s < base for s in sources):
            return False, f"gate g{g} has no primary input operand (leafy)"
    out = net.output_code
    if out >> 1 >= base + net.num_gates:
        return False, "output references a missing gate"
    if (out & 1) and not cons.inverters_allowed:
        return False, "output is inverted without inverters"
    return True, None


def random_gate_codes(n: int, g: int, constraints: NetworkConstraints,
                      rng: random.Random) -> list[int]:
    """Draw one gate's operand codes uniformly over the valid choices at position g."""
    total = PI_BASE + n + g
    while True:
        sources = rng.sample(range(total), 3)
        if not constraints.leafy or any(PI_BASE <= s < PI_BASE + n for s in sources):
            break
    if constraints.inverters_allowed:
        return [s << 1 | (rng.getrandbits(1) if s >= PI_BASE else 0) for s in sources]
    return [s << 1 for s in sources]


def random_network(n: int, constraints: NetworkConstraints,
                   rng: random.Random) -> LogicNetwork:
    """Fresh network with exactly max_nodes random valid gates."""
    codes = [random_gate_codes(n, g, constraints, rng)
             for g in range(constraints.max_nodes)]
    return LogicNetwork(n, constraints, codes)


def input_column(i: int, n: int) -> int:
    """Bit-parallel pattern of primary input i over all 2^n input vectors."""
    col = ((1 << (1 << i)) - 1) << (1 << i)
    width = 2 << i
    size = 1 << n
    while width < size:
        col |= col << width
        width <<= 1
    return col


class EvalCache:
    """Output columns for every source of a network, plus the current error.

    ``cols[sid]`` is the 2^n-bit column of source ``sid``; ``error`` is the
    Hamming distance between the output column and the target, and ``score``
    the combined search score (error, or cleaned-gate-count minus budget
    when the error is zero).
    """

    __slots__ = ("cols", "mask", "target_bits", "out_col", "error", "score")

    def __init__(self, cols: list[int], mask: int, target: TruthTable) -> None:
        self.cols = cols
        self.mask = mask
        self.target_bits = target.bits
        self.out_col = 0
        self.error = 0
        self.score = 0

    def output_column(self, net: LogicNetwork) -> int:
        out = net.output_code
        col = self.cols[out >> 1]
        return col ^ self.mask if out & 1 else col

    def literal_column(self, code: int) -> int:
        col = self.cols[code >> 1]
        return col ^ self.mask if code & 1 else col


def _gate_column(cols: list[int], mask: int, row: list[int]) -> int:
    ca, cb, cc = row
    a = cols[ca >> 1] ^ (mask if ca & 1 else 0)
    b = cols[cb >> 1] ^ (mask if cb & 1 else 0)
    c = cols[cc >> 1] ^ (mask if cc & 1 else 0)
    return (a & (b | c)) | (b & c)


def evaluate_full(net: LogicNetwork, target: TruthTable) -> EvalCache:
    """Evaluate every gate on all inputs and score the network from scratch."""
    if target.n != net.n:
        raise ValueError(f"target has n={target.n}, network has n={net.n}")
    n = net.n
    mask = (1 << (1 << n)) - 1
    cols = [0, mask] + [input_column(i, n) for i in range(n)]
    cache = EvalCache(cols, mask, target)
    for row in net.codes:
        cols.append(_gate_column(cols, mask, row))
    cache.out_col = cache.output_column(net)
    cache.error = (cache.out_col ^ target.bits).bit_count()
    cache.score = cache.error if cache.error else cleaned_gate_count(net) - net.constraints.max_nodes
    return cache


def recompute_from(net: LogicNetwork, cache: EvalCache, changed_gate: int,
                   undo: list | None = None) -> int:
    """Refresh the cache after a single-gate edit; returns the new error.

    Only the changed gate and the part of its fanout whose columns actually
    change are recomputed.  When ``undo`` is given, every overwritten
    ``(source_id, old_column)`` pair is appended to it, oldest first.
    """
    codes = net.codes
    p = len(codes)
    if not 0 <= changed_gate < p:
        raise ValueError(f"gate index {changed_gate} out of range")
    cols, mask = cache.cols, cache.mask
    base = PI_BASE + net.n
    sid = base + changed_gate
    new = _gate_column(cols, mask, codes[changed_gate])
    if new != cols[sid]:
        if undo is not None:
            undo.append((sid, cols[sid]))
        cols[sid] = new
        dirty = {sid}
        for h in range(changed_gate + 1, p):
            row = codes[h]
            if row[0] >> 1 in dirty or row[1] >> 1 in dirty or row[2] >> 1 in dirty:
                hid = base + h
                col = _gate_column(cols, mask, row)
                if col != cols[hid]:
                    if undo is not None:
                        undo.append((hid, cols[hid]))
                    cols[hid] = col
                    dirty.add(hid)
    cache.out_col = cache.output_column(net)
    cache.error = (cache.out_col ^ cache.target_bits).bit_count()
    return cache.error


def energy(cache: EvalCache) -> int:
    """Number of input vectors where the network disagrees with the target."""
    return cache.error


def weighted_energy(cache: EvalCache, weights) -> float:
    """Sum of weights over the mismatching input vectors."""
    size = cache.mask.bit_length()
    if len(weights) != size:
        raise ValueError(f"need {size} weights, got {len(weights)}")
    mismatch = (cache.out_col ^ cache.target_bits) & cache.mask
    total = 0.0
    while mismatch:
        low = mismatch & -mismatch
        total += weights[low.bit_length() - 1]
        mismatch ^= low
    return total


def _invert_code(code: int) -> int:
    # inverted constants normalize to the opposite constant
    return code ^ 2 if code < 4 else code ^ 1


def _reduce_codes(n: int, codes: list[list[int]], output_code: int):
    """Shared cleanup core: trivial-gate and duplicate elimination to fixpoint.

    Returns (lits, alive, resolved_output) where ``lits`` holds fully
    substituted operand codes for surviving gates.  Substitutions live in a
    path-compressed table indexed by operand code.
    """
    base = PI_BASE + n
    p = len(codes)
    table = list(range((base + p) << 1))
    lits = [row[:] for row in codes]
    alive = [True] * p

    def chase(code: int) -> int:
        trail = []
        step = table[code]
        while step != code:
            trail.append(code)
            code, step = step, table[step]
        for entry in trail:
            table[entry] = code
        return code

    changed = True
    while changed:
        changed = False
        seen: dict[int, int] = {}
        for g in range(p):
            if not alive[g]:
                continue
            row = lits[g]
            a = row[0]
            if table[a] != a:
                a = chase(a)
            b = row[1]
            if table[b] != b:
                b = chase(b)
            c = row[2]
            if table[c] != c:
                c = chase(c)
            row[0], row[1], row[2] = a, b, c
            if a == b or a == c:
                red = a
            elif b == c:
                red = b
            elif a >> 1 == b >> 1:
                red = c
            elif a >> 1 == c >> 1:
                red = b
            elif b >> 1 == c >> 1:
                red = a
            # two distinct constants pass the third operand through
            elif a < 4 and b < 4:
                red = c
            elif a < 4 and c < 4:
                red = b
            elif b < 4 and c < 4:
                red = a
            else:
                # irreducible: merge gates computing the same function
                if a > b:
                    a, b = b, a
                if b > c:
                    b, c = c, b
                if a > b:
                    a, b = b, a
                key = (a << 32) | (b << 16) | c
                other = seen.get(key)
                if other is None:
                    seen[key] = g
                    continue
                red = (base + other) << 1
            sid = (base + g) << 1
            table[sid] = red
            table[sid | 1] = _invert_code(red)
            alive[g] = False
            changed = True
    out = chase(output_code)
    return lits, alive, out


def _reachable_gates(n: int, lits, alive, out: int) -> list[int]:
    base = PI_BASE + n
    reachable: set[int] = set()
    stack = [out >> 1]
    while stack:
        sid = stack.pop()
        g = sid - base
        if g >= 0 and g not in reachable:
            reachable.add(g)
            assert alive[g]
            row = lits[g]
            stack.append(row[0] >> 1)
            stack.append(row[1] >> 1)
            stack.append(row[2] >> 1)
    return sorted(reachable)


def cleaned_gate_count(net: LogicNetwork) -> int:
    """Gate count after cleanup, without materializing the cleaned network."""
    lits, alive, out = _reduce_codes(net.n, net.codes, net.output_code)
    return len(_reachable_gates(net.n, lits, alive, out))


def cleanup(net: LogicNetwork) -> tuple[LogicNetwork, int]:
    """Simplify to fixpoint: constant/trivial propagation, duplicate-gate
    merging, dead-gate removal.  Returns (simplified network, gate count).

    The input network is not modified; the simplified network computes a
    bit-identical output column.
    """
    n = net.n
    base = PI_BASE + n
    lits, alive, out = _reduce_codes(n, net.codes, net.output_code)
    order = _reachable_gates(n, lits, alive, out)
    renumber = {base + g: base + i for i, g in enumerate(order)}

    def remap(code: int) -> int:
        sid = code >> 1
        return renumber[sid] << 1 | (code & 1) if sid in renumber else code

    new_codes = [[remap(x) for x in lits[g]] for g in order]
    new_out = remap(out)
    simplified = LogicNetwork(n, net.constraints, new_codes, new_out)
    return simplified, len(new_codes)


def combined_score(net: LogicNetwork, cache: EvalCache) -> int:
    """Search score: the error when nonzero, else cleaned size minus budget.

    Exact networks always score <= 0, strictly below every inexact one.
    """
    if cache.error:
        return cache.error
    return cleaned_gate_count(net) - net.constraints.max_nodes
