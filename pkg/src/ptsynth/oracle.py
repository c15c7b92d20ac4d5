"""Deliberately simple per-input network evaluator.

This module exists to cross-check the bit-parallel cache in the test suite.
It walks the decoded gate structure one input vector at a time and shares no
evaluation code with :mod:`ptsynth.network`.
"""

from __future__ import annotations

from .network import CONST, INPUT, LogicNetwork
from .truthtable import TruthTable


def eval_single(net: LogicNetwork, x) -> int:
    """Evaluate the network on one input vector (a sequence of n bits)."""
    if len(x) != net.n:
        raise ValueError(f"expected {net.n} input bits, got {len(x)}")
    values = []
    for gate in net.gates:
        ones = 0
        for lit in gate.inputs:
            if lit.kind == CONST:
                v = lit.index
            elif lit.kind == INPUT:
                v = x[lit.index]
            else:
                v = values[lit.index]
            if lit.inverted:
                v = 1 - v
            ones += v
        values.append(1 if ones >= 2 else 0)
    out = net.output
    if out.kind == CONST:
        v = out.index
    elif out.kind == INPUT:
        v = x[out.index]
    else:
        v = values[out.index]
    return 1 - v if out.inverted else v


def eval_column(net: LogicNetwork) -> list[int]:
    """Network value on every input vector, in index order."""
    return [eval_single(net, [(v >> i) & 1 for i in range(net.n)])
            for v in range(1 << net.n)]


def exhaustive_error(net: LogicNetwork, tt: TruthTable) -> int:
    """Count the input vectors where the network disagrees with the table."""
    if tt.n != net.n:
        raise ValueError(f"table has n={tt.n}, network has n={net.n}")
    mismatches = 0
    for v, value in enumerate(eval_column(net)):
        if value != tt.value(v):
            mismatches += 1
    return mismatches
