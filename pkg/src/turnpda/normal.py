"""Turn-preserving normal form: no move ever replaces the top of the stack.

The simulated top symbol lives in the finite control: state ``[q,A]`` means
"original state q with A on top".  The real stack holds the remaining
symbols above a fresh bottom marker, so both machines have equal stack
heights at every step and therefore equal turn counts.
"""
from __future__ import annotations

from .core import Pda, Transition, pda_from_transitions


def fresh_symbol(base: str, taken: set[str] | frozenset[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def pair_state(state: str, top: str) -> str:
    return f"[{state},{top}]"


def normalize(pda: Pda) -> Pda:
    """Normal form with fresh bottom ``⊥``; only pairs reachable from ``[q0,Z0]`` are built."""
    bottom = fresh_symbol("⊥", pda.stack_alphabet)
    under = sorted(pda.stack_alphabet) + [bottom]
    by_pair: dict[tuple[str, str], list[Transition]] = {}
    for t in pda.transitions:
        by_pair.setdefault((t.source, t.top), []).append(t)

    names: dict[tuple[str, str], str] = {}

    def name(q: str, a: str) -> str:
        if (q, a) not in names:
            candidate = pair_state(q, a)
            while candidate in names.values():
                candidate += "'"
            names[(q, a)] = candidate
        return names[(q, a)]

    out = []
    start = (pda.initial_state, pda.bottom_symbol)
    seen = {start}
    todo = [start]
    while todo:
        q, a = todo.pop()
        src = name(q, a)
        for t in by_pair.get((q, a), ()):
            for c in under:
                if t.push:
                    nxt = (t.target, t.push[0])
                    out.append(Transition(src, t.read, c, name(*nxt), t.push[1:] + (c,)))
                else:
                    nxt = (t.target, c)
                    out.append(Transition(src, t.read, c, name(*nxt), ()))
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    for pair in seen:
        name(*pair)
    return pda_from_transitions(
        out, name(*start), bottom, pda.input_alphabet,
        extra_states=names.values(), extra_stack=pda.stack_alphabet,
    )


def check_normal(pda: Pda) -> bool:
    return all(t.push[-1] == t.top for t in pda.transitions if t.push)
