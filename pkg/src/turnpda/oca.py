"""Small DSL for writing one-counter automata by hand.

A counter move is described by an operation (``keep``, ``inc``, ``dec``)
and a guard on the counter (``any``, ``zero``, ``pos``); each description
expands into the corresponding PDA transitions over the stack alphabet
``{A, Z0}``.  Acceptance pops ``Z0`` with an epsilon move, which is only
possible once the counter is back to zero.
"""
from __future__ import annotations

from typing import Iterable

from .core import EPSILON, Pda, Transition, pda_from_transitions

A = "A"
Z0 = "Z0"
ACCEPT = "accept"

_GUARDS = {"any": (A, Z0), "zero": (Z0,), "pos": (A,)}


class OcaBuilder:
    def __init__(self, initial: str, alphabet: Iterable[str] = ()):
        self.initial = initial
        self.alphabet = set(alphabet)
        self.transitions: list[Transition] = []
        self.stack = {A, Z0}

    def add(self, src: str, read: str | Iterable[str], dst: str, op: str = "keep", when: str = "any") -> None:
        symbols = [read] if isinstance(read, str) else list(read)
        for symbol in symbols:
            for top in _GUARDS[when]:
                if op == "keep":
                    push = (top,)
                elif op == "inc":
                    push = (A, top)
                elif op == "dec":
                    if top == Z0:
                        continue
                    push = ()
                else:
                    raise ValueError(f"unknown counter operation {op!r}")
                self.transitions.append(Transition(src, symbol, top, dst, push))

    def eps(self, src: str, dst: str, op: str = "keep", when: str = "any") -> None:
        self.add(src, EPSILON, dst, op, when)

    def accept(self, src: str) -> None:
        self.transitions.append(Transition(src, EPSILON, Z0, ACCEPT, ()))

    def loop(self, state: str, symbols: Iterable[str]) -> None:
        self.add(state, symbols, state)

    def embed(self, pda: Pda, prefix: str) -> str:
        """Copy ``pda`` with renamed states; returns its renamed initial state.

        The embedded machine starts from the current stack, whose bottom is
        identified with its own bottom symbol (the counter must be zero).
        """
        def state(q: str) -> str:
            return f"{prefix}:{q}"

        def sym(s: str) -> str:
            if s == pda.bottom_symbol:
                return Z0
            if s == A and pda.stack_alphabet == {A, pda.bottom_symbol}:
                return A
            return f"{prefix}:{s}"

        for t in pda.transitions:
            self.transitions.append(Transition(state(t.source), t.read, sym(t.top), state(t.target), tuple(map(sym, t.push))))
        self.stack.update(map(sym, pda.stack_alphabet))
        self.alphabet.update(pda.input_alphabet)
        return state(pda.initial_state)

    def build(self) -> Pda:
        return pda_from_transitions(self.transitions, self.initial, Z0, self.alphabet, extra_stack=self.stack)


DIGITS = ("0", "1")
LETTERS = ("a", "b")


def add_listbin_violation(b: OcaBuilder, p: str) -> tuple[str, str]:
    """Recognize well-formed lists ``x_1$...x_m$`` that are not ``bin(1)$...bin(m)$``.

    Returns ``(entry, tail)``.  ``entry`` expects the first digit with the
    counter at zero; ``tail`` is reached after some ``$`` once a violation is
    certain, again with the counter at zero, and keeps reading whole blocks.
    Violations guessed: first block is not ``1``; a block starts with ``0``;
    consecutive blocks have the wrong length; or some bit of a block differs
    from the bit of its predecessor's successor at the same distance from
    the right end.  Each check uses at most one turn.
    """
    entry, scan, scan_in = f"{p}:first", f"{p}:scan", f"{p}:scan_in"
    tail, tail_in = f"{p}:tail", f"{p}:tail_in"
    b.add(tail, DIGITS, tail_in)
    b.add(tail_in, DIGITS, tail_in)
    b.add(tail_in, "$", tail)

    # first block differs from "1"
    b.add(entry, "1", f"{p}:one")
    b.add(entry, "0", f"{p}:bad1")
    b.add(f"{p}:one", DIGITS, f"{p}:bad1")
    b.add(f"{p}:bad1", DIGITS, f"{p}:bad1")
    b.add(f"{p}:bad1", "$", tail)

    b.add(scan_in, DIGITS, scan_in)
    b.add(scan_in, "$", scan)
    for start in (entry, scan):
        b.add(start, DIGITS, scan_in)
        # leading zero
        b.add(start, "0", tail_in)
        # length of the next block: push |x_j| (+1 when x_j is all ones)
        b.add(start, "1", f"{p}:len_ones", "inc")
        b.add(start, "0", f"{p}:len_mixed", "inc")
        # bit check: skip a prefix of x_j, then guess a position
        b.add(start, DIGITS, f"{p}:bit_pre")
        for bit in DIGITS:
            b.add(start, bit, f"{p}:bit{bit}_ones")

    b.add(f"{p}:len_ones", "1", f"{p}:len_ones", "inc")
    b.add(f"{p}:len_ones", "0", f"{p}:len_mixed", "inc")
    b.add(f"{p}:len_mixed", DIGITS, f"{p}:len_mixed", "inc")
    b.add(f"{p}:len_ones", "$", f"{p}:len_next", "inc")
    b.add(f"{p}:len_mixed", "$", f"{p}:len_next")
    b.add(f"{p}:len_next", DIGITS, f"{p}:len_cmp", "dec", "pos")
    b.add(f"{p}:len_cmp", DIGITS, f"{p}:len_cmp", "dec", "pos")
    b.add(f"{p}:len_cmp", DIGITS, tail_in, when="zero")  # next block too long
    b.add(f"{p}:len_cmp", "$", f"{p}:drain", when="pos")  # next block too short
    b.eps(f"{p}:drain", f"{p}:drain", "dec", "pos")
    b.eps(f"{p}:drain", tail, when="zero")

    b.add(f"{p}:bit_pre", DIGITS, f"{p}:bit_pre")
    for bit in DIGITS:
        b.add(f"{p}:bit_pre", bit, f"{p}:bit{bit}_ones")
        # bits right of the guessed one: count them, remember whether all are 1
        ones, mixed = f"{p}:bit{bit}_ones", f"{p}:bit{bit}_mixed"
        b.add(ones, "1", ones, "inc")
        b.add(ones, "0", mixed, "inc")
        b.add(mixed, DIGITS, mixed, "inc")
        flipped = "1" if bit == "0" else "0"
        b.add(ones, "$", f"{p}:expect{flipped}")
        b.add(mixed, "$", f"{p}:expect{bit}")
    for expected in DIGITS:
        state = f"{p}:expect{expected}"
        b.add(state, DIGITS, state)
        other = "1" if expected == "0" else "0"
        b.add(state, other, f"{p}:bit_cmp")
    b.add(f"{p}:bit_cmp", DIGITS, f"{p}:bit_cmp", "dec", "pos")
    b.add(f"{p}:bit_cmp", "$", tail, when="zero")
    return entry, tail
