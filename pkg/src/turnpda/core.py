"""Pushdown automata accepting by empty stack, their moves and traces.

Stacks are tuples written top first: ``("A", "Z0")`` has ``A`` on top.
States and symbols are plain strings; symbol names may span several
characters, so words are handled as tuples of symbols.  A Python ``str``
passed as a word is split into single characters.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DuplicateState,
    InconsistentTrace,
    MalformedDocument,
    UndeclaredSymbol,
)

EPSILON = ""

Word = tuple[str, ...]


def as_word(w: str | Sequence[str]) -> Word:
    return tuple(w)


def word_text(w: Sequence[str]) -> str:
    """Render a word: plain concatenation when every symbol is one character."""
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class Transition:
    source: str
    read: str
    top: str
    target: str
    push: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "push", tuple(self.push))

    @property
    def height_delta(self) -> int:
        return len(self.push) - 1

    def __str__(self) -> str:
        read = self.read or "ε"
        push = " ".join(self.push) or "ε"
        return f"{self.source} --{read},{self.top}/{push}--> {self.target}"


@dataclass(frozen=True)
class Pda:
    """Nondeterministic PDA; acceptance is always by empty stack."""

    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    initial_state: str
    bottom_symbol: str
    transitions: tuple[Transition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "stack_alphabet", frozenset(self.stack_alphabet))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if EPSILON in self.input_alphabet:
            raise MalformedDocument("the empty string cannot be an input symbol")
        if self.initial_state not in self.states:
            raise UndeclaredSymbol(f"initial state {self.initial_state!r} not declared")
        if self.bottom_symbol not in self.stack_alphabet:
            raise UndeclaredSymbol(f"bottom symbol {self.bottom_symbol!r} not declared")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise UndeclaredSymbol(f"unknown state in {t}")
            if t.read != EPSILON and t.read not in self.input_alphabet:
                raise UndeclaredSymbol(f"unknown input symbol in {t}")
            if t.top not in self.stack_alphabet:
                raise UndeclaredSymbol(f"unknown stack symbol in {t}")
            for s in t.push:
                if s not in self.stack_alphabet:
                    raise UndeclaredSymbol(f"unknown stack symbol {s!r} in {t}")

    @cached_property
    def _index(self) -> dict[tuple[str, str], tuple[list[Transition], dict[str, list[Transition]]]]:
        index: dict = {}
        for t in self.transitions:
            eps, by_sym = index.setdefault((t.source, t.top), ([], {}))
            if t.read == EPSILON:
                eps.append(t)
            else:
                by_sym.setdefault(t.read, []).append(t)
        return index

    def moves(self, state: str, top: str, symbol: str | None) -> list[Transition]:
        """Transitions applicable in ``state`` with ``top`` on the stack.

        ``symbol`` is the next input symbol or None at the end of the input.
        Epsilon moves come first.
        """
        entry = self._index.get((state, top))
        if entry is None:
            return []
        eps, by_sym = entry
        if symbol is None:
            return eps
        reading = by_sym.get(symbol)
        if not reading:
            return eps
        return eps + reading

    def __len__(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class Configuration:
    state: str
    pos: int
    stack: tuple[str, ...]

    @property
    def height(self) -> int:
        return len(self.stack)


@dataclass(frozen=True)
class Trace:
    input: Word
    steps: tuple[tuple[Configuration, Transition], ...]
    final: Configuration

    @property
    def configurations(self) -> list[Configuration]:
        return [c for c, _ in self.steps] + [self.final]

    @property
    def heights(self) -> list[int]:
        return [c.height for c in self.configurations]

    @property
    def accepting(self) -> bool:
        return not self.final.stack and self.final.pos == len(self.input)


def apply(cfg: Configuration, t: Transition) -> Configuration:
    pos = cfg.pos + (1 if t.read != EPSILON else 0)
    return Configuration(t.target, pos, t.push + cfg.stack[1:])


def step(pda: Pda, w: str | Sequence[str], cfg: Configuration) -> list[tuple[Configuration, Transition]]:
    """All one-move successors of ``cfg`` on input ``w``."""
    w = as_word(w)
    if not cfg.stack:
        return []
    symbol = w[cfg.pos] if cfg.pos < len(w) else None
    return [(apply(cfg, t), t) for t in pda.moves(cfg.state, cfg.stack[0], symbol)]


def initial_configuration(pda: Pda) -> Configuration:
    return Configuration(pda.initial_state, 0, (pda.bottom_symbol,))


# Running phase of the stack height profile.
FLAT, UP, DOWN = 0, 1, 2
PHASE_NAMES = ("flat", "up", "down")


def phase_step(phase: int, delta: int) -> tuple[int, int]:
    """Return (new phase, turn cost) for a move changing the height by ``delta``."""
    if delta > 0:
        return UP, 0
    if delta < 0:
        return DOWN, (1 if phase == UP else 0)
    return phase, 0


def check_trace(pda: Pda | None, trace: Trace) -> None:
    """Raise InconsistentTrace unless consecutive configurations match their moves."""
    configs = trace.configurations
    for (cfg, t), nxt in zip(trace.steps, configs[1:]):
        if not cfg.stack or cfg.stack[0] != t.top or cfg.state != t.source:
            raise InconsistentTrace(f"{t} does not apply to {cfg}")
        if t.read != EPSILON:
            if cfg.pos >= len(trace.input) or trace.input[cfg.pos] != t.read:
                raise InconsistentTrace(f"{t} reads a symbol not at position {cfg.pos}")
        if apply(cfg, t) != nxt:
            raise InconsistentTrace(f"{t} from {cfg} does not lead to {nxt}")
        if pda is not None and t not in pda.transitions:
            raise InconsistentTrace(f"{t} is not a transition of the automaton")


def trace_turns(trace: Trace) -> int:
    check_trace(None, trace)
    phase, turns = FLAT, 0
    heights = trace.heights
    for before, after in zip(heights, heights[1:]):
        phase, cost = phase_step(phase, after - before)
        turns += cost
    return turns


def is_oca(pda: Pda, counter: str = "A") -> bool:
    bottom = pda.bottom_symbol
    if pda.stack_alphabet != {counter, bottom} or counter == bottom:
        return False
    for t in pda.transitions:
        if t.top == counter:
            if any(s != counter for s in t.push):
                return False
        elif t.push:
            if t.push[-1] != bottom or any(s != counter for s in t.push[:-1]):
                return False
    return True


def pda_from_transitions(
    transitions: Iterable[Transition],
    initial_state: str,
    bottom_symbol: str,
    input_alphabet: Iterable[str] = (),
    extra_states: Iterable[str] = (),
    extra_stack: Iterable[str] = (),
) -> Pda:
    """Build a Pda, deriving the declared sets from the transitions."""
    transitions = list(dict.fromkeys(transitions))
    states = {initial_state, *extra_states}
    sigma = set(input_alphabet)
    gamma = {bottom_symbol, *extra_stack}
    for t in transitions:
        states.update((t.source, t.target))
        if t.read:
            sigma.add(t.read)
        gamma.add(t.top)
        gamma.update(t.push)
    return Pda(frozenset(states), frozenset(sigma), frozenset(gamma), initial_state, bottom_symbol, tuple(transitions))


# ---------------------------------------------------------------- interchange

_KEYS = ("states", "input_alphabet", "stack_alphabet", "initial_state", "bottom_symbol", "transitions")


def _string_list(doc: dict, key: str) -> list[str]:
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise MalformedDocument(f"{key!r} must be an array of strings")
    return value


def parse_automaton(text: bytes | str) -> Pda:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument("document must be a JSON object")
    missing = [k for k in _KEYS if k not in doc]
    if missing:
        raise MalformedDocument(f"missing keys: {', '.join(missing)}")
    states = _string_list(doc, "states")
    if len(set(states)) != len(states):
        dupes = sorted({s for s in states if states.count(s) > 1})
        raise DuplicateState(f"duplicate states: {', '.join(dupes)}")
    sigma = _string_list(doc, "input_alphabet")
    gamma = _string_list(doc, "stack_alphabet")
    for key in ("initial_state", "bottom_symbol"):
        if not isinstance(doc[key], str):
            raise MalformedDocument(f"{key!r} must be a string")
    if not isinstance(doc["transitions"], list):
        raise MalformedDocument("'transitions' must be an array")
    transitions = []
    for item in doc["transitions"]:
        if not isinstance(item, dict):
            raise MalformedDocument("each transition must be an object")
        try:
            source, read, top, target, push = (item[k] for k in ("from", "read", "top", "to", "push"))
        except KeyError as exc:
            raise MalformedDocument(f"transition missing key {exc}") from exc
        if not all(isinstance(x, str) for x in (source, read, top, target)):
            raise MalformedDocument("transition fields from/read/top/to must be strings")
        if not isinstance(push, list) or not all(isinstance(x, str) for x in push):
            raise MalformedDocument("transition 'push' must be an array of strings")
        transitions.append(Transition(source, read, top, target, tuple(push)))
    return Pda(frozenset(states), frozenset(sigma), frozenset(gamma), doc["initial_state"], doc["bottom_symbol"], tuple(transitions))


def automaton_document(pda: Pda) -> dict:
    return {
        "states": sorted(pda.states),
        "input_alphabet": sorted(pda.input_alphabet),
        "stack_alphabet": sorted(pda.stack_alphabet),
        "initial_state": pda.initial_state,
        "bottom_symbol": pda.bottom_symbol,
        "transitions": [
            {"from": t.source, "read": t.read, "top": t.top, "to": t.target, "push": list(t.push)}
            for t in pda.transitions
        ],
    }


def serialize_automaton(pda: Pda) -> bytes:
    return (json.dumps(automaton_document(pda), indent=1, ensure_ascii=False) + "\n").encode("utf-8")
