"""Single-tape Turing machines, computation encodings and the OCAs built from them.

A configuration is the token sequence ``u q v``: the state token sits
immediately left of the scanned cell and the tape is blank past the end of
``v``.  Successors are written without blank padding, so every halting run
has exactly one encoding ``α_1$α_2$...α_m$``.  A left move at the leftmost
cell leaves the head where it is.

States and tape symbols are mapped to tokens that avoid ``$``, ``a`` and
``b``, which the encodings reserve.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import groupby
from typing import Iterable, Sequence

from .core import EPSILON, Pda, Transition, as_word, pda_from_transitions
from .decision import Dfa, dfa_from_table, pda_regular_product
from .errors import MalformedDocument, NonHaltingWithinCap, UndeclaredSymbol
from .languages import decide_eq
from .oca import LETTERS, OcaBuilder

DELIM = "$"
RESERVED = frozenset({DELIM, *LETTERS})


@dataclass(frozen=True)
class TuringMachine:
    states: frozenset[str]
    tape_alphabet: frozenset[str]
    blank: str
    initial_state: str
    transitions: dict  # (state, read) -> (target, write, "L" | "R")

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "tape_alphabet", frozenset(self.tape_alphabet) | {self.blank})
        if self.initial_state not in self.states:
            raise UndeclaredSymbol(f"initial state {self.initial_state!r} not declared")
        if self.states & self.tape_alphabet:
            raise MalformedDocument("states and tape symbols must be distinct")
        for (q, s), (p, c, d) in self.transitions.items():
            if q not in self.states or p not in self.states:
                raise UndeclaredSymbol(f"unknown state in transition from {q!r}")
            if s not in self.tape_alphabet or c not in self.tape_alphabet:
                raise UndeclaredSymbol(f"unknown tape symbol in transition from {q!r}")
            if d not in ("L", "R"):
                raise MalformedDocument(f"move must be L or R, got {d!r}")

    # ---- tokens
    @cached_property
    def token_of(self) -> dict[str, str]:
        """Collision-free token for every state and tape symbol."""
        taken = set(RESERVED)
        out = {}
        for name in sorted(self.states) + sorted(self.tape_alphabet):
            tok = name
            while tok in taken or tok == EPSILON:
                tok += "'"
            taken.add(tok)
            out[name] = tok
        return out

    @cached_property
    def state_tokens(self) -> tuple[str, ...]:
        return tuple(sorted(self.token_of[q] for q in self.states))

    @cached_property
    def tape_tokens(self) -> tuple[str, ...]:
        return tuple(sorted(self.token_of[s] for s in self.tape_alphabet))

    @cached_property
    def tokens(self) -> tuple[str, ...]:
        return self.state_tokens + self.tape_tokens

    @cached_property
    def _delta(self) -> dict[tuple[str, str], tuple[str, str, str]]:
        t = self.token_of
        return {(t[q], t[s]): (t[p], t[c], d) for (q, s), (p, c, d) in self.transitions.items()}

    def move(self, state_tok: str, symbol_tok: str | None) -> tuple[str, str, str] | None:
        """Transition on tokens; ``None`` as symbol means the blank."""
        if symbol_tok is None:
            symbol_tok = self.token_of[self.blank]
        return self._delta.get((state_tok, symbol_tok))

    def initial_block(self, w: Sequence[str] = ()) -> tuple[str, ...]:
        return (self.token_of[self.initial_state],) + tuple(self.token_of[s] for s in w)


def parse_tm(text: bytes | str) -> TuringMachine:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument("document must be a JSON object")
    for key in ("states", "tape_alphabet", "blank", "initial_state", "transitions"):
        if key not in doc:
            raise MalformedDocument(f"missing key {key!r}")
    if len(set(doc["states"])) != len(doc["states"]):
        raise MalformedDocument("duplicate states")
    delta = {}
    for item in doc["transitions"]:
        try:
            key = (item["state"], item["read"])
            value = (item["to"], item["write"], item["move"])
        except (KeyError, TypeError) as exc:
            raise MalformedDocument(f"bad transition {item!r}") from exc
        if key in delta:
            raise MalformedDocument(f"machine is not deterministic at {key}")
        delta[key] = value
    return TuringMachine(frozenset(doc["states"]), frozenset(doc["tape_alphabet"]), doc["blank"],
                         doc["initial_state"], delta)


def tm_document(tm: TuringMachine) -> dict:
    return {
        "states": sorted(tm.states),
        "tape_alphabet": sorted(tm.tape_alphabet),
        "blank": tm.blank,
        "initial_state": tm.initial_state,
        "transitions": [
            {"state": q, "read": s, "to": p, "write": c, "move": d}
            for (q, s), (p, c, d) in sorted(tm.transitions.items())
        ],
    }


# ------------------------------------------------------------ computations

def successor(tm: TuringMachine, alpha: Sequence[str]) -> tuple[str, ...] | None:
    """Next configuration of a well-formed block, or None if it is halting."""
    alpha = tuple(alpha)
    states = set(tm.state_tokens)
    h = next(i for i, x in enumerate(alpha) if x in states)
    scanned = alpha[h + 1] if h + 1 < len(alpha) else None
    mv = tm.move(alpha[h], scanned)
    if mv is None:
        return None
    p, c, d = mv
    if d == "R":
        return alpha[:h] + (c, p) + alpha[h + 2:]
    if h > 0:
        return alpha[:h - 1] + (p, alpha[h - 1], c) + alpha[h + 2:]
    return (p, c) + alpha[2:]


def split_blocks(y: Sequence[str]) -> list[tuple[str, ...]] | None:
    y = tuple(y)
    if not y or y[-1] != DELIM:
        return None
    blocks, cur = [], []
    for x in y:
        if x == DELIM:
            blocks.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    return blocks


def tm_run(tm: TuringMachine, w: Sequence[str] = (), step_cap: int = 10_000) -> tuple[str, ...]:
    """Token encoding of the halting computation on ``w``."""
    alpha = tm.initial_block(w)
    out = list(alpha) + [DELIM]
    for _ in range(step_cap):
        alpha = successor(tm, alpha)
        if alpha is None:
            return tuple(out)
        out += list(alpha) + [DELIM]
    raise NonHaltingWithinCap(f"no halt within {step_cap} steps")


def decide_valid(tm: TuringMachine, w: Sequence[str], y: str | Sequence[str]) -> bool:
    blocks = split_blocks(as_word(y))
    if not blocks:
        return False
    states, tape = set(tm.state_tokens), set(tm.tape_tokens)
    for block in blocks:
        if sum(x in states for x in block) != 1 or any(x not in states | tape for x in block):
            return False
    if blocks[0] != tm.initial_block(w):
        return False
    for cur, nxt in zip(blocks, blocks[1:]):
        if successor(tm, cur) != nxt:
            return False
    return successor(tm, blocks[-1]) is None


def expected_symbol(tm: TuringMachine, prev: str | None, x0: str | None,
                    x1: str | None, x2: str | None) -> str | None:
    """Symbol at the same position in the next configuration, from a local window.

    ``x0`` is the symbol at the position, ``prev`` the one before it and
    ``x1``/``x2`` the two after it; None marks the outside of the block.
    Returns None when the window gives no constraint (halting, or past the end).
    """
    states = set(tm.state_tokens)
    if x0 in states:
        mv = tm.move(x0, x1)
        if mv is None:
            return None
        p, c, d = mv
        if d == "R":
            return c
        return prev if prev is not None else p
    if x1 in states:
        mv = tm.move(x1, x2)
        if mv is None:
            return None
        return x0 if mv[2] == "R" else mv[0]
    if prev in states:
        mv = tm.move(prev, x0)
        if mv is None:
            return None
        p, c, d = mv
        return p if d == "R" else c
    return x0


# --------------------------------------------------------------- builders

def _idx(tokens: Sequence[str]) -> dict:
    out = {None: "-"}
    out.update({t: str(i) for i, t in enumerate(tokens)})
    return out


def build_invalid_oca(tm: TuringMachine, w: Sequence[str] = ()) -> Pda:
    """OCA for the complement of the valid computations of ``tm`` on ``w``; at most one turn."""
    toks = tm.tokens
    q_toks, g_toks = tm.state_tokens, tm.tape_tokens
    every = toks + (DELIM,)
    ix = _idx(toks)
    b = OcaBuilder("start", every)
    b.loop("tail", every)
    b.accept("tail")

    # every block in Γ*QΓ*, m >= 1
    b.eps("start", "s:A")
    b.add("s:A", g_toks, "s:A")
    b.add("s:A", q_toks, "s:B")
    b.add("s:A", DELIM, "s:D")
    b.add("s:B", g_toks, "s:B")
    b.add("s:B", q_toks, "s:D")
    b.add("s:B", DELIM, "s:C")
    b.add("s:C", g_toks, "s:A")
    b.add("s:C", q_toks, "s:B")
    b.add("s:C", DELIM, "s:D")
    b.loop("s:D", every)
    for q in ("s:A", "s:B", "s:D"):
        b.accept(q)

    # first block differs from the initial configuration
    init = tm.initial_block(w)
    b.eps("start", "i:0")
    for i, tok in enumerate(init):
        b.add(f"i:{i}", tok, f"i:{i + 1}")
        b.add(f"i:{i}", [t for t in toks if t != tok], "i:bad")
        b.add(f"i:{i}", DELIM, "tail")
    b.add(f"i:{len(init)}", toks, "i:bad")
    b.add("i:bad", toks, "i:bad")
    b.add("i:bad", DELIM, "tail")

    # block scanner; the remaining checks start at some block boundary
    b.eps("start", "k:s")
    b.add("k:s", toks, "k:in")
    b.add("k:in", toks, "k:in")
    b.add("k:in", DELIM, "k:s")

    # last block not halting, or a halting block that is not last
    b.eps("k:s", "h:pre")
    b.add("h:pre", g_toks, "h:pre")
    for q in q_toks:
        b.add("h:pre", q, f"h:q{ix[q]}")
        b.add(f"h:q{ix[q]}", DELIM, "h:halt" if tm.move(q, None) is None else "h:live")
        for s in g_toks:
            b.add(f"h:q{ix[q]}", s, "h:hin" if tm.move(q, s) is None else "h:lin")
    b.add("h:hin", g_toks, "h:hin")
    b.add("h:hin", DELIM, "h:halt")
    b.add("h:lin", g_toks, "h:lin")
    b.add("h:lin", DELIM, "h:live")
    b.accept("h:live")
    b.add("h:halt", toks, "tail")

    # next block has the wrong length (one longer iff the state is last)
    b.eps("k:s", "l:s")
    for src in ("l:s", "l:q", "l:g"):
        b.add(src, q_toks, "l:q", "inc")
        b.add(src, g_toks, "l:g", "inc")
    b.add("l:q", DELIM, "l:cmp", "inc")
    b.add("l:g", DELIM, "l:cmp")
    b.add("l:cmp", toks, "l:cmp", "dec", "pos")
    b.add("l:cmp", toks, "tail", when="zero")
    b.add("l:cmp", DELIM, "l:drain", when="pos")
    b.eps("l:drain", "l:drain", "dec", "pos")
    b.eps("l:drain", "tail", when="zero")

    # some position of the next block differs from the successor's symbol
    def cmp_state(e: str) -> str:
        return f"w:cmp{ix[e]}"

    b.eps("k:s", "w:pre-")
    for prev in (None,) + toks:
        pre = f"w:pre{ix[prev]}"
        e = expected_symbol(tm, prev, None, None, None)
        if e is not None:
            b.add(pre, DELIM, cmp_state(e))
        for x0 in toks:
            b.add(pre, x0, f"w:pre{ix[x0]}", "inc")
            s0 = f"w:{ix[prev]}.{ix[x0]}"
            b.add(pre, x0, s0)
            e = expected_symbol(tm, prev, x0, None, None)
            if e is not None:
                b.add(s0, DELIM, cmp_state(e))
            for x1 in toks:
                s1 = f"{s0}.{ix[x1]}"
                b.add(s0, x1, s1)
                e = expected_symbol(tm, prev, x0, x1, None)
                if e is not None:
                    b.add(s1, DELIM, cmp_state(e))
                for x2 in toks:
                    e = expected_symbol(tm, prev, x0, x1, x2)
                    if e is not None:
                        b.add(s1, x2, f"w:skip{ix[e]}")
    for e in toks:
        skip, cmp = f"w:skip{ix[e]}", cmp_state(e)
        b.add(skip, toks, skip)
        b.add(skip, DELIM, cmp)
        b.add(cmp, toks, cmp, "dec", "pos")
        b.add(cmp, [t for t in toks if t != e], "tail", when="zero")
    return b.build()


def replace_delimiter(pda: Pda, delim: str = DELIM, letters: Iterable[str] = LETTERS) -> Pda:
    """Read every maximal block over ``letters`` where ``pda`` reads one ``delim``.

    A move on ``delim`` into state t becomes a move on a letter into a copy
    of t that keeps reading letters; the copy also has t's moves on other
    symbols, and its epsilon moves lead to further copies, so a block of
    letters always stands for exactly one delimiter.
    """
    letters = tuple(letters)
    by_state: dict[str, list[Transition]] = {}
    for t in pda.transitions:
        by_state.setdefault(t.source, []).append(t)
    taken = set(pda.states)
    mids: dict[str, str] = {}
    todo = []

    def mid(q: str) -> str:
        if q not in mids:
            name = f"{q}~{delim}"
            while name in taken:
                name += "'"
            taken.add(name)
            mids[q] = name
            todo.append(q)
        return mids[q]

    out = []
    for t in pda.transitions:
        if t.read == delim:
            for x in letters:
                out.append(Transition(t.source, x, t.top, mid(t.target), t.push))
        else:
            out.append(t)
    while todo:
        q = todo.pop()
        m = mids[q]
        for top in pda.stack_alphabet:
            for x in letters:
                out.append(Transition(m, x, top, m, (top,)))
        for t in by_state.get(q, ()):
            if t.read == delim:
                continue
            target = mid(t.target) if t.read == EPSILON else t.target
            out.append(Transition(m, t.read, t.top, target, t.push))
    alphabet = (pda.input_alphabet - {delim}) | set(letters)
    return pda_from_transitions(out, pda.initial_state, pda.bottom_symbol, alphabet,
                                extra_states=pda.states, extra_stack=pda.stack_alphabet)


def build_halting_reduction_oca(tm: TuringMachine) -> Pda:
    """OCA for {x$y | x ∈ {a,b}*, x ∈ Eq* or y is not a valid computation on the blank tape}."""
    every = tm.tokens + (DELIM,)
    b = OcaBuilder("start", every + LETTERS)
    # x in Eq*, then anything
    b.eps("start", "e:q0")
    b.add("e:q0", "a", "e:q1", "inc", "zero")
    b.add("e:q1", "a", "e:q1", "inc")
    b.add("e:q1", "b", "e:q2", "dec", "pos")
    b.add("e:q2", "b", "e:q2", "dec", "pos")
    b.add("e:q2", "a", "e:q1", "inc", "zero")
    for q in ("e:q0", "e:q2"):
        b.add(q, DELIM, "y:any", when="zero")
    b.loop("y:any", every)
    b.accept("y:any")
    # y is not a valid computation
    b.eps("start", "x:skip")
    b.loop("x:skip", LETTERS)
    b.add("x:skip", DELIM, b.embed(build_invalid_oca(tm), "inv"))
    return b.build()


def pnotvalid_format_dfa(tm: TuringMachine) -> Dfa:
    toks = tm.tokens
    table = {}
    for t in toks:
        table[("f0", t)] = table[("f1", t)] = table[("f2", t)] = "f1"
    for x in LETTERS:
        table[("f1", x)] = table[("f2", x)] = "f2"
    return dfa_from_table(toks + LETTERS, table, "f0", ["f2"])


def build_pnotvalid_oca(tm: TuringMachine) -> Pda:
    """OCA for α_1 z_1 ... α_m z_m where the α's are not a valid computation or every z_i ∈ Eq."""
    toks = tm.tokens
    b = OcaBuilder("start", toks + LETTERS)
    invalid = replace_delimiter(build_invalid_oca(tm))
    b.eps("start", b.embed(pda_regular_product(invalid, pnotvalid_format_dfa(tm)), "inv"))
    b.eps("start", "z:x0")
    b.add("z:x0", toks, "z:x")
    b.add("z:x", toks, "z:x")
    b.add("z:x", "a", "z:a", "inc")
    b.add("z:a", "a", "z:a", "inc")
    b.add("z:a", "b", "z:b", "dec", "pos")
    b.add("z:b", "b", "z:b", "dec", "pos")
    b.add("z:b", toks, "z:x", when="zero")
    b.accept("z:b")
    return b.build()


def decide_pnotvalid(tm: TuringMachine, w: Sequence[str], x: str | Sequence[str]) -> bool:
    x = as_word(x)
    tokens = set(tm.tokens)
    if any(s not in tokens and s not in LETTERS for s in x):
        return False
    runs = [(is_letter, tuple(g)) for is_letter, g in groupby(x, key=lambda s: s in LETTERS)]
    if not runs or runs[0][0] or not runs[-1][0]:
        return False
    alphas = [g for is_letter, g in runs if not is_letter]
    zs = ["".join(g) for is_letter, g in runs if is_letter]
    encoded = tuple(t for alpha in alphas for t in alpha + (DELIM,))
    return not decide_valid(tm, w, encoded) or all(decide_eq(z) for z in zs)


# ------------------------------------------------------------ sample machines

def tm_halting_after(m: int) -> TuringMachine:
    """Machine whose blank-tape computation has exactly ``m`` configurations (m >= 1)."""
    if m < 1:
        raise ValueError("m must be positive")
    states = [f"q{i}" for i in range(m)]
    delta = {(states[i], "_"): (states[i + 1], "1", "R") for i in range(m - 1)}
    return TuringMachine(frozenset(states), frozenset({"_", "1"}), "_", "q0", delta)


def tm_looping() -> TuringMachine:
    return TuringMachine(frozenset({"q0"}), frozenset({"_"}), "_", "q0", {("q0", "_"): ("q0", "_", "L")})
