"""Deciding whether a PDA accepts in zero turns, plus the plumbing it needs.

Pipeline: zero-turn NFA of the normal form -> subset construction ->
complement -> product with the PDA -> context-free grammar -> emptiness.
The PDA accepts in 0 turns iff that last language is empty.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import EPSILON, Pda, Transition, as_word, pda_from_transitions
from .errors import StateBudgetExceeded
from .normal import fresh_symbol, normalize

DEFAULT_SUBSET_CAP = 2**20


@dataclass(frozen=True)
class Nfa:
    states: frozenset[str]
    alphabet: frozenset[str]
    transitions: dict[tuple[str, str], frozenset[str]]  # (state, symbol or "") -> targets
    initial: str
    accepting: frozenset[str]

    def closure(self, states: Iterable[str]) -> frozenset[str]:
        seen = set(states)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for p in self.transitions.get((q, EPSILON), ()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def accepts(self, w: str | Sequence[str]) -> bool:
        current = self.closure([self.initial])
        for a in as_word(w):
            current = self.closure(p for q in current for p in self.transitions.get((q, a), ()))
        return bool(current & self.accepting)


@dataclass(frozen=True)
class Dfa:
    states: frozenset[str]
    alphabet: frozenset[str]
    transitions: dict[tuple[str, str], str]
    initial: str
    accepting: frozenset[str]

    def __post_init__(self) -> None:
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.transitions:
                    raise ValueError(f"dfa transition missing for ({q!r}, {a!r})")

    def run(self, w: str | Sequence[str]) -> str | None:
        q = self.initial
        for a in as_word(w):
            if a not in self.alphabet:
                return None
            q = self.transitions[(q, a)]
        return q

    def accepts(self, w: str | Sequence[str]) -> bool:
        return self.run(w) in self.accepting


def dfa_from_table(alphabet: Iterable[str], table: dict[tuple[str, str], str], initial: str,
                   accepting: Iterable[str], dead: str = "dead") -> Dfa:
    """Complete a partial transition table with a dead state."""
    alphabet = frozenset(alphabet)
    states = {initial, *accepting, *(q for q, _ in table), *table.values()}
    full = dict(table)
    missing = any((q, a) not in full for q in states for a in alphabet)
    if missing:
        states.add(dead)
        for q in states:
            for a in alphabet:
                full.setdefault((q, a), dead)
    return Dfa(frozenset(states), alphabet, full, initial, frozenset(accepting))


def zero_turn_nfa(pda: Pda) -> Nfa:
    """Finite automaton for the words the PDA accepts without any turn.

    Built on the normal form, whose bottom marker is popped exactly when the
    simulated stack empties: a zero-turn computation never pushes, so its
    stack stays at the marker until that final pop.
    """
    norm = normalize(pda)
    bottom = norm.bottom_symbol
    sink = fresh_symbol("accept", norm.states)
    delta: dict[tuple[str, str], set[str]] = {}
    for t in norm.transitions:
        if t.top != bottom:
            continue
        if t.push == (bottom,):
            delta.setdefault((t.source, t.read), set()).add(t.target)
        elif not t.push:
            delta.setdefault((t.source, t.read), set()).add(sink)
    return Nfa(
        norm.states | {sink}, pda.input_alphabet,
        {k: frozenset(v) for k, v in delta.items()}, norm.initial_state, frozenset([sink]),
    )


def nfa_determinize(nfa: Nfa, max_states: int = DEFAULT_SUBSET_CAP) -> Dfa:
    alphabet = sorted(nfa.alphabet)
    start = nfa.closure([nfa.initial])
    ids = {start: "d0"}
    table: dict[tuple[str, str], str] = {}
    todo = [start]
    while todo:
        subset = todo.pop()
        for a in alphabet:
            nxt = nfa.closure(p for q in subset for p in nfa.transitions.get((q, a), ()))
            if nxt not in ids:
                if len(ids) >= max_states:
                    raise StateBudgetExceeded(f"subset construction exceeds {max_states} states")
                ids[nxt] = f"d{len(ids)}"
                todo.append(nxt)
            table[(ids[subset], a)] = ids[nxt]
    accepting = frozenset(name for subset, name in ids.items() if subset & nfa.accepting)
    return Dfa(frozenset(ids.values()), frozenset(alphabet), table, "d0", accepting)


def dfa_complement(dfa: Dfa) -> Dfa:
    return Dfa(dfa.states, dfa.alphabet, dfa.transitions, dfa.initial, dfa.states - dfa.accepting)


def bottom_only_at_bottom(pda: Pda) -> bool:
    """True when the bottom symbol never sits above another symbol, so popping it empties the stack."""
    z = pda.bottom_symbol
    for t in pda.transitions:
        if z in t.push[:-1]:
            return False
        if t.push and t.push[-1] == z and t.top != z:
            return False
        if t.top == z and t.push and t.push[-1] != z:
            return False
    return True


def pda_regular_product(pda: Pda, dfa: Dfa) -> Pda:
    """PDA for L(pda) ∩ L(dfa) whose accepting runs mirror the original ones move for move.

    The bottom pop is allowed only when the finite automaton accepts.  This
    needs the bottom symbol to be popped only on an emptying move; machines
    without that discipline are normalized first.
    """
    if not bottom_only_at_bottom(pda):
        pda = normalize(pda)
    z = pda.bottom_symbol
    alphabet = pda.input_alphabet | dfa.alphabet

    def pair(q: str, d: str) -> str:
        return f"({q},{d})"

    out = []
    start = (pda.initial_state, dfa.initial)
    seen = {start}
    todo = [start]
    by_state: dict[str, list[Transition]] = {}
    for t in pda.transitions:
        by_state.setdefault(t.source, []).append(t)
    while todo:
        q, d = todo.pop()
        for t in by_state.get(q, ()):
            if t.read == EPSILON:
                nd = d
            elif (d, t.read) in dfa.transitions:
                nd = dfa.transitions[(d, t.read)]
            else:
                continue
            if t.top == z and not t.push and nd not in dfa.accepting:
                continue
            out.append(Transition(pair(q, d), t.read, t.top, pair(t.target, nd), t.push))
            if (t.target, nd) not in seen:
                seen.add((t.target, nd))
                todo.append((t.target, nd))
    return pda_from_transitions(out, pair(*start), z, alphabet, extra_stack=pda.stack_alphabet)


# ------------------------------------------------------------------ grammars

@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset
    terminals: frozenset[str]
    productions: tuple[tuple[object, tuple], ...]
    start: object

    def __post_init__(self) -> None:
        if self.start not in self.nonterminals:
            raise ValueError("start symbol must be a nonterminal")
        for head, body in self.productions:
            if head not in self.nonterminals:
                raise ValueError(f"undeclared head {head!r}")
            for s in body:
                if s not in self.nonterminals and s not in self.terminals:
                    raise ValueError(f"undeclared symbol {s!r}")


def _split_long_pushes(pda: Pda) -> Pda:
    """Replace pushes of three or more symbols by chains of two-symbol pushes."""
    if all(len(t.push) <= 2 for t in pda.transitions):
        return pda
    out = []
    taken = set(pda.states)
    for i, t in enumerate(pda.transitions):
        if len(t.push) <= 2:
            out.append(t)
            continue
        k = len(t.push)
        mids = []
        for j in range(k - 2):
            m = fresh_symbol(f"{t.source}~{i}.{j}", taken)
            taken.add(m)
            mids.append(m)
        # grow the pushed word from the bottom: B_{k-1} B_k, then B_{k-2} B_{k-1}, ...
        out.append(Transition(t.source, t.read, t.top, mids[0], t.push[k - 2:]))
        for j in range(k - 2):
            top = t.push[k - 2 - j]
            target = mids[j + 1] if j + 1 < len(mids) else t.target
            out.append(Transition(mids[j], EPSILON, top, target, (t.push[k - 3 - j], top)))
    return pda_from_transitions(out, pda.initial_state, pda.bottom_symbol, pda.input_alphabet,
                                extra_states=pda.states, extra_stack=pda.stack_alphabet)


def pda_to_grammar(pda: Pda) -> Grammar:
    """Triple construction: ``(p, A, q)`` derives the words taking p to q while popping A.

    Only nonterminals reachable from the start symbol are generated.
    """
    pda = _split_long_pushes(pda)
    states = sorted(pda.states)
    by_pair: dict[tuple[str, str], list[Transition]] = {}
    for t in pda.transitions:
        by_pair.setdefault((t.source, t.top), []).append(t)
    start = ("S",)
    productions: list[tuple[object, tuple]] = []
    nonterminals: set = {start}
    todo = []

    def use(nt: tuple) -> tuple:
        if nt not in nonterminals:
            nonterminals.add(nt)
            todo.append(nt)
        return nt

    for q in states:
        productions.append((start, (use((pda.initial_state, pda.bottom_symbol, q)),)))
    while todo:
        nt = todo.pop()
        p, a, r = nt
        for t in by_pair.get((p, a), ()):
            lead = (t.read,) if t.read else ()
            if not t.push:
                if t.target == r:
                    productions.append((nt, lead))
            elif len(t.push) == 1:
                productions.append((nt, lead + (use((t.target, t.push[0], r)),)))
            else:
                for mid in states:
                    productions.append((nt, lead + (use((t.target, t.push[0], mid)), use((mid, t.push[1], r)))))
    return Grammar(frozenset(nonterminals), pda.input_alphabet, tuple(productions), start)


def generating_symbols(g: Grammar) -> set:
    generating: set = set()
    waiting: dict[object, list[int]] = {}
    missing = []
    todo = []
    for i, (head, body) in enumerate(g.productions):
        need = {s for s in body if s in g.nonterminals}
        missing.append(len(need))
        for s in need:
            waiting.setdefault(s, []).append(i)
        if not need:
            todo.append(head)
    while todo:
        head = todo.pop()
        if head in generating:
            continue
        generating.add(head)
        for i in waiting.get(head, ()):
            missing[i] -= 1
            if missing[i] == 0:
                todo.append(g.productions[i][0])
    return generating


def grammar_nonempty(g: Grammar) -> bool:
    return g.start in generating_symbols(g)


def pda_summaries(pda: Pda) -> set[tuple[str, str, str]]:
    """Generating triples of the triple grammar, computed without materializing it.

    ``(p, A, q)`` is in the result iff some input takes the machine from
    state p with A on top to state q with that A popped.  Same least
    fixpoint as ``generating_symbols(pda_to_grammar(pda))``, but only
    productive triples are ever stored.
    """
    pda = _split_long_pushes(pda)
    by_first: dict[tuple[str, str], list[Transition]] = {}
    by_second: dict[str, list[Transition]] = {}
    facts: set[tuple[str, str, str]] = set()
    ends: dict[tuple[str, str], set[str]] = {}
    todo = []

    def add(fact: tuple[str, str, str]) -> None:
        if fact not in facts:
            facts.add(fact)
            ends.setdefault(fact[:2], set()).add(fact[2])
            todo.append(fact)

    for t in pda.transitions:
        if not t.push:
            add((t.source, t.top, t.target))
        else:
            by_first.setdefault((t.target, t.push[0]), []).append(t)
            if len(t.push) == 2:
                by_second.setdefault(t.push[1], []).append(t)
    while todo:
        x, sym, y = todo.pop()
        for t in by_first.get((x, sym), ()):
            if len(t.push) == 1:
                add((t.source, t.top, y))
            else:
                for q in list(ends.get((y, t.push[1]), ())):
                    add((t.source, t.top, q))
        for t in by_second.get(sym, ()):
            if x in ends.get((t.target, t.push[0]), ()):
                add((t.source, t.top, y))
    return facts


def pda_nonempty(pda: Pda) -> bool:
    return any(p == pda.initial_state and a == pda.bottom_symbol for p, a, _ in pda_summaries(pda))


def decide_zero_turn(pda: Pda, max_states: int = DEFAULT_SUBSET_CAP) -> bool:
    """True iff every word the PDA accepts has an accepting computation with no turn.

    Raises StateBudgetExceeded if the subset construction outgrows ``max_states``.
    """
    dfa = nfa_determinize(zero_turn_nfa(pda), max_states)
    rest = pda_regular_product(normalize(pda), dfa_complement(dfa))
    return not pda_nonempty(rest)
