"""Minimal-turn acceptance (weak measure) and turn-related constructions.

The search runs over nodes ``(state, input position, stack, phase)``.  A
move costs one exactly when it lowers the stack while the phase is UP, so
the cheapest accepting path is the accepting computation with the fewest
turns.  Costs are 0 or 1, hence a deque-based breadth-first search.
"""
from __future__ import annotations

import enum
import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (
    DOWN,
    EPSILON,
    FLAT,
    PHASE_NAMES,
    UP,
    Configuration,
    Pda,
    Trace,
    Transition,
    as_word,
    pda_from_transitions,
    phase_step,
    trace_turns,
    word_text,
)
from .errors import ExplosionCapped


@dataclass(frozen=True)
class SearchCaps:
    """Termination controls.  ``max_stack_height`` defaults to ``len(w) + 2``."""

    max_stack_height: int | None = None
    max_visited: int = 10**7
    max_turns: int | None = None

    def __post_init__(self) -> None:
        if self.max_stack_height is not None and self.max_stack_height < 1:
            raise ValueError("max_stack_height must be positive")
        if self.max_visited < 1:
            raise ValueError("max_visited must be positive")
        if self.max_turns is not None and self.max_turns < 0:
            raise ValueError("max_turns must be nonnegative")

    def height_for(self, n: int) -> int:
        return self.max_stack_height if self.max_stack_height is not None else n + 2


class Outcome(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED = "RejectedWithinBounds"
    EXCEEDED = "BoundsExceeded"


@dataclass(frozen=True)
class TurnSearchResult:
    outcome: Outcome
    min_turns: int | None = None
    witness: Trace | None = None
    visited: int = 0

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPTED

    def __str__(self) -> str:
        if self.accepted:
            return f"Accepted turns={self.min_turns}"
        return self.outcome.value


class _StackPool:
    """Hash-consed persistent stacks; id 0 is the empty stack."""

    def __init__(self) -> None:
        self.top: list[str | None] = [None]
        self.rest: list[int] = [0]
        self.height: list[int] = [0]
        self._ids: dict[tuple[str, int], int] = {}

    def cons(self, symbol: str, rest: int) -> int:
        key = (symbol, rest)
        i = self._ids.get(key)
        if i is None:
            i = len(self.top)
            self._ids[key] = i
            self.top.append(symbol)
            self.rest.append(rest)
            self.height.append(self.height[rest] + 1)
        return i

    def replace_top(self, sid: int, push: tuple[str, ...]) -> int:
        rest = self.rest[sid]
        for symbol in reversed(push):
            rest = self.cons(symbol, rest)
        return rest

    def as_tuple(self, sid: int) -> tuple[str, ...]:
        out = []
        while sid:
            out.append(self.top[sid])
            sid = self.rest[sid]
        return tuple(out)


def _build_trace(pool: _StackPool, w: tuple, path: list) -> Trace:
    """``path`` alternates nodes and transitions: [n0, t1, n1, ..., tk, nk]."""
    def cfg(node) -> Configuration:
        return Configuration(node[0], node[1], pool.as_tuple(node[2]))

    steps = tuple((cfg(path[i]), path[i + 1]) for i in range(0, len(path) - 1, 2))
    return Trace(w, steps, cfg(path[-1]))


def min_turns(pda: Pda, w: str | Sequence[str], caps: SearchCaps | None = None) -> TurnSearchResult:
    w = as_word(w)
    caps = caps or SearchCaps()
    n = len(w)
    hcap = caps.height_for(n)
    pool = _StackPool()
    start = (pda.initial_state, 0, pool.cons(pda.bottom_symbol, 0), FLAT)
    dist = {start: 0}
    parent: dict = {start: None}
    frontier = deque([start])
    done: set = set()
    pruned = False
    while frontier:
        node = frontier.popleft()
        if node in done:
            continue
        done.add(node)
        if len(done) > caps.max_visited:
            pruned = True
            break
        state, pos, sid, phase = node
        d = dist[node]
        if sid == 0:
            if pos == n:
                path = [node]
                while parent[path[-1]] is not None:
                    prev, t = parent[path[-1]]
                    path += [t, prev]
                return TurnSearchResult(Outcome.ACCEPTED, d, _build_trace(pool, w, path[::-1]), len(done))
            continue
        height = pool.height[sid]
        for t in pda.moves(state, pool.top[sid], w[pos] if pos < n else None):
            delta = len(t.push) - 1
            if height + delta > hcap:
                pruned = True
                continue
            nphase, cost = phase_step(phase, delta)
            nd = d + cost
            if caps.max_turns is not None and nd > caps.max_turns:
                pruned = True
                continue
            nxt = (t.target, pos + 1 if t.read != EPSILON else pos, pool.replace_top(sid, t.push), nphase)
            if nd < dist.get(nxt, nd + 1):
                dist[nxt] = nd
                parent[nxt] = (node, t)
                if cost:
                    frontier.append(nxt)
                else:
                    frontier.appendleft(nxt)
    return TurnSearchResult(Outcome.EXCEEDED if pruned else Outcome.REJECTED, visited=len(done))


def accepts(pda: Pda, w: str | Sequence[str], caps: SearchCaps | None = None) -> bool | None:
    """True/False when decided within caps, None when the caps were hit."""
    result = min_turns(pda, w, caps)
    if result.outcome is Outcome.EXCEEDED:
        return None
    return result.accepted


class AcceptingRuns(list):
    """List of ``(turns, trace)`` pairs; ``pruned`` tells whether caps cut paths."""

    pruned: bool = False

    @property
    def min_turns(self) -> int | None:
        return min((t for t, _ in self), default=None)


def enumerate_accepting(
    pda: Pda,
    w: str | Sequence[str],
    caps: SearchCaps | None = None,
    turn_limit: int | None = None,
) -> AcceptingRuns:
    """Depth-first enumeration of every accepting computation on ``w``.

    Paths revisiting a configuration are cut (a cycle never lowers the turn
    count).  With ``turn_limit`` only computations with at most that many
    turns are explored; that cut does not mark the result as pruned.
    Raises ExplosionCapped past ``caps.max_visited`` expansions.
    """
    w = as_word(w)
    caps = caps or SearchCaps()
    n = len(w)
    hcap = caps.height_for(n)
    if caps.max_turns is not None:
        turn_limit = caps.max_turns if turn_limit is None else min(turn_limit, caps.max_turns)
    pool = _StackPool()
    runs = AcceptingRuns()
    start = (pda.initial_state, 0, pool.cons(pda.bottom_symbol, 0))
    path: list = [start]
    on_path = {start}
    # frames: (iterator over moves, phase, turns so far)
    frames = [(iter(pda.moves(start[0], pool.top[start[2]], w[0] if n else None)), FLAT, 0)]
    expansions = 0
    while frames:
        moves, phase, turns = frames[-1]
        t = next(moves, None)
        if t is None:
            frames.pop()
            on_path.discard(path.pop())
            if path:
                path.pop()
            continue
        state, pos, sid = path[-1]
        height = pool.height[sid]
        delta = len(t.push) - 1
        if height + delta > hcap:
            runs.pruned = True
            continue
        nphase, cost = phase_step(phase, delta)
        nturns = turns + cost
        if turn_limit is not None and nturns > turn_limit:
            continue
        npos = pos + 1 if t.read != EPSILON else pos
        nxt = (t.target, npos, pool.replace_top(sid, t.push))
        if nxt in on_path:
            continue
        expansions += 1
        if expansions > caps.max_visited:
            raise ExplosionCapped(f"more than {caps.max_visited} expansions on {word_text(w)!r}")
        path += [t, nxt]
        on_path.add(nxt)
        if nxt[2] == 0:
            if npos == n:
                runs.append((nturns, _build_trace(pool, w, list(path))))
            frames.append((iter(()), nphase, nturns))
        else:
            frames.append((iter(pda.moves(nxt[0], pool.top[nxt[2]], w[npos] if npos < n else None)), nphase, nturns))
    return runs


def turn_table(
    pda: Pda,
    alphabet: Iterable[str],
    max_len: int,
    caps: SearchCaps | None = None,
) -> tuple[dict[tuple[str, ...], int], bool]:
    """Minimal turn counts for every accepted word of length <= ``max_len``.

    Explores the tree of input prefixes once, carrying the set of reachable
    configurations with their cheapest costs; subtrees whose configuration
    set is empty are skipped.  Returns ``(table, pruned)``; ``pruned`` means
    some stack exceeded the height cap (default ``max_len + 2``).
    """
    caps = caps or SearchCaps()
    hcap = caps.height_for(max_len)
    alphabet = sorted(alphabet)
    pool = _StackPool()
    table: dict[tuple[str, ...], int] = {}
    pruned = False

    def closure(frontier: dict, symbol: str | None) -> dict:
        """Epsilon-closure (symbol None) or one reading step followed by it."""
        nonlocal pruned
        if symbol is not None:
            stepped: dict = {}
            for (state, sid, phase), d in frontier.items():
                if sid == 0:
                    continue
                for t in pda.moves(state, pool.top[sid], symbol):
                    if t.read != symbol:
                        continue
                    delta = len(t.push) - 1
                    if pool.height[sid] + delta > hcap:
                        pruned = True
                        continue
                    nphase, cost = phase_step(phase, delta)
                    key = (t.target, pool.replace_top(sid, t.push), nphase)
                    if d + cost < stepped.get(key, d + cost + 1):
                        stepped[key] = d + cost
            frontier = stepped
        best = dict(frontier)
        heap = [(d, i, key) for i, (key, d) in enumerate(frontier.items())]
        heapq.heapify(heap)
        counter = len(heap)
        while heap:
            d, _, key = heapq.heappop(heap)
            if d > best[key]:
                continue
            state, sid, phase = key
            if sid == 0:
                continue
            for t in pda.moves(state, pool.top[sid], None):
                delta = len(t.push) - 1
                if pool.height[sid] + delta > hcap:
                    pruned = True
                    continue
                nphase, cost = phase_step(phase, delta)
                nkey = (t.target, pool.replace_top(sid, t.push), nphase)
                if d + cost < best.get(nkey, d + cost + 1):
                    best[nkey] = d + cost
                    counter += 1
                    heapq.heappush(heap, (d + cost, counter, nkey))
        return best

    def visit(prefix: tuple[str, ...], configs: dict) -> None:
        done = [d for (_, sid, _), d in configs.items() if sid == 0]
        if done:
            table[prefix] = min(done)
        if len(prefix) == max_len:
            return
        for symbol in alphabet:
            nxt = closure(configs, symbol)
            if nxt:
                visit(prefix + (symbol,), nxt)

    start = {(pda.initial_state, pool.cons(pda.bottom_symbol, 0), FLAT): 0}
    visit((), closure(start, None))
    return table, pruned


# ------------------------------------------------------- turn constructions

def _tag(state: str, *parts: object) -> str:
    return "|".join([state, *map(str, parts)])


def k_turn_restrict(pda: Pda, k: int) -> Pda:
    """Equivalent machine that aborts any computation exceeding ``k`` turns.

    States carry (original state, turns so far, phase); it accepts exactly
    the words that the original accepts with at most ``k`` turns.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = []
    for t in pda.transitions:
        delta = t.height_delta
        for turns in range(k + 1):
            for phase in (FLAT, UP, DOWN):
                nphase, cost = phase_step(phase, delta)
                if turns + cost > k:
                    continue
                out.append(Transition(
                    _tag(t.source, turns, PHASE_NAMES[phase]), t.read, t.top,
                    _tag(t.target, turns + cost, PHASE_NAMES[nphase]), t.push,
                ))
    return pda_from_transitions(
        out, _tag(pda.initial_state, 0, PHASE_NAMES[FLAT]), pda.bottom_symbol,
        pda.input_alphabet, extra_stack=pda.stack_alphabet,
    )


def _phase_tagged(pda: Pda) -> list[tuple[Transition, bool]]:
    """Phase-tagged transitions, each flagged when it switches up -> down."""
    out = []
    for t in pda.transitions:
        for tag in ("up", "down"):
            new = tag
            if t.height_delta < 0 and tag == "up":
                new = "down"
            elif t.height_delta > 0 and tag == "down":
                new = "up"
            out.append((Transition(_tag(t.source, tag), t.read, t.top, _tag(t.target, new), t.push),
                        tag == "up" and new == "down"))
    return out


def phase_tag(pda: Pda) -> Pda:
    """Keep the up/down phase of the stack in the finite control (initially up)."""
    return pda_from_transitions(
        [t for t, _ in _phase_tagged(pda)], _tag(pda.initial_state, "up"), pda.bottom_symbol,
        pda.input_alphabet, extra_stack=pda.stack_alphabet,
    )


def turn_counter_unary(pda: Pda, letter: str = "a") -> Pda:
    """Unary machine reading one ``letter`` per up -> down phase switch.

    Every other move becomes an epsilon move.  Because the tagging starts
    in the up phase, the final pop of a computation that never pushed also
    reads a letter: ``a`` stands for computations with 0 or 1 turns.
    """
    out = [
        Transition(t.source, letter if switch else EPSILON, t.top, t.target, t.push)
        for t, switch in _phase_tagged(pda)
    ]
    return pda_from_transitions(
        out, _tag(pda.initial_state, "up"), pda.bottom_symbol, (letter,), extra_stack=pda.stack_alphabet,
    )


# ------------------------------------------------------------------- curves

@dataclass
class CurveRow:
    n: int
    samples: int = 0
    max_min_turns: int = 0
    exceeded: int = 0
    rejected: int = 0

    @property
    def flagged(self) -> bool:
        return self.exceeded > 0 or self.rejected > 0


@dataclass
class CurveTable:
    rows: list[CurveRow] = field(default_factory=list)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)


def turn_curve(
    pda: Pda,
    sampler: Iterable[Sequence[str]] | Callable[[], Iterable[Sequence[str]]],
    n_max: int,
    caps: SearchCaps | None = None,
) -> CurveTable:
    """Per input length, the maximum of the minimal turn counts over samples.

    Samples longer than ``n_max`` are ignored.  Rows are flagged when a
    sample hit the caps or was not accepted.
    """
    if callable(sampler):
        sampler = sampler()
    rows: dict[int, CurveRow] = {}
    for w in sampler:
        w = as_word(w)
        if len(w) > n_max:
            continue
        row = rows.setdefault(len(w), CurveRow(len(w)))
        row.samples += 1
        result = min_turns(pda, w, caps)
        if result.accepted:
            row.max_min_turns = max(row.max_min_turns, result.min_turns)
        elif result.outcome is Outcome.EXCEEDED:
            row.exceeded += 1
        else:
            row.rejected += 1
    return CurveTable([rows[n] for n in sorted(rows)])


def format_trace(trace: Trace) -> str:
    """One ``state | consumed input | stack`` line per configuration, then ``turns=k``."""
    lines = []
    for cfg in trace.configurations:
        consumed = word_text(trace.input[: cfg.pos]) or "ε"
        stack = word_text(cfg.stack) if cfg.stack else "ε"
        lines.append(f"{cfg.state} | {consumed} | {stack}")
    lines.append(f"turns={trace_turns(trace)}")
    return "\n".join(lines) + "\n"
