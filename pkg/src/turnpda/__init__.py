"""Turn complexity of pushdown and one-counter automata under the weak measure."""
from .core import (
    Configuration,
    Pda,
    Trace,
    Transition,
    check_trace,
    is_oca,
    parse_automaton,
    serialize_automaton,
    step,
    trace_turns,
)
from .decision import decide_zero_turn
from .normal import check_normal, normalize
from .search import SearchCaps, enumerate_accepting, min_turns

__all__ = [
    "Configuration", "Pda", "Trace", "Transition", "check_trace", "is_oca", "parse_automaton",
    "serialize_automaton", "step", "trace_turns", "decide_zero_turn", "check_normal", "normalize",
    "SearchCaps", "enumerate_accepting", "min_turns",
]
