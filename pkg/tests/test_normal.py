import pytest

from machines import A_EQ, A_EQSTAR, dfa_simulator, pop_only_eps, random_pdas, replace_top
from turnpda.core import Configuration, Transition, apply, pda_from_transitions
from turnpda.languages import all_words, build_Lk_oca, build_lsq_oca, decide_eq
from turnpda.normal import check_normal, normalize, pair_state
from turnpda.search import enumerate_accepting, min_turns, turn_table

SUITE = [A_EQ, A_EQSTAR, dfa_simulator(), pop_only_eps(), replace_top(), *random_pdas()]


def test_normalize_eq_language_up_to_10():
    n = normalize(A_EQ)
    for w in all_words("ab", 10):
        assert min_turns(n, w).accepted == decide_eq(w), w
    assert min_turns(n, "aabb").min_turns == 1


def test_initial_state_and_bottom():
    n = normalize(A_EQ)
    assert n.initial_state == pair_state("q0", "Z0")
    assert n.bottom_symbol not in A_EQ.stack_alphabet


@pytest.mark.parametrize("pda", SUITE)
def test_normal_form_property(pda):
    assert check_normal(normalize(pda))


def test_check_normal_examples():
    assert not check_normal(replace_top())
    pops = pda_from_transitions([Transition("q", "a", "Z", "q", ())], "q", "Z", ("a",))
    assert check_normal(pops)
    assert check_normal(A_EQ)


@pytest.mark.parametrize("pda", SUITE)
def test_turn_tables_agree(pda):
    original, p1 = turn_table(pda, "ab", 8)
    normal, p2 = turn_table(normalize(pda), "ab", 8)
    assert not p1 and not p2
    assert original == normal


def test_idempotent_class():
    twice = normalize(normalize(A_EQSTAR))
    assert check_normal(twice)
    assert turn_table(twice, "ab", 8)[0] == turn_table(A_EQSTAR, "ab", 8)[0]


@pytest.mark.parametrize("build", [build_lsq_oca, lambda: build_Lk_oca(1)], ids=["lsq", "L1"])
def test_builders_agree(build):
    pda = build()
    alphabet = sorted(pda.input_alphabet)
    assert turn_table(pda, alphabet, 7)[0] == turn_table(normalize(pda), alphabet, 7)[0]


def _mapped(cfg: Configuration, bottom: str) -> Configuration:
    if cfg.stack:
        return Configuration(pair_state(cfg.state, cfg.stack[0]), cfg.pos, cfg.stack[1:] + (bottom,))
    return Configuration(pair_state(cfg.state, bottom), cfg.pos, ())


@pytest.mark.parametrize("pda", [A_EQ, A_EQSTAR, *random_pdas()[:8]])
def test_height_correspondence(pda):
    norm = normalize(pda)
    moves = set(norm.transitions)
    bottom = norm.bottom_symbol
    for w in all_words("ab", 5):
        for _, trace in enumerate_accepting(pda, w):
            configs = trace.configurations
            for cfg, nxt in zip(configs, configs[1:]):
                a, b = _mapped(cfg, bottom), _mapped(nxt, bottom)
                assert a.height == cfg.height
                assert any(t.source == a.state and a.stack and t.top == a.stack[0] and apply(a, t) == b
                           for t in moves), (w, cfg, nxt)
