import math
import random

import pytest

from turnpda import languages as L
from turnpda.core import is_oca
from turnpda.mathkit import TOLERANCE, lg, logk, logstar, tetration
from turnpda.search import enumerate_accepting, min_turns, turn_table

W1 = "1$10$11$100$$1$10$$ab$ab$aabb$"
W2 = "1$10$11$100$101$110$111$1000$$1$10$11$$ab$ba$"
W3 = "1$10$11$100$101$110$111$1000$$1$10$11$$aabb$"
Y = ["1$", "1$10$", "1$10$11$100$", L.gen_listbin(16)]


def u4_with(zs=("ab", "ab", "ab", "ab")):
    return "".join(y + z for y, z in zip(reversed(Y), zs))


AGREEMENT = [
    ("eq", L.build_eq_oca, L.decide_eq, "ab", 10),
    ("eqstar", L.build_eqstar_oca, L.decide_eq_star, "ab", 10),
    ("lsq", L.build_lsq_oca, L.decide_lsq, "0ab", 8),
    ("listbinc", L.build_listbinc_oca, lambda w: not L.decide_listbin(w), "01$", 8),
    ("ext_eq", lambda: L.build_ext_oca(L.build_eq_oca()), lambda w: L.decide_ext(w, L.decide_eq), "01$ab", 8),
    ("L0", lambda: L.build_Lk_oca(0), lambda w: L.decide_Lk(w, 0), "01$ab", 8),
    ("L1", lambda: L.build_Lk_oca(1), lambda w: L.decide_Lk(w, 1), "01$ab", 8),
    ("L2", lambda: L.build_Lk_oca(2), lambda w: L.decide_Lk(w, 2), "01$ab", 8),
    ("ustar", L.build_Ustar_oca, L.decide_Ustar, "01$ab", 8),
]


@pytest.mark.parametrize("name,build,decide,alphabet,n", AGREEMENT, ids=[a[0] for a in AGREEMENT])
def test_builder_decider_agreement(name, build, decide, alphabet, n):
    pda = build()
    assert is_oca(pda)
    table, pruned = turn_table(pda, alphabet, n)
    assert not pruned
    mismatches = [w for w in L.all_words(alphabet, n) if decide(w) != (tuple(w) in table)]
    assert mismatches == []


def test_eq_examples():
    assert L.decide_eq("aabb")
    assert not L.decide_eq("abab") and L.decide_eq_star("abab")
    assert L.decide_eq_star("") and not L.decide_eq("")
    assert min_turns(L.build_eq_oca(), "ab").min_turns == 1
    assert min_turns(L.build_eqstar_oca(), "abaabb").min_turns == 2
    assert not min_turns(L.build_eq_oca(), "aab").accepted


def test_eq_turns():
    for n in range(1, 8):
        assert min_turns(L.build_eq_oca(), "a" * n + "b" * n).min_turns == 1
    rng = random.Random(0)
    for k in range(1, 6):
        w = "".join("a" * n + "b" * n for n in (rng.randint(1, 4) for _ in range(k)))
        assert min_turns(L.build_eqstar_oca(), w).min_turns == k


def test_lsq_examples():
    lsq = L.build_lsq_oca()
    assert L.decide_lsq("0ab00ab") and L.lsq_conditions("0ab00ab") == {"b"}
    assert min_turns(lsq, "0ab00ab").min_turns == 2
    assert enumerate_accepting(lsq, "0ab00ab").min_turns == 2
    assert L.decide_lsq("00ab") and min_turns(lsq, "00ab").min_turns <= 1
    assert not L.decide_lsq("0ab00ba")
    assert L.lsq_conditions("0ab0ab") == {"a", "b"}
    assert L.lsq_conditions("a0") is None


def test_listbin_examples():
    assert L.gen_listbin(3) == "1$10$11$"
    assert L.decide_listbin("1$10$11$")
    assert not L.decide_listbin("1$11$")
    assert not L.decide_listbin("")
    assert L.last_block("1$10$11$") == "11"
    with pytest.raises(ValueError):
        L.last_block("1$1")
    with pytest.raises(ValueError):
        L.gen_listbin(0)


def test_listbinc_examples():
    pda = L.build_listbinc_oca()
    assert min_turns(pda, "10$").accepted
    assert not min_turns(pda, "1$10$11$").accepted
    assert min_turns(pda, "1$1$").min_turns <= 1


def test_listbinc_one_turn():
    pda = L.build_listbinc_oca()
    table, _ = turn_table(pda, "01$", 8)
    assert max(table.values()) <= 1
    rng = random.Random(5)
    for _ in range(40):
        m = rng.randint(2, 40)
        w = L._mutate_listbin(rng, m)
        if not L.decide_listbin(w):
            assert min_turns(pda, w).min_turns <= 1


def test_listbin_size_properties():
    for m in range(1, 1001):
        y = L.gen_listbin(m)
        last = L.last_block(y)
        assert len(last) <= lg(len(y)) + TOLERANCE
        assert y.count("$") == m == int(last, 2) >= 2 ** (len(last) - 1)
        assert len(y) <= 2 * m + m * lg(m) + TOLERANCE


def test_ext_examples():
    assert L.ext_conditions("1$$ab", L.decide_eq) >= {"b"}
    assert L.ext_conditions("1$10$$ab", L.decide_eq) == {"c"}
    assert not L.decide_ext("1$10$$ba", L.decide_eq)
    pda = L.build_ext_oca(L.build_eq_oca())
    assert is_oca(pda)
    assert min_turns(pda, "1$$ab").min_turns <= 1
    assert min_turns(pda, "1$10$$ab").accepted
    assert not min_turns(pda, "1$10$$ba").accepted


def test_l2_condition_profiles():
    assert L.lk_conditions(W1, 2) == {"b", "c"}
    assert L.lk_conditions(W2, 2) == {"b"}
    assert L.lk_conditions(W3, 2) == {"c"}
    pda = L.build_Lk_oca(2)
    for w in (W1, W2, W3):
        assert L.decide_Lk(w, 2)
        assert min_turns(pda, w).min_turns == 1
    assert enumerate_accepting(pda, W3).min_turns == 1


def test_lk_parse():
    assert L.parse_lk(W3, 2) == (["1$10$11$100$101$110$111$1000$", "1$10$11$"], "aabb$")
    assert L.parse_lk(W3, 1) is None
    assert L.parse_lk("ab$", 0) == ([], "ab$")
    assert L.decide_Lk("ab$aabb$", 0) and not L.decide_Lk("ab$ba$", 0)
    with pytest.raises(ValueError):
        L.build_Lk_oca(-1)


def test_u4_only_c_string():
    u = u4_with()
    assert len(u) == 97
    for i, y in enumerate(Y, 1):
        assert y == L.gen_listbin(tetration(2, i - 1))
        assert L.decide_listbin(y)
        assert y.count("$") == int(L.last_block(y), 2) == tetration(2, i - 1)
        assert len(L.last_block(y)) > lg(tetration(2, i - 1))
    assert L.decide_Uk(u, 4) and L.u_conditions(u) == {"c"}
    assert not L.decide_Uk(u4_with(("ab", "ba", "ab", "ab")), 4)
    assert L.decide_Uk(u4_with(("aabb", "ab", "aaabbb", "ab")), 4)
    assert min_turns(L.build_Ustar_oca(), u).min_turns == 4


def test_ustar_examples():
    assert not L.decide_Ustar("1$ba")
    assert L.decide_Ustar("1$ab")
    assert not L.decide_Ustar("")
    for k in range(1, 4):
        u = L.gen_uk(k, 1)
        assert L.decide_Ustar(u) and L.u_conditions(u) == {"c"}
        assert min_turns(L.build_Ustar_oca(), u).min_turns == k


def test_ntk_wtk():
    assert L.gen_ntk(3, 1) == 8
    assert L.gen_ntk(3, 2) == 256
    assert L.gen_ntk(2, 0) == 2
    assert len(L.gen_wtk(3, 1)) == 30
    for t, k in [(3, 1), (4, 1), (3, 2)]:
        assert len(L.gen_wtk(t, k)) < L.gen_ntk(t, k) ** 2
    assert L.gen_wtk(2, 1) == "1$10$11$100$$"
    with pytest.raises(ValueError):
        L.gen_wtk(0, 1)


def test_lb_witness_conditions():
    w = L.gen_lb_witness_Lk(2, 1, 1)
    assert L.decide_Lk(w, 1) and L.lk_conditions(w, 1) == {"c"}
    assert min_turns(L.build_Lk_oca(1), w).min_turns == 2
    assert L.gen_uk(2, 1) == "1$10$" + "a" * 10 + "b" * 10 + "1$" + "a" * 10 + "b" * 10


@pytest.mark.parametrize("t,k", [(2, 1), (3, 1), (2, 2)])
def test_appended_blocks_boundary(t, k):
    w = L.gen_wtk(t, k)
    for h in range(1, t + 3):
        assert (L.lk_conditions(w + "ab$" * h, k) == {"c"}) == (h <= t)


@pytest.mark.parametrize("t,k", [(2, 1), (3, 1)])
def test_lower_bound_witness(t, k):
    pda = L.build_Lk_oca(k)
    w = L.gen_lb_witness_Lk(t, k, 1)
    below = enumerate_accepting(pda, w, turn_limit=t - 1)
    assert below == [] and not below.pruned
    assert min_turns(pda, w).min_turns == t


def test_witness_spec():
    assert L.WitnessSpec("eqk", {"k": 2, "n": 2}).generate() == "aabbaabb"
    assert L.WitnessSpec("lsq", {"m": 2}).generate() == "0ab00ab"
    assert L.WitnessSpec("wtk", {"t": 2, "k": 1}).generate() == L.gen_lb_witness_Lk(2, 1)
    assert L.WitnessSpec("uk", {"k": 2}).generate() == L.gen_uk(2)
    with pytest.raises(ValueError):
        L.WitnessSpec("nope").generate()


def test_upper_bounds_on_samples():
    rng = random.Random(11)
    lsq = L.build_lsq_oca()
    for n in range(4, 120, 7):
        w = L.sample_lsq(n, rng)
        if L.decide_lsq(w):
            assert min_turns(lsq, w).min_turns <= math.ceil(math.sqrt(2 * len(w))) + 1
    for k in (1, 2):
        pda = L.build_Lk_oca(k)
        for n in range(10, 200, 19):
            for w in (L.sample_lk(k, n, rng), L.sample_lk_hard(k, n, rng)):
                assert L.decide_Lk(w, k)
                assert min_turns(pda, w).min_turns <= max(1, logk(k, len(w))) + TOLERANCE
    ustar = L.build_Ustar_oca()
    for n in range(10, 200, 19):
        w = L.sample_ustar(n, rng)
        assert min_turns(ustar, w).min_turns <= logstar(len(w))


def test_budget():
    from turnpda.errors import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        L.gen_ntk(3, 4, max_bits=1000)
    with pytest.raises(BudgetExceeded):
        L.gen_wtk(3, 3)
