"""Concrete languages: membership deciders, one-counter machines and witness strings.

Deciders work on plain strings and evaluate the defining conditions
literally, reporting which of them hold.  Builders return OCAs whose
branches mirror those conditions: violations of the binary-list shape and
block-length comparisons cost at most one turn, while the Eq checks cost one
turn per letter block.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .core import Pda
from .errors import BudgetExceeded
from .mathkit import DEFAULT_BIT_BUDGET, tetration
from .oca import DIGITS, LETTERS, OcaBuilder, add_listbin_violation

# ----------------------------------------------------------------- deciders

_EQ = re.compile(r"(a+)(b+)")
_BINLIST = re.compile(r"(?:[01]+\$)+")


def decide_eq(w: str) -> bool:
    m = _EQ.fullmatch(w)
    return bool(m) and len(m.group(1)) == len(m.group(2))


def decide_eq_star(w: str) -> bool:
    pos = 0
    for m in re.finditer(r"(a+)(b+)", w):
        if m.start() != pos or len(m.group(1)) != len(m.group(2)):
            return False
        pos = m.end()
    return pos == len(w)


def decide_eq_dollar_plus(w: str) -> bool:
    """Membership in (Eq$)+."""
    if not w.endswith("$"):
        return False
    return all(decide_eq(seg) for seg in w[:-1].split("$"))


def binary_blocks(y: str) -> list[str] | None:
    """Blocks of a string in ({0,1}+$)+, or None when it has another shape."""
    if not _BINLIST.fullmatch(y):
        return None
    return y[:-1].split("$")


def gen_listbin(m: int) -> str:
    if m < 1:
        raise ValueError("m must be positive")
    return "".join(f"{i:b}$" for i in range(1, m + 1))


def decide_listbin(y: str) -> bool:
    blocks = binary_blocks(y)
    return blocks is not None and blocks == [f"{i:b}" for i in range(1, len(blocks) + 1)]


def last_block(y: str) -> str:
    blocks = binary_blocks(y)
    if blocks is None:
        raise ValueError(f"{y!r} is not a list of binary blocks")
    return blocks[-1]


def lsq_conditions(w: str) -> set[str] | None:
    """Conditions of Lsq satisfied by ``w``; None if ``w`` is not x_1 z_1 ... x_m z_m."""
    if not re.fullmatch(r"(?:0+[ab]+)+", w):
        return None
    pairs = re.findall(r"(0+)([ab]+)", w)
    out = set()
    if any(len(x) != i for i, (x, _) in enumerate(pairs, 1)):
        out.add("a")
    if all(decide_eq(z) for _, z in pairs):
        out.add("b")
    return out


def decide_lsq(w: str) -> bool:
    return bool(lsq_conditions(w))


def ext_conditions(w: str, base: Callable[[str], bool]) -> set[str]:
    """Union over all splits ``x_1$...x_m$$x`` of the Ext conditions that hold."""
    out: set[str] = set()
    for split in re.finditer(r"(?=\$\$)", w):
        prefix, x = w[:split.start() + 1], w[split.start() + 2:]
        blocks = binary_blocks(prefix)
        if blocks is None:
            continue
        if not decide_listbin(prefix):
            out.add("a")
        if len(blocks[-1]) < len(x):
            out.add("b")
        if base(x):
            out.add("c")
    return out


def decide_ext(w: str, base: Callable[[str], bool]) -> bool:
    return bool(ext_conditions(w, base))


def parse_lk(w: str, k: int) -> tuple[list[str], str] | None:
    """Split ``y_k$...$y_1$y_0`` into ([y_k, ..., y_1], y_0), or None.

    The y_i contain digits and y_0 does not, so the split is unique.
    """
    if k == 0:
        return ([], w) if re.fullmatch(r"[ab$]*", w) else None
    m = re.fullmatch(r"((?:[01]+\$)+(?:\$(?:[01]+\$)+)*)\$([ab$]*)", w)
    if not m:
        return None
    ys = m.group(1).split("$$")
    ys = [y if y.endswith("$") else y + "$" for y in ys]
    if len(ys) != k:
        return None
    return ys, m.group(2)


def lk_conditions(w: str, k: int) -> set[str] | None:
    parsed = parse_lk(w, k)
    if parsed is None:
        return None
    ys, y0 = parsed
    chain = ys + [y0]  # chain[j] = y_{k-j}; y_{i-1} follows y_i
    out = set()
    if any(not decide_listbin(y) for y in ys):
        out.add("a")
    for j, y in enumerate(ys):
        if len(last_block(y)) <= chain[j + 1].count("$"):
            out.add("b")
    if decide_eq_dollar_plus(y0):
        out.add("c")
    return out


def decide_Lk(w: str, k: int) -> bool:
    return bool(lk_conditions(w, k))


def parse_u(w: str) -> list[tuple[str, str]] | None:
    """Split ``y_k z_k ... y_1 z_1`` into [(y_k, z_k), ..., (y_1, z_1)], or None."""
    if not re.fullmatch(r"(?:(?:[01]+\$)+[ab]+)+", w):
        return None
    return re.findall(r"((?:[01]+\$)+)([ab]+)", w)


def u_conditions(w: str) -> set[str] | None:
    pairs = parse_u(w)
    if pairs is None:
        return None
    out = set()
    if any(not decide_listbin(y) for y, _ in pairs):
        out.add("a")
    # pairs[j] holds y_{k-j}; condition (b) needs i > 1, so y_i has a successor pair
    for j in range(len(pairs) - 1):
        if len(last_block(pairs[j][0])) <= pairs[j + 1][0].count("$"):
            out.add("b")
    if all(decide_eq(z) for _, z in pairs):
        out.add("c")
    return out


def decide_Uk(w: str, k: int) -> bool:
    pairs = parse_u(w)
    return pairs is not None and len(pairs) == k and bool(u_conditions(w))


def decide_Ustar(w: str) -> bool:
    return bool(u_conditions(w))


# ----------------------------------------------------------------- builders

def build_eq_oca() -> Pda:
    b = OcaBuilder("q0", LETTERS)
    b.add("q0", "a", "q0", "inc")
    b.add("q0", "b", "q1", "dec", "pos")
    b.add("q1", "b", "q1", "dec", "pos")
    b.accept("q1")
    return b.build()


def build_eqstar_oca() -> Pda:
    b = OcaBuilder("q0", LETTERS)
    b.add("q0", "a", "q1", "inc", "zero")
    b.add("q1", "a", "q1", "inc")
    b.add("q1", "b", "q2", "dec", "pos")
    b.add("q2", "b", "q2", "dec", "pos")
    b.add("q2", "a", "q1", "inc", "zero")
    b.accept("q0")
    b.accept("q2")
    return b.build()


def _eq_blocks(b: OcaBuilder, p: str, start: str, sep: str | tuple[str, ...], after: str) -> None:
    """From ``start`` read a^n b^n (n > 0) then a symbol of ``sep``, landing in ``after``."""
    b.add(start, "a", f"{p}:a", "inc")
    b.add(f"{p}:a", "a", f"{p}:a", "inc")
    b.add(f"{p}:a", "b", f"{p}:b", "dec", "pos")
    b.add(f"{p}:b", "b", f"{p}:b", "dec", "pos")
    b.add(f"{p}:b", sep, after, when="zero")


def build_lsq_oca() -> Pda:
    b = OcaBuilder("start", ("0", "a", "b"))
    # accepting skipper once a violation is certain
    b.add("done:z", LETTERS, "done:z")
    b.add("done:z", "0", "done:x")
    b.add("done:x", "0", "done:x")
    b.add("done:x", LETTERS, "done:z")
    b.accept("done:z")

    # (a) first block has length at least 2
    b.eps("start", "a1:0")
    b.add("a1:0", "0", "a1:1")
    b.add("a1:1", "0", "a1:2")
    b.add("a1:2", "0", "a1:2")
    b.add("a1:2", LETTERS, "done:z")

    # (a) some block x_{i+1} with |x_{i+1}| != |x_i| + 1
    b.eps("start", "p:x0")
    b.add("p:x0", "0", "p:x")
    b.add("p:x", "0", "p:x")
    b.add("p:x", LETTERS, "p:z")
    b.add("p:z", LETTERS, "p:z")
    b.eps("p:z", "p:x0")
    b.eps("p:x0", "a2:s")
    b.add("a2:s", "0", "a2:x", "inc")
    b.add("a2:x", "0", "a2:x", "inc")
    b.add("a2:x", LETTERS, "a2:z", "inc")
    b.add("a2:z", LETTERS, "a2:z")
    b.add("a2:z", "0", "a2:y", "dec", "pos")
    b.add("a2:y", "0", "a2:y", "dec", "pos")
    b.add("a2:y", "0", "done:x", when="zero")
    b.add("a2:y", LETTERS, "a2:drain", when="pos")
    b.eps("a2:drain", "a2:drain", "dec", "pos")
    b.eps("a2:drain", "done:z", when="zero")

    # (b) every letter block is in Eq
    b.eps("start", "b:x0")
    b.add("b:x0", "0", "b:x")
    b.add("b:x", "0", "b:x")
    _eq_blocks(b, "b", "b:x", "0", "b:x")
    b.accept("b:b")
    return b.build()


def build_listbinc_oca() -> Pda:
    """Accepts every string over {0,1,$} outside ListBin."""
    b = OcaBuilder("start", ("0", "1", "$"))
    # strings not of the form ({0,1}+$)+
    b.eps("start", "sh:start")
    b.add("sh:start", DIGITS, "sh:in")
    b.add("sh:start", "$", "sh:dead")
    b.add("sh:in", DIGITS, "sh:in")
    b.add("sh:in", "$", "sh:sep")
    b.add("sh:sep", DIGITS, "sh:in")
    b.add("sh:sep", "$", "sh:dead")
    b.add("sh:dead", ("0", "1", "$"), "sh:dead")
    for q in ("sh:start", "sh:in", "sh:dead"):
        b.accept(q)
    entry, tail = add_listbin_violation(b, "lb")
    b.eps("start", entry)
    b.accept(tail)
    return b.build()


def build_ext_oca(m: Pda) -> Pda:
    """OCA (when ``m`` is one) for Ext(L(m)) over L's alphabet plus {0,1,$}."""
    everything = sorted(set(m.input_alphabet) | {"0", "1", "$"})
    b = OcaBuilder("p:s", everything)
    b.loop("any", everything)
    b.accept("any")
    # undecided scan of the binary prefix
    b.add("p:s", DIGITS, "p:in")
    b.add("p:in", DIGITS, "p:in")
    b.add("p:in", "$", "p:end")
    b.add("p:end", DIGITS, "p:in")
    # (c) run m on the suffix
    b.add("p:end", "$", b.embed(m, "m"), when="zero")
    # (a) the prefix is not in ListBin
    entry, tail = add_listbin_violation(b, "a")
    b.eps("p:s", entry)
    b.add(tail, "$", "any")
    # (b) |x_m| < |x|
    for q in ("p:s", "p:end"):
        b.add(q, DIGITS, "b:last", "inc")
    b.add("b:last", DIGITS, "b:last", "inc")
    b.add("b:last", "$", "b:le")
    b.add("b:le", "$", "b:x")
    b.add("b:x", everything, "b:x", "dec", "pos")
    b.add("b:x", everything, "any", when="zero")
    return b.build()


def build_Lk_oca(k: int) -> Pda:
    if k < 0:
        raise ValueError("k must be nonnegative")
    alphabet = ("a", "b", "0", "1", "$")
    y0 = ("a", "b", "$")

    def y_states(tag: str, i: int) -> tuple[str, str, str]:
        return f"{tag}:y{i}", f"{tag}:y{i}in", f"{tag}:y{i}end"

    def scan_y(tag: str, i: int, after: str) -> str:
        """Format check of y_i followed by the separator; returns the entry state."""
        s, inner, end = y_states(tag, i)
        b.add(s, DIGITS, inner)
        b.add(inner, DIGITS, inner)
        b.add(inner, "$", end)
        b.add(end, DIGITS, inner)
        b.add(end, "$", after)
        return s

    b = OcaBuilder(f"p:y{k}" if k else "c:e0", alphabet)
    # (c) y_0 in (Eq$)+; reached from the undecided scan
    _eq_blocks(b, "c", "c:e0", "$", "c:ok")
    b.add("c:ok", "a", "c:a", "inc")
    b.accept("c:ok")
    # post-violation scan: accept any well-formed rest
    b.loop("d:y0", y0)
    b.accept("d:y0")
    done = {0: "d:y0"}
    for i in range(1, k + 1):
        done[i] = scan_y("d", i, done[i - 1])
    for i in range(1, k + 1):
        scan_y("p", i, f"p:y{i - 1}" if i > 1 else "c:e0")
        start = f"p:y{i}"
        # (a) y_i is not in ListBin
        entry, tail = add_listbin_violation(b, f"a{i}")
        b.eps(start, entry)
        b.add(tail, "$", done[i - 1])
        # (b) |last(y_i)| <= occ_$(y_{i-1})
        s, inner, end = y_states(f"b{i}", i)
        b.eps(start, s)
        b.add(s, DIGITS, inner)
        b.add(inner, DIGITS, inner)
        b.add(inner, "$", end)
        b.add(end, DIGITS, inner)
        for q in (s, end):
            b.add(q, DIGITS, f"b{i}:last", "inc")
        b.add(f"b{i}:last", DIGITS, f"b{i}:last", "inc")
        b.add(f"b{i}:last", "$", f"b{i}:le")
        if i > 1:
            b.add(f"b{i}:le", "$", f"b{i}:c")
            cin, cend = f"b{i}:cin", f"b{i}:cend"
            b.add(f"b{i}:c", DIGITS, cin)
            b.add(cin, DIGITS, cin)
            b.add(cin, "$", cend, "dec", "pos")
            b.add(cin, "$", cend, when="zero")
            b.add(cend, DIGITS, cin)
            b.add(cend, "$", done[i - 2], when="zero")
        else:
            c = f"b{i}:c"
            b.add(f"b{i}:le", "$", c)
            b.add(c, LETTERS, c)
            b.add(c, "$", c, "dec", "pos")
            b.add(c, "$", c, when="zero")
            b.accept(c)
    return b.build()


def build_Ustar_oca() -> Pda:
    alphabet = ("a", "b", "0", "1", "$")
    b = OcaBuilder("start", alphabet)
    # post-violation scan
    b.add("d:z", LETTERS, "d:z")
    b.add("d:z", DIGITS, "d:in")
    b.add("d:in", DIGITS, "d:in")
    b.add("d:in", "$", "d:end")
    b.add("d:end", DIGITS, "d:in")
    b.add("d:end", LETTERS, "d:z")
    b.accept("d:z")

    # (c) every z_i in Eq
    b.eps("start", "c:y")
    b.add("c:y", DIGITS, "c:in")
    b.add("c:in", DIGITS, "c:in")
    b.add("c:in", "$", "c:end")
    b.add("c:end", DIGITS, "c:in")
    b.add("c:end", "a", "c:za", "inc")
    b.add("c:za", "a", "c:za", "inc")
    b.add("c:za", "b", "c:zb", "dec", "pos")
    b.add("c:zb", "b", "c:zb", "dec", "pos")
    b.add("c:zb", DIGITS, "c:in", when="zero")
    b.accept("c:zb")

    # undecided scan; a branch is chosen at the start of some y block
    b.eps("start", "p:y")
    b.add("p:y", DIGITS, "p:in")
    b.add("p:in", DIGITS, "p:in")
    b.add("p:in", "$", "p:end")
    b.add("p:end", DIGITS, "p:in")
    b.add("p:end", LETTERS, "p:z")
    b.add("p:z", LETTERS, "p:z")
    b.eps("p:z", "p:y")

    # (a) this y block is not in ListBin
    entry, tail = add_listbin_violation(b, "a")
    b.eps("p:y", entry)
    b.add(tail, LETTERS, "d:z")

    # (b) |last(y_i)| <= occ_$(y_{i-1}) for a block y_i followed by another y block
    b.eps("p:y", "b:y")
    b.add("b:y", DIGITS, "b:in")
    b.add("b:in", DIGITS, "b:in")
    b.add("b:in", "$", "b:end")
    b.add("b:end", DIGITS, "b:in")
    for q in ("b:y", "b:end"):
        b.add(q, DIGITS, "b:last", "inc")
    b.add("b:last", DIGITS, "b:last", "inc")
    b.add("b:last", "$", "b:le")
    b.add("b:le", LETTERS, "b:z")
    b.add("b:z", LETTERS, "b:z")
    b.add("b:z", DIGITS, "b:cin")
    b.add("b:cin", DIGITS, "b:cin")
    b.add("b:cin", "$", "b:cend", "dec", "pos")
    b.add("b:cin", "$", "b:cend", when="zero")
    b.add("b:cend", DIGITS, "b:cin")
    b.add("b:cend", LETTERS, "d:z", when="zero")
    return b.build()


# --------------------------------------------------------------- witnesses

def gen_ntk(t: int, k: int, max_bits: int = DEFAULT_BIT_BUDGET) -> int:
    if t < 0 or k < 0:
        raise ValueError("t and k must be nonnegative")
    n = t
    for _ in range(k):
        if n > max_bits:
            raise BudgetExceeded(f"2^{n} exceeds the budget of {max_bits} bits")
        n = 2**n
    return n


def _listbin_checked(m: int, max_chars: int) -> str:
    if m.bit_length() > 40 or m * (m.bit_length() + 1) > max_chars:
        raise BudgetExceeded(f"listing 1..{m} exceeds {max_chars} characters")
    return gen_listbin(m)


def gen_wtk(t: int, k: int, max_chars: int = 10**7) -> str:
    if t < 1 or k < 1:
        raise ValueError("t and k must be positive")
    ys = [_listbin_checked(gen_ntk(t, i), max_chars) for i in range(k, 0, -1)]
    return "".join(y + "$" for y in ys)


def gen_lb_witness_Lk(t: int, k: int, N: int = 1) -> str:
    w = gen_wtk(t, k)
    n2 = N * (len(w) + t + 1)
    return w + ("a" * n2 + "b" * n2 + "$") * t


def gen_uk(k: int, N: int = 1, z: str | None = None) -> str:
    """u_k: binary lists of 2↑↑(i-1) blocks interleaved with equal letter blocks.

    ``z`` overrides every letter block (Example-style strings use "ab").
    """
    if k < 1:
        raise ValueError("k must be positive")
    ys = [_listbin_checked(tetration(2, i - 1), 10**7) for i in range(k, 0, -1)]
    if z is None:
        nk = N * k * len(ys[0])
        z = "a" * nk + "b" * nk
    return "".join(y + z for y in ys)


@dataclass(frozen=True)
class WitnessSpec:
    family: str  # eqk, lsq, wtk, uk
    params: dict = field(default_factory=dict)

    def generate(self) -> str:
        p = self.params
        if self.family == "eqk":
            n = p.get("n", 1)
            return ("a" * n + "b" * n) * p["k"]
        if self.family == "lsq":
            z = "a" * p.get("N", 1) + "b" * p.get("N", 1)
            return "".join("0" * i + z for i in range(1, p["m"] + 1))
        if self.family == "wtk":
            return gen_lb_witness_Lk(p["t"], p["k"], p.get("N", 1))
        if self.family == "uk":
            return gen_uk(p["k"], p.get("N", 1))
        raise ValueError(f"unknown witness family {self.family!r}")


# ---------------------------------------------------------------- samplers

def _eq_word(rng: random.Random, max_n: int) -> str:
    n = rng.randint(1, max_n)
    return "a" * n + "b" * n


def _letters(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice(LETTERS) for _ in range(rng.randint(1, max_len)))


def _mutate_listbin(rng: random.Random, m: int) -> str:
    blocks = [f"{i:b}" for i in range(1, m + 1)]
    j = rng.randrange(m)
    kind = rng.randrange(3)
    if kind == 0:
        pos = rng.randrange(len(blocks[j]))
        blocks[j] = blocks[j][:pos] + ("1" if blocks[j][pos] == "0" else "0") + blocks[j][pos + 1:]
    elif kind == 1:
        blocks[j] += rng.choice(DIGITS)
    else:
        del blocks[j]
        if not blocks:
            blocks = ["0"]
    return "".join(x + "$" for x in blocks)


def sample_lk(k: int, n_target: int, rng: random.Random) -> str:
    """A random string of L^(k) with length near ``n_target`` (accepted by construction)."""
    for _ in range(1000):
        w = _sample_lk_once(k, n_target, rng)
        if decide_Lk(w, k):
            return w
    raise RuntimeError("sampler failed to produce a member")


def _sample_lk_once(k: int, n: int, rng: random.Random) -> str:
    ys = []
    budget = max(n // 2, 2)
    for _ in range(k):
        m = rng.randint(1, max(1, budget // 4))
        ys.append(gen_listbin(m) if rng.random() < 0.7 else _mutate_listbin(rng, m))
    mode = rng.randrange(3)
    if mode == 0:
        # long y_0 in (Eq$)+
        segs = []
        while sum(map(len, segs)) < n // 2:
            segs.append(_eq_word(rng, 3) + "$")
        y0 = "".join(segs)
    else:
        y0 = "".join(rng.choice("ab$") for _ in range(rng.randint(0, max(1, n // 2))))
    if k and mode == 1:
        y0 = "".join(_eq_word(rng, 2) + "$" for _ in range(rng.randint(1, 3)))
    return "".join(y + "$" for y in ys) + y0


def sample_lk_hard(k: int, n_target: int, rng: random.Random) -> str:
    """Members satisfying only (c), with as many y_0 blocks as the length allows."""
    if k == 0:
        segs = []
        while sum(map(len, segs)) < n_target:
            segs.append(_eq_word(rng, 2) + "$")
        return "".join(segs) or "ab$"
    t, w = 1, gen_wtk(1, k)
    for cand in range(2, 6):
        try:
            longer = gen_wtk(cand, k, max_chars=max(n_target, 64))
        except BudgetExceeded:
            break
        if len(longer) + 3 * cand > n_target:
            break
        t, w = cand, longer
    spare = max(0, n_target - len(w) - t)
    return w + "".join(_eq_word(rng, max(1, spare // (2 * t))) + "$" for _ in range(t))


def sample_ustar(n_target: int, rng: random.Random) -> str:
    for _ in range(1000):
        k = rng.randint(1, 3)
        ms = [tetration(2, i - 1) for i in range(k, 0, -1)]
        ys = [gen_listbin(m) if rng.random() < 0.8 else _mutate_listbin(rng, m) for m in ms]
        zs = [_eq_word(rng, max(1, n_target // (4 * k))) if rng.random() < 0.9 else _letters(rng, 4) for _ in ys]
        w = "".join(y + z for y, z in zip(ys, zs))
        if decide_Ustar(w):
            return w
    raise RuntimeError("sampler failed to produce a member")


def sample_lsq(n_target: int, rng: random.Random) -> str:
    m = max(1, int((2 * n_target) ** 0.5) // 2)
    zs = [_eq_word(rng, 2) for _ in range(m)]
    xs = ["0" * i for i in range(1, m + 1)]
    if rng.random() < 0.3:
        j = rng.randrange(m)
        xs[j] += "0"
    return "".join(x + z for x, z in zip(xs, zs))


def all_words(alphabet: str | tuple[str, ...], max_len: int) -> Iterator[str]:
    yield ""
    layer = [""]
    for _ in range(max_len):
        layer = [w + a for w in layer for a in alphabet]
        yield from layer
