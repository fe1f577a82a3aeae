"""Named languages for the command line: builder, decider, alphabet and sampler."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import languages as lang
from .core import Pda
from .mathkit import tetration


@dataclass(frozen=True)
class LanguageEntry:
    name: str
    build: Callable[[], Pda]
    decide: Callable[[str], bool]
    alphabet: str
    sample: Callable[[int, random.Random], str]  # (target length, rng) -> member


def _sample_eqstar(n: int, rng: random.Random) -> str:
    return "ab" * max(1, n // 2)


def _sample_eq(n: int, rng: random.Random) -> str:
    h = max(1, n // 2)
    return "a" * h + "b" * h


def _sample_listbinc(n: int, rng: random.Random) -> str:
    while True:
        w = "".join(rng.choice("01$") for _ in range(max(1, n)))
        if not lang.decide_listbin(w):
            return w


def _sample_ext_eq(n: int, rng: random.Random) -> str:
    for _ in range(1000):
        m = rng.randint(1, max(1, n // 4))
        prefix = lang.gen_listbin(m)
        width = len(f"{m:b}")
        h = rng.randint(1, max(1, width // 2))
        w = prefix + "$" + "a" * h + "b" * h
        if lang.decide_ext(w, lang.decide_eq):
            return w
    raise RuntimeError("sampler failed")


def _lk_sampler(k: int) -> Callable[[int, random.Random], str]:
    def sample(n: int, rng: random.Random) -> str:
        if rng.random() < 0.5:
            return lang.sample_lk_hard(k, n, rng)
        return lang.sample_lk(k, n, rng)
    return sample


def _lk_entry(k: int) -> LanguageEntry:
    return LanguageEntry(f"Lk:{k}", lambda: lang.build_Lk_oca(k), lambda w: lang.decide_Lk(w, k),
                         "01$ab", _lk_sampler(k))


def _sample_ustar(n: int, rng: random.Random) -> str:
    if rng.random() < 0.5:
        for k in range(4, 0, -1):
            ys = [lang.gen_listbin(tetration(2, i - 1)) for i in range(k, 0, -1)]
            base = sum(map(len, ys))
            if base + 2 * k <= n:
                h = max(1, (n - base) // (2 * k))
                return "".join(y + "a" * h + "b" * h for y in ys)
    return lang.sample_ustar(n, rng)


_FIXED = {
    "eq": LanguageEntry("eq", lang.build_eq_oca, lang.decide_eq, "ab", _sample_eq),
    "eqstar": LanguageEntry("eqstar", lang.build_eqstar_oca, lang.decide_eq_star, "ab", _sample_eqstar),
    "lsq": LanguageEntry("lsq", lang.build_lsq_oca, lang.decide_lsq, "0ab", lambda n, rng: lang.sample_lsq(n, rng)),
    "listbinc": LanguageEntry("listbinc", lang.build_listbinc_oca, lambda w: not lang.decide_listbin(w), "01$",
                              _sample_listbinc),
    "ustar": LanguageEntry("ustar", lang.build_Ustar_oca, lang.decide_Ustar, "01$ab", _sample_ustar),
    "ext:eq": LanguageEntry("ext:eq", lambda: lang.build_ext_oca(lang.build_eq_oca()),
                            lambda w: lang.decide_ext(w, lang.decide_eq), "01$ab", _sample_ext_eq),
}

NAMES = tuple(_FIXED) + ("Lk:K",)


def lookup(name: str) -> LanguageEntry:
    if name in _FIXED:
        return _FIXED[name]
    kind, _, param = name.partition(":")
    if kind.lower() == "lk" and param.isdigit():
        return _lk_entry(int(param))
    raise KeyError(f"unknown language {name!r}; choose from {', '.join(NAMES)}")


def sample_stream(entry: LanguageEntry, n_max: int, per_length: int, rng: random.Random,
                  step: int | None = None) -> Iterator[str]:
    """``per_length`` members for each target length up to ``n_max``."""
    step = step or max(1, n_max // 50)
    for n in range(step, n_max + 1, step):
        for _ in range(per_length):
            yield entry.sample(n, rng)
