"""
Statistic algebra: the Mahonian 3-function catalog, builtins and
distribution polynomials.

A statistic is either a linear combination of vincular pattern counts or a
builtin computed directly from the word.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from mahonia.core.patterns import VincularPattern, count_many, enumerate_avoiders
from mahonia.core.perm import Permutation, descent_profile, extrema_profile
from mahonia.core.qpoly import MultiPoly, QPoly
from mahonia.errors import StatSpecError
from mahonia.utils.pattern_parser import PatternParser

logger = logging.getLogger(__name__)

Term = Tuple[VincularPattern, int]


@dataclass(frozen=True)
class StatSpec:
    """A linear combination of pattern counts, or a named builtin."""

    terms: Tuple[Term, ...] = ()
    builtin: Optional[str] = None
    name: Optional[str] = None

    def __post_init__(self):
        if self.builtin is None and not self.terms:
            raise StatSpecError("a statistic needs terms or a builtin")
        if self.builtin is not None and self.terms:
            raise StatSpecError("a statistic is either linear or builtin, not both")
        if any(c == 0 for _, c in self.terms):
            raise StatSpecError("linear coefficients must be nonzero")
        # terms are kept sorted so equal combinations compare equal
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=lambda t: str(t[0]))))

    def is_linear(self) -> bool:
        return self.builtin is None

    def patterns(self) -> List[VincularPattern]:
        return [p for p, _ in self.terms]

    def coefficient(self, pattern: VincularPattern) -> int:
        return dict(self.terms).get(pattern, 0)

    def canonical(self) -> str:
        """Spelling-independent form, e.g. "lin: 1*1<32> + 1*2<31> + …" or "iota:2"."""
        if self.builtin is not None:
            return self.builtin
        return "lin: " + " + ".join(f"{c}*{p}" for p, c in self.terms)

    def __str__(self) -> str:
        return self.name or self.canonical()


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

MAHONIAN_3_FUNCTIONS: Dict[str, str] = {
    "maj": "lin: 1<32> + 2<31> + 3<21> + <21>",
    "inv": "lin: <23>1 + <31>2 + <32>1 + <21>",
    "mak": "lin: 1<32> + <31>2 + <32>1 + <21>",
    "makl": "lin: 1<32> + 2<31> + <32>1 + <21>",
    "mad": "lin: 2*2<31> + <31>2 + <21>",
    "bast": "lin: <13>2 + <21>3 + <32>1 + <21>",
    "bast2": "lin: <13>2 + <31>2 + <32>1 + <21>",
    "bast3": "lin: 1<32> + 3<12> + 3<21> + <21>",
    "foze": "lin: <21>3 + 3<21> + <13>2 + <21>",
    "foze2": "lin: 1<32> + 2*2<31> + <21>",
    "foze3": "lin: <23>1 + 2*<31>2 + <21>",
    "sist": "lin: 2*<13>2 + 2<13> + <21>",
    "sist2": "lin: 2*<13>2 + 2<31> + <21>",
    "sist3": "lin: <13>2 + 2*2<31> + <21>",
}

BUILTINS = ("den", "head", "last", "imaj", "inc", "des", "lrmin", "lrmax")
IOTA_PREFIX = "iota:"

CATALOG: Tuple[str, ...] = tuple(MAHONIAN_3_FUNCTIONS) + BUILTINS


def from_literal(text: str, name: Optional[str] = None) -> StatSpec:
    terms = PatternParser.parse_linear_terms(text)
    if not terms:
        raise StatSpecError(f"custom statistic {text!r} has only zero coefficients")
    return StatSpec(terms=tuple(terms), name=name)


def named(name: str) -> StatSpec:
    """
    Look up a catalog statistic.

    Examples:
    - "mad" -> 2·(2<31>) + (<31>2) + (<21>)
    - "iota:2" -> number of increasing subsequences of length 3

    Raises:
        StatSpecError: unknown name
    """
    key = name.strip()
    if key in MAHONIAN_3_FUNCTIONS:
        return from_literal(MAHONIAN_3_FUNCTIONS[key], name=key)
    if key in BUILTINS:
        return StatSpec(builtin=key, name=key)
    if key.startswith(IOTA_PREFIX):
        k_text = key[len(IOTA_PREFIX):]
        if k_text.lstrip("-").isdigit() and int(k_text) >= -1:
            return StatSpec(builtin=f"{IOTA_PREFIX}{int(k_text)}", name=key)
    raise StatSpecError(f"unknown statistic {name!r}; known: {', '.join(CATALOG)}, iota:k")


def parse(text: str) -> StatSpec:
    """A catalog name or a "lin:" literal."""
    if PatternParser.is_linear_literal(text):
        return from_literal(text)
    return named(text)


# ---------------------------------------------------------------------------
# Builtins
# ---------------------------------------------------------------------------

def _word_inversions(word: Sequence[int]) -> int:
    return sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])


def den(sigma: Permutation) -> int:
    """inv(Exc) + inv(NExc) + Σ_{σ(i)>i} i."""
    exc = [v for i, v in enumerate(sigma.values, start=1) if v > i]
    nexc = [v for i, v in enumerate(sigma.values, start=1) if v <= i]
    positions = sum(i for i, v in enumerate(sigma.values, start=1) if v > i)
    return _word_inversions(exc) + _word_inversions(nexc) + positions


def increasing_subsequence_counts(sigma: Permutation) -> List[int]:
    """counts[l] = number of increasing subsequences of length l (counts[0] = 1)."""
    n = sigma.n
    values = sigma.values
    # ending[i][l]: increasing subsequences of length l ending at position i
    ending = [[0] * (n + 1) for _ in range(n)]
    counts = [0] * (n + 1)
    counts[0] = 1
    for i in range(n):
        ending[i][1] = 1
        for j in range(i):
            if values[j] < values[i]:
                for length in range(2, i + 2):
                    ending[i][length] += ending[j][length - 1]
        for length in range(1, n + 1):
            counts[length] += ending[i][length]
    return counts


def iota(k: int, sigma: Permutation) -> int:
    """Increasing subsequences of length k+1; ι_{-1} is 1."""
    if k < -1:
        raise StatSpecError(f"iota index must be at least -1, got {k}")
    counts = increasing_subsequence_counts(sigma)
    return counts[k + 1] if k + 1 < len(counts) else 0


def inc(sigma: Permutation) -> int:
    """ι_1 + Σ_{k≥2} (−1)^{k−1} 2^{k−2} ι_k."""
    counts = increasing_subsequence_counts(sigma)
    total = counts[2] if len(counts) > 2 else 0
    for k in range(2, sigma.n):
        total += (-1) ** (k - 1) * 2 ** (k - 2) * counts[k + 1]
    return total


def imaj(sigma: Permutation) -> int:
    return descent_profile(sigma.inverse()).maj


_BUILTIN_FUNCTIONS: Dict[str, Callable[[Permutation], int]] = {
    "den": den,
    "head": lambda s: s.values[0] if s.n else 0,
    "last": lambda s: s.values[-1] if s.n else 0,
    "imaj": imaj,
    "inc": inc,
    "des": lambda s: descent_profile(s).des,
    "lrmin": lambda s: extrema_profile(s).lrmin,
    "lrmax": lambda s: extrema_profile(s).lrmax,
}


def _evaluate_builtin(builtin: str, sigma: Permutation) -> int:
    if builtin.startswith(IOTA_PREFIX):
        return iota(int(builtin[len(IOTA_PREFIX):]), sigma)
    return _BUILTIN_FUNCTIONS[builtin](sigma)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(spec: StatSpec, sigma: Permutation) -> int:
    return evaluate_many([spec], sigma)[0]


def evaluate_many(specs: Sequence[StatSpec], sigma: Permutation) -> List[int]:
    """Evaluate several statistics with one shared pattern-count pass."""
    needed = {p for spec in specs for p in spec.patterns()}
    counts = count_many(sorted(needed), sigma) if needed else {}
    values = []
    for spec in specs:
        if spec.is_linear():
            values.append(sum(c * counts[p] for p, c in spec.terms))
        else:
            values.append(_evaluate_builtin(spec.builtin, sigma))
    return values


def value_counts(spec: StatSpec, n: int, patterns: Iterable[VincularPattern] = ()) -> Counter:
    """Statistic value -> number of permutations in S_n(Π)."""
    counter: Counter = Counter()
    for sigma in enumerate_avoiders(n, patterns):
        counter[evaluate(spec, sigma)] += 1
    return counter


def to_qpoly(spec: StatSpec, counts: Counter) -> QPoly:
    if counts and min(counts) < 0:
        raise StatSpecError(f"{spec} takes negative values; its distribution is not a polynomial in q")
    return QPoly.from_counts(counts)


def distribution(spec: StatSpec, n: int, patterns: Iterable[VincularPattern] = ()) -> QPoly:
    """
    Σ_{σ∈S_n(Π)} q^{stat(σ)} with exact coefficients.

    Examples:
    - (maj, 3, ∅) -> 1 + 2q + 2q^2 + q^3
    - (maj, 3, {231}) -> 1 + 2q + q^2 + q^3
    """
    patterns = tuple(patterns)
    counts = value_counts(spec, n, patterns)
    logger.debug("[DIST] %s over S_%d(%s): %d permutations", spec, n,
                 ",".join(map(str, patterns)), sum(counts.values()))
    return to_qpoly(spec, counts)


# ---------------------------------------------------------------------------
# Refined distributions
# ---------------------------------------------------------------------------

SCALAR_MARKS: Dict[str, str] = {"des": "t", "head": "u", "last": "v"}
SET_MARKS = ("DB", "DT", "AB", "AT", "LRMin")


def mark_monomial(sigma: Permutation, marks: Sequence[str]) -> Dict[str, int]:
    """Exponents of the mark variables for σ; set marks give x_s per member s."""
    profile = descent_profile(sigma)
    exponents: Dict[str, int] = {}
    for mark in marks:
        if mark in SCALAR_MARKS:
            value = _evaluate_builtin(mark, sigma) if sigma.n else 0
            exponents[SCALAR_MARKS[mark]] = value
            continue
        if mark == "DB":
            members = profile.descent_bottoms
        elif mark == "DT":
            members = profile.descent_tops
        elif mark == "AB":
            members = profile.ascent_bottoms
        elif mark == "AT":
            members = profile.ascent_tops
        elif mark == "LRMin":
            members = extrema_profile(sigma).lr_minima
        else:
            raise StatSpecError(f"unknown mark {mark!r}; known: {', '.join(list(SCALAR_MARKS) + list(SET_MARKS))}")
        for s in members:
            exponents[f"{mark}_{s}"] = 1
    return exponents


def distribution_refined(
    spec: StatSpec,
    n: int,
    patterns: Iterable[VincularPattern] = (),
    marks: Sequence[str] = (),
) -> MultiPoly:
    """
    Σ_{σ∈S_n(Π)} q^{stat(σ)} · marks(σ).

    Scalar marks become t (des), u (head) and v (last). A set mark such as
    DB contributes Π_{s∈DB(σ)} DB_s.
    """
    terms: Dict[Tuple[Tuple[str, int], ...], int] = {}
    for sigma in enumerate_avoiders(n, patterns):
        exponents = mark_monomial(sigma, marks)
        exponents["q"] = evaluate(spec, sigma)
        key = tuple(sorted((v, e) for v, e in exponents.items() if e))
        terms[key] = terms.get(key, 0) + 1
    return MultiPoly(terms)


def parse_marks(text: str) -> List[str]:
    marks = [m.strip() for m in text.split(",") if m.strip()]
    known = {m.lower(): m for m in list(SCALAR_MARKS) + list(SET_MARKS)}
    try:
        return [known[m.lower()] for m in marks]
    except KeyError as e:
        raise StatSpecError(f"unknown mark {e.args[0]!r}")
