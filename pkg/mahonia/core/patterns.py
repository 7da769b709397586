"""
Vincular patterns: matching, counting and avoidance-class enumeration.

A pattern is a triple (π, X, υ). X ⊆ {0, …, m} holds adjacencies (j means
the j-th and (j+1)-th letters of an occurrence sit next to each other),
0 anchors the occurrence at the first position and m at the last. υ fixes
the value of some letters of the occurrence.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from mahonia.core.perm import Permutation
from mahonia.errors import AvoidanceError, PatternSyntaxError

logger = logging.getLogger(__name__)

Occurrence = Tuple[int, ...]


@dataclass(frozen=True)
class VincularPattern:
    pi: Tuple[int, ...]
    adjacency: FrozenSet[int] = frozenset()
    restriction: Optional[Tuple[Optional[int], ...]] = None

    def __post_init__(self):
        m = len(self.pi)
        if m == 0 or sorted(self.pi) != list(range(1, m + 1)):
            raise PatternSyntaxError(str(self.pi), "letters must form a permutation of [m]")
        if any(j < 0 or j > m for j in self.adjacency):
            raise PatternSyntaxError(str(self.pi), f"adjacency set must lie in [0, {m}]")
        restriction = self.restriction
        if restriction is not None:
            if len(restriction) != m:
                raise PatternSyntaxError(str(self.pi), f"restriction needs {m} entries")
            if all(r is None for r in restriction):
                restriction = None
        object.__setattr__(self, "pi", tuple(self.pi))
        object.__setattr__(self, "adjacency", frozenset(self.adjacency))
        object.__setattr__(self, "restriction", None if restriction is None else tuple(restriction))

    @property
    def m(self) -> int:
        return len(self.pi)

    @property
    def inner_adjacency(self) -> FrozenSet[int]:
        return frozenset(j for j in self.adjacency if 1 <= j < self.m)

    @property
    def anchored_start(self) -> bool:
        return 0 in self.adjacency

    @property
    def anchored_end(self) -> bool:
        return self.m in self.adjacency

    def is_classical(self) -> bool:
        return not self.adjacency and self.restriction is None

    def __str__(self) -> str:
        inner = self.inner_adjacency
        text = "[" if self.anchored_start else ""
        for j, letter in enumerate(self.pi, start=1):
            if j in inner and (j - 1) not in inner:
                text += "<"
            text += str(letter)
            if (j - 1) in inner and j not in inner:
                text += ">"
        if self.anchored_end:
            text += "]"
        if self.restriction is not None:
            text += "@(" + ",".join("-" if r is None else str(r) for r in self.restriction) + ")"
        return text

    def __lt__(self, other: "VincularPattern") -> bool:
        return str(self) < str(other)


def classical(word: str) -> VincularPattern:
    return VincularPattern(tuple(int(ch) for ch in word))


def pattern_reverse(p: VincularPattern) -> VincularPattern:
    m = p.m
    adjacency = {m - j for j in p.adjacency}
    restriction = None if p.restriction is None else p.restriction[::-1]
    return VincularPattern(p.pi[::-1], frozenset(adjacency), restriction)


def pattern_complement(p: VincularPattern) -> VincularPattern:
    if p.restriction is not None:
        raise PatternSyntaxError(str(p), "complement of a value-restricted pattern depends on n")
    m1 = p.m + 1
    return VincularPattern(tuple(m1 - a for a in p.pi), p.adjacency)


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------

def _occurrences(p: VincularPattern, values: Sequence[int]) -> Iterator[Occurrence]:
    n, m = len(values), p.m
    if m > n:
        return
    inner = p.inner_adjacency
    pi = p.pi
    restriction = p.restriction or (None,) * m
    # for slot j: earlier slots a with the required comparison
    relations = [[(a, pi[a] < pi[j]) for a in range(j)] for j in range(m)]
    chosen = [0] * m

    def candidates(j: int) -> Iterable[int]:
        if j == 0:
            if p.anchored_start:
                return (0,)
            return range(0, n - m + 1)
        prev = chosen[j - 1]
        if j in inner:  # slot j (0-based) adjacent to slot j-1
            if j == m - 1 and p.anchored_end and prev + 1 != n - 1:
                return ()
            return (prev + 1,) if prev + 1 <= n - (m - j) else ()
        if j == m - 1 and p.anchored_end:
            return (n - 1,) if n - 1 > prev else ()
        return range(prev + 1, n - (m - j) + 1)

    def extend(j: int) -> Iterator[Occurrence]:
        for i in candidates(j):
            x = values[i]
            if restriction[j] is not None and x != restriction[j]:
                continue
            if all((values[chosen[a]] < x) == less for a, less in relations[j]):
                chosen[j] = i
                if j == m - 1:
                    if not (p.anchored_end and i != n - 1):
                        yield tuple(c + 1 for c in chosen)
                else:
                    yield from extend(j + 1)

    yield from extend(0)


def list_occurrences(p: VincularPattern, sigma: Permutation) -> List[Occurrence]:
    """All occurrences as strictly increasing one-indexed position tuples."""
    return list(_occurrences(p, sigma.values))


def count_occurrences(p: VincularPattern, sigma: Permutation) -> int:
    return sum(1 for _ in _occurrences(p, sigma.values))


def first_occurrence(p: VincularPattern, sigma: Permutation) -> Optional[Occurrence]:
    return next(_occurrences(p, sigma.values), None)


def avoids(sigma: Permutation, patterns: Iterable[VincularPattern]) -> bool:
    return all(first_occurrence(p, sigma) is None for p in patterns)


def require_avoids(sigma: Permutation, *words: str) -> None:
    """Raise AvoidanceError naming the first occurrence of any classical pattern in words."""
    for word in words:
        occurrence = first_occurrence(classical(word), sigma)
        if occurrence is not None:
            raise AvoidanceError(word, str(sigma), occurrence)


def adjacent_profile(values: Sequence[int]) -> Dict[str, int]:
    """
    Counts of every pattern with an adjacent pair plus at most one free letter.

    Keys are canonical literals: "<21>", "<12>", "a<bc>" and "<ab>c" for all
    abc in S_3. One O(n^2) pass, used by the scanner kernels.
    """
    counts: Dict[str, int] = dict.fromkeys(_ADJACENT_KEYS, 0)
    n = len(values)
    for i in range(n - 1):
        a, b = values[i], values[i + 1]
        counts["<21>" if a > b else "<12>"] += 1
        lo, hi = (a, b) if a < b else (b, a)
        for k in range(n):
            if k == i or k == i + 1:
                continue
            c = values[k]
            # rank of c relative to the pair
            rank_c = 1 if c < lo else (2 if c < hi else 3)
            if a < b:
                ra, rb = (2, 3) if rank_c == 1 else ((1, 3) if rank_c == 2 else (1, 2))
            else:
                ra, rb = (3, 2) if rank_c == 1 else ((3, 1) if rank_c == 2 else (2, 1))
            if k < i:
                counts[_PREFIX_KEYS[(rank_c, ra, rb)]] += 1
            else:
                counts[_SUFFIX_KEYS[(ra, rb, rank_c)]] += 1
    return counts


_PREFIX_KEYS = {(a, b, c): f"{a}<{b}{c}>" for a, b, c in itertools.permutations((1, 2, 3))}
_SUFFIX_KEYS = {(a, b, c): f"<{a}{b}>{c}" for a, b, c in itertools.permutations((1, 2, 3))}
_ADJACENT_KEYS = ("<12>", "<21>") + tuple(_PREFIX_KEYS.values()) + tuple(_SUFFIX_KEYS.values())
ADJACENT_KEYS = frozenset(_ADJACENT_KEYS)


def count_many(patterns: Sequence[VincularPattern], sigma: Permutation) -> Dict[VincularPattern, int]:
    """Counts for several patterns, sharing one adjacent-pair pass where possible."""
    profile: Optional[Dict[str, int]] = None
    out: Dict[VincularPattern, int] = {}
    for p in patterns:
        key = str(p)
        if key in ADJACENT_KEYS:
            if profile is None:
                profile = adjacent_profile(sigma.values)
            out[p] = profile[key]
        else:
            out[p] = count_occurrences(p, sigma)
    return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _ends_classical(word: List[int], pi: Tuple[int, ...]) -> bool:
    """Does word contain the classical pattern pi with an occurrence ending at its last letter?"""
    m = len(pi)
    if m > len(word):
        return False
    if m == 1:
        return True
    x = word[-1]
    if m == 2:
        if pi == (1, 2):
            return any(y < x for y in word[:-1])
        return any(y > x for y in word[:-1])
    # m == 3
    a, b, c = pi
    k = len(word) - 1
    for j in range(1, k):
        y = word[j]
        if (y < x) != (b < c):
            continue
        for i in range(j):
            z = word[i]
            if (z < y) == (a < b) and (z < x) == (a < c):
                return True
    return False


def enumerate_avoiders(
    n: int,
    patterns: Iterable[VincularPattern],
    prefix: Sequence[int] = (),
) -> Iterator[Permutation]:
    """
    Stream S_n(Π) in lexicographic order.

    Classical members of length at most three prune the prefix tree; every
    other member is checked on complete words. A non-empty prefix restricts
    the stream to the permutations starting with it, so the shards of
    `shards(n, depth)` partition S_n(Π) in order.
    """
    patterns = list(patterns)
    pruning = [p.pi for p in patterns if p.is_classical() and p.m <= 3]
    post = [p for p in patterns if not (p.is_classical() and p.m <= 3)]
    prefix = list(prefix)
    if len(prefix) > n or len(set(prefix)) != len(prefix) or any(not 1 <= v <= n for v in prefix):
        return
    word: List[int] = []
    used = [False] * (n + 1)

    def dfs() -> Iterator[Permutation]:
        k = len(word)
        if k == n:
            sigma = Permutation(tuple(word))
            if not post or avoids(sigma, post):
                yield sigma
            return
        choices = (prefix[k],) if k < len(prefix) else range(1, n + 1)
        for x in choices:
            if used[x]:
                continue
            word.append(x)
            if not any(_ends_classical(word, pi) for pi in pruning):
                used[x] = True
                yield from dfs()
                used[x] = False
            word.pop()

    yield from dfs()


def shards(n: int, depth: int = 1) -> List[Tuple[int, ...]]:
    """Lexicographically ordered prefixes that partition the search tree."""
    return list(itertools.permutations(range(1, n + 1), min(depth, n)))


def count_avoiders(n: int, patterns: Iterable[VincularPattern]) -> int:
    return sum(1 for _ in enumerate_avoiders(n, patterns))
