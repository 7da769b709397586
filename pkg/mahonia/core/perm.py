"""
Permutation value type and the operations every other module builds on.

Positions and values are one-indexed as in the usual one-line notation
σ = σ(1)σ(2)⋯σ(n). The empty permutation is a valid value.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from mahonia.errors import PermutationError, SchemaMismatchError

EMPTY_WORDS = ("", "e", "-", "∅")


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of [n] in one-line notation."""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise PermutationError(f"not a permutation of [{len(values)}]: {values}")
        object.__setattr__(self, "values", values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse the one-line text form.

        Examples:
        - "246153" -> 246153
        - "10,2,3,4,5,6,7,8,9,1" -> comma-separated form used when n > 9
        - "" or "∅" -> the empty permutation
        """
        text = text.strip()
        if text in EMPTY_WORDS:
            return cls(())
        parts = text.split(",") if "," in text else list(text)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            if isinstance(e, PermutationError):
                raise
            raise PermutationError(f"cannot read permutation from {text!r}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __call__(self, i: int) -> int:
        """σ(i) for 1 ≤ i ≤ n."""
        if not 1 <= i <= len(self.values):
            raise PermutationError(f"position {i} outside [1, {len(self.values)}]")
        return self.values[i - 1]

    def __str__(self) -> str:
        if len(self.values) > 9:
            return ",".join(str(v) for v in self.values)
        return "".join(str(v) for v in self.values)

    def to_list(self) -> List[int]:
        return list(self.values)

    def reverse(self) -> "Permutation":
        return Permutation(self.values[::-1])

    def complement(self) -> "Permutation":
        n1 = len(self.values) + 1
        return Permutation(tuple(n1 - v for v in self.values))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.values)
        for pos, v in enumerate(self.values, start=1):
            inv[v - 1] = pos
        return Permutation(tuple(inv))


def standardize(word: Sequence[int]) -> Permutation:
    """Relabel distinct integers to the order-isomorphic permutation of [k]."""
    rank = {v: r for r, v in enumerate(sorted(word), start=1)}
    return Permutation(tuple(rank[v] for v in word))


# ---------------------------------------------------------------------------
# Trivial bijections
# ---------------------------------------------------------------------------

_OP_ALIASES = {
    "r": "r", "reverse": "r",
    "c": "c", "complement": "c",
    "i": "i", "inverse": "i",
    "e": "", "identity": "",
}

# The dihedral group of order 8 generated by r, c and i.
TRIVIAL_WORDS = ("", "r", "c", "rc", "i", "ri", "ci", "rci")


def _op_letters(op: str) -> str:
    op = op.strip().lower()
    if op in _OP_ALIASES:
        return _OP_ALIASES[op]
    for sep in ("∘", ",", " "):
        if sep in op:
            return "".join(_op_letters(part) for part in op.split(sep) if part)
    if all(ch in "rcie" for ch in op):
        return op.replace("e", "")
    raise PermutationError(f"unknown trivial operation {op!r}")


def apply_trivial(op: str, sigma: Permutation) -> Permutation:
    """
    Apply a composite of reverse (r), complement (c) and inverse (i).

    The word composes like functions, rightmost first: "ri" is the reverse
    of the inverse. Full names may be joined with "∘" or ",".
    """
    result = sigma
    for letter in reversed(_op_letters(op)):
        if letter == "r":
            result = result.reverse()
        elif letter == "c":
            result = result.complement()
        elif letter == "i":
            result = result.inverse()
    return result


def dihedral_orbit(sigma: Permutation) -> FrozenSet[Permutation]:
    return frozenset(apply_trivial(word, sigma) for word in TRIVIAL_WORDS)


# ---------------------------------------------------------------------------
# Inflation
# ---------------------------------------------------------------------------

def inflate(tau: Permutation, blocks: Sequence[Permutation]) -> Permutation:
    """
    Replace each entry τ(i) by a block order-isomorphic to blocks[i].

    Example: 231[21,1,213] = 546213. Blocks may be empty.
    """
    if len(blocks) != tau.n:
        raise PermutationError(f"skeleton {tau} needs {tau.n} blocks, got {len(blocks)}")
    sizes = [b.n for b in blocks]
    values: List[int] = []
    for i, block in enumerate(blocks):
        offset = sum(sizes[j] for j in range(tau.n) if tau.values[j] < tau.values[i])
        values.extend(v + offset for v in block.values)
    return Permutation(tuple(values))


SCHEMAS: Dict[str, Tuple[int, ...]] = {
    "around_max": (2, 3, 1),    # 231[σ1, 1, σ2]
    "around_first": (2, 1, 3),  # 213[1, σ1, σ2]
    "around_last": (1, 3, 2),   # 132[σ1, σ2, 1]
    "around_min": (2, 1, 3),    # 213[σ1, 1, σ2]
}

_ONE = Permutation((1,))


def block_decompose(sigma: Permutation, schema: str) -> Tuple[Permutation, List[Permutation]]:
    """
    Split σ into the three-block inflation form named by schema.

    Returns (skeleton, blocks) with inflate(skeleton, blocks) == σ. The
    skeleton is always the three-letter pattern of the schema; the blocks
    that are not the pivot may be empty.
    """
    if schema not in SCHEMAS:
        raise SchemaMismatchError(schema, 0, f"unknown schema, expected one of {sorted(SCHEMAS)}")
    if sigma.n == 0:
        raise SchemaMismatchError(schema, 0, "empty permutation has no pivot")
    values = sigma.values
    n = sigma.n
    skeleton = Permutation(SCHEMAS[schema])

    if schema == "around_max":
        p = values.index(n)
        left, right = values[:p], values[p + 1:]
        if left and right:
            low = min(left)
            for j, v in enumerate(right, start=p + 2):
                if v > low:
                    raise SchemaMismatchError(schema, j, f"{v} exceeds a letter left of the maximum")
        return skeleton, [standardize(left), _ONE, standardize(right)]

    if schema == "around_first":
        a = values[0]
        middle, right = values[1:a], values[a:]
        for j, v in enumerate(middle, start=2):
            if v > a:
                raise SchemaMismatchError(schema, j, f"{v} exceeds the first letter {a}")
        return skeleton, [_ONE, standardize(middle), standardize(right)]

    if schema == "around_last":
        last = values[-1]
        left, middle = values[:last - 1], values[last - 1:-1]
        for j, v in enumerate(left, start=1):
            if v > last:
                raise SchemaMismatchError(schema, j, f"{v} exceeds the last letter {last}")
        return skeleton, [standardize(left), standardize(middle), _ONE]

    p = values.index(1)
    left, right = values[:p], values[p + 1:]
    if left and right:
        high = max(left)
        for j, v in enumerate(right, start=p + 2):
            if v < high:
                raise SchemaMismatchError(schema, j, f"{v} is below a letter left of the minimum")
    return skeleton, [standardize(left), _ONE, standardize(right)]


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DescentProfile:
    """Descent/ascent positions, their bottom and top values, maj and des."""

    descents: FrozenSet[int]
    ascents: FrozenSet[int]
    descent_bottoms: FrozenSet[int]
    descent_tops: FrozenSet[int]
    ascent_bottoms: FrozenSet[int]
    ascent_tops: FrozenSet[int]
    maj: int
    des: int


@dataclass(frozen=True)
class ExtremaProfile:
    """Left-to-right extrema (values in position order), peaks and valleys."""

    lr_maxima: Tuple[int, ...]
    lr_minima: Tuple[int, ...]
    peaks: FrozenSet[int]
    valleys: FrozenSet[int]

    @property
    def lrmax(self) -> int:
        return len(self.lr_maxima)

    @property
    def lrmin(self) -> int:
        return len(self.lr_minima)


def descent_profile(sigma: Permutation) -> DescentProfile:
    v = sigma.values
    des_pos = [i for i in range(1, sigma.n) if v[i - 1] > v[i]]
    asc_pos = [i for i in range(1, sigma.n) if v[i - 1] < v[i]]
    return DescentProfile(
        descents=frozenset(des_pos),
        ascents=frozenset(asc_pos),
        descent_bottoms=frozenset(v[i] for i in des_pos),
        descent_tops=frozenset(v[i - 1] for i in des_pos),
        ascent_bottoms=frozenset(v[i - 1] for i in asc_pos),
        ascent_tops=frozenset(v[i] for i in asc_pos),
        maj=sum(des_pos),
        des=len(des_pos),
    )


def extrema_profile(sigma: Permutation) -> ExtremaProfile:
    v = sigma.values
    lr_max: List[int] = []
    lr_min: List[int] = []
    for x in v:
        if not lr_max or x > lr_max[-1]:
            lr_max.append(x)
        if not lr_min or x < lr_min[-1]:
            lr_min.append(x)
    # peaks and valleys are interior letters only
    peaks = frozenset(v[i] for i in range(1, sigma.n - 1) if v[i - 1] < v[i] > v[i + 1])
    valleys = frozenset(v[i] for i in range(1, sigma.n - 1) if v[i - 1] > v[i] < v[i + 1])
    return ExtremaProfile(tuple(lr_max), tuple(lr_min), peaks, valleys)


def left_to_right_minima(sigma: Permutation) -> List[Tuple[int, int]]:
    """(position, value) pairs of the left-to-right minima."""
    out: List[Tuple[int, int]] = []
    for pos, x in enumerate(sigma.values, start=1):
        if not out or x < out[-1][1]:
            out.append((pos, x))
    return out


def right_to_left_minima(sigma: Permutation) -> List[Tuple[int, int]]:
    """(position, value) pairs of the right-to-left minima, left to right."""
    out: List[Tuple[int, int]] = []
    for pos in range(sigma.n, 0, -1):
        x = sigma.values[pos - 1]
        if not out or x < out[-1][1]:
            out.append((pos, x))
    return out[::-1]
