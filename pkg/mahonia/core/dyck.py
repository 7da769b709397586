"""
Dyck paths, their statistics and the path bijections.

Steps are one-indexed. After step i the path sits at the point (i, h_i);
pos and height of a peak or valley are the coordinates of its turning
point. The height of a step is the y-coordinate where it starts, so an
up-step starts at its lowest point and a down-step at its highest.
"""

import logging
from dataclasses import asdict, dataclass
from math import comb
from typing import Dict, Iterator, List, Tuple

from mahonia.core.patterns import require_avoids
from mahonia.core.perm import Permutation, block_decompose, descent_profile, inflate
from mahonia.errors import DyckPathError, InternalInvariantError, MahoniaError

logger = logging.getLogger(__name__)

EMPTY_WORDS = ("", "e", "-", "∅")


@dataclass(frozen=True)
class DyckPath:
    """A word over {U, D} that never goes below the x-axis and ends on it."""

    steps: str = ""

    def __post_init__(self):
        steps = self.steps.strip().upper()
        height = 0
        for i, step in enumerate(steps, start=1):
            if step not in "UD":
                raise DyckPathError(f"step {i} is {step!r}, expected U or D")
            height += 1 if step == "U" else -1
            if height < 0:
                raise DyckPathError(f"{steps} goes below the axis at step {i}")
        if height != 0:
            raise DyckPathError(f"{steps} ends at height {height}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def parse(cls, text: str) -> "DyckPath":
        text = text.strip()
        return cls("" if text in EMPTY_WORDS else text)

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps

    def __add__(self, other: "DyckPath") -> "DyckPath":
        return DyckPath(self.steps + other.steps)

    def heights(self) -> List[int]:
        """h_0, h_1, …, h_{2n}."""
        out = [0]
        for step in self.steps:
            out.append(out[-1] + (1 if step == "U" else -1))
        return out

    def matching(self) -> Dict[int, int]:
        """One-indexed step -> index of its matching step."""
        stack: List[int] = []
        match: Dict[int, int] = {}
        for i, step in enumerate(self.steps, start=1):
            if step == "U":
                stack.append(i)
            else:
                j = stack.pop()
                match[i], match[j] = j, i
        return match

    def components(self) -> List["DyckPath"]:
        """Primitive factors U P_1 D, U P_2 D, …"""
        out, start, height = [], 0, 0
        for i, step in enumerate(self.steps):
            height += 1 if step == "U" else -1
            if height == 0:
                out.append(DyckPath(self.steps[start:i + 1]))
                start = i + 1
        return out

    def first_return(self) -> Tuple["DyckPath", "DyckPath"]:
        """(A, B) with P = U A D B."""
        first = self.components()[0].steps
        return DyckPath(first[1:-1]), DyckPath(self.steps[len(first):])

    def last_return(self) -> Tuple["DyckPath", "DyckPath"]:
        """(X, Y) with P = X U Y D."""
        last = self.components()[-1].steps
        return DyckPath(self.steps[:len(self) - len(last)]), DyckPath(last[1:-1])

    def runs(self) -> List[Tuple[int, int]]:
        """(e_i, f_i) with P = U^{e_1} D^{f_1} U^{e_2} D^{f_2} ⋯."""
        out: List[Tuple[int, int]] = []
        i, steps = 0, self.steps
        while i < len(steps):
            e = 0
            while i < len(steps) and steps[i] == "U":
                e, i = e + 1, i + 1
            f = 0
            while i < len(steps) and steps[i] == "D":
                f, i = f + 1, i + 1
            out.append((e, f))
        return out

    @classmethod
    def from_runs(cls, runs: List[Tuple[int, int]]) -> "DyckPath":
        return cls("".join("U" * e + "D" * f for e, f in runs))


def enumerate_dyck(n: int) -> Iterator[DyckPath]:
    """Dyck_n in lexicographic order (D < U)."""
    word: List[str] = []

    def extend(ups: int, downs: int) -> Iterator[DyckPath]:
        if ups == downs == n:
            yield DyckPath("".join(word))
            return
        if downs < ups:
            word.append("D")
            yield from extend(ups, downs + 1)
            word.pop()
        if ups < n:
            word.append("U")
            yield from extend(ups + 1, downs)
            word.pop()

    yield from extend(0, 0)


# ---------------------------------------------------------------------------
# Annotations and statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Turn:
    index: int
    pos: int
    height: int


@dataclass(frozen=True)
class StepAnnotations:
    """Per-step heights, peaks, valleys, tunnels and masses of a path."""

    step_heights: Tuple[int, ...]
    peaks: Tuple[Turn, ...]
    valleys: Tuple[Turn, ...]
    tunnels: Tuple[Tuple[int, int], ...]
    up_mass: Dict[int, int]
    down_mass: Dict[int, int]


def annotate(path: DyckPath) -> StepAnnotations:
    steps = path.steps
    h = path.heights()
    size = len(steps)
    peaks = tuple(Turn(i, i, h[i]) for i in range(1, size) if steps[i - 1] == "U" and steps[i] == "D")
    valleys = tuple(Turn(i, i, h[i]) for i in range(1, size) if steps[i - 1] == "D" and steps[i] == "U")

    tunnels = []
    for v in valleys:
        x = max(j for j in range(v.pos) if h[j] == v.height)
        tunnels.append((x, v.pos))

    match = path.matching()
    up_mass: Dict[int, int] = {}
    down_mass: Dict[int, int] = {}
    for i in range(1, size + 1):
        if steps[i - 1] == "U":
            following_up = i < size and steps[i] == "U"
            up_mass[i] = (match[i] - match[i + 1] - 1) // 2 if following_up else 0
        else:
            preceding_down = i > 1 and steps[i - 2] == "D"
            down_mass[i] = (match[i - 1] - match[i] - 1) // 2 if preceding_down else 0

    return StepAnnotations(
        step_heights=tuple(h[:-1]),
        peaks=peaks,
        valleys=valleys,
        tunnels=tuple(tunnels),
        up_mass=up_mass,
        down_mass=down_mass,
    )


@dataclass(frozen=True)
class PathStatistics:
    dr: int
    dd: int
    npea: int
    nval: int
    spea: int
    stun: int
    sht: int
    sdowns: int
    area: int
    Umass: int
    Dmass: int
    beta: int
    valley_pos_height: int
    peak_excedance: int

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


def path_statistics(path: DyckPath) -> PathStatistics:
    """
    All path statistics at once.

    Examples:
    - area(UUUDUUDDDD) -> 8
    - beta(UDUUDD) -> 1
    - every statistic of UD is 0 except npea = 1
    """
    steps = path.steps
    ann = annotate(path)
    ups = [ann.step_heights[i] for i, s in enumerate(steps) if s == "U"]
    downs = [ann.step_heights[i] for i, s in enumerate(steps) if s == "D"]
    d_before = [0]
    for s in steps:
        d_before.append(d_before[-1] + (s == "D"))
    return PathStatistics(
        dr=sum(1 for i in range(len(steps) - 1) if steps[i:i + 2] == "UU"),
        dd=sum(1 for i in range(len(steps) - 1) if steps[i:i + 2] == "DD"),
        npea=len(ann.peaks),
        nval=len(ann.valleys),
        spea=sum(p.height - 1 for p in ann.peaks),
        stun=sum((v - x) // 2 for x, v in ann.tunnels),
        sht=sum((h + 1) // 2 for h in ups),
        sdowns=sum(h // 2 for h in downs),
        area=sum(ups),
        Umass=sum(ann.up_mass.values()),
        Dmass=sum(ann.down_mass.values()),
        beta=sum(d_before[v.pos] for v in ann.valleys),
        valley_pos_height=sum((v.pos - v.height) // 2 for v in ann.valleys),
        peak_excedance=sum(1 + (p.pos - p.height) // 2 for p in ann.peaks if p.height >= 2),
    )


def down_step_binomial_sum(path: DyckPath, k: int) -> int:
    """Σ over down-steps of binomial(height - 1, k)."""
    ann = annotate(path)
    return sum(comb(h - 1, k) for h, s in zip(ann.step_heights, path.steps) if s == "D" and h >= 1)


# ---------------------------------------------------------------------------
# Δ: pattern-avoiding permutations to paths
# ---------------------------------------------------------------------------

DELTA_VARIANTS: Dict[str, Tuple[str, str]] = {
    "A231": ("231", "around_first"),
    "A312": ("312", "around_last"),
    "A132": ("132", "around_max"),
}

_SKELETONS = {
    "A231": Permutation((2, 1, 3)),
    "A312": Permutation((1, 3, 2)),
    "A132": Permutation((2, 3, 1)),
}
_ONE = Permutation((1,))


def _variant(variant: str) -> Tuple[str, str]:
    if variant not in DELTA_VARIANTS:
        raise MahoniaError(f"unknown delta variant {variant!r}; expected one of {sorted(DELTA_VARIANTS)}")
    return DELTA_VARIANTS[variant]


def _delta(sigma: Permutation, variant: str, schema: str) -> str:
    if sigma.n == 0:
        return ""
    _, blocks = block_decompose(sigma, schema)
    if variant == "A231":
        _, s1, s2 = blocks
        return "U" + _delta(s1, variant, schema) + "D" + _delta(s2, variant, schema)
    if variant == "A312":
        s1, s2, _ = blocks
        return _delta(s1, variant, schema) + "U" + _delta(s2, variant, schema) + "D"
    s1, _, s2 = blocks
    return "U" + _delta(s1, variant, schema) + "D" + _delta(s2, variant, schema)


def delta(sigma: Permutation, variant: str) -> DyckPath:
    """
    Δ for the three avoidance classes.

    A231: σ = 213[1,σ1,σ2] -> U Δ(σ1) D Δ(σ2)
    A312: σ = 132[σ1,σ2,1] -> Δ(σ1) U Δ(σ2) D
    A132: σ = 231[σ1,1,σ2] -> U Δ(σ1) D Δ(σ2)
    """
    pattern, schema = _variant(variant)
    require_avoids(sigma, pattern)
    return DyckPath(_delta(sigma, variant, schema))


def delta_inv(path: DyckPath, variant: str) -> Permutation:
    _variant(variant)
    if not path.steps:
        return Permutation(())
    skeleton = _SKELETONS[variant]
    if variant == "A312":
        x, y = path.last_return()
        return inflate(skeleton, [delta_inv(x, variant), delta_inv(y, variant), _ONE])
    a, b = path.first_return()
    if variant == "A231":
        return inflate(skeleton, [_ONE, delta_inv(a, variant), delta_inv(b, variant)])
    return inflate(skeleton, [delta_inv(a, variant), _ONE, delta_inv(b, variant)])


# ---------------------------------------------------------------------------
# Γ: 321-avoiders to paths
# ---------------------------------------------------------------------------

def gamma(sigma: Permutation) -> DyckPath:
    """Path with a right turn at (i-1, σ_i) for every weak excedance σ_i ≥ i."""
    require_avoids(sigma, "321")
    x = y = 0
    word = ""
    for i, v in enumerate(sigma.values, start=1):
        if v >= i:
            word += "D" * (i - 1 - x) + "U" * (v - y)
            x, y = i - 1, v
    word += "D" * (sigma.n - x)
    return DyckPath(word)


def gamma_inv(path: DyckPath) -> Permutation:
    n = path.n
    values = [0] * n
    x = y = 0
    for i, step in enumerate(path.steps):
        if step == "U":
            y += 1
            if i + 1 < len(path.steps) and path.steps[i + 1] == "D":
                values[x] = y
        else:
            x += 1
    rest = iter(sorted(set(range(1, n + 1)) - set(values)))
    return Permutation(tuple(v if v else next(rest) for v in values))


# ---------------------------------------------------------------------------
# δ pairing and Ψ
# ---------------------------------------------------------------------------

def delta_pair(q: DyckPath, r: DyckPath) -> DyckPath:
    """Merge (Q, R) into one path of size |Q| + |R| + 1."""
    if not q.steps:
        return DyckPath("UD") + r
    a = [e for e, _ in q.runs()]
    b = [f for _, f in q.runs()]
    if not r.steps:
        runs = [(a[0] + 1, b[0] + 1)] + q.runs()[1:]
        return DyckPath.from_runs(runs)
    c = [e for e, _ in r.runs()]
    d = [f for _, f in r.runs()]
    s = len(a)
    runs = [(a[0] + 1, 1)]
    runs += [(a[j + 1], b[j]) for j in range(s - 1)]
    runs += [(c[0], b[s - 1] + d[0])]
    runs += [(c[j], d[j]) for j in range(1, len(c))]
    return DyckPath.from_runs(runs)


def delta_pair_inv(path: DyckPath) -> Tuple[DyckPath, DyckPath]:
    """Inverse of delta_pair; path must be nonempty."""
    if not path.steps:
        raise DyckPathError("the empty path is not a merged pair")
    runs = path.runs()
    e1, f1 = runs[0]
    if e1 == 1:
        return DyckPath(), DyckPath(path.steps[2:])
    if f1 >= 2:
        return DyckPath.from_runs([(e1 - 1, f1 - 1)] + runs[1:]), DyckPath()
    height = e1 - 1
    s = 1
    while runs[s][1] <= height:
        height += runs[s][0] - runs[s][1]
        s += 1
    a = [e1 - 1] + [runs[j][0] for j in range(1, s)]
    b = [runs[j][1] for j in range(1, s)] + [height]
    q = DyckPath.from_runs(list(zip(a, b)))
    r = DyckPath.from_runs([(runs[s][0], runs[s][1] - height)] + runs[s + 1:])
    return q, r


def psi(path: DyckPath) -> DyckPath:
    """Ψ: UDΨ(Q) if R = ∅, UΨ(R)D if Q = ∅, else UΨ(Q)DΨ(R)."""
    if not path.steps:
        return path
    q, r = delta_pair_inv(path)
    if not r.steps:
        return DyckPath("UD" + psi(q).steps)
    if not q.steps:
        return DyckPath("U" + psi(r).steps + "D")
    return DyckPath("U" + psi(q).steps + "D" + psi(r).steps)


def psi_inv(path: DyckPath) -> DyckPath:
    if not path.steps:
        return path
    a, b = path.first_return()
    if not a.steps:
        return delta_pair(psi_inv(b), DyckPath())
    if not b.steps:
        return delta_pair(DyckPath(), psi_inv(a))
    return delta_pair(psi_inv(a), psi_inv(b))


# ---------------------------------------------------------------------------
# Φ, Θ, Λ
# ---------------------------------------------------------------------------

def _split_segments(steps: str, start: int, level: int, count: int) -> Tuple[List[str], int]:
    """
    Read `count` segments starting at index `start` at height `level`.

    Segment j ends with the down-step that takes the path from level - j + 1
    to level - j; that down-step is consumed but not returned.
    """
    segments = []
    i = start
    for j in range(count):
        floor = level - j
        height, begin = floor, i
        while True:
            height += 1 if steps[i] == "U" else -1
            i += 1
            if height < floor:
                break
        segments.append(steps[begin:i - 1])
    return segments, i


def phi_path(path: DyckPath) -> DyckPath:
    """UP_1D ⋯ UP_mD -> U^m D Φ(P_1) D Φ(P_2) ⋯ D Φ(P_m)."""
    parts = [c.steps[1:-1] for c in path.components()]
    if not parts:
        return path
    m = len(parts)
    inner = [phi_path(DyckPath(p)).steps for p in parts]
    return DyckPath("U" * m + "D" + "D".join(inner))


def phi_path_inv(path: DyckPath) -> DyckPath:
    steps = path.steps
    if not steps:
        return path
    m = path.runs()[0][0]
    segments, end = _split_segments(steps, m + 1, m - 1, m - 1)
    segments.append(steps[end:])
    return DyckPath("".join("U" + phi_path_inv(DyckPath(s)).steps + "D" for s in segments))


def _theta_component(component: DyckPath) -> str:
    inner = DyckPath(component.steps[1:-1]).components()
    s = len(inner)
    body = "".join(theta(DyckPath(q.steps[1:-1])).steps + "D" for q in inner)
    return "U" * (s + 1) + "D" + body


def theta(path: DyckPath) -> DyckPath:
    """Per component U[UQ_1D ⋯ UQ_sD]D -> U^{s+1} D Θ(Q_1) D ⋯ Θ(Q_s) D."""
    return DyckPath("".join(_theta_component(c) for c in path.components()))


def _theta_inv_component(component: DyckPath) -> str:
    steps = component.steps
    s = component.runs()[0][0] - 1
    segments, _ = _split_segments(steps, s + 2, s, s)
    inner = "".join("U" + theta_inv(DyckPath(q)).steps + "D" for q in segments)
    return "U" + inner + "D"


def theta_inv(path: DyckPath) -> DyckPath:
    return DyckPath("".join(_theta_inv_component(c) for c in path.components()))


def lambda_map(path: DyckPath) -> DyckPath:
    """Λ = Θ^{-1} ∘ Φ ∘ Ψ."""
    return theta_inv(phi_path(psi(path)))


def lambda_inv(path: DyckPath) -> DyckPath:
    return psi_inv(phi_path_inv(theta(path)))


# ---------------------------------------------------------------------------
# Ω: 231-avoiders to paths
# ---------------------------------------------------------------------------

def omega_stump(sigma: Permutation) -> DyckPath:
    """
    Alternate U-runs read off Des(σ^{-1}) with D-runs read off Des(σ).

    Example: 213 -> UDUUDD.
    """
    require_avoids(sigma, "231")
    n = sigma.n
    des = sorted(descent_profile(sigma).descents) + [n]
    ides = sorted(descent_profile(sigma.inverse()).descents) + [n]
    if len(des) != len(ides):
        raise InternalInvariantError(f"des(σ) != des(σ^-1) for {sigma}")
    word, prev, iprev = "", 0, 0
    for i, ip in zip(des, ides):
        word += "U" * (ip - iprev) + "D" * (i - prev)
        prev, iprev = i, ip
    try:
        return DyckPath(word)
    except DyckPathError as e:
        raise InternalInvariantError(f"Ω({sigma}) is not a Dyck path: {e}")


def _unstump(runs: List[Tuple[int, int]]) -> Permutation:
    if not runs:
        return Permutation(())
    (a1, b1), rest = runs[0], runs[1:]
    if b1 >= 2 or not rest:
        beta = _unstump([(a1 - 1, b1 - 1)] + rest if b1 >= 2 else [])
        return Permutation((1,) + tuple(v + 1 for v in beta.values))
    heights, h = [], 0
    for a, b in runs:
        h += a - b
        heights.append(h)
    k = next((i for i in range(1, len(runs)) if heights[i] < runs[i][0] - 1), len(runs) - 1)
    alpha_runs = [(runs[j][0], runs[j + 1][1]) for j in range(k - 1)] + [(runs[k - 1][0], heights[k - 1] + 1)]
    beta_runs = [(runs[k][0] - 1, runs[k][1] - heights[k - 1] - 1)] + runs[k + 1:]
    alpha = _unstump(alpha_runs)
    beta = _unstump([r for r in beta_runs if r != (0, 0)])
    v = alpha.n + 1
    return Permutation((v,) + alpha.values + tuple(x + v for x in beta.values))


def omega_stump_inv(path: DyckPath) -> Permutation:
    """
    Split σ = v α β with α below v and β above it.

    Write P = U^{A_1} D^{B_1} ⋯ U^{A_r} D^{B_r} with h_i the height after
    the i-th D-run. B_1 ≥ 2 means v = 1. Otherwise α owns the first k runs,
    where k + 1 is the first i ≥ 2 with h_i < A_i - 1 (k = r - 1 if none):
    Ω(α) has U-runs A_1..A_k and D-runs B_2..B_k, h_k + 1, and Ω(β) is the
    rest with A_{k+1} and B_{k+1} cut by 1 and h_k + 1.

    Example: UDUUDD -> 213.
    """
    sigma = _unstump(path.runs())
    if omega_stump(sigma) != path:
        raise InternalInvariantError(f"Ω^-1({path}) = {sigma} does not map back")
    return sigma

