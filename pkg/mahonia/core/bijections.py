"""
Permutation-level bijections: the S(321) involution and its S(123) twin,
the S(132) and S(231) descent remaps, Simion–Schmidt, reconstruction of
231-avoiders from partial data, and the composite inv -> mad map.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from mahonia.core.dyck import delta_inv, gamma, phi_path, psi
from mahonia.core.patterns import VincularPattern, classical, count_occurrences, first_occurrence, require_avoids
from mahonia.core.perm import (
    Permutation,
    block_decompose,
    descent_profile,
    extrema_profile,
    inflate,
    left_to_right_minima,
    right_to_left_minima,
    standardize,
)
from mahonia.core.polyomino import ShortenedPolyomino, upsilon, upsilon_inv
from mahonia.errors import InternalInvariantError, ReconstructionError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

_ONE = Permutation((1,))
_SKELETON_231 = Permutation((2, 3, 1))


# ---------------------------------------------------------------------------
# φ on S(321) and S(123)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenderedLetters:
    """
    Letters of a 321-avoider whose last factor is not a run of LR maxima.

    fixed holds the (M_k, m_k) descent top/bottom pairs; red letters are
    LR maxima that are not descent tops, blue letters are neither LR maxima
    nor descent bottoms. φ swaps the two colours.
    """

    fixed: Tuple[Pair, ...]
    red: FrozenSet[int]
    blue: FrozenSet[int]


def _factor(values: Sequence[int]) -> List[Tuple[List[int], List[int]]]:
    """u_1 v_1 ⋯ u_t v_t: runs of LR maxima alternating with the rest."""
    factors: List[Tuple[List[int], List[int]]] = []
    top = 0
    for x in values:
        if x > top:
            top = x
            if not factors or factors[-1][1]:
                factors.append(([], []))
            factors[-1][0].append(x)
        else:
            factors[-1][1].append(x)
    return factors


def gender_letters(sigma: Permutation) -> GenderedLetters:
    factors = _factor(sigma.values)
    fixed = tuple((u[-1], v[0]) for u, v in factors if v)
    lr_max = set(extrema_profile(sigma).lr_maxima)
    tops = {m for m, _ in fixed}
    bottoms = {b for _, b in fixed}
    red = frozenset(lr_max - tops)
    blue = frozenset(set(sigma.values) - lr_max - bottoms)
    return GenderedLetters(fixed, red, blue)


def _phi_321(values: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(values)
    if n == 0:
        return values
    if values[0] == 1:
        rest = _phi_321(standardize(values[1:]).values)
        return (1,) + tuple(v + 1 for v in rest)
    factors = _factor(values)
    last_u, last_v = factors[-1]
    if not last_v:
        # trailing LR maxima are the top values
        return _phi_321(values[:n - len(last_u)]) + tuple(last_u)
    letters = gender_letters(Permutation(values))
    tops = [m for m, _ in letters.fixed]
    bottoms = [b for _, b in letters.fixed] + [n + 1]
    out: List[int] = []
    prev_top = 0
    for k, top in enumerate(tops):
        out.extend(sorted(a for a in letters.blue if prev_top < a < top))
        out.append(top)
        out.append(bottoms[k])
        out.extend(sorted(b for b in letters.red if bottoms[k] < b < bottoms[k + 1]))
        prev_top = top
    return tuple(out)


def phi_321(sigma: Permutation) -> Permutation:
    """
    The involution on S_n(321) with maj(φ(σ)) = mak(σ).

    Descent tops and bottoms stay put as pairs; red and blue letters trade
    places.

    Examples:
    - 341625978 -> 415623897
    - 231 -> 312
    """
    require_avoids(sigma, "321")
    return Permutation(_phi_321(sigma.values))


def phi_123(sigma: Permutation) -> Permutation:
    """
    c ∘ φ_321 ∘ r on S_n(123), an involution with maj(φ(σ)) = mak(σ).

    Ascent bottoms and tops of σ come out complemented and swapped.
    """
    require_avoids(sigma, "123")
    return Permutation(_phi_321(sigma.reverse().values)).complement()


# ---------------------------------------------------------------------------
# Simion–Schmidt and the S(132) remap
# ---------------------------------------------------------------------------

def reconstruct_132_from_lrmin(n: int, minima: Sequence[Pair]) -> Permutation:
    """
    The unique 132-avoider with the given (position, value) LR minima.

    Free slots take the smallest unused value larger than the nearest LR
    minimum to their left.

    Raises:
        ReconstructionError: malformed minima or an infeasible fill
    """
    minima = sorted(minima)
    if n == 0 and not minima:
        return Permutation(())
    if not minima or minima[0][0] != 1:
        raise ReconstructionError("the first position is always a left-to-right minimum")
    positions = [p for p, _ in minima]
    values = [v for _, v in minima]
    if len(set(positions)) != len(positions) or positions[-1] > n:
        raise ReconstructionError(f"minima positions {positions} do not fit in [1, {n}]")
    if any(a <= b for a, b in zip(values, values[1:])) or values[-1] != 1 or values[0] > n:
        raise ReconstructionError(f"minima values {values} must decrease to 1")
    placed = dict(minima)
    remaining = sorted(set(range(1, n + 1)) - set(values))
    out: List[int] = []
    current = values[0]
    for pos in range(1, n + 1):
        if pos in placed:
            current = placed[pos]
            out.append(current)
            continue
        larger = [x for x in remaining if x > current]
        if not larger:
            raise ReconstructionError(f"no unused letter above {current} for position {pos}")
        out.append(larger[0])
        remaining.remove(larger[0])
    return Permutation(tuple(out))


def simion_schmidt(sigma: Permutation) -> Permutation:
    """
    S_n(123) -> S_n(132) keeping LR minima in place; preserves head.

    Example: 3142 -> 3124
    """
    require_avoids(sigma, "123")
    return reconstruct_132_from_lrmin(sigma.n, left_to_right_minima(sigma))


def phi_132(sigma: Permutation) -> Permutation:
    """
    S_n(132) -> S_n(132) with maj(φ(σ)) = foze(σ) and LRMin fixed.

    The new descent set is {n - α + 1 : α ∈ DT(σ)}; the descent bottoms,
    largest first, sit right after those descents and the first letter
    stays in front.

    Example: 213 -> 231
    """
    require_avoids(sigma, "132")
    n = sigma.n
    if n == 0:
        return sigma
    profile = descent_profile(sigma)
    new_descents = sorted(n - a + 1 for a in profile.descent_tops)
    bottoms = sorted(profile.descent_bottoms, reverse=True)
    minima = [(1, sigma(1))] + [(d + 1, b) for d, b in zip(new_descents, bottoms)]
    return reconstruct_132_from_lrmin(n, minima)


# ---------------------------------------------------------------------------
# 231-avoiders from partial data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DescentPairData:
    """
    Pair data of a 231-avoider.

    Q: (descent top, descent bottom) pairs; R: (descent top α, number of
    <13>2 occurrences whose middle letter is α); P: (top, bottom) of every
    maximal decreasing run of length at least two.
    """

    n: int
    Q: FrozenSet[Pair] = frozenset()
    R: FrozenSet[Pair] = frozenset()
    P: FrozenSet[Pair] = frozenset()


@dataclass(frozen=True)
class AscentData:
    n: int
    last: int
    ascents: FrozenSet[int]
    ascent_bottoms: FrozenSet[int]


def _decreasing_runs(values: Sequence[int]) -> List[Tuple[int, ...]]:
    runs: List[List[int]] = []
    for i, x in enumerate(values):
        if i and values[i - 1] > x:
            runs[-1].append(x)
        else:
            runs.append([x])
    return [tuple(r) for r in runs if len(r) > 1]


def q_pairs(sigma: Permutation) -> FrozenSet[Pair]:
    v = sigma.values
    return frozenset((v[i], v[i + 1]) for i in range(sigma.n - 1) if v[i] > v[i + 1])


def p_pairs(sigma: Permutation) -> FrozenSet[Pair]:
    return frozenset((run[0], run[-1]) for run in _decreasing_runs(sigma.values))


def restricted_count(sigma: Permutation, alpha: int) -> int:
    """Occurrences of <13>2 whose middle letter is α."""
    pattern = VincularPattern((1, 3, 2), frozenset({1}), (None, alpha, None))
    return count_occurrences(pattern, sigma)


def r_pairs(sigma: Permutation) -> FrozenSet[Pair]:
    return frozenset((a, restricted_count(sigma, a)) for a in descent_profile(sigma).descent_tops)


def descent_pair_data(sigma: Permutation) -> DescentPairData:
    return DescentPairData(n=sigma.n, Q=q_pairs(sigma), R=r_pairs(sigma), P=p_pairs(sigma))


def rl_minima_data(sigma: Permutation) -> Tuple[int, List[Pair]]:
    return sigma.n, right_to_left_minima(sigma)


def ascent_data(sigma: Permutation) -> AscentData:
    profile = descent_profile(sigma)
    last = sigma.values[-1] if sigma.n else 0
    return AscentData(sigma.n, last, profile.ascents, profile.ascent_bottoms)


def _assemble(n: int, runs: Iterable[Tuple[int, ...]]) -> Permutation:
    """
    Lay out known decreasing runs by increasing last letter; every other
    letter goes, in increasing order, before the first run whose last
    letter exceeds it, or at the end.
    """
    runs = sorted(runs, key=lambda r: r[-1])
    used = [x for r in runs for x in r]
    if len(set(used)) != len(used) or any(not 1 <= x <= n for x in used):
        raise ReconstructionError(f"runs {runs} reuse letters or leave [1, {n}]")
    singles = sorted(set(range(1, n + 1)) - set(used))
    out: List[int] = []
    floor = 0
    for run in runs:
        out.extend(x for x in singles if floor < x < run[-1])
        out.extend(run)
        floor = run[-1]
    out.extend(x for x in singles if x > floor)
    sigma = Permutation(tuple(out))
    if first_occurrence(classical("231"), sigma) is not None:
        raise ReconstructionError(f"data forces a 231 occurrence in {sigma}")
    if sorted(_decreasing_runs(sigma.values)) != sorted(tuple(r) for r in runs):
        raise ReconstructionError(f"runs {runs} are not the maximal decreasing runs of {sigma}")
    return sigma


def _check_pairs(n: int, pairs: Iterable[Pair]) -> None:
    for top, bottom in pairs:
        if not (1 <= bottom < top <= n):
            raise ReconstructionError(f"pair ({top}, {bottom}) needs 1 <= bottom < top <= {n}")


def _runs_from_q(n: int, pairs: FrozenSet[Pair]) -> List[Tuple[int, ...]]:
    _check_pairs(n, pairs)
    below: Dict[int, int] = {}
    above: Dict[int, int] = {}
    for top, bottom in pairs:
        if top in below or bottom in above:
            raise ReconstructionError(f"letter used twice in descent pairs {sorted(pairs)}")
        below[top] = bottom
        above[bottom] = top
    runs = []
    for start in sorted(t for t in below if t not in above):
        run = [start]
        while run[-1] in below:
            run.append(below[run[-1]])
        runs.append(tuple(run))
    return runs


def _runs_from_p(n: int, pairs: FrozenSet[Pair]) -> List[Tuple[int, ...]]:
    """Fill each run, latest first, with every free letter between its ends."""
    _check_pairs(n, pairs)
    ordered = sorted(pairs, key=lambda pv: pv[1])
    used = {x for pv in ordered for x in pv}
    runs = []
    for peak, valley in reversed(ordered):
        middle = [x for x in range(peak - 1, valley, -1) if x not in used]
        used.update(middle)
        runs.append((peak, *middle, valley))
    return runs


def _runs_from_r(n: int, pairs: FrozenSet[Pair]) -> List[Tuple[int, ...]]:
    """
    A top with a positive count c is a peak whose run ends at α - c. Among
    the zero-count tops, the largest lying outside every peak interval heads
    a run ending at 1; the rest sit inside the innermost interval around them.
    """
    tops = [a for a, _ in pairs]
    if len(set(tops)) != len(tops) or any(not 1 < a <= n or c < 0 for a, c in pairs):
        raise ReconstructionError(f"malformed restricted-count pairs {sorted(pairs)}")
    ends = [(a, a - c) for a, c in pairs if c > 0]
    _check_pairs(n, ends)
    interior = [a for a, c in pairs if c == 0]
    outside = [a for a in interior if not any(v < a < p for p, v in ends)]
    if outside:
        ends.append((max(outside), 1))
        interior.remove(max(outside))
    members: Dict[Pair, List[int]] = {pv: [] for pv in ends}
    for a in interior:
        around = [(p, v) for p, v in ends if v < a < p]
        if not around:
            raise ReconstructionError(f"descent top {a} lies in no run")
        members[min(around, key=lambda pv: pv[0] - pv[1])].append(a)
    return [(p, *sorted(members[(p, v)], reverse=True), v) for p, v in ends]


def reconstruct_231(data, variant: str) -> Permutation:
    """
    Rebuild a 231-avoider from one of five kinds of partial data.

    - "i": (n, [(position, value), ...]) right-to-left minima
    - "ii": AscentData (last letter, ascents, ascent bottoms)
    - "iii": DescentPairData.P, run tops and bottoms
    - "iv": DescentPairData.Q, descent top/bottom pairs
    - "v": DescentPairData.R, descent tops with restricted <13>2 counts

    Variant "iii" fills every run with all free letters between its ends,
    so it inverts P only on avoiders whose runs are saturated that way
    (312 and 321 share P = {(3, 1)} and come back as 321).

    Raises:
        ReconstructionError: inconsistent data
    """
    if variant == "i":
        n, minima = data
        # the reverse of a 231-avoider avoids 132; its LR minima are ours
        mirrored = [(n + 1 - p, v) for p, v in minima]
        sigma = reconstruct_132_from_lrmin(n, mirrored).reverse()
    elif variant == "ii":
        n = data.n
        if n == 0:
            return Permutation(())
        positions = sorted(set(data.ascents) | {n})
        values = sorted(set(data.ascent_bottoms) | {data.last})
        if len(positions) != len(values):
            raise ReconstructionError(f"{len(positions)} positions for {len(values)} minima")
        return reconstruct_231((n, list(zip(positions, values))), "i")
    elif variant == "iii":
        sigma = _assemble(data.n, _runs_from_p(data.n, data.P))
    elif variant == "iv":
        sigma = _assemble(data.n, _runs_from_q(data.n, data.Q))
    elif variant == "v":
        sigma = _assemble(data.n, _runs_from_r(data.n, data.R))
    else:
        raise ReconstructionError(f"unknown reconstruction variant {variant!r}; expected i, ii, iii, iv or v")
    if first_occurrence(classical("231"), sigma) is not None:
        raise ReconstructionError(f"data does not describe a 231-avoider (got {sigma})")
    return sigma


def phi_231(sigma: Permutation) -> Permutation:
    """
    S_n(231) -> S_n(231) with mak(φ(σ)) = foze(σ) and des fixed.

    Each descent top α with restricted count c gives the descent pair
    (n - α + 2 + c, n - α + 1) of the image.

    Examples:
    - 213 -> 132
    - 21 -> 21
    """
    require_avoids(sigma, "231")
    n = sigma.n
    pairs = {(n - a + 2 + c, n - a + 1) for a, c in r_pairs(sigma)}
    if len({top for top, _ in pairs}) != len(pairs):
        raise InternalInvariantError(f"descent-top remap of {sigma} is not injective")
    return reconstruct_231(DescentPairData(n=n, Q=frozenset(pairs)), "iv")


# ---------------------------------------------------------------------------
# Composites and head-preserving maps
# ---------------------------------------------------------------------------

def phi_inv_to_mad(sigma: Permutation) -> Permutation:
    """
    Δ_A231^{-1} ∘ Φ ∘ Ψ ∘ Γ: S_n(321) -> S_n(231) with inv(σ) = mad(image).

    Example: 451623897 -> 615324978
    """
    path = gamma(sigma)
    image = delta_inv(phi_path(psi(path)), "A231")
    logger.debug("[MAP] invmad %s -> %s via %s", sigma, image, path)
    return image


def polyomino_transfer(h: ShortenedPolyomino) -> ShortenedPolyomino:
    """Υ^{-1} ∘ φ_321 ∘ Υ; takes vrarea to vcarea and keeps val."""
    return upsilon_inv(phi_321(upsilon(h)))


def _chi(sigma: Permutation) -> Permutation:
    n = sigma.n
    if n == 0:
        return sigma
    k = sigma(1)
    big = n - k
    rest = standardize(sigma.values[1 + big:])
    falling = Permutation(tuple(range(big, 0, -1)))
    return inflate(_SKELETON_231, [_ONE, falling, _chi(rest)])


def chi(sigma: Permutation) -> Permutation:
    """
    Head-preserving S_n(132,213) -> S_n(123,213).

    σ = 231[1, ι_{n-k}, σ1] maps to 231[1, δ_{n-k}, χ(σ1)].
    """
    require_avoids(sigma, "132", "213")
    return _chi(sigma)


def psi_321_312(sigma: Permutation) -> Permutation:
    """Head-preserving S_n(321) -> S_n(312): σ -> SS(σ^c)^c."""
    require_avoids(sigma, "321")
    return simion_schmidt(sigma.complement()).complement()


def _varphi(sigma: Permutation) -> Permutation:
    if sigma.n == 0:
        return sigma
    _, (_, low, high) = block_decompose(sigma, "around_first")
    # the block below the head stays below it
    return inflate(_SKELETON_231, [_ONE, _varphi(high), _varphi(low)])


def varphi_231_213(sigma: Permutation) -> Permutation:
    """
    Head-preserving S_n(231) -> S_n(213).

    213[1, σ1, σ2] maps to 231[1, φ(σ2), φ(σ1)].
    """
    require_avoids(sigma, "231")
    return _varphi(sigma)

