"""
Shortened polyominoes: pairs (P, Q) of N/E lattice paths with common
endpoints, P weakly above Q, sharing E-steps but never N-steps.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from mahonia.core.patterns import require_avoids
from mahonia.core.perm import Permutation
from mahonia.errors import PolyominoError


@dataclass(frozen=True)
class ShortenedPolyomino:
    upper: str
    lower: str

    def __post_init__(self):
        upper, lower = self.upper.strip().upper(), self.lower.strip().upper()
        if len(upper) != len(lower):
            raise PolyominoError(f"paths differ in length: {len(upper)} vs {len(lower)}")
        if set(upper + lower) - set("NE"):
            raise PolyominoError("paths must use only N and E steps")
        xp = xq = 0
        for i, (p, q) in enumerate(zip(upper, lower), start=1):
            if xp == xq and p == q == "N":
                raise PolyominoError(f"paths share the N-step {i}")
            xp += p == "E"
            xq += q == "E"
            if xp > xq:
                raise PolyominoError(f"upper path drops below the lower path at step {i}")
        if xp != xq:
            raise PolyominoError("paths end at different points")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)

    @property
    def n(self) -> int:
        return len(self.upper)

    def __str__(self) -> str:
        return f"{self.upper}/{self.lower}"

    @classmethod
    def parse(cls, text: str) -> "ShortenedPolyomino":
        """Read "NNEENENNE/EENENNENN"; a comma or space also separates the paths."""
        for sep in ("/", ",", " "):
            if sep in text.strip():
                upper, lower = text.strip().split(sep, 1)
                return cls(upper, lower)
        raise PolyominoError(f"expected two N/E words separated by '/', got {text!r}")


def enumerate_polyominoes(n: int) -> Iterator[ShortenedPolyomino]:
    """H_n by depth-first search over step pairs."""
    upper: List[str] = []
    lower: List[str] = []

    def extend(xp: int, xq: int) -> Iterator[ShortenedPolyomino]:
        k = len(upper)
        if k == n:
            if xp == xq:
                yield ShortenedPolyomino("".join(upper), "".join(lower))
            return
        # the horizontal gap closes by at most one per step
        if xq - xp > n - k:
            return
        for p, q in (("E", "E"), ("E", "N"), ("N", "E"), ("N", "N")):
            np_, nq = xp + (p == "E"), xq + (q == "E")
            if np_ > nq or (xp == xq and p == q == "N"):
                continue
            upper.append(p)
            lower.append(q)
            yield from extend(np_, nq)
            upper.pop()
            lower.pop()

    yield from extend(0, 0)


def _coordinates(path: str) -> List[Tuple[int, int, str]]:
    """(x, y, step) at the start of each step."""
    out, x, y = [], 0, 0
    for step in path:
        out.append((x, y, step))
        if step == "E":
            x += 1
        else:
            y += 1
    return out


def _upper_lookup(h: ShortenedPolyomino) -> Tuple[Dict[int, int], Dict[int, int], Dict[int, int], Dict[int, int]]:
    """Column -> (index, y) of P's E-step and row -> (index, x) of P's N-step."""
    e_index, e_height, n_index, n_offset = {}, {}, {}, {}
    for i, (x, y, step) in enumerate(_coordinates(h.upper), start=1):
        if step == "E":
            e_index[x], e_height[x] = i, y
        else:
            n_index[y], n_offset[y] = i, x
    return e_index, e_height, n_index, n_offset


def upsilon(h: ShortenedPolyomino) -> Permutation:
    """
    Label P's steps 1…n and project each step of Q onto P.

    E-steps project vertically to P's E-step in the same column, N-steps
    horizontally to P's N-step in the same row.
    """
    e_index, _, n_index, _ = _upper_lookup(h)
    labels = [e_index[x] if step == "E" else n_index[y] for x, y, step in _coordinates(h.lower)]
    return Permutation(tuple(labels))


def upsilon_inv(sigma: Permutation) -> ShortenedPolyomino:
    """T_Q(i) = E iff σ(i) ≥ i, and T_P(σ(i)) = T_Q(i)."""
    require_avoids(sigma, "321")
    lower = ["E" if v >= i else "N" for i, v in enumerate(sigma.values, start=1)]
    upper = [""] * sigma.n
    for i, v in enumerate(sigma.values):
        upper[v - 1] = lower[i]
    return ShortenedPolyomino("".join(upper), "".join(lower))


def step_areas(h: ShortenedPolyomino) -> List[int]:
    """area(i): gap between Q's i-th step and the matching step of P."""
    _, e_height, _, n_offset = _upper_lookup(h)
    return [e_height[x] - y if step == "E" else x - n_offset[y] for x, y, step in _coordinates(h.lower)]


def lower_valleys(h: ShortenedPolyomino) -> List[int]:
    """One-indexed i with Q_i Q_{i+1} = EN."""
    q = h.lower
    return [i for i in range(1, len(q)) if q[i - 1] == "E" and q[i] == "N"]


def poly_statistics(h: ShortenedPolyomino) -> Dict[str, int]:
    """
    Examples:
    - NNEENENENNEEE/EENEENNNEEENN -> vcarea 7, vrarea 9, val 3
    """
    areas = step_areas(h)
    valleys = lower_valleys(h)
    return {
        "vcarea": sum(areas[i - 1] for i in valleys),
        "vrarea": sum(areas[i] for i in valleys),
        "val": len(valleys),
    }
