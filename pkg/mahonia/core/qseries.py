"""
Exact q-series algebra.

q-integers, q-factorials and q-binomials, the Carlitz–Riordan recursions,
truncated continued fractions, the multivariate recursion for linear
statistics over 312-avoiders and the finite binomial transform.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, List, Mapping, Sequence, Tuple, Union

from mahonia.core.qpoly import MultiPoly, QPoly
from mahonia.errors import MahoniaError, StatSpecError
from mahonia.utils.pattern_parser import PatternParser

logger = logging.getLogger(__name__)

Series = List[QPoly]
IntMatrix = List[List[int]]


# ---------------------------------------------------------------------------
# q-analogues
# ---------------------------------------------------------------------------

def q_int(n: int) -> QPoly:
    """[n]_q = 1 + q + … + q^{n-1}."""
    if n < 0:
        raise MahoniaError(f"q_int needs n >= 0, got {n}")
    return QPoly([1] * n)


def q_factorial(n: int) -> QPoly:
    if n < 0:
        raise MahoniaError(f"q_factorial needs n >= 0, got {n}")
    result = QPoly.one()
    for i in range(1, n + 1):
        result = result * q_int(i)
    return result


def q_binomial(n: int, k: int) -> QPoly:
    """Gaussian binomial by exact division of q-factorials."""
    if not 0 <= k <= n:
        raise MahoniaError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))


def macmahon_q_catalan(n: int) -> QPoly:
    """[2n choose n]_q / [n+1]_q."""
    if n < 0:
        raise MahoniaError(f"macmahon_q_catalan needs n >= 0, got {n}")
    return q_binomial(2 * n, n).exact_div(q_int(n + 1))


def carlitz_riordan(n: int, variant: str = "C") -> QPoly:
    """
    Carlitz–Riordan q-Catalan numbers.

    C_n = Σ_k q^{(k+1)(n-k-1)} C_k C_{n-k-1}, the inv distribution over
    S_n(132). Ctilde_n = Σ_k q^k Ctilde_k Ctilde_{n-k-1}, the inv
    distribution over S_n(231). Both start from 1 at n = 0.
    """
    if variant not in ("C", "Ctilde"):
        raise MahoniaError(f"unknown Carlitz-Riordan variant {variant!r}; expected C or Ctilde")
    if n < 0:
        raise MahoniaError(f"carlitz_riordan needs n >= 0, got {n}")
    table = [QPoly.one()]
    for size in range(1, n + 1):
        total = QPoly()
        for k in range(size):
            exponent = (k + 1) * (size - k - 1) if variant == "C" else k
            total = total + (table[k] * table[size - k - 1]).shift(exponent)
        table.append(total)
    return table[n]


# ---------------------------------------------------------------------------
# Continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CFSpec:
    """
    A continued fraction 1/(1 - w_0/(1 - w_1/(1 - …))).

    level(k) returns the level weight w_k as (q exponent, z degree); the z
    degree must be at least 1.
    """

    name: str
    level: Callable[[int], Tuple[int, int]]

    def weight(self, k: int) -> Tuple[int, int]:
        q_exp, z_deg = self.level(k)
        if z_deg < 1:
            raise MahoniaError(f"{self.name}: level {k} has z-degree {z_deg} < 1")
        return q_exp, z_deg


CF_PRESETS: Dict[str, CFSpec] = {
    # weights z, qz, qz, q^2z, q^2z, …
    "cfrak1": CFSpec("cfrak1", lambda k: ((k + 1) // 2, 1)),
    # weights z, qz, q^2z, …
    "cfrak2": CFSpec("cfrak2", lambda k: (k, 1)),
}


def get_cf_spec(which: str) -> CFSpec:
    if which not in CF_PRESETS:
        raise MahoniaError(f"unknown continued fraction {which!r}; expected one of {sorted(CF_PRESETS)}")
    return CF_PRESETS[which]


def series_geometric(x: Series, order: int) -> Series:
    """1/(1 - X) mod z^{order+1} for X with zero constant term."""
    if x and not x[0].is_zero():
        raise MahoniaError("geometric inversion needs a series with zero constant term")
    out = [QPoly.one()] + [QPoly() for _ in range(order)]
    for m in range(1, order + 1):
        total = QPoly()
        for j in range(1, m + 1):
            if j < len(x):
                total = total + x[j] * out[m - j]
        out[m] = total
    return out


def cf_truncate(spec: CFSpec, order: int) -> Series:
    """
    Coefficients of z^0 … z^order of the continued fraction.

    Evaluated bottom-up from level `order`; every weight carries z, so
    deeper levels do not change these coefficients.
    """
    if order < 0:
        raise MahoniaError(f"order must be >= 0, got {order}")
    tail: Series = [QPoly.one()] + [QPoly() for _ in range(order)]
    for k in range(order, -1, -1):
        q_exp, z_deg = spec.weight(k)
        shifted: Series = [QPoly() for _ in range(order + 1)]
        for i in range(order + 1 - z_deg):
            shifted[i + z_deg] = tail[i].shift(q_exp)
        tail = series_geometric(shifted, order)
    logger.debug("[CF] %s truncated at z^%d", spec.name, order)
    return tail


def render_series(series: Series, var: str = "z") -> str:
    """Human form such as "1 + z + (1 + q)z^2"."""
    parts = []
    for i, c in enumerate(series):
        if c.is_zero():
            continue
        coef = c.render()
        power = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not power:
            parts.append(coef)
        elif c == 1:
            parts.append(power)
        elif " " in coef:
            parts.append(f"({coef}){power}")
        else:
            parts.append(f"{coef}{power}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Linear statistics over 312-avoiders
# ---------------------------------------------------------------------------

# a<bc> for all abc, then <ab>c for all abc, then <21>
GENFUNC_PATTERNS: Tuple[str, ...] = (
    "1<23>", "1<32>", "2<13>", "2<31>", "3<12>", "3<21>",
    "<12>3", "<13>2", "<21>3", "<23>1", "<31>2", "<32>1",
    "<21>",
)

# both contain 312 and so vanish on S_n(312)
VANISHING_ON_312 = ("3<12>", "<31>2")

GENFUNC_SHORT_PATTERNS: Tuple[str, ...] = tuple(p for p in GENFUNC_PATTERNS if p not in VANISHING_ON_312)

AlphaInput = Union[Sequence[int], Mapping[str, int]]


def normalize_alpha(alpha: AlphaInput) -> Dict[str, int]:
    """
    Coefficient map over GENFUNC_PATTERNS.

    Accepts 13 entries in GENFUNC_PATTERNS order, 11 entries in
    GENFUNC_SHORT_PATTERNS order, or a mapping from pattern literals
    (any spelling) to coefficients.
    """
    coefficients = dict.fromkeys(GENFUNC_PATTERNS, 0)
    if isinstance(alpha, Mapping):
        for text, c in alpha.items():
            key = str(PatternParser.parse_pattern(text))
            if key not in coefficients:
                raise StatSpecError(f"{text!r} is not among the recursion patterns {', '.join(GENFUNC_PATTERNS)}")
            coefficients[key] += int(c)
        return coefficients
    values = [int(c) for c in alpha]
    if len(values) == len(GENFUNC_PATTERNS):
        order = GENFUNC_PATTERNS
    elif len(values) == len(GENFUNC_SHORT_PATTERNS):
        order = GENFUNC_SHORT_PATTERNS
    else:
        raise StatSpecError(
            f"alpha needs {len(GENFUNC_PATTERNS)} or {len(GENFUNC_SHORT_PATTERNS)} coefficients, got {len(values)}"
        )
    coefficients.update(zip(order, values))
    return coefficients


@dataclass(frozen=True)
class GenfuncCoeffs:
    """Exponent bookkeeping for the k-th summand of the recursion."""

    A1: int
    A2: int
    B1: int
    B2: int
    C: int


def genfunc_coeffs(alpha: Mapping[str, int], n: int, k: int) -> GenfuncCoeffs:
    """
    Exponents for σ = σ1 1 σ2 with |σ1| = k and |σ2| = m = n-k-1.

    A1 and A2 weight des of the two blocks, B1 the last letter of σ1, B2
    the first letter of σ2 and C collects the remaining cross occurrences.
    """
    a = alpha
    m = n - k - 1
    d1 = 1 if k > 0 else 0
    d2 = 1 if m > 0 else 0
    A1 = a["<32>1"] - a["<23>1"] + m * (a["<21>3"] - a["<12>3"])
    A2 = (k + 1) * (a["1<32>"] - a["1<23>"])
    B1 = a["2<31>"] - a["3<21>"]
    B2 = a["<13>2"] - a["<12>3"]
    C = (
        a["<12>3"] * (m + m * d1 * (k - 1))
        + a["1<23>"] * (k + 1) * d2 * (m - 1)
        - a["<13>2"] * d2
        + a["<21>3"] * d1 * m
        + a["2<13>"] * k * d2
        + a["<23>1"] * d1 * (k - 1)
        - a["2<31>"] * d1
        + a["3<21>"] * k
        + a["<21>"] * d1
    )
    return GenfuncCoeffs(A1, A2, B1, B2, C)


def genfunc_312(alpha: AlphaInput, n: int) -> MultiPoly:
    """
    F_n = Σ_{σ∈S_n(312)} q^{stat_α(σ)} t^{des(σ)} u^{head(σ)} v^{last(σ)}.

    stat_α = Σ α_p · p(σ) over GENFUNC_PATTERNS. Evaluated with the
    recursion over σ = σ1 1 σ2, memoized per size.

    Examples:
    - n=1, any α -> u*v
    - α = inv, n=2 -> u*v^2 + q*t*u^2*v
    """
    if n < 0:
        raise MahoniaError(f"n must be >= 0, got {n}")
    coefficients = normalize_alpha(alpha)
    q = MultiPoly.variable("q")
    t = MultiPoly.variable("t")
    u = MultiPoly.variable("u")
    v = MultiPoly.variable("v")
    table = [MultiPoly.constant(1)]
    for size in range(1, n + 1):
        total = MultiPoly()
        for k in range(size):
            m = size - k - 1
            c = genfunc_coeffs(coefficients, size, k)
            left = table[k].substitute({"t": q ** c.A1 * t, "v": q ** c.B1})
            right = table[m].substitute({"t": q ** c.A2 * t, "u": q ** c.B2})
            factor = q ** c.C * u * (t if k > 0 else 1) * (v ** (k + 1) if m > 0 else v)
            total = total + factor * left * right
        table.append(total)
    return table[n]


def alpha_is_extension(alpha: AlphaInput) -> bool:
    """Negative coefficients lie outside the nonnegative setting of the recursion."""
    return any(c < 0 for c in normalize_alpha(alpha).values())


# ---------------------------------------------------------------------------
# Binomial transform
# ---------------------------------------------------------------------------

def pascal(m: int) -> IntMatrix:
    return [[comb(i, j) for j in range(m)] for i in range(m)]


def pascal_inverse(m: int) -> IntMatrix:
    return [[(-1) ** (i - j) * comb(i, j) if j <= i else 0 for j in range(m)] for i in range(m)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    size = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)] for i in range(size)]


def truncate_matrix(a: IntMatrix, m: int) -> IntMatrix:
    rows = [list(row[:m]) + [0] * (m - len(row[:m])) for row in a[:m]]
    return rows + [[0] * m for _ in range(m - len(rows))]


def binomial_transform(a: IntMatrix, direction: str, m: int) -> IntMatrix:
    """B·A or B^{-1}·A on the m×m truncation, B the Pascal matrix."""
    if direction not in ("B", "Binv"):
        raise MahoniaError(f"direction must be B or Binv, got {direction!r}")
    left = pascal(m) if direction == "B" else pascal_inverse(m)
    return matmul(left, truncate_matrix(a, m))


def cfrak1_matrix(m: int) -> IntMatrix:
    """Column 0 holds ⌈k/2⌉ and column 1 holds ones."""
    out = [[0] * m for _ in range(m)]
    for k in range(m):
        out[k][0] = (k + 1) // 2
        if m > 1:
            out[k][1] = 1
    return out


def iota_combination_from_matrix(a: IntMatrix, m: int) -> List[int]:
    """Column 0 of B^{-1}·A: entry k is the coefficient of ι_k."""
    return [row[0] for row in binomial_transform(a, "Binv", m)]


# ---------------------------------------------------------------------------
# Head distributions
# ---------------------------------------------------------------------------

def ballot(n: int, k: int) -> int:
    """C_{n,k} = (n-k+1)/(n+1) · binom(n+k, n)."""
    if k < 0 or k > n:
        return 0
    return (n - k + 1) * comb(n + k, n) // (n + 1)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


HEAD_FAMILIES = ("123", "213", "123,213")


def head_closed_form(n: int, family: str) -> QPoly:
    """
    Closed form of Σ q^{head(σ)} over S_n(family).

    Examples:
    - (3, "123") -> q + 2q^2 + 2q^3
    - (3, "213") -> 2q + q^2 + 2q^3
    """
    key = family.replace("S(", "").replace(")", "").replace(" ", "")
    if key not in HEAD_FAMILIES:
        raise MahoniaError(f"unknown head family {family!r}; expected one of {HEAD_FAMILIES}")
    if n < 1:
        raise MahoniaError(f"head_closed_form needs n >= 1, got {n}")
    counts: Dict[int, int] = {}
    if key == "123":
        counts = {k: ballot(n - 1, k - 1) for k in range(1, n + 1)}
    elif key == "213":
        counts = {k: catalan(k - 1) * catalan(n - k) for k in range(1, n + 1)}
    else:
        counts = {1: 1}
        counts.update({k: 2 ** (k - 2) for k in range(2, n + 1)})
    return QPoly.from_counts(counts)
