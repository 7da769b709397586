import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, model_validator

from mahonia.core.patterns import VincularPattern, classical
from mahonia.core.qpoly import QPoly
from mahonia.core.qseries import HEAD_FAMILIES, head_closed_form
from mahonia.core.stats import MAHONIAN_3_FUNCTIONS, StatSpec, named
from mahonia.services.distribution_service import DistributionService
from mahonia.utils.pattern_parser import parse_pattern_set

logger = logging.getLogger(__name__)

DEFAULT_MANIFEST = Path(__file__).resolve().parent.parent / "data" / "equidistributions.json"

S3 = ("123", "132", "213", "231", "312", "321")


# ---------------------------------------------------------------------------
# Manifest of known equidistributions
# ---------------------------------------------------------------------------

class ManifestCell(BaseModel):
    """
    Σ_{S_n(first)} q^{row} = Σ_{S_n(second)} q^{col}.

    black cells are proved and red cells conjectural. observed cells were
    found by enumeration and are missing from the published table; refuted
    cells are published but fail from first_disagreement on.
    """
    row: str
    col: str
    first: str
    second: str
    status: Literal["black", "red", "observed", "refuted"]
    first_disagreement: Optional[int] = None

    @model_validator(mode="after")
    def _refuted_needs_disagreement(self) -> "ManifestCell":
        if (self.status == "refuted") != (self.first_disagreement is not None):
            raise ValueError("first_disagreement is required on refuted cells and only there")
        return self


class EquidistributionManifest(BaseModel):
    """Bundled table of Mahonian 3-function equidistributions over S_3 singletons"""
    stats: List[str]
    cells: List[ManifestCell]


def load_manifest(path: Optional[str] = None) -> EquidistributionManifest:
    source = Path(path) if path else DEFAULT_MANIFEST
    return EquidistributionManifest.model_validate_json(source.read_text())


Cell = Tuple[str, str, str, str]


def normalize_cell(row: str, col: str, first: str, second: str, order: Sequence[str]) -> Cell:
    """Row before column in table order; a diagonal cell is an unordered pair."""
    rank = {s: i for i, s in enumerate(order)}
    if rank.get(row, len(order)) > rank.get(col, len(order)):
        row, col, first, second = col, row, second, first
    if row == col and first > second:
        first, second = second, first
    return row, col, first, second


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------

@dataclass
class NVerdict:
    n: int
    agree: bool
    left: QPoly
    right: QPoly


@dataclass
class EquidistributionResult:
    stat1: str
    avoid1: str
    stat2: str
    avoid2: str
    verdicts: List[NVerdict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(v.agree for v in self.verdicts)

    @property
    def first_disagreement(self) -> Optional[int]:
        return next((v.n for v in self.verdicts if not v.agree), None)


@dataclass
class ScanReport:
    max_n: int
    cells: List[Cell]
    annotations: Dict[Cell, str]
    missing: List[Cell]
    extra: List[Cell]
    contradicted: List[Cell] = field(default_factory=list)

    @property
    def confirmed(self) -> List[Cell]:
        return [c for c in self.cells if self.annotations.get(c) in ("black", "red", "observed")]

    @property
    def consistent(self) -> bool:
        return not self.missing and not self.contradicted


@dataclass
class WilfPartition:
    stat: str
    classes: List[List[str]]
    max_n: int


@dataclass
class HeadFormCheck:
    family: str
    mismatches: List[int]
    max_n: int

    @property
    def holds(self) -> bool:
        return not self.mismatches


def label(patterns: Sequence[VincularPattern]) -> str:
    return ",".join(sorted(str(p) for p in patterns))


# ---------------------------------------------------------------------------
# Service
# ---------------------------------------------------------------------------

class VerifierService:
    """Equidistribution checks, manifest scanning and st-Wilf classification"""

    def __init__(self, distributions: DistributionService):
        self.distributions = distributions

    def check_equidistribution(
        self,
        stat1: StatSpec,
        avoid1: Sequence[VincularPattern],
        stat2: StatSpec,
        avoid2: Sequence[VincularPattern],
        max_n: int,
    ) -> EquidistributionResult:
        """
        Compare Σ_{S_n(Π1)} q^{stat1} with Σ_{S_n(Π2)} q^{stat2} for n = 1..max_n.

        Examples:
        - (maj, {231}, den, {321}, 8) -> holds
        - (maj, {132}, inv, {132}, 3) -> first disagreement at n = 3
        """
        result = EquidistributionResult(str(stat1), label(avoid1), str(stat2), label(avoid2))
        for n in range(1, max_n + 1):
            left = self.distributions.distribution(stat1, avoid1, n)
            right = self.distributions.distribution(stat2, avoid2, n)
            result.verdicts.append(NVerdict(n, left == right, left, right))
            if left != right:
                logger.info("[EQUI] %s over S_%d(%s) differs from %s over S_%d(%s)",
                            stat1, n, result.avoid1, stat2, n, result.avoid2)
        return result

    def signatures(
        self,
        stats: Sequence[str],
        pattern_sets: Sequence[Sequence[VincularPattern]],
        max_n: int,
    ) -> Dict[Tuple[str, str], Tuple[QPoly, ...]]:
        """(stat, Π) -> distributions for n = 1..max_n, one enumeration pass per (Π, n)."""
        specs = [named(s) for s in stats]
        out: Dict[Tuple[str, str], List[QPoly]] = {}
        for patterns in pattern_sets:
            key = label(patterns)
            for n in range(1, max_n + 1):
                polys = self.distributions.distributions_many(specs, patterns, n)
                for stat, poly in zip(stats, polys):
                    out.setdefault((stat, key), []).append(poly)
            logger.info("[SCAN] %s done up to n = %d", key, max_n)
        return {k: tuple(v) for k, v in out.items()}

    def scan_equidistributions(
        self,
        stats: Sequence[str],
        patterns: Sequence[str],
        max_n: int,
        manifest: Optional[EquidistributionManifest] = None,
    ) -> ScanReport:
        """
        Every cell (row, π1, col, π2) whose distributions agree for all
        n ≤ max_n, annotated with its manifest status or absent.
        """
        manifest = manifest or load_manifest()
        order = list(manifest.stats) + [s for s in stats if s not in manifest.stats]
        stats = sorted(dict.fromkeys(stats), key=order.index)
        singletons = [(classical(p),) for p in patterns]
        signatures = self.signatures(stats, singletons, max_n)

        groups: Dict[Tuple[QPoly, ...], List[Tuple[str, str]]] = {}
        for key, signature in signatures.items():
            groups.setdefault(signature, []).append(key)

        found = set()
        for members in groups.values():
            for (s1, p1), (s2, p2) in itertools.combinations(members, 2):
                if s1 == s2 and p1 == p2:
                    continue
                found.add(normalize_cell(s1, s2, p1, p2, order))
        cells = sorted(found, key=lambda c: (order.index(c[0]), order.index(c[1]), c[2], c[3]))

        listed = {normalize_cell(c.row, c.col, c.first, c.second, order): c for c in manifest.cells}
        in_scope = set(stats) & set(manifest.stats)
        scoped = {c: entry for c, entry in listed.items()
                  if c[0] in in_scope and c[1] in in_scope and c[2] in patterns and c[3] in patterns}
        annotations = {c: listed[c].status if c in listed else "absent" for c in cells}
        missing = sorted(c for c, entry in scoped.items() if entry.status != "refuted" and c not in found)
        extra = [c for c in cells if c not in listed and c[0] in in_scope and c[1] in in_scope]
        # a refuted cell only contradicts the manifest once the scan reaches its failing n
        contradicted = [c for c in cells if c in scoped and scoped[c].status == "refuted"
                        and max_n >= scoped[c].first_disagreement]
        logger.info("[SCAN] %d cells found, %d missing, %d extra, %d contradicted",
                    len(cells), len(missing), len(extra), len(contradicted))
        return ScanReport(max_n, cells, annotations, missing, extra, contradicted)

    def st_wilf_classes(
        self,
        stat: str,
        pattern_sets: Sequence[Sequence[VincularPattern]],
        max_n: int,
    ) -> WilfPartition:
        """
        Partition pattern sets by their distributions for n = 1..max_n.

        Example: (mak, singletons of S_3, 8) -> {123}, {132,312}, {213,231}, {321}
        """
        signatures = self.signatures([stat], pattern_sets, max_n)
        groups: Dict[Tuple[QPoly, ...], List[str]] = {}
        for (_, key), signature in signatures.items():
            groups.setdefault(signature, []).append(key)
        classes = sorted(sorted(members) for members in groups.values())
        return WilfPartition(stat, classes, max_n)

    def check_head_closed_forms(self, max_n: int) -> List[HeadFormCheck]:
        """Compare each head closed form with the enumerated head distribution."""
        head = named("head")
        checks = []
        for family in HEAD_FAMILIES:
            patterns = parse_pattern_set(family)
            mismatches = [n for n in range(1, max_n + 1)
                          if head_closed_form(n, family) != self.distributions.distribution(head, patterns, n)]
            checks.append(HeadFormCheck(family, mismatches, max_n))
        return checks


def pattern_subsets(size: int, letters: Sequence[str] = S3) -> List[Tuple[VincularPattern, ...]]:
    return [tuple(classical(w) for w in combo) for combo in itertools.combinations(letters, size)]


def catalog_stats(text: str) -> List[str]:
    """Expand "all" to the fourteen Mahonian 3-functions; otherwise split on commas."""
    if text.strip().lower() == "all":
        return list(MAHONIAN_3_FUNCTIONS)
    return [s.strip() for s in text.split(",") if s.strip()]
