import hashlib
import json
import logging
import os
import tempfile
from collections import Counter, OrderedDict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

from mahonia.config import Settings
from mahonia.core.patterns import VincularPattern, enumerate_avoiders, shards
from mahonia.core.qpoly import MultiPoly, QPoly
from mahonia.core.stats import StatSpec, distribution_refined, evaluate_many, to_qpoly

logger = logging.getLogger(__name__)

# below this size a process pool costs more than it saves
_SHARD_MIN_N = 8


class CacheEntry(BaseModel):
    """One cached distribution: Σ_{σ∈S_n(Π)} q^{stat(σ)} as (value, count) pairs"""
    stat: str
    avoid: List[str]
    n: int
    counts: List[Tuple[int, int]]


def canonical_patterns(patterns: Sequence[VincularPattern]) -> List[str]:
    return sorted({str(p) for p in patterns})


def _count_shard(
    specs: Sequence[StatSpec],
    patterns: Sequence[VincularPattern],
    n: int,
    prefix: Tuple[int, ...],
) -> List[Counter]:
    counters = [Counter() for _ in specs]
    for sigma in enumerate_avoiders(n, patterns, prefix):
        for counter, value in zip(counters, evaluate_many(specs, sigma)):
            counter[value] += 1
    return counters


class DistributionService:
    """Exact statistic distributions over avoidance classes, cached on disk"""

    def __init__(self, settings: Settings):
        self.cache_dir = Path(settings.cache_dir)
        self.cache_enabled = settings.cache_enabled
        self.max_workers = max(1, settings.max_workers)
        self.memory_cache_size = max(0, settings.memory_cache_size)
        self._memory: "OrderedDict[str, Counter]" = OrderedDict()

    def is_writable(self) -> bool:
        """Check the cache directory can be created and written"""
        if not self.cache_enabled:
            return False
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            return os.access(self.cache_dir, os.W_OK)
        except OSError:
            return False

    @staticmethod
    def cache_key(spec: StatSpec, patterns: Sequence[VincularPattern], n: int) -> str:
        """sha256 over the canonical (statistic, pattern set, n) triple"""
        payload = {"stat": spec.canonical(), "avoid": canonical_patterns(patterns), "n": n}
        raw = json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("utf-8")
        return hashlib.sha256(raw).hexdigest()

    def _path(self, key: str) -> Path:
        return self.cache_dir / key[:2] / f"{key}.json"

    def _load(self, key: str) -> Optional[Counter]:
        if key in self._memory:
            self._memory.move_to_end(key)
            return self._memory[key]
        if not self.cache_enabled:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            entry = CacheEntry.model_validate_json(path.read_text())
        except (OSError, ValidationError) as e:
            logger.warning("[CACHE] ignoring unreadable entry %s: %s", path, e)
            return None
        counts = Counter(dict(entry.counts))
        self._remember(key, counts)
        return counts

    def _remember(self, key: str, counts: Counter):
        """Keep at most memory_cache_size entries, least recently used out first"""
        if self.memory_cache_size == 0:
            return
        self._memory[key] = counts
        self._memory.move_to_end(key)
        while len(self._memory) > self.memory_cache_size:
            self._memory.popitem(last=False)

    def _store(self, key: str, spec: StatSpec, patterns: Sequence[VincularPattern], n: int, counts: Counter):
        self._remember(key, counts)
        if not self.cache_enabled:
            return
        entry = CacheEntry(
            stat=spec.canonical(),
            avoid=canonical_patterns(patterns),
            n=n,
            counts=sorted(counts.items()),
        )
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            # publish atomically: readers see the old file or the complete new one
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as f:
                f.write(entry.model_dump_json())
            os.replace(tmp, path)
        except OSError as e:
            logger.warning("[CACHE] could not write %s: %s", path, e)

    def _enumerate(self, specs: Sequence[StatSpec], patterns: Sequence[VincularPattern], n: int) -> List[Counter]:
        if self.max_workers == 1 or n < _SHARD_MIN_N:
            return _count_shard(specs, patterns, n, ())
        prefixes = shards(n, 1)
        totals = [Counter() for _ in specs]
        logger.info("[DIST] sharding S_%d over %d workers", n, self.max_workers)
        with ProcessPoolExecutor(max_workers=self.max_workers) as pool:
            futures = [pool.submit(_count_shard, list(specs), list(patterns), n, p) for p in prefixes]
            for future in futures:
                for total, part in zip(totals, future.result()):
                    total.update(part)
        return totals

    def value_counts_many(
        self,
        specs: Sequence[StatSpec],
        patterns: Sequence[VincularPattern],
        n: int,
    ) -> List[Counter]:
        """
        Value counts for several statistics over one avoidance class.

        Cached statistics are read back; the rest share a single enumeration
        pass of S_n(Π).
        """
        keys = [self.cache_key(spec, patterns, n) for spec in specs]
        results: List[Optional[Counter]] = [self._load(key) for key in keys]
        missing = [i for i, r in enumerate(results) if r is None]
        if missing:
            logger.debug("[DIST] enumerating S_%d(%s) for %d statistics",
                         n, ",".join(canonical_patterns(patterns)), len(missing))
            fresh = self._enumerate([specs[i] for i in missing], patterns, n)
            for i, counts in zip(missing, fresh):
                self._store(keys[i], specs[i], patterns, n, counts)
                results[i] = counts
        return results

    def distributions_many(
        self,
        specs: Sequence[StatSpec],
        patterns: Sequence[VincularPattern],
        n: int,
    ) -> List[QPoly]:
        counts = self.value_counts_many(specs, patterns, n)
        return [to_qpoly(spec, c) for spec, c in zip(specs, counts)]

    def distribution(self, spec: StatSpec, patterns: Sequence[VincularPattern], n: int) -> QPoly:
        return self.distributions_many([spec], patterns, n)[0]

    def distribution_refined(
        self,
        spec: StatSpec,
        patterns: Sequence[VincularPattern],
        n: int,
        marks: Sequence[str],
    ) -> MultiPoly:
        """Refined distributions are not cached"""
        return distribution_refined(spec, n, patterns, marks)

    def clear_memory(self):
        self._memory.clear()
