"""
Text forms for patterns, pattern sets and custom statistics.

Reads:
- pattern literals ("231", "[231", "2<31>", "<23>1@(-,6,-)")
- pattern sets ("132", "123,213", "all3", "" for the empty set)
- linear statistic literals ("lin: 1*1<32> + 2*2<31> + <21>")

Every literal maps to one canonical string, so cache keys and golden files
do not depend on how the user spelled the input.
"""

import re
from itertools import permutations
from typing import List, Optional, Tuple

from mahonia.core.patterns import VincularPattern
from mahonia.errors import PatternSyntaxError, StatSpecError


class PatternParser:
    """Parse pattern and statistic literals."""

    # Regex patterns
    PATTERN = r'^(\[)?((?:\d|<\d+>)+)(\])?(?:@\(([^)]*)\))?$'
    GROUP = r'<(\d+)>|(\d)'
    TERM = r'^(?:([+-]?\d+)\s*\*\s*)?(\S+)$'
    LIN_PREFIX = "lin:"

    @staticmethod
    def parse_pattern(text: str) -> VincularPattern:
        """
        Parse a pattern literal into (π, X, υ).

        Examples:
        - "2<31>" -> (231, {2}, all-dash)
        - "[231" -> (231, {0}, all-dash)
        - "<23>1@(-,6,-)" -> (231, {1}, (-, 6, -))

        Args:
            text: Pattern literal

        Returns:
            VincularPattern

        Raises:
            PatternSyntaxError: malformed text, non-permutation digits or
                restriction arity mismatch
        """
        stripped = text.strip()
        match = re.match(PatternParser.PATTERN, stripped)
        if not match:
            raise PatternSyntaxError(text, "does not follow the pattern grammar")
        open_anchor, body, close_anchor, restriction_text = match.groups()

        letters: List[int] = []
        adjacency = set()
        for group, single in re.findall(PatternParser.GROUP, body):
            if group:
                if len(group) < 2:
                    raise PatternSyntaxError(text, "an adjacency group needs at least two letters")
                start = len(letters) + 1
                letters.extend(int(ch) for ch in group)
                adjacency.update(range(start, len(letters)))
            else:
                letters.append(int(single))

        m = len(letters)
        if sorted(letters) != list(range(1, m + 1)):
            raise PatternSyntaxError(text, f"letters do not form a permutation of [{m}]")
        if open_anchor:
            adjacency.add(0)
        if close_anchor:
            adjacency.add(m)

        restriction = None
        if restriction_text is not None:
            restriction = PatternParser.parse_restriction(text, restriction_text, m)
        return VincularPattern(tuple(letters), frozenset(adjacency), restriction)

    @staticmethod
    def parse_restriction(text: str, inner: str, m: int) -> Tuple[Optional[int], ...]:
        entries = [e.strip() for e in inner.split(",")]
        if len(entries) != m:
            raise PatternSyntaxError(text, f"restriction has {len(entries)} entries, pattern has {m} letters")
        values: List[Optional[int]] = []
        for e in entries:
            if e in ("-", "—", "–"):
                values.append(None)
            elif e.isdigit() and int(e) > 0:
                values.append(int(e))
            else:
                raise PatternSyntaxError(text, f"restriction entry {e!r} is neither '-' nor a positive integer")
        return tuple(values)

    @staticmethod
    def split_top_level(text: str, separator: str = ",") -> List[str]:
        """Split on separator, ignoring separators inside @( … )."""
        parts, depth, current = [], 0, ""
        for ch in text:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == separator and depth == 0:
                parts.append(current)
                current = ""
            else:
                current += ch
        parts.append(current)
        return [p.strip() for p in parts if p.strip()]

    @staticmethod
    def split_terms(body: str) -> List[str]:
        """Split "a + b - c" into ["a", "b", "-c"]; signs inside @( … ) are kept."""
        terms, depth, current = [], 0, ""
        for ch in body:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if depth == 0 and ch in "+-" and current.strip() and not current.rstrip().endswith("*"):
                terms.append(current)
                current = "-" if ch == "-" else ""
            else:
                current += ch
        terms.append(current)
        return [t.strip() for t in terms if t.strip()]

    @staticmethod
    def parse_pattern_set(text: str) -> Tuple[VincularPattern, ...]:
        """
        Parse a comma-separated pattern set.

        Examples:
        - "123,213" -> (123, 213)
        - "" or "none" -> ()
        - "all3" -> the six classical patterns of length 3

        Returns:
            Patterns sorted by canonical string, duplicates removed
        """
        stripped = text.strip()
        if stripped.lower() in ("", "none", "-", "∅", "{}"):
            return ()
        if stripped.lower() == "all3":
            return tuple(VincularPattern(p) for p in permutations((1, 2, 3)))
        if stripped.startswith("{") and stripped.endswith("}"):
            stripped = stripped[1:-1]
        found = {str(p): p for p in map(PatternParser.parse_pattern, PatternParser.split_top_level(stripped))}
        return tuple(found[k] for k in sorted(found))

    @staticmethod
    def is_linear_literal(text: str) -> bool:
        return text.strip().lower().startswith(PatternParser.LIN_PREFIX)

    @staticmethod
    def parse_linear_terms(text: str) -> List[Tuple[VincularPattern, int]]:
        """
        Parse a custom linear statistic into (pattern, coefficient) terms.

        Examples:
        - "lin: 1*1<32> + 1*2<31> + 1*3<21> + 1*<21>" -> maj
        - "lin: 2*2<31> + <31>2 + <21>" -> mad
        - "lin: <21> - 1*2<31>" -> coefficient -1 on 2<31>

        Repeated patterns are merged; zero coefficients are dropped.

        Raises:
            StatSpecError: missing prefix, malformed term or bad pattern
        """
        stripped = text.strip()
        if not PatternParser.is_linear_literal(stripped):
            raise StatSpecError(f"custom statistic must start with {PatternParser.LIN_PREFIX!r}: {text!r}")
        body = stripped[len(PatternParser.LIN_PREFIX):].strip()
        if not body:
            raise StatSpecError("custom statistic has no terms")

        merged = {}
        order: List[str] = []
        for raw in PatternParser.split_terms(body):
            term = raw.replace(" ", "")
            match = re.match(PatternParser.TERM, term)
            if not match:
                raise StatSpecError(f"malformed term {raw!r}")
            coef_text, pattern_text = match.groups()
            if coef_text is None and pattern_text.startswith("-"):
                coef, pattern_text = -1, pattern_text[1:]
            else:
                coef = int(coef_text) if coef_text is not None else 1
            try:
                pattern = PatternParser.parse_pattern(pattern_text)
            except PatternSyntaxError as e:
                raise StatSpecError(f"term {raw!r}: {e}")
            key = str(pattern)
            if key not in merged:
                order.append(key)
                merged[key] = (pattern, 0)
            merged[key] = (pattern, merged[key][1] + coef)
        return [merged[k] for k in order if merged[k][1] != 0]


def parse_pattern(text: str) -> VincularPattern:
    return PatternParser.parse_pattern(text)


def parse_pattern_set(text: str) -> Tuple[VincularPattern, ...]:
    return PatternParser.parse_pattern_set(text)
