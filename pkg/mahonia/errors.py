"""
Exception hierarchy.

Every user-facing failure derives from MahoniaError (a ValueError), which the
CLI turns into exit code 2 and the HTTP routes into status 400.
InternalInvariantError marks a broken internal invariant and is left
uncaught.
"""

from typing import Optional, Tuple


class MahoniaError(ValueError):
    """Base class for invalid input to any operation"""


class PermutationError(MahoniaError):
    """Word is not a permutation, or lengths do not match"""


class PatternSyntaxError(MahoniaError):
    """Pattern literal does not follow the grammar"""

    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"invalid pattern {text!r}: {reason}")


class StatSpecError(MahoniaError):
    """Unknown statistic name or malformed custom statistic"""


class SchemaMismatchError(MahoniaError):
    """Permutation does not fit the requested inflation schema"""

    def __init__(self, schema: str, position: int, message: str):
        self.schema = schema
        self.position = position
        super().__init__(f"{schema}: position {position}: {message}")


class AvoidanceError(MahoniaError):
    """Input lies outside the avoidance class a map is defined on"""

    def __init__(self, pattern: str, word: str, occurrence: Optional[Tuple[int, ...]] = None):
        self.pattern = pattern
        self.word = word
        self.occurrence = occurrence
        where = f" at positions {occurrence}" if occurrence else ""
        super().__init__(f"{word} contains {pattern}{where}")


class DyckPathError(MahoniaError):
    """Word is not a Dyck path"""


class PolyominoError(MahoniaError):
    """Pair of N/E paths is not a shortened polyomino"""


class ReconstructionError(MahoniaError):
    """Reconstruction data is inconsistent or admits no permutation"""


class UnknownMapError(MahoniaError):
    """Bijection name not in the registry"""


class InternalInvariantError(RuntimeError):
    """A proved identity failed at runtime; indicates a bug"""
