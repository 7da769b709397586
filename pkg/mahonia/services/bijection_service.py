import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from mahonia.core import bijections, dyck
from mahonia.core.dyck import DyckPath
from mahonia.core.perm import Permutation
from mahonia.core.polyomino import ShortenedPolyomino, upsilon, upsilon_inv
from mahonia.errors import UnknownMapError

logger = logging.getLogger(__name__)

_READERS: Dict[str, Callable[[str], object]] = {
    "perm": Permutation.parse,
    "dyck": DyckPath.parse,
    "poly": ShortenedPolyomino.parse,
}


@dataclass(frozen=True)
class MapEntry:
    """A named bijection with the kinds of object it reads and writes"""
    name: str
    description: str
    source: str
    target: str
    forward: Callable
    inverse: Optional[Callable] = None


def _delta(variant: str) -> MapEntry:
    pattern = variant[1:]
    return MapEntry(
        f"delta{pattern}",
        f"Δ: S_n({pattern}) -> Dyck_n by block decomposition",
        "perm", "dyck",
        lambda s: dyck.delta(s, variant),
        lambda p: dyck.delta_inv(p, variant),
    )


REGISTRY: Dict[str, MapEntry] = {
    e.name: e for e in (
        MapEntry("phi321", "S_n(321) involution taking mak to maj", "perm", "perm",
                 bijections.phi_321, bijections.phi_321),
        MapEntry("phi123", "S_n(123) involution taking mak to maj", "perm", "perm",
                 bijections.phi_123, bijections.phi_123),
        MapEntry("phi132", "S_n(132) -> S_n(132) taking foze to maj", "perm", "perm", bijections.phi_132),
        MapEntry("phi231", "S_n(231) -> S_n(231) taking foze to mak", "perm", "perm", bijections.phi_231),
        MapEntry("simion", "Simion–Schmidt S_n(123) -> S_n(132)", "perm", "perm", bijections.simion_schmidt),
        MapEntry("gamma", "Γ: S_n(321) -> Dyck_n taking inv to spea", "perm", "dyck", dyck.gamma, dyck.gamma_inv),
        _delta("A231"),
        _delta("A312"),
        _delta("A132"),
        MapEntry("psi", "Ψ: Dyck_n -> Dyck_n taking spea to stun", "dyck", "dyck", dyck.psi, dyck.psi_inv),
        MapEntry("phipath", "Φ: Dyck_n -> Dyck_n taking stun to Umass + dr", "dyck", "dyck",
                 dyck.phi_path, dyck.phi_path_inv),
        MapEntry("theta", "Θ: Dyck_n -> Dyck_n taking sht to Umass + dr", "dyck", "dyck",
                 dyck.theta, dyck.theta_inv),
        MapEntry("lambda", "Λ: Dyck_n -> Dyck_n taking spea to sht", "dyck", "dyck",
                 dyck.lambda_map, dyck.lambda_inv),
        MapEntry("omega", "Ω: S_n(231) -> Dyck_n taking maj to β", "perm", "dyck",
                 dyck.omega_stump, dyck.omega_stump_inv),
        MapEntry("upsilon", "Υ: shortened polyominoes -> S_n(321)", "poly", "perm", upsilon, upsilon_inv),
        MapEntry("invmad", "S_n(321) -> S_n(231) taking inv to mad", "perm", "perm", bijections.phi_inv_to_mad),
        MapEntry("polytransfer", "Υ^{-1} ∘ φ ∘ Υ taking vrarea to vcarea", "poly", "poly",
                 bijections.polyomino_transfer),
        MapEntry("chi", "head-preserving S_n(132,213) -> S_n(123,213)", "perm", "perm", bijections.chi),
        MapEntry("psi321", "head-preserving S_n(321) -> S_n(312)", "perm", "perm", bijections.psi_321_312),
        MapEntry("varphi", "head-preserving S_n(231) -> S_n(213)", "perm", "perm", bijections.varphi_231_213),
    )
}


class BijectionService:
    """Look up and apply registered bijections on text input"""

    def __init__(self, registry: Dict[str, MapEntry] = None):
        self.registry = registry if registry is not None else REGISTRY

    def names(self) -> List[str]:
        return list(self.registry)

    def get(self, name: str) -> MapEntry:
        key = name.strip().lower()
        if key not in self.registry:
            raise UnknownMapError(f"unknown map {name!r}; known: {', '.join(self.registry)}")
        return self.registry[key]

    def parse_input(self, name: str, text: str, inverse: bool = False) -> Tuple[MapEntry, object]:
        """Resolve the map and read text as its source kind, or its target kind when inverting."""
        entry = self.get(name)
        if inverse:
            if entry.inverse is None:
                raise UnknownMapError(f"map {entry.name!r} has no registered inverse")
            return entry, _READERS[entry.target](text)
        return entry, _READERS[entry.source](text)

    def input_size(self, name: str, text: str, inverse: bool = False) -> int:
        """n of the parsed input: permutation length, semilength or polyomino width"""
        _, value = self.parse_input(name, text, inverse)
        return value.n

    def apply(self, name: str, text: str, inverse: bool = False) -> str:
        """
        Parse text for the map's source kind, apply it and render the result.

        Examples:
        - ("phi321", "341625978") -> "415623897"
        - ("gamma", "451623897") -> "UUUUDUDDUDDDUUDUDD"
        """
        entry, value = self.parse_input(name, text, inverse)
        result = entry.inverse(value) if inverse else entry.forward(value)
        logger.info("[MAP] %s%s(%s) = %s", entry.name, "^-1" if inverse else "", value, result)
        return str(result)
