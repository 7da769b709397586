"""
Exact integer polynomials.

QPoly is a dense polynomial in q with ascending coefficients and no trailing
zeros. MultiPoly is a sparse Laurent polynomial over named variables, used for
refined distributions and the genfunc recursion.
"""

from typing import Dict, Iterable, List, Mapping, Tuple, Union

from mahonia.errors import InternalInvariantError

Monomial = Tuple[Tuple[str, int], ...]


class QPoly:
    """Univariate polynomial Σ c_k q^k with exact integer coefficients."""

    __slots__ = ("coefficients",)

    @staticmethod
    def _strip(coefficients: Iterable[int]) -> Tuple[int, ...]:
        coefficients = [int(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return tuple(coefficients)

    def __init__(self, coefficients: Iterable[int] = ()):
        self.coefficients: Tuple[int, ...] = QPoly._strip(coefficients)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "QPoly":
        if exponent < 0:
            raise ValueError("QPoly has no negative exponents")
        return cls([0] * exponent + [coefficient])

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "QPoly":
        if not counts:
            return cls()
        if min(counts) < 0:
            raise ValueError("QPoly has no negative exponents")
        coefficients = [0] * (max(counts) + 1)
        for e, c in counts.items():
            coefficients[e] += c
        return cls(coefficients)

    @classmethod
    def one(cls) -> "QPoly":
        return cls([1])

    def is_zero(self) -> bool:
        return not self.coefficients

    def __len__(self) -> int:
        return len(self.coefficients)

    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, e: int) -> int:
        if 0 <= e < len(self.coefficients):
            return self.coefficients[e]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coefficients == other.coefficients
        if isinstance(other, int):
            return self.coefficients == QPoly([other]).coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "QPoly") -> "QPoly":
        other = _as_qpoly(other)
        size = max(len(self), len(other))
        return QPoly(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coefficients)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-_as_qpoly(other))

    def __mul__(self, other: "QPoly") -> "QPoly":
        other = _as_qpoly(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k."""
        return QPoly([0] * k + list(self.coefficients)) if self.coefficients else QPoly()

    def __divmod__(self, other: "QPoly") -> Tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coefficients)
        lead = other.coefficients[-1]
        quot = [0] * max(len(rem) - len(other) + 1, 0)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(other) - 1]
            if c % lead:
                raise ArithmeticError(f"leading coefficient {lead} does not divide {c}")
            c //= lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coefficients):
                    rem[k + j] -= c * b
        return QPoly(quot), QPoly(rem)

    def exact_div(self, other: "QPoly") -> "QPoly":
        """Quotient of a division that must leave no remainder."""
        try:
            quot, rem = divmod(self, other)
        except ArithmeticError as e:
            raise InternalInvariantError(f"inexact division {self} / {other}: {e}")
        if not rem.is_zero():
            raise InternalInvariantError(f"inexact division {self} / {other}: remainder {rem}")
        return quot

    def __call__(self, q: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * q + c
        return value

    def total(self) -> int:
        return sum(self.coefficients)

    def to_list(self) -> List[int]:
        return list(self.coefficients)

    def render(self, fmt: str = "text", var: str = "q") -> str:
        """Human-readable ("1 + 2q + q^2") or LaTeX ("1 + 2q + q^{2}") form."""
        if self.is_zero():
            return "0"
        parts = []
        for e, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if e == 0:
                body = str(c)
            else:
                power = var if e == 1 else (f"{var}^{{{e}}}" if fmt == "latex" else f"{var}^{e}")
                body = power if c == 1 else ("-" + power if c == -1 else f"{c}{power}")
            parts.append(body)
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self) -> str:
        return f"QPoly({list(self.coefficients)})"

    def __str__(self) -> str:
        return self.render()


def _as_qpoly(value: Union[int, QPoly]) -> QPoly:
    if isinstance(value, QPoly):
        return value
    if isinstance(value, int):
        return QPoly([value])
    raise TypeError(f"cannot combine QPoly with {type(value).__name__}")


def _normalize(exponents: Mapping[str, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exponents.items() if e != 0))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    merged: Dict[str, int] = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return _normalize(merged)


class MultiPoly:
    """
    Sparse Laurent polynomial over named variables.

    Terms map a monomial (sorted (variable, exponent) pairs, no zero
    exponents) to a nonzero integer coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] = None):
        self.terms: Dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c:
                key = _normalize(dict(mono))
                self.terms[key] = self.terms.get(key, 0) + c
                if self.terms[key] == 0:
                    del self.terms[key]

    @classmethod
    def constant(cls, c: int) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def variable(cls, name: str, exponent: int = 1) -> "MultiPoly":
        return cls({((name, exponent),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coefficient: int = 1) -> "MultiPoly":
        return cls({_normalize(exponents): coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> List[str]:
        return sorted({v for mono in self.terms for v, _ in mono})

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == MultiPoly.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        other = _as_multipoly(other)
        merged = dict(self.terms)
        for mono, c in other.terms.items():
            merged[mono] = merged.get(mono, 0) + c
        return MultiPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-_as_multipoly(other))

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        other = _as_multipoly(other)
        out: Dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                key = _mono_mul(ma, mb)
                out[key] = out.get(key, 0) + ca * cb
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            return self._invert_monomial() ** (-k)
        result = MultiPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def _invert_monomial(self) -> "MultiPoly":
        if len(self.terms) != 1:
            raise ArithmeticError("only a monomial can be raised to a negative power")
        (mono, c), = self.terms.items()
        if c not in (1, -1):
            raise ArithmeticError(f"coefficient {c} is not a unit")
        return MultiPoly({tuple((v, -e) for v, e in mono): c})

    def substitute(self, mapping: Mapping[str, Union[int, "MultiPoly"]]) -> "MultiPoly":
        """
        Replace variables by integers or polynomials, e.g. {"t": 1} or
        {"t": q^2 t}. Negative exponents need a unit monomial replacement.
        """
        values = {v: _as_multipoly(x) for v, x in mapping.items()}
        out = MultiPoly()
        for mono, c in self.terms.items():
            term = MultiPoly.constant(c)
            kept: Dict[str, int] = {}
            for v, e in mono:
                if v in values:
                    term = term * (values[v] ** e)
                else:
                    kept[v] = e
            out = out + term * MultiPoly.monomial(kept)
        return out

    def degree_in(self, var: str) -> int:
        return max((dict(m).get(var, 0) for m in self.terms), default=0)

    def value_counts(self, var: str = "q") -> Dict[int, int]:
        """Exponent -> coefficient for a polynomial in one variable."""
        out: Dict[int, int] = {}
        for mono, c in self.terms.items():
            exps = dict(mono)
            if set(exps) - {var}:
                raise ValueError(f"polynomial involves variables other than {var}")
            e = exps.get(var, 0)
            out[e] = out.get(e, 0) + c
        return out

    def to_qpoly(self, var: str = "q") -> QPoly:
        return QPoly.from_counts(self.value_counts(var))

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in sorted(self.terms.items()):
            factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
            if not factors:
                pieces.append(str(c))
            elif c == 1:
                pieces.append("*".join(factors))
            else:
                pieces.append(f"{c}*" + "*".join(factors))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()})"


def _as_multipoly(value: Union[int, MultiPoly]) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, int):
        return MultiPoly.constant(value)
    raise TypeError(f"cannot combine MultiPoly with {type(value).__name__}")
