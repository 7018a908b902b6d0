"""Finite formal sums of monomials in class keys with rational coefficients.

A monomial is a pair ``(z_power, factors)``.  Tensor sums keep factor
order; commutative sums keep factors sorted.  When ``absorb`` is set,
any monomial containing the zero key vanishes.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable

from .homotopy import ZERO_KEY

# the trivial open string is a genuine generator, so it needs a non-zero key
OPEN_TRIVIAL_KEY = "O"


class FormalSum:
    __slots__ = ("terms", "tensor", "absorb", "caps")

    def __init__(self, terms=None, tensor: bool = True, absorb: bool = True, caps=None):
        self.tensor = tensor
        self.absorb = absorb
        self.caps = caps
        acc: dict = defaultdict(Fraction)
        for (z, factors), c in (terms.items() if isinstance(terms, dict) else terms or ()):
            mono = self._mono(z, factors)
            if mono is not None:
                acc[mono] += Fraction(c)
        self.terms = {k: v for k, v in acc.items() if v}

    def _mono(self, z, factors):
        factors = tuple(factors)
        if self.absorb and ZERO_KEY in factors:
            return None
        if not self.tensor:
            factors = tuple(sorted(factors))
        return (z, factors)

    def _like(self, terms, tensor=None):
        return FormalSum(terms, self.tensor if tensor is None else tensor, self.absorb, self.caps)

    def _check(self, other: "FormalSum") -> None:
        if self.tensor != other.tensor:
            raise ValueError("cannot combine tensor and commutative sums")
        if self.caps is not None and other.caps is not None and self.caps != other.caps:
            raise ValueError(f"formal sums built with different caps: {self.caps} vs {other.caps}")

    @classmethod
    def monomial(cls, factors: Iterable[str], coeff=1, z: int = 0, **kw) -> "FormalSum":
        return cls({(z, tuple(factors)): coeff}, **kw)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        self._check(other)
        return self._like(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "FormalSum":
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, c, z: int = 0) -> "FormalSum":
        return self._like([((k[0] + z, k[1]), v * c) for k, v in self.terms.items()])

    def __mul__(self, other: "FormalSum") -> "FormalSum":
        """Product of commutative sums; concatenation for tensor sums."""
        self._check(other)
        out = []
        for (z1, f1), c1 in self.terms.items():
            for (z2, f2), c2 in other.terms.items():
                out.append(((z1 + z2, f1 + f2), c1 * c2))
        return self._like(out)

    def permute(self, order) -> "FormalSum":
        """Reorder tensor factors: factor ``i`` of the result is factor ``order[i]``."""
        return self._like([((z, tuple(f[i] for i in order)), c) for (z, f), c in self.terms.items()])

    def map_factor(self, index: int, fn) -> "FormalSum":
        """Apply a linear map ``key -> FormalSum`` (degree one) to one tensor slot."""
        out = []
        for (z, f), c in self.terms.items():
            for (z2, g), c2 in fn(f[index]).terms.items():
                out.append(((z + z2, f[:index] + g + f[index + 1 :]), c * c2))
        return self._like(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> dict:
        return {
            "tensor": self.tensor,
            "caps": self.caps,
            "terms": [
                {"coeff": str(c), "z": z, "factors": list(f)} for (z, f), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, absorb: bool = True) -> "FormalSum":
        terms = [((t["z"], tuple(t["factors"])), Fraction(t["coeff"])) for t in data["terms"]]
        return cls(terms, data["tensor"], absorb, data.get("caps"))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        sep = " (x) " if self.tensor else " * "
        parts = []
        for (z, f), c in self.sorted_terms():
            mono = sep.join(f"<{k}>" for k in f) or "1"
            zpart = "" if z == 0 else ("z " if z == 1 else f"z^{z} ")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            cpart = "" if mag == 1 else f"{mag} "
            parts.append(f"{sign} {cpart}{zpart}{mono}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    __repr__ = __str__
