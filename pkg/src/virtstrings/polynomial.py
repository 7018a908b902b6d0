"""Sparse exact polynomials: integer Laurent-free ``IntPoly`` in ``t`` and rational ``BiPoly`` in ``z, t``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping


class IntPoly:
    """Polynomial in ``t`` with integer coefficients, stored as ``{exponent: coeff}``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        c: dict[int, int] = {}
        for e, v in items:
            e, v = int(e), int(v)
            if e < 0:
                raise ValueError("negative exponent")
            c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> IntPoly:
        return cls({exp: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly({0: other})
        return isinstance(other, IntPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: IntPoly) -> IntPoly:
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return IntPoly(c)

    def __neg__(self) -> IntPoly:
        return IntPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return IntPoly({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return IntPoly(c)

    __rmul__ = __mul__

    def __call__(self, t):
        return sum(v * t**e for e, v in self._c.items())

    def derivative_at_one(self) -> int:
        return sum(e * v for e, v in self._c.items())

    def substitute_power(self, r: int) -> IntPoly:
        """``p(t^r)``."""
        return IntPoly({e * r: v for e, v in self._c.items()})

    def to_json(self) -> list[list[int]]:
        return [[e, v] for e, v in self.terms()]

    @classmethod
    def from_json(cls, data) -> IntPoly:
        return cls((e, v) for e, v in data)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = ""
        for e, v in sorted(self._c.items(), reverse=True):
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + ("t" if e == 1 else f"t^{e}")
            out += (sign if out or sign == "-" else "") + body
        return out

    def __repr__(self) -> str:
        return f"IntPoly({self})"

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Parse strings like ``"2t^4-4t^2"`` or ``"t^3 - 3t"``."""
        s = text.replace(" ", "").replace("*", "")
        if s in ("", "0"):
            return cls()
        term = r"(\d+|\d*t(\^\d+)?)"
        if not re.fullmatch(rf"[+-]?{term}([+-]{term})*", s):
            raise ValueError(f"cannot parse polynomial {text!r}")
        c: dict[int, int] = {}
        for sign, num, var, exp in re.findall(r"([+-]?)(\d*)(t?)(?:\^(\d+))?", s):
            if not (num or var):
                continue
            v = int(num) if num else 1
            if sign == "-":
                v = -v
            e = (int(exp) if exp else 1) if var else 0
            c[e] = c.get(e, 0) + v
        return cls(c)


class BiPoly:
    """Polynomial in ``z`` and ``t`` with rational coefficients, ``{(z_exp, t_exp): coeff}``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction | int] | None = None):
        c: dict[tuple[int, int], Fraction] = {}
        for k, v in (coeffs or {}).items():
            c[k] = c.get(k, Fraction(0)) + Fraction(v)
        self._c = {k: v for k, v in c.items() if v}

    @property
    def coeffs(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._c)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._c.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: BiPoly) -> BiPoly:
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, Fraction(0)) + v
        return BiPoly(c)

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other) -> BiPoly:
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self._c.items()})
        c: dict[tuple[int, int], Fraction] = {}
        for (z1, t1), v1 in self._c.items():
            for (z2, t2), v2 in other._c.items():
                k = (z1 + z2, t1 + t2)
                c[k] = c.get(k, Fraction(0)) + v1 * v2
        return BiPoly(c)

    __rmul__ = __mul__

    def z_coefficient(self, k: int) -> IntPoly | None:
        """Coefficient of ``z^k`` as an ``IntPoly`` if it is integral, else ``None``."""
        c = {t: v for (z, t), v in self._c.items() if z == k}
        if any(v.denominator != 1 for v in c.values()):
            return None
        return IntPoly({t: int(v) for t, v in c.items()})

    def to_json(self) -> list[list]:
        return [[z, t, str(v)] for (z, t), v in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data) -> BiPoly:
        return cls({(z, t): Fraction(v) for z, t, v in data})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for (z, t), v in sorted(self._c.items()):
            mono = "".join(
                [f"z^{z}" if z > 1 else ("z" if z == 1 else ""), f"t^{t}" if t > 1 else ("t" if t == 1 else "")]
            )
            coeff = str(abs(v))
            if mono and abs(v) == 1:
                coeff = ""
            elif mono:
                coeff = f"({coeff})" if "/" in coeff else coeff
            sign = "-" if v < 0 else "+"
            parts.append((sign, coeff + mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"BiPoly({self})"
