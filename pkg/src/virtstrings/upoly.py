"""The u-polynomial of strings, its covering refinements and open-string versions."""

from __future__ import annotations

from typing import Sequence

from .polynomial import IntPoly
from .strings import OpenString, VirtualString, covering, family_pq, product, trivial


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def u(s: VirtualString) -> IntPoly:
    """Sum of ``sign(n(e)) t^|n(e)|`` over all arrows."""
    c: dict[int, int] = {}
    for n in s.n_values:
        if n:
            c[abs(n)] = c.get(abs(n), 0) + _sign(n)
    return IntPoly(c)


def u_k(s: VirtualString, k: int) -> int:
    """Coefficient of ``t^k`` in ``u(s)``, for ``k >= 1``."""
    if k < 1:
        raise ValueError("k must be positive")
    return u(s)[k]


def higher_u(s: VirtualString, rs: Sequence[int]) -> IntPoly:
    """``u`` of the iterated covering ``(...(s^(r1))^(r2)...)^(rk)``."""
    for r in rs:
        s = covering(s, r)
    return u(s)


def u_open(mu: OpenString) -> tuple[IntPoly, IntPoly]:
    """The pair ``(u+, u-)``.

    ``u+_k`` counts positive arrows with index ``k`` minus negative arrows
    with index ``-k``; ``u-`` swaps the roles of the two arrow classes.
    """
    plus: dict[int, int] = {}
    minus: dict[int, int] = {}
    for e, n in enumerate(mu.n_values):
        if not n:
            continue
        pos = mu.is_positive(e)
        if n > 0:
            target = plus if pos else minus
            target[n] = target.get(n, 0) + 1
        else:
            target = minus if pos else plus
            target[-n] = target.get(-n, 0) - 1
    return IntPoly(plus), IntPoly(minus)


def realize_u(f: IntPoly) -> VirtualString:
    """A product of strings ``alpha_{1,m}`` / ``alpha_{m,1}`` whose u-polynomial is ``f``.

    ``f`` must have zero constant term and ``f'(1) = 0``; these conditions
    characterise the u-polynomials of strings.
    """
    if f[0] != 0:
        raise ValueError(f"constant term must vanish, got {f[0]}")
    if f.derivative_at_one() != 0:
        raise ValueError(f"f'(1) must vanish, got {f.derivative_at_one()}")
    factors = []
    for m, a in sorted(f.coeffs.items(), reverse=True):
        if m < 2:
            continue
        block = family_pq(1, m) if a > 0 else family_pq(m, 1)
        factors.extend([block] * abs(a))
    return product(*factors) if factors else trivial()
