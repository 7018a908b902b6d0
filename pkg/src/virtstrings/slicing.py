"""Sliceness obstructions for strings.

A slice string has vanishing u-polynomials for all its iterated
coverings and a hyperbolic based matrix.  The secondary test looks at
Lagrangians of the mod-p intersection form that contain the core class
and at the substrings ``alpha_h`` cut out by their elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .based_matrix import from_string
from .filling import DEFAULT_MAX_SIZE, FillingSizeError, is_hyperbolic
from .linalg import nullspace_mod, rank_mod, rref_mod
from .strings import VirtualString
from .upoly import higher_u, u


@dataclass
class ObstructionReport:
    verdict: str
    witnesses: list[dict] = field(default_factory=list)
    caps: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witnesses": self.witnesses, "caps": self.caps}


def _cover_sequences(depth: int, max_r: int):
    for k in range(1, depth + 1):
        yield from itertools.product(range(2, max_r + 1), repeat=k)


def _hyperbolic_or_none(s: VirtualString, max_size: int):
    t = from_string(s).primitive_reduce()
    try:
        return is_hyperbolic(t, max_size)
    except FillingSizeError:
        return None


def slice_obstruction(
    s: VirtualString, depth: int = 2, max_r: int = 4, max_size: int = DEFAULT_MAX_SIZE
) -> ObstructionReport:
    """Check the u-polynomial, its covering refinements and hyperbolicity."""
    caps = {"depth": depth, "max_r": max_r, "max_size": max_size}
    witnesses = []
    base = u(s)
    if base:
        witnesses.append({"kind": "u", "detail": str(base)})
    for seq in _cover_sequences(depth, max_r):
        p = higher_u(s, seq)
        if p:
            witnesses.append({"kind": "higher_u", "sequence": list(seq), "detail": str(p)})
    hyp = _hyperbolic_or_none(s, max_size)
    if hyp is False:
        witnesses.append({"kind": "based_matrix", "detail": "primitive based matrix is not hyperbolic"})
    elif hyp is None:
        caps["skipped"] = "based matrix above the filling cap"
    return ObstructionReport("NotSlice" if witnesses else "NoObstructionFound", witnesses, caps)


# mod-p secondary obstruction


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def alpha_h(s: VirtualString, h, p: int) -> VirtualString:
    """Arrows ``e`` with ``B([e], h) = 0 mod p``; ``h`` has coordinates on ``[s, e_1, ..., e_m]``."""
    t = from_string(s)
    if len(h) != t.n:
        raise ValueError(f"h needs {t.n} coordinates")
    return s.restrict(_kept(t, h, p))


def _kept(t, h, p) -> list[int]:
    return [e for e in range(t.n - 1) if sum(t.b[e + 1][j] * h[j] for j in range(t.n)) % p == 0]


def _span(basis, p):
    """All vectors of the span of ``basis`` over ``Z/p``."""
    n = len(basis[0]) if basis else 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, b)]
        yield tuple(v)


def lagrangians(form, p: int, contain, budget: int = 20000):
    """Subspaces ``L`` of ``(Z/p)^n`` with ``L = L^perp`` containing ``contain``.

    Each is returned as a reduced row echelon basis.  These are exactly the
    preimages of Lagrangians of the non-degenerate quotient by the radical.
    """
    n = len(form)
    target = n - rank_mod(form, p) // 2

    def perp(basis):
        rows = [[sum(v[i] * form[i][j] for i in range(n)) % p for j in range(n)] for v in basis]
        return nullspace_mod(rows, n, p) if rows else [[int(i == j) for j in range(n)] for i in range(n)]

    radical = nullspace_mod([list(r) for r in form], n, p)
    start = tuple(map(tuple, rref_mod(radical + [list(contain)], p)))
    seen = {start}
    stack = [start]
    found = []
    nodes = 0
    while stack:
        nodes += 1
        if nodes > budget:
            raise FillingSizeError(f"Lagrangian enumeration exceeded {budget} subspaces")
        basis = stack.pop()
        if len(basis) == target:
            found.append(basis)
            continue
        current = set(_span(list(basis), p))
        for v in _span(perp(list(basis)), p):
            if v in current:
                continue
            bigger = tuple(map(tuple, rref_mod(list(basis) + [list(v)], p)))
            if bigger not in seen:
                seen.add(bigger)
                stack.append(bigger)
    return sorted(found)


def _pairings_in(lag_vectors, classes, m, p):
    """Is there an involution on arrows whose orbit sums all lie in the subspace?"""
    members = set(lag_vectors)

    def add(*idx):
        return tuple(sum(classes[i][j] for i in idx) % p for j in range(len(classes[0])))

    def match(rest):
        if not rest:
            return True
        e, others = rest[0], rest[1:]
        if add(e) in members and match(others):
            return True
        for i, f in enumerate(others):
            if add(e, f) in members and match(others[:i] + others[i + 1 :]):
                return True
        return False

    return match(list(range(m)))


def lagrangian_scan(s: VirtualString, p: int = 2, budget: int = 20000, max_size: int = DEFAULT_MAX_SIZE):
    """Secondary sliceness test over all Lagrangians containing the core class.

    A Lagrangian is admissible if some involution on the arrows has all
    orbit sums in it.  The verdict is ``NotSlice`` when every admissible
    Lagrangian contains ``h`` with ``u(alpha_h) != 0`` or a non-hyperbolic
    ``T(alpha_h)``.
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    t = from_string(s)
    n = t.n
    form = [[x % p for x in row] for row in t.b]
    e_s = [1] + [0] * (n - 1)
    lags = lagrangians(form, p, e_s, budget)
    classes = [[int(j == e + 1) for j in range(n)] for e in range(s.rank)]
    caps = {"p": p, "budget": budget, "lagrangians": len(lags)}
    witnesses = []
    admissible = 0
    verdicts: dict[tuple, bool] = {}
    for basis in lags:
        vectors = set(_span(list(basis), p))
        if not _pairings_in(vectors, classes, s.rank, p):
            continue
        admissible += 1
        bad = None
        for h in sorted(vectors):
            key = tuple(_kept(t, h, p))
            if key not in verdicts:
                sub = s.restrict(key)
                ok = not u(sub)
                if ok:
                    hyp = _hyperbolic_or_none(sub, max_size)
                    ok = hyp is not False
                verdicts[key] = ok
            if not verdicts[key]:
                bad = h
                break
        if bad is None:
            caps["admissible"] = admissible
            return ObstructionReport("NoObstructionFound", [{"kind": "lagrangian", "basis": [list(v) for v in basis]}], caps)
        witnesses.append({"kind": "lagrangian", "basis": [list(v) for v in basis], "h": list(bad)})
    caps["admissible"] = admissible
    return ObstructionReport("NotSlice", witnesses, caps)
