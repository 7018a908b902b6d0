"""Based matrices: skew-symmetric integer matrices with a distinguished element ``s``.

Elements are indices ``0..n-1``; ``names`` optionally remembers where each
element came from (``"s"`` or an arrow id) and survives reductions.
"""

from __future__ import annotations

import json
import random as _random
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import rank_int
from .polynomial import IntPoly
from .strings import OpenString, VirtualString


class NotSkewError(ValueError):
    pass


@dataclass(frozen=True)
class BasedMatrix:
    b: tuple[tuple[int, ...], ...]
    s: int = 0
    names: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in row) for row in self.b)
        n = len(b)
        if any(len(row) != n for row in b):
            raise NotSkewError("matrix is not square")
        for i in range(n):
            for j in range(i, n):
                if b[i][j] != -b[j][i]:
                    raise NotSkewError(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        if not 0 <= self.s < max(n, 1) or n == 0:
            raise ValueError("based matrix needs a basepoint element")
        object.__setattr__(self, "b", b)
        if self.names is None:
            object.__setattr__(self, "names", tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.b)

    def others(self) -> list[int]:
        return [g for g in range(self.n) if g != self.s]

    def __call__(self, g: int, h: int) -> int:
        return self.b[g][h]

    # constructions

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], s: int = 0) -> BasedMatrix:
        return cls(tuple(tuple(r) for r in rows), s)

    @classmethod
    def trivial(cls) -> BasedMatrix:
        return cls(((0,),), 0, ("s",))

    def neg(self) -> BasedMatrix:
        return BasedMatrix(tuple(tuple(-x for x in row) for row in self.b), self.s, self.names)

    def dash(self) -> BasedMatrix:
        """``T^-``: negate ``b(s, .)`` and shift the other entries by it."""
        s, n = self.s, self.n
        b = self.b
        rows = []
        for g in range(n):
            row = []
            for h in range(n):
                if g == s or h == s:
                    row.append(-b[g][h])
                else:
                    row.append(b[g][h] - b[g][s] - b[s][h])
            rows.append(tuple(row))
        return BasedMatrix(tuple(rows), s, self.names)

    def submatrix(self, keep: Sequence[int]) -> BasedMatrix:
        keep = sorted(set(keep) | {self.s})
        rows = tuple(tuple(self.b[i][j] for j in keep) for i in keep)
        return BasedMatrix(rows, keep.index(self.s), tuple(self.names[i] for i in keep))

    def permuted(self, order: Sequence[int]) -> BasedMatrix:
        """Reorder elements: new element ``i`` is old element ``order[i]``."""
        rows = tuple(tuple(self.b[i][j] for j in order) for i in order)
        return BasedMatrix(rows, list(order).index(self.s), tuple(self.names[i] for i in order))

    # element types

    def is_annihilating(self, g: int) -> bool:
        return g != self.s and not any(self.b[g])

    def is_core(self, g: int) -> bool:
        return g != self.s and self.b[g] == self.b[self.s]

    def is_complementary(self, g1: int, g2: int) -> bool:
        if self.s in (g1, g2) or g1 == g2:
            return False
        r1, r2, rs = self.b[g1], self.b[g2], self.b[self.s]
        return all(x + y == z for x, y, z in zip(r1, r2, rs))

    def reductions(self) -> list[tuple[int, ...]]:
        """All elementary deletions available: singletons and complementary pairs."""
        out: list[tuple[int, ...]] = []
        others = self.others()
        for g in others:
            if self.is_annihilating(g) or self.is_core(g):
                out.append((g,))
        for i, g1 in enumerate(others):
            for g2 in others[i + 1 :]:
                if self.is_complementary(g1, g2):
                    out.append((g1, g2))
        return out

    def is_primitive(self) -> bool:
        return not self.reductions()

    def delete(self, elements: Sequence[int]) -> BasedMatrix:
        return self.submatrix([g for g in range(self.n) if g not in set(elements)])

    def primitive_reduce(self, rng: _random.Random | None = None) -> BasedMatrix:
        """Delete annihilating, core and complementary elements until none remain.

        Deletions are taken in a fixed order, or at random when ``rng`` is
        given; the result is unique up to isomorphism either way.
        """
        t = self
        while True:
            red = t.reductions()
            if not red:
                return t
            t = t.delete(rng.choice(red) if rng else red[0])

    def rho(self) -> int:
        return self.primitive_reduce().n - 1

    # numerical invariants

    def rank(self) -> int:
        return rank_int(self.b)

    def genus(self) -> int:
        return self.rank() // 2

    def u_polynomial(self) -> IntPoly:
        c: dict[int, int] = {}
        for g in self.others():
            k = self.b[g][self.s]
            if k:
                c[abs(k)] = c.get(abs(k), 0) + (1 if k > 0 else -1)
        return IntPoly(c)

    def v_k(self, k: int) -> int:
        return sum(1 for g in range(self.n) if self.b[g][self.s] == k)

    def v_kA(self, k: int, multiset: Sequence[int]) -> int:
        want = sorted(multiset)
        return sum(
            1 for g in range(self.n) if self.b[g][self.s] == k and sorted(self._row_without_s(g)) == want
        )

    def _row_without_s(self, g: int) -> list[int]:
        return [self.b[g][h] for h in range(self.n) if h != self.s]

    # isomorphism

    def _signature(self, g: int) -> tuple:
        return (g == self.s, self.b[g][self.s], tuple(sorted(self.b[g])))

    def find_isomorphism(self, other: BasedMatrix, grades=None, other_grades=None) -> list[int] | None:
        """A bijection ``phi`` with ``other.b[phi g][phi h] == b[g][h]`` and ``phi(s) = s``."""
        if self.n != other.n:
            return None
        sig1 = [self._signature(g) + ((grades[g],) if grades else ()) for g in range(self.n)]
        sig2 = [other._signature(g) + ((other_grades[g],) if other_grades else ()) for g in range(other.n)]
        if sorted(sig1) != sorted(sig2):
            return None
        order = [self.s] + sorted(self.others(), key=lambda g: sum(1 for x in sig2 if x == sig1[g]))
        phi: dict[int, int] = {}
        used: set[int] = set()

        def extend(i: int) -> bool:
            if i == len(order):
                return True
            g = order[i]
            for h in range(other.n):
                if h in used or sig2[h] != sig1[g]:
                    continue
                if all(other.b[h][phi[x]] == self.b[g][x] for x in phi):
                    phi[g] = h
                    used.add(h)
                    if extend(i + 1):
                        return True
                    del phi[g]
                    used.discard(h)
            return False

        return [phi[g] for g in range(self.n)] if extend(0) else None

    def is_isomorphic(self, other: BasedMatrix) -> bool:
        return self.find_isomorphism(other) is not None

    # elementary extensions

    def _extend(self, new_rows: list[list[int]]) -> BasedMatrix:
        """Append elements whose rows against the old elements are ``new_rows``.

        Each new row has length ``n + k`` covering old and new elements.
        """
        n, k = self.n, len(new_rows)
        rows = [list(self.b[g]) + [-new_rows[j][g] for j in range(k)] for g in range(n)]
        rows += [list(r) for r in new_rows]
        names = tuple(self.names) + tuple(f"x{len(self.names) + j}" for j in range(k))
        return BasedMatrix(tuple(tuple(r) for r in rows), self.s, names)

    def extend_m1(self) -> BasedMatrix:
        """Add an annihilating element."""
        return self._extend([[0] * (self.n + 1)])

    def extend_m2(self) -> BasedMatrix:
        """Add a core element."""
        return self._extend([list(self.b[self.s]) + [0]])

    def extend_m3(self, rng: _random.Random | None = None, bound: int = 2) -> BasedMatrix:
        """Add a complementary pair ``g1, g2`` with a random row for ``g1``."""
        rng = rng or _random.Random(0)
        s, n = self.s, self.n
        r1 = [rng.randint(-bound, bound) for _ in range(n)]
        r1[s] = rng.randint(-bound, bound)
        x = r1[s]
        row1 = r1 + [0, x]
        row2 = [self.b[s][h] - r1[h] for h in range(n)] + [-x, 0]
        return self._extend([row1, row2])

    # serialization

    def to_json(self) -> dict:
        return {"s": self.s, "b": [list(r) for r in self.b]}

    @classmethod
    def from_json(cls, data: dict | str) -> BasedMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(r) for r in data["b"]), data["s"])

    def display(self) -> str:
        """Bracketed rows with the basepoint row and column moved first."""
        order = [self.s] + self.others()
        width = max(len(str(x)) for row in self.b for x in row)
        rows = [" ".join(f"{self.b[i][j]:>{width}}" for j in order) for i in order]
        return "\n".join(f"[{r}]" for r in rows)

    def __str__(self) -> str:
        return self.display()


def from_string(s: VirtualString) -> BasedMatrix:
    """Intersection matrix on the basepoint loop and the arrow loops.

    ``b(e, s)`` is the index of ``e`` and ``b(e, f)`` the arc product of the
    arcs under ``e`` and ``f`` plus the linking sign of ``f`` with ``e``.
    Element 0 is ``s`` and element ``i + 1`` is arrow ``i``.
    """
    m = s.rank
    arcs = s.arrows()
    rows = [[0] * (m + 1) for _ in range(m + 1)]
    for e in range(m):
        rows[e + 1][0] = s.n_index(e)
        rows[0][e + 1] = -s.n_index(e)
        for f in range(e + 1, m):
            v = s.arcs_dot(arcs[e], arcs[f]) + s.linking(e, f)
            rows[e + 1][f + 1] = v
            rows[f + 1][e + 1] = -v
    return BasedMatrix(tuple(tuple(r) for r in rows), 0, ("s",) + tuple(range(m)))


@dataclass(frozen=True)
class GradedBasedMatrix:
    """Based matrix whose non-basepoint elements carry a grade ``+1`` or ``-1``."""

    matrix: BasedMatrix
    grades: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(x) for x in self.grades)
        if len(g) != self.matrix.n:
            raise ValueError("one grade per element required")
        for i, x in enumerate(g):
            if (i == self.matrix.s) != (x == 0) or x not in (-1, 0, 1):
                raise ValueError("grades are +1/-1 on elements and 0 on the basepoint")
        object.__setattr__(self, "grades", g)

    @property
    def n(self) -> int:
        return self.matrix.n

    def to_json(self) -> dict:
        data = self.matrix.to_json()
        data["grade"] = ["s" if g == 0 else ("+" if g > 0 else "-") for g in self.grades]
        return data

    @classmethod
    def from_json(cls, data: dict | str) -> GradedBasedMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        grades = [{"s": 0, "+": 1, "-": -1}[g] for g in data["grade"]]
        return cls(BasedMatrix.from_json(data), tuple(grades))

    def neg(self) -> GradedBasedMatrix:
        return GradedBasedMatrix(self.matrix.neg(), self.grades)

    def reductions(self) -> list[tuple[int, ...]]:
        t, gr = self.matrix, self.grades
        out = []
        for red in t.reductions():
            if len(red) == 1:
                g = red[0]
                if t.is_annihilating(g) and gr[g] > 0:
                    out.append(red)
                elif t.is_core(g) and gr[g] < 0:
                    out.append(red)
            elif gr[red[0]] != gr[red[1]]:
                out.append(red)
        return out

    def delete(self, elements) -> GradedBasedMatrix:
        keep = [g for g in range(self.n) if g not in set(elements)]
        return GradedBasedMatrix(self.matrix.submatrix(keep), tuple(self.grades[g] for g in keep))

    def primitive_reduce(self, rng: _random.Random | None = None) -> GradedBasedMatrix:
        t = self
        while True:
            red = t.reductions()
            if not red:
                return t
            t = t.delete(rng.choice(red) if rng else red[0])

    def is_isomorphic(self, other: GradedBasedMatrix) -> bool:
        return self.matrix.find_isomorphism(other.matrix, self.grades, other.grades) is not None

    def u_pair(self) -> tuple[IntPoly, IntPoly]:
        t, s = self.matrix, self.matrix.s
        plus: dict[int, int] = {}
        minus: dict[int, int] = {}
        for g in t.others():
            k = t.b[g][s]
            if not k:
                continue
            if k > 0:
                d = plus if self.grades[g] > 0 else minus
                d[k] = d.get(k, 0) + 1
            else:
                d = minus if self.grades[g] > 0 else plus
                d[-k] = d.get(-k, 0) - 1
        return IntPoly(plus), IntPoly(minus)


def from_open_string(mu: OpenString) -> GradedBasedMatrix:
    """Matrix of the closure, graded by the direction of each arrow along the segment."""
    t = from_string(mu.closure())
    grades = (0,) + tuple(1 if mu.is_positive(e) else -1 for e in range(mu.rank))
    return GradedBasedMatrix(t, grades)


def graded_sum(
    t1: GradedBasedMatrix, t2: GradedBasedMatrix, weight_positive: bool = False
) -> GradedBasedMatrix:
    """Sum of graded matrices along a common basepoint.

    Blocks are kept; an element ``g`` of the first summand and ``h`` of the
    second pair to ``eps(g) b2(s, h) - eps(h) b1(s, g)``.  By default
    ``eps`` is 1 on negative elements and 0 on positive ones, which makes
    the sum of ``T(mu)`` and ``T(nu)`` isomorphic to ``T(mu nu)``.  With
    ``weight_positive`` the weights are swapped.
    """
    a, b = t1.matrix, t2.matrix
    o1, o2 = a.others(), b.others()
    idx = [("s", None)] + [(1, g) for g in o1] + [(2, h) for h in o2]
    eps = {}
    w = 1 if weight_positive else -1
    for g in o1:
        eps[(1, g)] = 1 if t1.grades[g] == w else 0
    for h in o2:
        eps[(2, h)] = 1 if t2.grades[h] == w else 0

    def entry(x, y) -> int:
        (i, g), (j, h) = x, y
        if i == "s" and j == "s":
            return 0
        if i == "s":
            return a.b[a.s][h] if j == 1 else b.b[b.s][h]
        if j == "s":
            return a.b[g][a.s] if i == 1 else b.b[g][b.s]
        if i == j:
            m = a if i == 1 else b
            return m.b[g][h]
        if i == 1:
            return eps[x] * b.b[b.s][h] - eps[y] * a.b[a.s][g]
        return -entry(y, x)

    rows = tuple(tuple(entry(x, y) for y in idx) for x in idx)
    grades = (0,) + tuple(t1.grades[g] for g in o1) + tuple(t2.grades[h] for h in o2)
    return GradedBasedMatrix(BasedMatrix(rows, 0), grades)
