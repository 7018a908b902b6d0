"""Elementary homotopy moves on strings, open strings and arrow diagrams.

Moves are addressed by sites on a concrete code:

``a`` / ``a+``
    insert an arrow with adjacent tail-head (resp. head-tail) at gap ``g``;
    the inverse removes such an arrow.
``b``
    insert two arrows joining two empty arcs in opposite directions; the
    inverse removes such a pair.
``c`` / ``c+``
    a triangle of three arrows whose endpoints sit in three adjacent pairs
    of positions; the move swaps the two endpoints in each pair.

Gap ``g`` sits just before position ``g``.  Closed codes have gaps
``0..2m-1`` (one gap when empty); open codes have ``0..2m``.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

from .strings import HEAD, TAIL, ArrowDiagram, OpenString, VirtualString

KINDS = ("a", "a+", "b", "c", "c+")


class MoveError(ValueError):
    """The requested move is not applicable at the given site."""


@dataclass(frozen=True)
class MoveInstance:
    kind: str
    site: tuple
    direction: str = "forward"
    sign: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.direction not in ("forward", "inverse"):
            raise ValueError(f"unknown direction {self.direction!r}")

    def changes_rank(self) -> int:
        if self.kind in ("c", "c+"):
            return 0
        step = 1 if self.kind in ("a", "a+") else 2
        return step if self.direction == "forward" else -step

    def to_json(self) -> dict:
        return {"kind": self.kind, "site": list(self.site), "direction": self.direction, "sign": self.sign}

    @classmethod
    def from_json(cls, d: dict) -> MoveInstance:
        return cls(d["kind"], tuple(d["site"]), d["direction"], d.get("sign", 1))

    def __str__(self) -> str:
        inv = "^-1" if self.direction == "inverse" else ""
        return f"({self.kind}){inv}@{','.join(map(str, self.site))}"


# low level helpers on code lists


def _gaps(size: int, closed: bool) -> range:
    if closed:
        return range(max(size, 1))
    return range(size + 1)


def _step(p: int, d: int, size: int, closed: bool) -> int | None:
    q = p + d
    if closed:
        return q % size
    return q if 0 <= q < size else None


def _adjacent(p: int, q: int, size: int, closed: bool) -> bool:
    return _step(p, 1, size, closed) == q or _step(q, 1, size, closed) == p


def _remove(code, signs, arrows):
    drop = set(arrows)
    keep = [a for a in range(len(code) // 2) if a not in drop]
    new_id = {a: i for i, a in enumerate(keep)}
    new_code = [(new_id[a], r) for a, r in code if a not in drop]
    new_signs = [signs[a] for a in keep] if signs is not None else None
    return new_code, new_signs


def _positions(code):
    m = len(code) // 2
    tails, heads = [0] * m, [0] * m
    for p, (a, r) in enumerate(code):
        (tails if r == TAIL else heads)[a] = p
    return tails, heads


def _arrow(code, u, v):
    """Arrow id if position ``u`` is its tail and ``v`` its head, else ``None``."""
    if u is None or v is None:
        return None
    a, r = code[u]
    b, rv = code[v]
    if a == b and r == TAIL and rv == HEAD:
        return a
    return None


# triangle detection

_C_PATTERNS = {
    # (kind, direction): arrows as (tail, head) in terms of pair slots
    # x0, x1, y0, y1, z0, z1 with x1 = x0 + 1 and so on
    ("c", "forward"): (("x1", "y0"), ("y1", "z0"), ("z1", "x0")),
    ("c", "inverse"): (("x0", "y1"), ("y0", "z1"), ("z0", "x1")),
    ("c+", "forward"): (("x0", "y0"), ("x1", "z0"), ("y1", "z1")),
    ("c+", "inverse"): (("x1", "y1"), ("x0", "z1"), ("y0", "z0")),
}

# required signs of the three pattern arrows in arrow diagrams
_C_SIGNS = {("c", "forward"): (1, 1, -1), ("c", "inverse"): (1, 1, -1)}


def _slots(site, size, closed):
    x, y, z = site
    out = {}
    for name, p in (("x", x), ("y", y), ("z", z)):
        q = _step(p, 1, size, closed)
        if q is None or not 0 <= p < size:
            return None
        out[name + "0"], out[name + "1"] = p, q
    if len(set(out.values())) != 6:
        return None
    return out


def _triangle(code, site, kind, direction, closed, signs=None):
    """Arrow ids matching the triangle pattern at ``site``, or ``None``."""
    size = len(code)
    slots = _slots(site, size, closed)
    if slots is None:
        return None
    ids = []
    for t, h in _C_PATTERNS[(kind, direction)]:
        a = _arrow(code, slots[t], slots[h])
        if a is None:
            return None
        ids.append(a)
    if len(set(ids)) != 3:
        return None
    if signs is not None:
        want = _C_SIGNS.get((kind, direction))
        if want is None or tuple(signs[a] for a in ids) != want:
            return None
    return ids


def _triangle_sites(code, closed, signs=None):
    size = len(code)
    if size < 6:
        return []
    tails, heads = _positions(code)
    found = set()
    out = []

    def add(kind, direction, site):
        key = (kind, direction, site)
        if key not in found and _triangle(code, site, kind, direction, closed, signs) is not None:
            found.add(key)
            out.append(MoveInstance(kind, site, direction))

    def st(p, d):
        return _step(p, d, size, closed)

    for e in range(len(tails)):
        t, h = tails[e], heads[e]
        # (c) forward: e = (x1 -> y0)
        x, y = st(t, -1), h
        y1 = st(y, 1)
        if x is not None and y1 is not None and code[y1][1] == TAIL:
            z = heads[code[y1][0]]
            add("c", "forward", (x, y, z))
        # (c) inverse: e = (x0 -> y1)
        x, y = t, st(h, -1)
        if y is not None and code[y][1] == TAIL:
            z = st(heads[code[y][0]], -1)
            if z is not None:
                add("c", "inverse", (x, y, z))
        # (c+) both directions start from two adjacent tails x0, x1
        x1 = st(t, 1)
        if x1 is not None and code[x1][1] == TAIL:
            h0, h1 = h, heads[code[x1][0]]
            add("c+", "forward", (t, h0, h1))
            y, z = st(h1, -1), st(h0, -1)
            if y is not None and z is not None:
                add("c+", "inverse", (t, y, z))
    return out


# applying moves


def _apply_code(code, signs, mv: MoveInstance, closed: bool):
    code = list(code)
    signs = list(signs) if signs is not None else None
    size = len(code)
    m = size // 2
    kind, site, direction = mv.kind, mv.site, mv.direction

    if kind in ("a", "a+"):
        if direction == "forward":
            (g,) = site
            if g not in _gaps(size, closed):
                raise MoveError(f"gap {g} out of range")
            new = [(m, TAIL), (m, HEAD)] if kind == "a" else [(m, HEAD), (m, TAIL)]
            code[g:g] = new
            if signs is not None:
                signs.append(mv.sign)
            return code, signs
        (e,) = site
        if not 0 <= e < m:
            raise MoveError(f"no arrow {e}")
        tails, heads = _positions(code)
        first, second = (tails[e], heads[e]) if kind == "a" else (heads[e], tails[e])
        if _step(first, 1, size, closed) != second:
            raise MoveError(f"arrow {e} does not bound an empty arc as required by ({kind})^-1")
        return _remove(code, signs, [e])

    if kind == "b":
        if direction == "forward":
            g1, g2, form = site
            gaps = _gaps(size, closed)
            if g1 not in gaps or g2 not in gaps or g1 > g2 or form not in range(4):
                raise MoveError(f"bad (b) site {site}")
            a, a2 = (m, TAIL), (m + 1, HEAD)
            b, b2 = (m, HEAD), (m + 1, TAIL)
            xs = [a, a2] if form & 1 == 0 else [a2, a]
            ys = [b, b2] if form & 2 == 0 else [b2, b]
            if g1 == g2:
                code[g1:g1] = xs + ys
            else:
                code[g2:g2] = ys
                code[g1:g1] = xs
            if signs is not None:
                signs += [mv.sign, -mv.sign]
            return code, signs
        e1, e2 = site
        if not (0 <= e1 < m and 0 <= e2 < m and e1 != e2):
            raise MoveError(f"bad arrow pair {site}")
        tails, heads = _positions(code)
        if not (
            _adjacent(tails[e1], heads[e2], size, closed) and _adjacent(heads[e1], tails[e2], size, closed)
        ):
            raise MoveError(f"arrows {e1}, {e2} do not join two empty arcs in opposite directions")
        if signs is not None and signs[e1] != -signs[e2]:
            raise MoveError("arrows removed by (b)^-1 must carry opposite signs")
        return _remove(code, signs, [e1, e2])

    ids = _triangle(code, site, kind, direction, closed, signs)
    if ids is None:
        raise MoveError(f"no ({kind}) triangle in {direction} position at {site}")
    for p in site:
        q = _step(p, 1, size, closed)
        code[p], code[q] = code[q], code[p]
    return code, signs


def apply_move(obj, mv: MoveInstance):
    """Apply a move to a ``VirtualString``, ``OpenString`` or ``ArrowDiagram``."""
    if isinstance(obj, ArrowDiagram):
        if mv.kind in ("a+", "c+"):
            raise MoveError(f"({mv.kind}) is not a diagram move")
        code, signs = _apply_code(obj.code, obj.signs, mv, True)
        return ArrowDiagram(VirtualString(tuple(code)), tuple(signs))
    code, _ = _apply_code(obj.code, None, mv, obj.closed)
    return type(obj)(tuple(code))


def reducing_moves(obj) -> list[MoveInstance]:
    """Inverse (a) and (b) moves available on ``obj``."""
    diagram = isinstance(obj, ArrowDiagram)
    code = obj.code
    closed = True if diagram else obj.closed
    size = len(code)
    m = size // 2
    tails, heads = _positions(code)
    out = []
    for e in range(m):
        if _step(tails[e], 1, size, closed) == heads[e]:
            out.append(MoveInstance("a", (e,), "inverse"))
        elif not diagram and _step(heads[e], 1, size, closed) == tails[e]:
            out.append(MoveInstance("a+", (e,), "inverse"))
    for e1 in range(m):
        for p in (_step(tails[e1], -1, size, closed), _step(tails[e1], 1, size, closed)):
            if p is None or code[p][1] != HEAD:
                continue
            e2 = code[p][0]
            if e2 == e1 or not _adjacent(heads[e1], tails[e2], size, closed):
                continue
            if diagram and obj.signs[e1] != -obj.signs[e2]:
                continue
            mv = MoveInstance("b", (min(e1, e2), max(e1, e2)), "inverse")
            if mv not in out:
                out.append(mv)
    return out


def triangle_moves(obj) -> list[MoveInstance]:
    if isinstance(obj, ArrowDiagram):
        return [mv for mv in _triangle_sites(obj.code, True, obj.signs) if mv.kind == "c"]
    return _triangle_sites(obj.code, obj.closed)


def inserting_moves(obj, signs: tuple[int, ...] = (1,)) -> list[MoveInstance]:
    """Forward (a), (a+) and (b) moves; diagrams get one copy per sign in ``signs``."""
    diagram = isinstance(obj, ArrowDiagram)
    closed = True if diagram else obj.closed
    size = len(obj.code)
    gaps = list(_gaps(size, closed))
    out = []
    for sg in signs:
        for g in gaps:
            out.append(MoveInstance("a", (g,), "forward", sg))
            if not diagram:
                out.append(MoveInstance("a+", (g,), "forward", sg))
        for i, g1 in enumerate(gaps):
            for g2 in gaps[i:]:
                for form in range(4):
                    out.append(MoveInstance("b", (g1, g2, form), "forward", sg))
    return out


def enumerate_moves(obj, rank_cap: int | None = None) -> list[MoveInstance]:
    """Every legal move on ``obj`` whose result has rank at most ``rank_cap``."""
    m = len(obj.code) // 2
    out = reducing_moves(obj) + triangle_moves(obj)
    signs = (1, -1) if isinstance(obj, ArrowDiagram) else (1,)
    for mv in inserting_moves(obj, signs):
        if rank_cap is None or m + mv.changes_rank() <= rank_cap:
            out.append(mv)
    return out


def random_move(obj, rng: _random.Random, rank_cap: int | None = None, kinds=None) -> MoveInstance:
    """A uniformly chosen legal move, optionally restricted to ``kinds``."""
    moves = enumerate_moves(obj, rank_cap)
    if kinds is not None:
        moves = [mv for mv in moves if mv.kind in kinds]
    if not moves:
        raise MoveError("no legal move")
    return rng.choice(moves)
