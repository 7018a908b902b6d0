"""Gauss-code representation of closed and open virtual strings.

A string of rank ``m`` is a sequence of ``2m`` endpoint tokens
``(arrow, role)`` read along the core circle (or interval), where role
``TAIL`` marks the start of an arrow and ``HEAD`` its end.  Arrow ids are
dense integers ``0..m-1``; user labels only survive parse/serialize.

Text grammar: whitespace separated tokens ``L`` (tail) and ``L'`` (head)
with ``L`` matching ``[A-Za-z0-9_]+``.  Arrow diagrams put a sign on the
tail token, as in ``a+ b- a' b'``.
"""

from __future__ import annotations

import random as _random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import ClassVar, Iterable, Sequence

TAIL = 0
HEAD = 1

_TOKEN = re.compile(r"^([A-Za-z0-9_]+)(')?([+-])?$")


class ParseError(ValueError):
    """Malformed Gauss code; ``position`` is the offending token index."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"token {position}: {message}"
        super().__init__(message)
        self.position = position


def _in_arc(p: int, a: int, b: int, n: int) -> bool:
    """True if ``p`` lies strictly inside the positive arc from ``a`` to ``b``."""
    d = (p - a) % n
    return 0 < d < (b - a) % n


def _validate(code: tuple) -> None:
    m, odd = divmod(len(code), 2)
    if odd:
        raise ParseError("odd number of endpoints")
    seen = {}
    for pos, (arrow, role) in enumerate(code):
        if not 0 <= arrow < m:
            raise ParseError(f"arrow id {arrow} out of range", pos)
        if role not in (TAIL, HEAD):
            raise ParseError(f"bad role {role}", pos)
        if (arrow, role) in seen:
            kind = "tail" if role == TAIL else "head"
            raise ParseError(f"duplicate {kind} of arrow {arrow}", pos)
        seen[(arrow, role)] = pos


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Homeomorphism-class key: equal codes iff homeomorphic strings.

    ``key`` is the serialized token string of the relabelled minimal
    representative; the empty key is the trivial string.
    """

    key: str
    closed: bool = True
    signed: bool = False

    def __str__(self) -> str:
        return self.key

    @property
    def tokens(self) -> list[tuple[int, int]]:
        out = []
        for tok in self.key.split():
            m = _TOKEN.match(tok)
            out.append((int(m.group(1)), HEAD if m.group(2) else TAIL))
        return out

    def string(self):
        """Rebuild the representative string (or diagram) from the key."""
        if self.signed:
            return parse_diagram(self.key)
        return parse(self.key) if self.closed else parse_open(self.key)


@dataclass(frozen=True)
class _Chords:
    code: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)

    closed: ClassVar[bool] = True

    def __post_init__(self):
        code = tuple((int(a), int(r)) for a, r in self.code)
        _validate(code)
        object.__setattr__(self, "code", code)

    # structure

    @property
    def rank(self) -> int:
        return len(self.code) // 2

    @property
    def size(self) -> int:
        return len(self.code)

    @cached_property
    def tails(self) -> tuple[int, ...]:
        out = [0] * self.rank
        for pos, (a, r) in enumerate(self.code):
            if r == TAIL:
                out[a] = pos
        return tuple(out)

    @cached_property
    def heads(self) -> tuple[int, ...]:
        out = [0] * self.rank
        for pos, (a, r) in enumerate(self.code):
            if r == HEAD:
                out[a] = pos
        return tuple(out)

    @cached_property
    def partner(self) -> tuple[int, ...]:
        out = [0] * self.size
        for a in range(self.rank):
            out[self.tails[a]] = self.heads[a]
            out[self.heads[a]] = self.tails[a]
        return tuple(out)

    def arrows(self) -> list[tuple[int, int]]:
        """Arrows as ``(tail position, head position)`` indexed by arrow id."""
        return list(zip(self.tails, self.heads))

    def arrow_at(self, pos: int) -> int:
        return self.code[pos][0]

    def role_at(self, pos: int) -> int:
        return self.code[pos][1]

    @classmethod
    def from_arrows(cls, pairs: Sequence[tuple], labels=None):
        """Build from arrows given as ``(tail_key, head_key)`` with sortable keys.

        The keys only fix the order of the endpoints along the core; arrow
        ids follow the order of ``pairs``.
        """
        points = []
        for a, (t, h) in enumerate(pairs):
            points.append((t, a, TAIL))
            points.append((h, a, HEAD))
        points.sort(key=lambda x: x[0])
        for i in range(1, len(points)):
            if points[i][0] == points[i - 1][0]:
                raise ParseError(f"coincident endpoints at {points[i][0]!r}")
        return cls(tuple((a, r) for _, a, r in points), labels)

    def restrict(self, arrow_ids: Iterable[int]):
        """Keep only the given arrows; ids are renumbered in increasing order."""
        keep = sorted(set(arrow_ids))
        new_id = {a: i for i, a in enumerate(keep)}
        code = tuple((new_id[a], r) for a, r in self.code if a in new_id)
        return type(self)(code)

    def relabel_by_position(self):
        """Renumber arrows by first occurrence along the core."""
        order = {}
        for a, _ in self.code:
            order.setdefault(a, len(order))
        return type(self)(tuple((order[a], r) for a, r in self.code))

    # canonical forms

    def _offsets(self) -> list[int]:
        n = self.size
        if self.closed:
            return [2 * ((q - p) % n) + r for p, (q, (_, r)) in enumerate(zip(self.partner, self.code))]
        return [2 * (q - p) + r for p, (q, (_, r)) in enumerate(zip(self.partner, self.code))]

    def word(self) -> tuple[int, ...]:
        """Relabelling-invariant integer word; minimal over rotations if closed."""
        w = self._offsets()
        if not self.closed or not w:
            return tuple(w)
        return _min_rotation(w)

    def canonical(self) -> CanonicalCode:
        rep = self.from_word(self.word())
        return CanonicalCode(_tokens_key(rep.code), self.closed)

    @classmethod
    def from_word(cls, word: Sequence[int]):
        n = len(word)
        code = [None] * n
        ids = {}
        for p, v in enumerate(word):
            if code[p] is not None:
                continue
            d, r = divmod(v, 2)
            q = (p + d) % n
            a = ids.setdefault(p, len(ids))
            code[p] = (a, r)
            code[q] = (a, 1 - r)
        return cls(tuple(code))

    def canonical_rep(self):
        """Representative of the homeomorphism class built from the canonical word."""
        return self.from_word(self.word())

    def is_homeomorphic(self, other) -> bool:
        return type(self) is type(other) and self.word() == other.word()

    def __str__(self) -> str:
        return serialize(self)


def _min_rotation(w: list[int]) -> tuple[int, ...]:
    lo = min(w)
    best = None
    n = len(w)
    for r in range(n):
        if w[r] != lo:
            continue
        cand = tuple(w[r:] + w[:r])
        if best is None or cand < best:
            best = cand
    return best


def _tokens_key(code, signs=None) -> str:
    out = []
    for a, r in code:
        tok = str(a + 1) + ("'" if r == HEAD else "")
        if signs is not None and r == TAIL:
            tok += "+" if signs[a] > 0 else "-"
        out.append(tok)
    return " ".join(out)


class VirtualString(_Chords):
    """Closed virtual string: arrows on an oriented circle."""

    closed: ClassVar[bool] = True

    def linking(self, e: int, f: int) -> int:
        """Sign with which arrow ``f`` links arrow ``e`` (0 if unlinked)."""
        n = self.size
        a, b = self.tails[e], self.heads[e]
        c, d = self.tails[f], self.heads[f]
        if _in_arc(c, a, b, n) and _in_arc(d, b, a, n):
            return 1
        if _in_arc(c, b, a, n) and _in_arc(d, a, b, n):
            return -1
        return 0

    @cached_property
    def n_values(self) -> tuple[int, ...]:
        m = self.rank
        return tuple(sum(self.linking(e, f) for f in range(m) if f != e) for e in range(m))

    def n_index(self, e: int) -> int:
        return self.n_values[e]

    def arcs_dot(self, arc1: tuple[int, int], arc2: tuple[int, int]) -> int:
        """Arc product: arrows from the interior of ``arc1`` to that of ``arc2`` minus the reverse."""
        n = self.size
        (a, b), (c, d) = arc1, arc2
        total = 0
        for t, h in self.arrows():
            if _in_arc(t, a, b, n) and _in_arc(h, c, d, n):
                total += 1
            if _in_arc(t, c, d, n) and _in_arc(h, a, b, n):
                total -= 1
        return total


class OpenString(_Chords):
    """Open virtual string: arrows on an oriented segment."""

    closed: ClassVar[bool] = False

    def closure(self) -> VirtualString:
        return VirtualString(self.code)

    @cached_property
    def n_values(self) -> tuple[int, ...]:
        return self.closure().n_values

    def n_index(self, e: int) -> int:
        return self.n_values[e]

    def is_positive(self, e: int) -> bool:
        """Arrow runs along the orientation of the segment (tail before head)."""
        return self.tails[e] < self.heads[e]


@dataclass(frozen=True)
class ArrowDiagram:
    """Closed string with a sign attached to every arrow."""

    string: VirtualString
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(x) for x in self.signs)
        if len(signs) != self.string.rank or any(x not in (1, -1) for x in signs):
            raise ParseError("one sign +1/-1 per arrow required")
        object.__setattr__(self, "signs", signs)

    @property
    def rank(self) -> int:
        return self.string.rank

    @property
    def code(self):
        return self.string.code

    def underlying(self) -> VirtualString:
        return self.string

    def flip(self, e: int) -> ArrowDiagram:
        signs = list(self.signs)
        signs[e] = -signs[e]
        return ArrowDiagram(self.string, tuple(signs))

    def restrict(self, arrow_ids: Iterable[int]) -> ArrowDiagram:
        keep = sorted(set(arrow_ids))
        return ArrowDiagram(self.string.restrict(keep), tuple(self.signs[a] for a in keep))

    def word(self) -> tuple[int, ...]:
        s = self.string
        n = s.size
        w = [
            4 * ((q - p) % n) + 2 * r + (self.signs[a] < 0)
            for p, (q, (a, r)) in enumerate(zip(s.partner, s.code))
        ]
        return _min_rotation(w) if w else ()

    @classmethod
    def from_word(cls, word: Sequence[int]) -> ArrowDiagram:
        n = len(word)
        code = [None] * n
        signs = {}
        ids = {}
        for p, v in enumerate(word):
            if code[p] is not None:
                continue
            d, low = divmod(v, 4)
            r, neg = divmod(low, 2)
            q = (p + d) % n
            a = ids.setdefault(p, len(ids))
            code[p] = (a, r)
            code[q] = (a, 1 - r)
            signs[a] = -1 if neg else 1
        return cls(VirtualString(tuple(code)), tuple(signs[a] for a in range(len(signs))))

    def canonical(self) -> CanonicalCode:
        rep = self.from_word(self.word())
        return CanonicalCode(_tokens_key(rep.code, rep.signs), True, True)

    def __str__(self) -> str:
        return serialize(self)


# parsing and serialization


def _parse_tokens(text: str, signed: bool):
    toks = text.split()
    ids: dict[str, int] = {}
    code = []
    signs: dict[int, int] = {}
    for pos, tok in enumerate(toks):
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad token {tok!r}", pos)
        label, prime, sign = m.groups()
        role = HEAD if prime else TAIL
        if sign and (role == HEAD or not signed):
            raise ParseError(f"unexpected sign on {tok!r}", pos)
        if signed and role == TAIL and not sign:
            raise ParseError(f"tail {tok!r} needs a sign", pos)
        a = ids.setdefault(label, len(ids))
        if (a, role) in code:
            raise ParseError(f"duplicate {'head' if prime else 'tail'} {label!r}", pos)
        code.append((a, role))
        if sign:
            signs[a] = 1 if sign == "+" else -1
    for label, a in ids.items():
        if (a, TAIL) not in code or (a, HEAD) not in code:
            pos = next(i for i, tok in enumerate(toks) if _TOKEN.match(tok).group(1) == label)
            missing = "head" if (a, TAIL) in code else "tail"
            raise ParseError(f"label {label!r} has no {missing}", pos)
    labels = tuple(sorted(ids, key=ids.get))
    return tuple(code), labels, signs


def parse(text: str) -> VirtualString:
    """Parse a closed string, e.g. ``"x' y z' x z y'"``."""
    code, labels, _ = _parse_tokens(text, False)
    return VirtualString(code, labels)


def parse_open(text: str) -> OpenString:
    code, labels, _ = _parse_tokens(text, False)
    return OpenString(code, labels)


def parse_diagram(text: str) -> ArrowDiagram:
    code, labels, signs = _parse_tokens(text, True)
    return ArrowDiagram(VirtualString(code, labels), tuple(signs[a] for a in range(len(labels))))


def serialize(obj) -> str:
    """Inverse of the parsers; original labels are reused when present."""
    if isinstance(obj, ArrowDiagram):
        s, signs = obj.string, obj.signs
    else:
        s, signs = obj, None
    labels = s.labels if s.labels and len(s.labels) == s.rank else None
    out = []
    for a, r in s.code:
        tok = labels[a] if labels else str(a + 1)
        if r == HEAD:
            tok += "'"
        elif signs is not None:
            tok += "+" if signs[a] > 0 else "-"
        out.append(tok)
    return " ".join(out)


# elementary invariants


def linking(s: VirtualString, e: int, f: int) -> int:
    return s.linking(e, f)


def n_index(s: VirtualString | OpenString, e: int) -> int:
    return s.n_index(e)


def arcs_dot(s: VirtualString, arc1: tuple[int, int], arc2: tuple[int, int]) -> int:
    return s.arcs_dot(arc1, arc2)


# constructions


def trivial() -> VirtualString:
    return VirtualString(())


def opposite(s: VirtualString) -> VirtualString:
    """Reverse the orientation of the core circle, keeping every arrow."""
    return VirtualString(tuple(reversed(s.code)))


def inverse(s: VirtualString) -> VirtualString:
    """Reverse every arrow, keeping the orientation of the core circle."""
    return VirtualString(tuple((a, 1 - r) for a, r in s.code))


def product(*strings: VirtualString) -> VirtualString:
    """Connected sum of strings cut open at the start of their codes."""
    code = []
    shift = 0
    for s in strings:
        code.extend((a + shift, r) for a, r in s.code)
        shift += s.rank
    return VirtualString(tuple(code))


def family_perm(perm: Sequence[int]) -> VirtualString:
    """String of a permutation given as images ``perm[i-1] = sigma(i)``.

    Tails ``a_1..a_m`` run left to right along the lower half of the
    circle and heads ``b_m..b_1`` continue along the upper half; arrow
    ``i-1`` goes from ``a_i`` to ``b_sigma(i)``.
    """
    m = len(perm)
    if sorted(perm) != list(range(1, m + 1)):
        raise ValueError(f"not a permutation of 1..{m}: {list(perm)}")
    return VirtualString.from_arrows([(i, 2 * m - perm[i]) for i in range(m)])


def perm_from_cycles(text: str, m: int | None = None) -> list[int]:
    """Images of a permutation written in cycle notation, e.g. ``"(134)(2)"``.

    Single-digit entries may be written without separators; longer ones
    need commas or spaces, as in ``"(1,10)(2 3)"``.
    """
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    parsed = []
    for c in cycles:
        parts = re.split(r"[,\s]+", c.strip()) if re.search(r"[,\s]", c.strip()) else list(c.strip())
        parsed.append([int(x) for x in parts if x])
    flat = [x for c in parsed for x in c]
    if len(flat) != len(set(flat)) or any(x < 1 for x in flat):
        raise ValueError(f"cycles are not disjoint: {text!r}")
    size = max([m or 0] + [x for c in parsed for x in c])
    img = list(range(1, size + 1))
    for c in parsed:
        for i, x in enumerate(c):
            img[x - 1] = c[(i + 1) % len(c)]
    if sorted(img) != list(range(1, size + 1)):
        raise ValueError(f"cycles are not disjoint: {text!r}")
    return img


def family_pq(p: int, q: int) -> VirtualString:
    """The string with ``p`` arrows crossing ``q`` arrows in opposite direction."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be non-negative")
    m = p + q
    return family_perm([i + q if i <= p else i - p for i in range(1, m + 1)])


def cable(s: VirtualString, r: int) -> VirtualString:
    """Replace every arrow by ``r`` parallel (pairwise unlinked) copies."""
    if r < 1:
        raise ValueError("cable multiplicity must be positive")
    pairs = []
    for t, h in s.arrows():
        for k in range(r):
            pairs.append(((t, k), (h, r - 1 - k)))
    return VirtualString.from_arrows(pairs)


def covering(s: VirtualString, r: int) -> VirtualString:
    """Keep the arrows whose index is divisible by ``r``."""
    if r < 1:
        raise ValueError("covering degree must be positive")
    return s.restrict(e for e in range(s.rank) if s.n_index(e) % r == 0)


def closure(mu: OpenString) -> VirtualString:
    return mu.closure()


def open_product(mu: OpenString, nu: OpenString) -> OpenString:
    code = list(mu.code) + [(a + mu.rank, r) for a, r in nu.code]
    return OpenString(tuple(code))


def open_inverse(mu: OpenString) -> OpenString:
    """Reverse the segment and every arrow."""
    return OpenString(tuple((a, 1 - r) for a, r in reversed(mu.code)))


def open_from_closed(s: VirtualString) -> OpenString:
    """Cut the circle just before the first endpoint of the code."""
    return OpenString(s.code)


# random generators


def _random_code(m: int, rng: _random.Random) -> tuple:
    pos = list(range(2 * m))
    rng.shuffle(pos)
    code = [None] * (2 * m)
    for a in range(m):
        t, h = pos[2 * a], pos[2 * a + 1]
        code[t] = (a, TAIL)
        code[h] = (a, HEAD)
    return tuple(code)


def random_string(m: int, rng: _random.Random | int | None = None) -> VirtualString:
    """Uniformly random arrow configuration of rank ``m``."""
    rng = rng if isinstance(rng, _random.Random) else _random.Random(rng)
    return VirtualString(_random_code(m, rng))


def random_open_string(m: int, rng: _random.Random | int | None = None) -> OpenString:
    rng = rng if isinstance(rng, _random.Random) else _random.Random(rng)
    return OpenString(_random_code(m, rng))


def random_diagram(m: int, rng: _random.Random | int | None = None) -> ArrowDiagram:
    rng = rng if isinstance(rng, _random.Random) else _random.Random(rng)
    s = VirtualString(_random_code(m, rng))
    return ArrowDiagram(s, tuple(rng.choice((1, -1)) for _ in range(m)))
