"""Labelings of arrow diagrams and the skein-algebra map to string polynomials.

``nabla`` sums over labelings whose cutting arrows are pairwise unlinked
and which use each label on exactly one circle.  Such a labeling is a
special arrow set ``F`` plus a numbering of the ``|F| + 1`` regions that
is increasing along an oriented tree, so the fast path counts linear
extensions of that tree.  ``enumerate_labelings`` is the literal
edge-by-edge definition and serves as the reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .formal import FormalSum
from .homotopy import DEFAULT_CAPS, Caps, normalize
from .lie import OrientedForest, linear_extensions, special_sets, surgery_pieces
from .moves import MoveInstance, apply_move
from .polynomial import BiPoly
from .strings import ArrowDiagram, CanonicalCode, VirtualString
from .upoly import u


def edges(d: ArrowDiagram) -> list[tuple[int, int] | None]:
    """Edge ``k`` runs from endpoint ``k`` to endpoint ``k + 1``; a bare circle has one closed edge."""
    n = d.string.size
    if n == 0:
        return [None]
    return [(k, (k + 1) % n) for k in range(n)]


@dataclass(frozen=True)
class Labeling:
    values: tuple[int, ...]
    cutting: tuple[int, ...]
    negative: int

    @property
    def size(self) -> int:
        return len(self.cutting)


def _arrow_state(d: ArrowDiagram, e: int, f: Sequence[int]):
    """``None`` if the labeling breaks the rule at ``e``, else whether ``e`` is cutting."""
    n = d.string.size
    a, b = d.string.arrows()[e]
    a_in, a_out, b_in, b_out = f[(a - 1) % n], f[a], f[(b - 1) % n], f[b]
    if a_in == a_out and b_in == b_out:
        return False
    if a_out == b_in and a_in == b_out and a_in != a_out:
        if (a_in > a_out) == (d.signs[e] > 0):
            return True
    return None


def enumerate_labelings(d: ArrowDiagram, n: int, mode: str = "lbl") -> list[Labeling]:
    """All ``n``-labelings, by backtracking over edges.

    ``Lbl`` keeps labelings whose cutting arrows are pairwise unlinked;
    ``lbl`` also asks for every label to be used and exactly ``n - 1``
    cutting arrows.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if mode not in ("lbl", "Lbl"):
        raise ValueError("mode is 'lbl' or 'Lbl'")
    s = d.string
    size = s.size
    if size == 0:
        if mode == "lbl":
            return [Labeling((1,), (), 0)] if n == 1 else []
        return [Labeling((i,), (), 0) for i in range(1, n + 1)]
    if mode == "lbl" and n > s.rank + 1:
        return []
    # an arrow is checked once the last of its four edges gets a label
    ready: dict[int, list[int]] = {}
    for e, (a, b) in enumerate(s.arrows()):
        last = max(a, b, (a - 1) % size, (b - 1) % size)
        ready.setdefault(last, []).append(e)
    out = []
    f = [0] * size
    # labels only change at endpoints of cutting arrows, two per arrow
    max_changes = 2 * (n - 1) if mode == "lbl" else 2 * s.rank

    def rec(k, cutting, changes):
        if k == size:
            if mode == "lbl" and (len(cutting) != n - 1 or len(set(f)) != n):
                return
            neg = sum(1 for e in cutting if d.signs[e] < 0)
            out.append(Labeling(tuple(f), tuple(sorted(cutting)), neg))
            return
        for label in range(1, n + 1):
            f[k] = label
            step = changes + (k > 0 and label != f[k - 1])
            if step > max_changes:
                continue
            if mode == "lbl" and n - len(set(f[: k + 1])) > size - k - 1:
                continue
            added = []
            ok = True
            for e in ready.get(k, ()):
                state = _arrow_state(d, e, f)
                if state is None or (state and any(s.linking(e, g) for g in cutting + added)):
                    ok = False
                    break
                if state:
                    added.append(e)
            if ok and not (mode == "lbl" and len(cutting) + len(added) > n - 1):
                rec(k + 1, cutting + added, step)
        f[k] = 0

    rec(0, [], 0)
    return out


def labeling_pieces(d: ArrowDiagram, lab: Labeling) -> list[list[ArrowDiagram]]:
    """``pieces[i - 1]`` lists the circles labelled ``i`` as signed diagrams."""
    s = d.string
    n_labels = max(lab.values)
    members, _, regions = surgery_pieces(s, lab.cutting)
    label_of = {}
    for k, r in enumerate(regions):
        label_of[r] = lab.values[k]
    out: list[list[ArrowDiagram]] = [[] for _ in range(n_labels)]
    for r, m in enumerate(members):
        out[label_of[r] - 1].append(d.restrict(m))
    return out


def _tree(d: ArrowDiagram, cut: Sequence[int], regions: Sequence[int]) -> list[tuple[int, int]]:
    # labels must increase from the outgoing edge at the tail to the incoming one
    # for a positive arrow, and the other way round for a negative arrow
    arrows = d.string.arrows()
    out = []
    n = d.string.size
    for e in cut:
        a, _ = arrows[e]
        lo, hi = regions[a], regions[(a - 1) % n]
        out.append((lo, hi) if d.signs[e] > 0 else (hi, lo))
    return out


def nabla_terms(d: ArrowDiagram):
    """``(coefficient, z_power, piece strings)`` for every special set with a nonzero count."""
    s = d.string
    for cut in special_sets(s):
        members, _, regions = surgery_pieces(s, cut)
        k = len(members)
        count = linear_extensions(OrientedForest(k, tuple(_tree(d, cut, regions))))
        if not count:
            continue
        neg = sum(1 for e in cut if d.signs[e] < 0)
        coeff = Fraction((-1) ** neg * count, factorial(k))
        yield coeff, len(cut), [s.restrict(m) for m in members]



def nabla(d: ArrowDiagram, caps: Caps = DEFAULT_CAPS) -> FormalSum:
    terms = []
    for coeff, z, pieces in nabla_terms(d):
        if any(p.rank <= 2 for p in pieces):
            continue
        terms.append(((z, tuple(normalize(p, caps) for p in pieces)), coeff))
    return FormalSum(terms, tensor=False, caps=caps.to_json())


def nabla_from_labelings(d: ArrowDiagram, caps: Caps = DEFAULT_CAPS) -> FormalSum:
    """The same sum taken literally over ``lbl_n`` for every ``n``; slow."""
    terms = []
    for n in range(1, len(edges(d)) + 1):
        for lab in enumerate_labelings(d, n, "lbl"):
            pieces = [c[0].string for c in labeling_pieces(d, lab)]
            if any(p.rank <= 2 for p in pieces):
                continue
            coeff = Fraction((-1) ** lab.negative, factorial(n))
            terms.append(((n - 1, tuple(normalize(p, caps) for p in pieces)), coeff))
    return FormalSum(terms, tensor=False, caps=caps.to_json())


def _u_bipoly(s: VirtualString) -> BiPoly:
    return BiPoly({(0, t): c for t, c in u(s).terms()})


def nabla_ut(d: ArrowDiagram) -> BiPoly:
    """``nabla`` with every class replaced by its u-polynomial."""
    total = BiPoly()
    for coeff, z, pieces in nabla_terms(d):
        term = BiPoly({(z, 0): coeff})
        for p in pieces:
            term = term * _u_bipoly(p)
            if term.is_zero():
                break
        total = total + term
    return total


def _arc_restrict(d: ArrowDiagram, start: int, end: int) -> ArrowDiagram:
    n = d.string.size
    length = (end - start) % n

    def inside(p):
        return 0 < (p - start) % n < length

    return d.restrict([e for e, (t, h) in enumerate(d.string.arrows()) if inside(t) and inside(h)])


def skein_sides(d: ArrowDiagram, e: int) -> tuple[ArrowDiagram, ArrowDiagram, ArrowDiagram]:
    """``D^-_e``, ``D'_e`` and ``D''_e`` for a positive arrow ``e = (a, b)``."""
    if d.signs[e] != 1:
        raise ValueError(f"arrow {e} is not positive")
    a, b = d.string.arrows()[e]
    return d.flip(e), _arc_restrict(d, a, b), _arc_restrict(d, b, a)


def skein_check(d: ArrowDiagram, e: int, caps: Caps = DEFAULT_CAPS, ut: bool = False) -> bool:
    minus, first, second = skein_sides(d, e)
    if ut:
        z = BiPoly({(1, 0): 1})
        return nabla_ut(d) == nabla_ut(minus) + z * nabla_ut(first) * nabla_ut(second)
    rhs = nabla(minus, caps) + (nabla(first, caps) * nabla(second, caps)).scale(1, z=1)
    return nabla(d, caps) == rhs


def diagram_move(d: ArrowDiagram, mv: MoveInstance) -> ArrowDiagram:
    """Apply one of the moves (a), (b), (c); the plus variants raise ``MoveError``."""
    return apply_move(d, mv)


def knot_covering(d: ArrowDiagram, r: int) -> ArrowDiagram:
    """Keep the signed arrows ``e`` with ``n(e)`` divisible by ``r``."""
    if r < 1:
        raise ValueError("r must be positive")
    return d.restrict([e for e, v in enumerate(d.string.n_values) if v % r == 0])


# comultiplication terms


def _diagram_key(d: ArrowDiagram) -> str:
    return d.canonical().key


def delta_terms(d: ArrowDiagram, n: int = 2) -> list[tuple[int, int, tuple[tuple[str, ...], ...]]]:
    """``(sign, z_power, slots)`` per labeling in ``Lbl_n``; each slot is a sorted tuple of circle keys."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = []
    for lab in enumerate_labelings(d, n, "Lbl"):
        pieces = labeling_pieces(d, lab)
        slots = [tuple(sorted(_diagram_key(c) for c in circles)) for circles in pieces]
        slots += [()] * (n - len(slots))
        out.append(((-1) ** lab.negative, lab.size, tuple(slots)))
    return out


def delta_sum(d: ArrowDiagram, n: int = 2) -> FormalSum:
    return FormalSum([((z, slots), sign) for sign, z, slots in delta_terms(d, n)], tensor=True, absorb=False)


def _delta_of_product(keys: Sequence[str]) -> FormalSum:
    """``Delta`` of a product of circles, multiplied out slotwise."""
    result = {(0, ((), ())): Fraction(1)}
    for key in keys:
        piece = CanonicalCode(key, True, True).string()
        nxt: dict = {}
        for (z1, (x1, y1)), c1 in result.items():
            for sign, z2, (x2, y2) in delta_terms(piece, 2):
                k = (z1 + z2, (tuple(sorted(x1 + x2)), tuple(sorted(y1 + y2))))
                nxt[k] = nxt.get(k, 0) + c1 * sign
        result = nxt
    return FormalSum(result, tensor=True, absorb=False)


def iterated_delta(d: ArrowDiagram) -> FormalSum:
    """``(id (x) Delta) Delta [D]`` expanded term by term."""
    out = []
    for sign, z, (first, second) in delta_terms(d, 2):
        for (z2, (x, y)), c in _delta_of_product(second).terms.items():
            out.append(((z + z2, (first, x, y)), sign * c))
    return FormalSum(out, tensor=True, absorb=False)
