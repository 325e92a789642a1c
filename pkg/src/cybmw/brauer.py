"""The cyclotomic (Z_k-labeled) Brauer algebra by diagram arithmetic.

A diagram on n strands is a perfect matching of {1..n} (top) and
{n+1..2n} (bottom) with a Z_k label per strand, stored relative to the
canonical orientation from the smaller endpoint.  Multiplication stacks
diagrams, adds labels along composite strands, and converts each closed
loop of net label +-d into a factor A_d (d the folded representative in
0..floor(k/2)).
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Tuple

from .linalg import bareiss_det
from .params import ParameterSet, brauer_specialization, fold_label
from .ring import RingValue


class CycloBrauerDiagram:
    """Immutable labeled Brauer diagram.

    pairs: sorted tuple of (a, b), a < b, a perfect matching of 1..2n.
    labels: tuple of ints in 0..k-1 aligned with pairs; label of (a, b)
    is for the strand oriented a -> b.  Reversing an orientation inverts
    the label, so this storage is the canonical form.
    """

    __slots__ = ("n", "k", "pairs", "labels", "_hash")

    def __init__(self, n: int, k: int, pairs, labels):
        pairs = tuple(sorted(tuple(sorted(p)) for p in pairs))
        seen = [x for p in pairs for x in p]
        if sorted(seen) != list(range(1, 2 * n + 1)):
            raise ValueError("pairs are not a perfect matching of 1..2n")
        if len(labels) != n:
            raise ValueError("need one label per strand")
        self.n = n
        self.k = k
        self.pairs = pairs
        self.labels = tuple(c % k for c in labels)
        self._hash = hash((n, k, self.pairs, self.labels))

    @staticmethod
    def from_oriented(n: int, k: int, oriented: Dict[Tuple[int, int], int]
                      ) -> "CycloBrauerDiagram":
        """Build from arbitrarily oriented strands {(src, dst): label}."""
        pairs, labels = [], {}
        for (a, b), c in oriented.items():
            if a < b:
                pairs.append((a, b))
                labels[(a, b)] = c % k
            else:
                pairs.append((b, a))
                labels[(b, a)] = (-c) % k
        pairs.sort()
        return CycloBrauerDiagram(n, k, pairs, [labels[p] for p in pairs])

    @staticmethod
    def identity(n: int, k: int) -> "CycloBrauerDiagram":
        return CycloBrauerDiagram(
            n, k, [(i, n + i) for i in range(1, n + 1)], [0] * n
        )

    def label_of(self, a: int, b: int) -> int:
        """Label of the strand traversed a -> b."""
        key = (min(a, b), max(a, b))
        c = self.labels[self.pairs.index(key)]
        return c if a < b else (-c) % self.k

    def partner(self, x: int) -> int:
        for a, b in self.pairs:
            if a == x:
                return b
            if b == x:
                return a
        raise KeyError(x)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycloBrauerDiagram)
            and self.n == other.n
            and self.k == other.k
            and self.pairs == other.pairs
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other) -> bool:
        return (self.pairs, self.labels) < (other.pairs, other.labels)

    def __repr__(self) -> str:
        bits = [f"{a}-{b}" + (f":{c}" if c else "")
                for (a, b), c in zip(self.pairs, self.labels)]
        return "D(" + ", ".join(bits) + ")"

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs],
                "labels": list(self.labels)}


class BrauerElement:
    """Finite R-linear combination of diagrams of a fixed (n, k)."""

    def __init__(self, params: ParameterSet, n: int,
                 coeffs: Optional[Dict[CycloBrauerDiagram, RingValue]] = None):
        self.params = params
        self.n = n
        self.coeffs: Dict[CycloBrauerDiagram, RingValue] = {}
        if coeffs:
            for d, c in coeffs.items():
                self.add(d, c)

    def add(self, d: CycloBrauerDiagram, c: RingValue) -> None:
        if d.n != self.n or d.k != self.params.k:
            raise ValueError("diagram size mismatch")
        cur = self.coeffs.get(d)
        new = c if cur is None else cur + c
        if new.is_zero():
            self.coeffs.pop(d, None)
        else:
            self.coeffs[d] = new

    def scaled(self, c: RingValue) -> "BrauerElement":
        out = BrauerElement(self.params, self.n)
        if c.is_zero():
            return out
        for d, v in self.coeffs.items():
            out.add(d, v * c)
        return out

    def __add__(self, other: "BrauerElement") -> "BrauerElement":
        out = BrauerElement(self.params, self.n, dict(self.coeffs))
        for d, c in other.coeffs.items():
            out.add(d, c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BrauerElement) or self.n != other.n:
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        z = self.params.zero()
        return all(
            (self.coeffs.get(d, z) - other.coeffs.get(d, z)).is_zero()
            for d in keys
        )

    def __mul__(self, other: "BrauerElement") -> "BrauerElement":
        out = BrauerElement(self.params, self.n)
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d3, loop_factor = multiply_diagrams(self.params, d1, d2)
                out.add(d3, c1 * c2 * loop_factor)
        return out

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c!r})*{d!r}" for d, c in sorted(
            self.coeffs.items(), key=lambda t: t[0]))


def multiply_diagrams(params: ParameterSet, d1: CycloBrauerDiagram,
                      d2: CycloBrauerDiagram
                      ) -> Tuple[CycloBrauerDiagram, RingValue]:
    """Stack d1 above d2; returns (composite diagram, loop coefficient).

    Nodes: 'T' = tops of d1, 'B' = bottoms of d2 (the surviving endpoints),
    'M' = the glued middle row (bottoms of d1 = tops of d2).
    """
    if d1.n != d2.n or d1.k != d2.k:
        raise ValueError("size/k mismatch")
    n, k = d1.n, d1.k

    def d1_step(x: int) -> Tuple[int, int]:
        y = d1.partner(x)
        return y, d1.label_of(x, y)

    def d2_step(x: int) -> Tuple[int, int]:
        y = d2.partner(x)
        return y, d2.label_of(x, y)

    # endpoints of the product: ('t', i) for i in 1..n, ('b', j) for j in 1..n
    oriented: Dict[Tuple[int, int], int] = {}
    coeff = params.one()
    visited_middle = set()

    def walk(start_kind: str, start: int) -> Tuple[str, int, int]:
        """Follow the composite strand from an outer endpoint; returns the
        terminal endpoint kind/index and the accumulated label."""
        total = 0
        if start_kind == "t":
            y, c = d1_step(start)
            total += c
            at_kind, at = ("d1-bottom", y) if y > n else ("t", y)
        else:
            y, c = d2_step(n + start)
            total += c
            at_kind, at = ("d2-top", y) if y <= n else ("b", y - n)
        while at_kind in ("d1-bottom", "d2-top"):
            if at_kind == "d1-bottom":
                mid = at - n
                visited_middle.add(mid)
                y, c = d2_step(mid)
                total += c
                at_kind, at = ("d2-top", y) if y <= n else ("b", y - n)
            else:
                mid = at
                visited_middle.add(mid)
                y, c = d1_step(n + mid)
                total += c
                at_kind, at = ("d1-bottom", y) if y > n else ("t", y)
        return at_kind, at, total

    done = set()
    for i in range(1, n + 1):
        for kind in ("t", "b"):
            if (kind, i) in done:
                continue
            end_kind, end, total = walk(kind, i)
            done.add((kind, i))
            done.add((end_kind, end))
            a = i if kind == "t" else n + i
            b = end if end_kind == "t" else n + end
            oriented[(a, b)] = total

    # closed loops live entirely in the middle row
    seen = set(visited_middle)
    for m in range(1, n + 1):
        if m in seen:
            continue
        # traverse the loop through alternating d1/d2 strands
        total = 0
        at = m
        use_d1 = True
        while True:
            seen.add(at)
            if use_d1:
                y, c = d1_step(n + at)
                at = y - n
            else:
                y, c = d2_step(at)
                at = y
            total += c
            use_d1 = not use_d1
            if at == m and use_d1:
                break
        coeff = coeff * params.A(fold_label(k, total))

    return CycloBrauerDiagram.from_oriented(n, k, oriented), coeff


def closure(x: BrauerElement, params: Optional[ParameterSet] = None
            ) -> BrauerElement:
    """Close the rightmost strand: join top n to bottom n'."""
    params = params or x.params
    n, k = x.n, x.params.k
    out = BrauerElement(params, n - 1)
    for d, c in x.coeffs.items():
        top, bot = n, 2 * n
        if d.partner(top) == bot:
            factor = params.A(fold_label(k, d.label_of(top, bot)))
            oriented = {}
            for (a, b), lab in zip(d.pairs, d.labels):
                if (a, b) == (top, bot):
                    continue
                oriented[(_renum(a, n), _renum(b, n))] = lab
            out.add(CycloBrauerDiagram.from_oriented(n - 1, k, oriented),
                    c * factor)
        else:
            a = d.partner(top)
            b = d.partner(bot)
            total = d.label_of(a, top) + d.label_of(bot, b)
            oriented = {(_renum(a, n), _renum(b, n)): total}
            for (u, v), lab in zip(d.pairs, d.labels):
                if u in (top, bot) or v in (top, bot):
                    continue
                oriented[(_renum(u, n), _renum(v, n))] = lab
            out.add(CycloBrauerDiagram.from_oriented(n - 1, k, oriented), c)
    return out


def _renum(x: int, n: int) -> int:
    """Endpoint renumbering after removing strand n: bottoms shift down."""
    return x if x <= n - 1 else x - 1


def trace_c(x: BrauerElement) -> RingValue:
    """The diagram trace: close strands n, n-1, .., 1; identity_n -> A_0^n."""
    cur = x
    while cur.n > 0:
        cur = closure(cur)
    empty = CycloBrauerDiagram(0, x.params.k, [], [])
    return cur.coeffs.get(empty, x.params.zero())


def enumerate_matchings(points: List[int]) -> Iterator[List[Tuple[int, int]]]:
    """All perfect matchings of the given point list, lexicographically."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, other in enumerate(rest):
        for sub in enumerate_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + sub


def enumerate_diagrams(n: int, k: int, guard: int = 10 ** 6
                       ) -> List[CycloBrauerDiagram]:
    """All k^n (2n-1)!! diagrams: matchings in lexicographic order, then
    label vectors in lexicographic order."""
    count = k ** n
    for m in range(2 * n - 1, 0, -2):
        count *= m
    if count > guard:
        raise ValueError(f"diagram count {count} exceeds guard {guard}")
    out = []
    for pairs in enumerate_matchings(list(range(1, 2 * n + 1))):
        for labels in _label_vectors(n, k):
            out.append(CycloBrauerDiagram(n, k, pairs, labels))
    return out


def _label_vectors(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for head in range(k):
        for tail in _label_vectors(n - 1, k):
            yield (head,) + tail


def gram_matrix(n: int, k: int, params: Optional[ParameterSet] = None,
                guard: int = 200) -> Tuple[List[CycloBrauerDiagram],
                                           List[List[RingValue]]]:
    params = params or brauer_specialization(k, "+")
    diagrams = enumerate_diagrams(n, k)
    if len(diagrams) > guard:
        raise ValueError(f"basis size {len(diagrams)} exceeds guard {guard}")
    rows = []
    for d1 in diagrams:
        row = []
        for d2 in diagrams:
            d3, factor = multiply_diagrams(params, d1, d2)
            row.append(trace_c(BrauerElement(params, n, {d3: factor})))
        rows.append(row)
    return diagrams, rows


def gram_det(n: int, k: int, params: Optional[ParameterSet] = None,
             guard: int = 200) -> RingValue:
    params = params or brauer_specialization(k, "+")
    _, rows = gram_matrix(n, k, params, guard)
    return bareiss_det(rows, params.ring)
