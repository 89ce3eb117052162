"""Vertices of the Hamming graph H(m, q) and the action of its automorphisms.

A vertex is a plain tuple of ints in ``range(q)``.  An automorphism is a
``HammingAut``: one permutation of the alphabet per entry (the base-group
part) followed by a permutation of the entries.  Applying ``x`` to ``a``
first relabels entry ``i`` by ``cells[i]`` and then moves it to position
``cols[i]``.  For example, with ``cells = ((0 1), id)`` and ``cols = (0 1)``
on H(2, 2)::

    (0, 0) -> (1, 0) after the cells -> (0, 1) after the columns

Products read left to right: ``x * y`` applies ``x`` first.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .limits import CapacityError, ParseError, check_group, check_vertices, max_group
from .perm import Permutation, PermGroup, compose, identity, symmetric_group

Vertex = tuple[int, ...]


def check_vertex(a: Sequence[int], m: int, q: int) -> Vertex:
    a = tuple(a)
    if len(a) != m:
        raise ValueError(f"vertex {a} has length {len(a)}, expected {m}")
    for s in a:
        if not 0 <= s < q:
            raise ValueError(f"symbol {s} outside alphabet 0..{q - 1}")
    return a


def distance(a: Vertex, b: Vertex) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


def nu(a: Vertex, i: int, s: int, q: int | None = None) -> Vertex:
    """Copy of ``a`` with entry ``i`` replaced by ``s``."""
    if not 0 <= i < len(a):
        raise IndexError(f"entry {i} outside 0..{len(a) - 1}")
    if s < 0 or (q is not None and s >= q):
        raise ValueError(f"symbol {s} outside the alphabet")
    return a[:i] + (s,) + a[i + 1:]


def neighbours(a: Vertex, q: int) -> Iterator[Vertex]:
    for i, x in enumerate(a):
        head, tail = a[:i], a[i + 1:]
        for s in range(q):
            if s != x:
                yield head + (s,) + tail


def composition(a: Vertex) -> frozenset[tuple[int, int]]:
    """Set of (symbol, multiplicity) pairs for the symbols occurring in ``a``."""
    return frozenset(Counter(a).items())


def num_profile(a: Vertex) -> tuple[tuple[int, int], ...]:
    """(multiplicity, number of symbols with that multiplicity), largest multiplicity first."""
    per_mult = Counter(Counter(a).values())
    return tuple(sorted(per_mult.items(), reverse=True))


def multiplicities(a: Vertex) -> tuple[int, ...]:
    """The multiset of letter multiplicities, in descending order."""
    return tuple(sorted(Counter(a).values(), reverse=True))


def support_weight(a: Vertex, base: Vertex | None = None) -> tuple[frozenset[int], int]:
    if base is None:
        base = (0,) * len(a)
    if len(base) != len(a):
        raise ValueError(f"length mismatch: {len(a)} vs {len(base)}")
    supp = frozenset(i for i, (x, y) in enumerate(zip(a, base)) if x != y)
    return supp, len(supp)


def weight(a: Vertex, base: Vertex | None = None) -> int:
    return support_weight(a, base)[1]


def vertex_index(a: Vertex, q: int) -> int:
    """Mixed-radix index; ordering by index is lexicographic ordering."""
    idx = 0
    for s in a:
        idx = idx * q + s
    return idx


def vertex_from_index(idx: int, m: int, q: int) -> Vertex:
    out = [0] * m
    for i in range(m - 1, -1, -1):
        idx, out[i] = divmod(idx, q)
    return tuple(out)


def all_vertices(m: int, q: int) -> list[Vertex]:
    check_vertices(q**m)
    return list(itertools.product(range(q), repeat=m))


_EXP_TERM = re.compile(r"^(\d+)(\^(\d+))?$")


def parse_vertex(text: str, m: int | None = None, q: int | None = None) -> Vertex:
    """Parse ``0,1,2`` or the exponent form ``0^2,1^3`` (= 0,0,1,1,1)."""
    out: list[int] = []
    for term in text.replace(" ", "").split(","):
        match = _EXP_TERM.match(term)
        if not match:
            raise ParseError(f"bad vertex term {term!r}")
        symbol = int(match.group(1))
        count = int(match.group(3)) if match.group(3) else 1
        out.extend([symbol] * count)
    a = tuple(out)
    if m is not None and len(a) != m:
        raise ParseError(f"vertex has length {len(a)}, expected {m}")
    if q is not None:
        for s in a:
            if s >= q:
                raise ParseError(f"symbol {s} outside alphabet 0..{q - 1}")
    return a


def format_vertex(a: Vertex) -> str:
    return ",".join(map(str, a))


@dataclass(frozen=True)
class HammingAut:
    cells: tuple[Permutation, ...]
    cols: Permutation
    _cell_images: tuple = field(init=False, repr=False, compare=False)
    _col_images: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = tuple(self.cells)
        if len(cells) != self.cols.n:
            raise ValueError(f"{len(cells)} cell permutations for {self.cols.n} entries")
        if len({c.n for c in cells}) > 1:
            raise ValueError("cell permutations act on different alphabets")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_cell_images", tuple(c.images for c in cells))
        object.__setattr__(self, "_col_images", self.cols.images)

    @property
    def m(self) -> int:
        return self.cols.n

    @property
    def q(self) -> int:
        return self.cells[0].n

    @classmethod
    def identity(cls, m: int, q: int) -> HammingAut:
        e = identity(q)
        return cls((e,) * m, identity(m))

    @classmethod
    def diag(cls, h: Permutation, m: int) -> HammingAut:
        return cls((h,) * m, identity(m))

    @classmethod
    def column(cls, sigma: Permutation, q: int) -> HammingAut:
        e = identity(q)
        return cls((e,) * sigma.n, sigma)

    def __call__(self, a: Vertex) -> Vertex:
        return apply(self, a)

    def __mul__(self, other: HammingAut) -> HammingAut:
        """``self`` first, then ``other``."""
        if self.m != other.m or self.q != other.q:
            raise ValueError("automorphisms of different Hamming graphs")
        sig = self._col_images
        cells = tuple(compose(g, other.cells[sig[i]]) for i, g in enumerate(self.cells))
        return HammingAut(cells, compose(self.cols, other.cols))

    def inverse(self) -> HammingAut:
        inv_cols = self.cols.inverse()
        cells = tuple(self.cells[inv_cols.images[j]].inverse() for j in range(self.m))
        return HammingAut(cells, inv_cols)

    def is_diagonal(self) -> bool:
        return all(c == self.cells[0] for c in self.cells)

    def __str__(self) -> str:
        cells = " ".join(c.cycle_str() for c in self.cells)
        return f"<{cells} | {self.cols.cycle_str()}>"


def apply(x: HammingAut, a: Vertex) -> Vertex:
    cells = x._cell_images
    cols = x._col_images
    if len(a) != len(cols):
        raise ValueError(f"vertex of length {len(a)} for an automorphism of H({len(cols)}, q)")
    out = [0] * len(a)
    for i, s in enumerate(a):
        out[cols[i]] = cells[i][s]
    return tuple(out)


def apply_set(x: HammingAut, vertices: Iterable[Vertex]) -> frozenset[Vertex]:
    return frozenset(apply(x, a) for a in vertices)


def diag_group(m: int, T: PermGroup) -> list[HammingAut]:
    """Diag_m(T): one automorphism (h, ..., h) per h in T."""
    return [HammingAut.diag(h, m) for h in T]


def full_diag_wreath(m: int, q: int) -> list[HammingAut]:
    """Generators of Diag_m(S_q) x| L (L = all permutations of entries)."""
    gens = [HammingAut.diag(h, m) for h in symmetric_group(q).generators]
    gens += [HammingAut.column(s, q) for s in symmetric_group(m).generators]
    return gens


def diag_wreath_order(m: int, q: int) -> int:
    return math.factorial(q) * math.factorial(m)


def diag_wreath_elements(m: int, q: int) -> Iterator[HammingAut]:
    """Every element of Diag_m(S_q) x| L, as diag(h) * column(sigma)."""
    check_group(diag_wreath_order(m, q))
    if diag_wreath_order(m, q) <= _LIST_CACHE_LIMIT:
        return iter(_diag_wreath_list(m, q))
    return _iter_diag_wreath(m, q)


_LIST_CACHE_LIMIT = 50_000
_cache: dict[tuple, list[HammingAut]] = {}


def _diag_wreath_list(m: int, q: int) -> list[HammingAut]:
    key = ("diag", m, q)
    if key not in _cache:
        _cache[key] = list(_iter_diag_wreath(m, q))
    return _cache[key]


def _iter_diag_wreath(m: int, q: int) -> Iterator[HammingAut]:
    for sigma in sorted(symmetric_group(m).elements):
        for h in sorted(symmetric_group(q).elements):
            yield HammingAut((h,) * m, sigma)


def full_wreath_order(m: int, q: int) -> int:
    return math.factorial(q) ** m * math.factorial(m)


def full_wreath_elements(m: int, q: int) -> Iterator[HammingAut]:
    """Every element of Aut(H(m, q)) = S_q wr S_m.  Only sensible for tiny m, q."""
    check_group(full_wreath_order(m, q))
    sq = sorted(symmetric_group(q).elements)
    for sigma in sorted(symmetric_group(m).elements):
        for cells in itertools.product(sq, repeat=m):
            yield HammingAut(cells, sigma)


def generate_auts(gens: Iterable[HammingAut], m: int, q: int, cap: int | None = None) -> list[HammingAut]:
    """Closure of ``gens`` under products, identity first, then discovery order."""
    gens = list(gens)
    limit = max_group() if cap is None else cap
    e = HammingAut.identity(m, q)
    seen = {e}
    out = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
        if len(out) > limit:
            raise CapacityError("HAMNT_MAX_GROUP", limit, len(out))
        frontier = nxt
    return out


def is_closed(elements: Sequence[HammingAut]) -> bool:
    """Whether a finite nonempty set of automorphisms is a group.

    A generating subset is grown greedily; the set is a group exactly when
    the closure of that subset never leaves the set and reaches all of it.
    """
    pool = set(elements)
    if not pool:
        return False
    some = next(iter(pool))
    m, q = some.m, some.q
    gens: list[HammingAut] = []
    span = {HammingAut.identity(m, q)}
    if not span <= pool:
        return False
    for x in sorted(pool, key=_aut_key):
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = y * g
                    if z not in span:
                        if z not in pool:
                            return False
                        span.add(z)
                        nxt.append(z)
            frontier = nxt
    return span == pool


def _aut_key(x: HammingAut):
    return (x._col_images, x._cell_images)
