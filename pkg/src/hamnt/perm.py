"""Permutations of {0,...,n-1} and brute-force permutation groups.

Permutations act on the right: ``i ** p`` in group-theory notation is
``p.images[i]``, and ``p * r`` means "apply p, then r".  Groups are held as
fully enumerated element sets; nothing here uses a base/strong generating set,
so everything is exact but only practical for small degree.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .limits import CapacityError, check_group, check_sym_degree, max_group


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(n))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < n:
                    raise ValueError(f"point {a} outside 0..{n - 1}")
                if a in seen:
                    raise ValueError(f"point {a} appears in more than one cycle")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_str(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Permutation({self})"


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(p: Permutation, r: Permutation) -> Permutation:
    """The permutation i -> (i^p)^r."""
    if p.n != r.n:
        raise ValueError(f"size mismatch: {p.n} vs {r.n}")
    ri = r.images
    return _unchecked(tuple([ri[i] for i in p.images]))


def _unchecked(images: tuple[int, ...]) -> Permutation:
    # hot path: skip the bijection check when the result is one by construction
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def degree_and_fix(p: Permutation) -> tuple[int, frozenset[int]]:
    fixed = frozenset(i for i, j in enumerate(p.images) if i == j)
    return p.n - len(fixed), fixed


def degree(p: Permutation) -> int:
    return sum(1 for i, j in enumerate(p.images) if i != j)


_ONE_LINE = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")
_CYCLES = re.compile(r"^(\(\s*(\d+([\s,]+\d+)*)?\s*\))+$")


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse ``[1,0,3,2]`` (one-line) or ``(0 1)(2 3)`` (cycle) notation.

    Cycle notation needs ``n`` unless the largest point determines it.
    """
    s = text.strip()
    if _ONE_LINE.match(s):
        body = s[1:-1].strip()
        images = tuple(int(x) for x in body.split(",")) if body else ()
        p = Permutation(images)
        if n is not None and p.n != n:
            raise ValueError(f"expected a permutation of size {n}, got {p.n}")
        return p
    if _CYCLES.match(s):
        cycles = [tuple(int(x) for x in re.split(r"[\s,]+", c.strip()) if x)
                  for c in re.findall(r"\(([^)]*)\)", s)]
        largest = max((a for c in cycles for a in c), default=-1)
        if n is None:
            n = largest + 1
        return Permutation.from_cycles(n, [c for c in cycles if c])
    raise ValueError(f"cannot parse permutation: {text!r}")


def parse_generators(text: str, n: int) -> list[Permutation]:
    """Parse a ``;``-separated list of permutations, e.g. ``"(0 1 2);(0 1)(2 3)"``."""
    return [parse_permutation(part, n) for part in text.split(";") if part.strip()]


class PermGroup:
    """A permutation group held as generators plus its full element set."""

    __slots__ = ("n", "generators", "elements")

    def __init__(self, n: int, generators: Iterable[Permutation], elements: Iterable[Permutation]):
        self.n = n
        self.generators = tuple(generators)
        self.elements = frozenset(elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.elements))

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))

    def __le__(self, other: PermGroup) -> bool:
        return self.elements <= other.elements

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_str() for g in self.generators) or "()"
        return f"PermGroup(n={self.n}, order={self.order}, gens=<{gens}>)"


def generate(n: int, gens: Iterable[Permutation], cap: int | None = None) -> PermGroup:
    """Close ``gens`` under composition.

    Raises CapacityError as soon as the closure grows past ``cap`` (default:
    the HAMNT_MAX_GROUP cap) instead of returning a partial group.
    """
    gens = tuple(gens)
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} has size {g.n}, expected {n}")
    limit = max_group() if cap is None else cap
    e = identity(n)
    elements = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        if len(elements) > limit:
            raise CapacityError("HAMNT_MAX_GROUP", limit, len(elements))
        frontier = nxt
    return PermGroup(n, gens, elements)


def symmetric_group(n: int) -> PermGroup:
    check_sym_degree(n)
    return _symmetric_group(n)


@functools.lru_cache(maxsize=None)
def _symmetric_group(n: int) -> PermGroup:
    elements = [Permutation(p) for p in itertools.permutations(range(n))]
    check_group(len(elements))
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens, elements)


def alternating_group(n: int) -> PermGroup:
    """Even permutations; used in tests and examples."""
    check_sym_degree(n)
    elements = [p for p in symmetric_group(n).elements if _parity(p) == 0]
    gens = [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return PermGroup(n, gens, elements)


def _parity(p: Permutation) -> int:
    return sum(len(c) - 1 for c in p.cycles()) % 2


def all_subgroups(n: int) -> list[PermGroup]:
    """Every subgroup of S_n, exactly once, ordered by (order, element list).

    Cyclic extension: start from the trivial group and repeatedly join known
    subgroups with cyclic subgroups until nothing new appears.  Every
    subgroup is generated by its cyclic subgroups, so this is exhaustive.
    """
    check_sym_degree(n)
    return list(_all_subgroups(n))


@functools.lru_cache(maxsize=None)
def _all_subgroups(n: int) -> tuple[PermGroup, ...]:
    sym = symmetric_group(n)
    cyclics: dict[frozenset, PermGroup] = {}
    for g in sorted(sym.elements):
        if g.is_identity():
            continue
        c = generate(n, [g])
        cyclics.setdefault(c.elements, c)
    trivial = generate(n, [])
    found = {trivial.elements: trivial}
    queue = [trivial]
    for h in queue:
        for c in cyclics.values():
            if c.elements <= h.elements:
                continue
            k = generate(n, h.generators + c.generators)
            if k.elements not in found:
                found[k.elements] = k
                queue.append(k)
    return tuple(sorted(found.values(), key=lambda G: (G.order, sorted(G.elements))))


def orbit_of_point(G: PermGroup, a: int) -> frozenset[int]:
    return frozenset(g.images[a] for g in G.elements)


def is_transitive(G: PermGroup) -> bool:
    return G.n <= 1 or len(orbit_of_point(G, 0)) == G.n


def is_2_transitive(G: PermGroup) -> bool:
    if G.n < 2:
        raise ValueError("2-transitivity needs at least 2 points")
    # a group is transitive on ordered pairs iff one pair's orbit is all of them
    pair_orbit = {(g.images[0], g.images[1]) for g in G.elements}
    return len(pair_orbit) == G.n * (G.n - 1)


def conjugate(t: Permutation, y: Permutation) -> Permutation:
    """t^y = y^-1 t y."""
    return compose(compose(y.inverse(), t), y)


def normalizer_in_sym(T: PermGroup) -> PermGroup:
    """{y in S_n : y^-1 T y = T}."""
    sym = symmetric_group(T.n)
    gens = T.generators or ()
    # conjugation is a bijection, so mapping generators into T is enough
    members = [y for y in sym.elements if all(conjugate(t, y) in T.elements for t in gens)]
    return PermGroup(T.n, _small_generating_set(T.n, members), members)


def _small_generating_set(n: int, elements: Iterable[Permutation]) -> list[Permutation]:
    """Greedy generating set for a group given by its elements."""
    elements = sorted(elements)
    gens: list[Permutation] = []
    span = {identity(n)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(generate(n, gens).elements)
    return gens


def minimal_degree(T: PermGroup) -> int:
    if T.order < 2:
        raise ValueError("minimal degree is undefined for the trivial group")
    return min(degree(t) for t in T.elements if not t.is_identity())
