"""Codes in H(m, q): metric invariants, regularity, designs and transitivity.

Neighbour transitivity is decided by orbit counting.  ``is_nt`` checks a
given group; ``is_diagonally_nt`` uses the whole setwise stabiliser of the
code inside Diag_m(S_q) x| L.  That stabiliser is the largest possible
witness: any witnessing subgroup X lies in it, and if X is transitive on a
stabiliser-invariant set so is the stabiliser.  One stabiliser computation
plus two orbit counts therefore settle the existential question exactly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .hamming import (
    HammingAut,
    Vertex,
    apply,
    check_vertex,
    diag_wreath_elements,
    format_vertex,
    is_closed,
    neighbours,
    num_profile,
    parse_vertex,
    vertex_from_index,
    vertex_index,
)
from .limits import ParseError, check_vertices

# rows x codewords x entries per block in the vectorised distance counts
_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True)
class Code:
    m: int
    q: int
    words: tuple[Vertex, ...]

    def __post_init__(self):
        if self.m < 1 or self.q < 1:
            raise ValueError(f"bad shape H({self.m}, {self.q})")
        words = sorted({check_vertex(w, self.m, self.q) for w in self.words})
        if not words:
            raise ValueError("a code needs at least one codeword")
        object.__setattr__(self, "words", tuple(words))

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], m: int | None = None, q: int | None = None) -> Code:
        words = [tuple(w) for w in words]
        if not words:
            raise ValueError("a code needs at least one codeword")
        if m is None:
            m = len(words[0])
        if q is None:
            q = max(max(w) for w in words) + 1
        return cls(m, q, tuple(words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, a) -> bool:
        return tuple(a) in self.wordset

    @cached_property
    def wordset(self) -> frozenset[Vertex]:
        return frozenset(self.words)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.int16).reshape(len(self.words), self.m)

    @property
    def is_complete(self) -> bool:
        return len(self.words) == self.q**self.m

    @cached_property
    def delta(self) -> int:
        return min_distance(self)

    @cached_property
    def partition(self) -> DistancePartition:
        return _distance_partition(self)

    @property
    def rho(self) -> int:
        return self.partition.rho

    def image(self, x: HammingAut) -> Code:
        return Code(self.m, self.q, tuple(apply(x, w) for w in self.words))


@dataclass(frozen=True)
class DistancePartition:
    """Cells C_0 = C, C_1, ..., C_rho by distance from the code."""

    m: int
    q: int
    distances: np.ndarray = field(repr=False, compare=False)

    @property
    def rho(self) -> int:
        return int(self.distances.max())

    @cached_property
    def cells(self) -> tuple[frozenset[Vertex], ...]:
        return tuple(frozenset(self.cell_list(i)) for i in range(self.rho + 1))

    def cell_list(self, i: int) -> list[Vertex]:
        """Cell i in lexicographic order."""
        return [vertex_from_index(int(j), self.m, self.q) for j in np.flatnonzero(self.distances == i)]

    def cell_sizes(self) -> list[int]:
        return np.bincount(self.distances, minlength=self.rho + 1).tolist()

    def __len__(self) -> int:
        return self.rho + 1

    def __getitem__(self, i: int) -> frozenset[Vertex]:
        return self.cells[i]


def min_distance(C: Code) -> int:
    if len(C) < 2:
        raise ValueError("minimum distance is undefined for a code with one codeword")
    W = C.array
    best = C.m
    for i in range(len(W) - 1):
        d = int((W[i + 1:] != W[i]).sum(axis=1).min())
        if d < best:
            best = d
            if best == 1:
                break
    return best


def distance_partition(C: Code) -> DistancePartition:
    return C.partition


def _distance_partition(C: Code) -> DistancePartition:
    # multi-source BFS, one whole layer at a time
    m, q = C.m, C.q
    total = q**m
    check_vertices(total)
    dist = np.full(total, -1, dtype=np.int16)
    frontier = np.array([vertex_index(w, q) for w in C.words], dtype=np.int64)
    dist[frontier] = 0
    powers = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    level = 0
    while frontier.size:
        digits = (frontier[:, None] // powers[None, :]) % q
        found = []
        for shift in range(1, q):
            moved = (digits + shift) % q
            nbrs = frontier[:, None] + (moved - digits) * powers[None, :]
            found.append(nbrs.ravel())
        cand = np.unique(np.concatenate(found))
        cand = cand[dist[cand] < 0]
        level += 1
        dist[cand] = level
        frontier = cand
    return DistancePartition(m, q, dist)


def covering_radius(C: Code) -> int:
    return C.rho


def neighbour_set(C: Code) -> frozenset[Vertex]:
    """C_1: non-codewords adjacent to some codeword."""
    if C.is_complete:
        raise ValueError("the complete code has no neighbours")
    return _neighbours_of(C)


def _neighbours_of(C: Code) -> frozenset[Vertex]:
    ws = C.wordset
    return frozenset(v for w in C.words for v in neighbours(w, C.q) if v not in ws)


def distance_distribution(C: Code, vertices: Sequence[Vertex]) -> np.ndarray:
    """Row r, column k: number of codewords at distance k from vertices[r]."""
    W = C.array
    A = np.array(vertices, dtype=np.int16).reshape(len(vertices), C.m)
    out = np.zeros((len(A), C.m + 1), dtype=np.int64)
    step = max(1, _CHUNK_CELLS // max(1, len(W) * C.m))
    for start in range(0, len(A), step):
        block = A[start:start + step]
        D = (block[:, None, :] != W[None, :, :]).sum(axis=2)
        for k in range(C.m + 1):
            out[start:start + step, k] = (D == k).sum(axis=1)
    return out


def is_s_regular(C: Code, s: int) -> bool:
    part = C.partition
    if not 0 <= s <= part.rho:
        raise ValueError(f"s={s} outside 0..{part.rho}")
    for i in range(s + 1):
        rows = distance_distribution(C, part.cell_list(i))
        if not (rows == rows[0]).all():
            return False
    return True


def is_completely_regular(C: Code) -> bool:
    return is_s_regular(C, C.rho)


def is_qary_design(D: Iterable[Vertex], t: int, k: int, base: Vertex,
                   q: int | None = None) -> tuple[bool, int | None]:
    """Check whether D is a q-ary t-(m, k, lambda) design relative to ``base``.

    Weights are distances from ``base``.  A vertex b is covered by g when b
    and g agree wherever b differs from base.  Returns (verdict, lambda).
    """
    D = sorted(set(map(tuple, D)))
    if not D:
        raise ValueError("a design needs at least one block")
    base = tuple(base)
    m = len(base)
    for g in D:
        w = sum(1 for x, y in zip(g, base) if x != y)
        if w != k:
            raise ValueError(f"block {g} has weight {w}, expected {k}")
    if q is None:
        q = max(max(base), max(max(g) for g in D)) + 1
    lam = None
    for positions in itertools.combinations(range(m), t):
        choices = [[s for s in range(q) if s != base[i]] for i in positions]
        for values in itertools.product(*choices):
            count = sum(1 for g in D if all(g[i] == s for i, s in zip(positions, values)))
            if lam is None:
                lam = count
            elif count != lam:
                return False, None
    return True, lam


def is_connected(D: Iterable[Vertex]) -> bool:
    pool = set(map(tuple, D))
    if not pool:
        raise ValueError("connectivity of an empty set")
    q = max(max(v) for v in pool) + 1
    start = min(pool)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in neighbours(v, q):
            if w in pool and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(pool)


def setwise_stabilizer(C: Code, ambient: Iterable[HammingAut]) -> list[HammingAut]:
    ws = C.wordset
    words = C.words
    out = []
    for x in ambient:
        cells = x._cell_images
        cols = x._col_images
        for w in words:
            img = [0] * len(w)
            for i, s in enumerate(w):
                img[cols[i]] = cells[i][s]
            if tuple(img) not in ws:
                break
        else:
            out.append(x)
    return out


def orbit(point: Vertex, group: Iterable[HammingAut]) -> frozenset[Vertex]:
    """Orbit of a point under a group given by its full element list."""
    return frozenset(apply(x, point) for x in group)


def orbit_partition(points: Iterable[Vertex], elements: Sequence[HammingAut],
                    by: str = "elements") -> list[frozenset[Vertex]]:
    """Orbits on an invariant set.

    ``by="elements"`` needs the full group and takes one image per element;
    ``by="generators"`` runs a BFS and works with any generating set.
    """
    remaining = set(map(tuple, points))
    pool = frozenset(remaining)
    out = []
    while remaining:
        p = min(remaining)
        if by == "elements":
            orb = orbit(p, elements)
        elif by == "generators":
            orb = _bfs_orbit(p, elements)
        else:
            raise ValueError(f"unknown orbit strategy {by!r}")
        if not orb <= pool:
            raise ValueError("point set is not invariant under the group")
        out.append(orb)
        remaining -= orb
    return out


def _bfs_orbit(p: Vertex, gens: Sequence[HammingAut]) -> frozenset[Vertex]:
    seen = {p}
    queue = deque([p])
    while queue:
        v = queue.popleft()
        for g in gens:
            w = apply(g, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def _orbit_count(cell: frozenset[Vertex], group: Sequence[HammingAut]) -> tuple[int, bool]:
    """(number of group orbits meeting ``cell``, whether they all stay inside it)."""
    remaining = set(cell)
    count = 0
    inside = True
    while remaining:
        orb = orbit(min(remaining), group)
        if not orb <= cell:
            inside = False
        remaining -= orb
        count += 1
    return count, inside


@dataclass
class NTCertificate:
    verdict: bool
    witness_group: list[HammingAut] = field(repr=False)
    orbit_counts: list[int]

    @property
    def group_order(self) -> int:
        return len(self.witness_group)


def is_nt(C: Code, X: Sequence[HammingAut], check: bool = True) -> NTCertificate:
    """Whether C and C_1 are both single X-orbits.

    ``X`` must be a full group (all elements).  ``check=False`` skips the
    closure test for callers that built X as a stabiliser.
    """
    X = list(X)
    if check and not is_closed(X):
        raise ValueError("X is not closed under composition")
    c_count, c_inside = _orbit_count(C.wordset, X)
    # the complete code has no neighbours, and an empty set is not an orbit
    nbrs = _neighbours_of(C)
    n_count, n_inside = _orbit_count(nbrs, X)
    verdict = c_count == 1 and c_inside and n_count == 1 and n_inside
    return NTCertificate(verdict, X, [c_count, n_count])


def is_completely_transitive(C: Code, X: Sequence[HammingAut], check: bool = True) -> bool:
    X = list(X)
    if check and not is_closed(X):
        raise ValueError("X is not closed under composition")
    for cell in C.partition.cells:
        count, inside = _orbit_count(cell, X)
        if count != 1 or not inside:
            return False
    return True


def diag_stabilizer(C: Code) -> list[HammingAut]:
    """Setwise stabiliser of C in Diag_m(S_q) x| L."""
    return setwise_stabilizer(C, diag_wreath_elements(C.m, C.q))


def is_diagonally_nt(C: Code) -> NTCertificate:
    G = diag_stabilizer(C)
    return is_nt(C, G, check=False)


def cell_profiles(C: Code) -> list[list[tuple[tuple[int, int], ...]]]:
    """Distinct Num profiles occurring in each cell of the distance partition."""
    part = C.partition
    return [sorted({num_profile(v) for v in part.cell_list(i)}) for i in range(part.rho + 1)]


def certificate_report(C: Code, cert: NTCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "group_order": cert.group_order,
        "orbit_counts": cert.orbit_counts,
        "delta": C.delta if len(C) > 1 else None,
        "rho": C.rho,
        "num_profiles": [[[list(pair) for pair in p] for p in cell] for cell in cell_profiles(C)],
    }


def format_code(C: Code, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{C.m} {C.q}")
    lines.extend(format_vertex(w) for w in C.words)
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    """Parse the ``.code`` format: ``m q`` then one vertex per line, ``#`` comments."""
    shape = None
    words = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if shape is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError(f"expected header 'm q', got {line!r}", lineno)
            shape = int(parts[0]), int(parts[1])
            if shape[0] < 1 or shape[1] < 1:
                raise ParseError(f"bad shape {shape}", lineno)
            continue
        try:
            w = parse_vertex(line, *shape)
        except ParseError as err:
            raise ParseError(str(err), lineno) from None
        if w in seen:
            raise ParseError(f"duplicate codeword {line!r}", lineno)
        seen.add(w)
        words.append(w)
    if shape is None:
        raise ParseError("missing 'm q' header")
    if not words:
        raise ParseError("code has no codewords")
    return Code(shape[0], shape[1], tuple(words))


def read_code(path: str | Path) -> Code:
    return parse_code(Path(path).read_text())


def write_code(C: Code, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(C, comment))
