"""Code families, permutation codes, the Rep_p blow-up and the classifier."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable

from .codes import Code, is_diagonally_nt
from .hamming import HammingAut, Vertex, all_vertices, generate_auts
from .perm import Permutation, PermGroup, identity, normalizer_in_sym


def _check_shape(m: int, q: int) -> None:
    if m < 2 or q < 2:
        raise ValueError(f"need m, q >= 2, got m={m}, q={q}")


def rep(m: int, q: int) -> Code:
    _check_shape(m, q)
    return Code(m, q, tuple((a,) * m for a in range(q)))


def inj(m: int, q: int) -> Code:
    _check_shape(m, q)
    if m >= q:
        raise ValueError(f"Inj(m, q) needs m < q, got m={m}, q={q}")
    return Code(m, q, tuple(itertools.permutations(range(q), m)))


def w_half(m: int) -> Code:
    """Binary words of weight (m-1)/2 or (m+1)/2."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"W([m/2], 2) needs odd m >= 3, got {m}")
    lo, hi = (m - 1) // 2, (m + 1) // 2
    return Code(m, 2, tuple(w for w in all_vertices(m, 2) if sum(w) in (lo, hi)))


def all_fpa(p: int, q: int) -> Code:
    """All words of length pq using each symbol exactly p times."""
    if p < 1 or q < 2:
        raise ValueError(f"All(pq, q) needs p >= 1 and q >= 2, got p={p}, q={q}")
    m = p * q
    words = [w for w in all_vertices(m, q) if all(c == p for c in _counts(w, q))]
    return Code(m, q, tuple(words))


def _counts(w: Vertex, q: int) -> list[int]:
    c = [0] * q
    for s in w:
        c[s] += 1
    return c


def perm_word(t: Permutation) -> Vertex:
    """alpha(t): entry i is the image of i."""
    return t.images


def perm_code(T: PermGroup | Iterable[Permutation]) -> Code:
    perms = list(T)
    if not perms:
        raise ValueError("empty set of permutations")
    q = perms[0].n
    return Code(q, q, tuple(perm_word(t) for t in perms))


def rep_p_blowup(C: Code, p: int) -> Code:
    """Each codeword written out p times in a row, a code in H(mp, q)."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    return Code(C.m * p, C.q, tuple(w * p for w in C.words))


def replace_block(a: Vertex, m: int, i: int, block: Vertex) -> Vertex:
    """Replace the i-th length-m block of ``a`` by ``block``."""
    return a[:i * m] + tuple(block) + a[(i + 1) * m:]


def blowup_aut(x: HammingAut, tau: Permutation) -> HammingAut:
    """(x, tau) acting on p-tuples of vertices: x inside each block, then tau on blocks."""
    m, p = x.m, tau.n
    cells = x.cells * p
    cols = tuple(tau.images[b] * m + x.cols.images[i] for b in range(p) for i in range(m))
    return HammingAut(cells, Permutation(cols))


def x_y(y: Permutation, q: int | None = None) -> HammingAut:
    """The diagonal automorphism (y, ..., y) of H(q, q)."""
    return HammingAut.diag(y, y.n if q is None else q)


def sigma_y(y: Permutation, q: int | None = None) -> HammingAut:
    """The entry permutation induced by y on H(q, q)."""
    return HammingAut.column(y, y.n if q is None else q)


def a_group(T: PermGroup) -> list[HammingAut]:
    """{x_y sigma(y) : y in the normaliser of T in S_q}."""
    N = normalizer_in_sym(T)
    return [x_y(y) * sigma_y(y) for y in N]


def x_group(T: PermGroup) -> list[HammingAut]:
    """<A(T), Diag_q(T)>, the group used to certify C(T)."""
    N = normalizer_in_sym(T)
    gens = [x_y(y) * sigma_y(y) for y in N.generators]
    gens += [x_y(t) for t in T.generators]
    return generate_auts(gens, T.n, T.n)


class Variant(enum.Enum):
    SINGLETON = "Singleton"
    REPETITION = "Repetition"
    INJECTION = "Injection"
    MIDDLE_WEIGHT = "MiddleWeight"
    FPA_SUBSET = "FPASubset"
    NONE = "None"


@dataclass(frozen=True)
class FamilyTag:
    variant: Variant
    a: int | None = None
    m: int | None = None
    q: int | None = None
    p: int | None = None

    def __str__(self) -> str:
        params = [f"{k}={v}" for k, v in (("a", self.a), ("m", self.m), ("q", self.q), ("p", self.p))
                  if v is not None]
        return f"{self.variant.value}({', '.join(params)})"


def matching_cases(C: Code) -> list[FamilyTag]:
    """Every classification case whose description C satisfies."""
    m, q = C.m, C.q
    words = C.wordset
    out = []
    if len(words) == 1:
        (w,) = words
        if len(set(w)) == 1:
            out.append(FamilyTag(Variant.SINGLETON, a=w[0]))
    if m >= 2 and q >= 2 and words == rep(m, q).wordset:
        out.append(FamilyTag(Variant.REPETITION, m=m, q=q))
    if 2 <= m < q and words == inj(m, q).wordset:
        out.append(FamilyTag(Variant.INJECTION, m=m, q=q))
    if q == 2 and m >= 3 and m % 2 == 1 and words == w_half(m).wordset:
        out.append(FamilyTag(Variant.MIDDLE_WEIGHT, m=m))
    if m % q == 0:
        p = m // q
        if all(all(c == p for c in _counts(w, q)) for w in words):
            out.append(FamilyTag(Variant.FPA_SUBSET, p=p, q=q))
    return out


def classify(C: Code, nt: bool | None = None) -> FamilyTag:
    """Which classification case a diagonally neighbour-transitive code falls in.

    Returns the NONE tag for codes that are not diagonally neighbour
    transitive.  Pass ``nt`` when the verdict is already known.
    """
    if nt is None:
        nt = is_diagonally_nt(C).verdict
    if not nt:
        return FamilyTag(Variant.NONE)
    cases = matching_cases(C)
    return cases[0] if cases else FamilyTag(Variant.NONE)


def alpha_identity(q: int) -> Vertex:
    return perm_word(identity(q))
