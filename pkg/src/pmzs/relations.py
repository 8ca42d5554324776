"""Factorizations, sets of lengths, and the exact minimal distance.

The minimal distance of a monoid with a known complete atom list comes out of
the integer kernel of the atom exponent matrix M: an integer vector v with
M v = 0 splits as v = v+ - v-, and v+ and v- are two factorizations of the
same element whose lengths differ by sum(v).  Conversely any two
factorizations z, z' of one element give the kernel vector z - z'.  The set
of length differences is therefore exactly the image of the kernel lattice
under the coordinate-sum functional, an ideal of Z, and the minimal distance
(which equals the gcd of the distance set) is the gcd of the basis images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence as SequenceABC

from .atoms import AtomCache, AtomSet, enumerate_atoms, atom_length_profile
from .errors import DomainError, ResourceLimitError
from .groups import Group, GroupElement, fold_negatives
from .limits import DEFAULT_LIMITS, Limits
from .sequences import Sequence

ZERO_ATOM = -1  # marker index for the prime atom (0) in factorization listings


def atom_matrix(atom_set: AtomSet) -> list[list[int]]:
    """Exponent matrix with one row per ground element and one column per atom."""
    return [[vec[i] for vec in atom_set.vectors] for i in range(len(atom_set.ground))]


def integer_kernel_basis(matrix: SequenceABC[SequenceABC[int]]) -> list[list[int]]:
    """Lattice basis of {v integer : M v = 0}, by unimodular row reduction.

    Works on [M^T | I] with exact integer arithmetic (Python integers are
    arbitrary precision, so entry growth during elimination is harmless) and
    returns the right-hand blocks of the rows whose left half vanished.  Every
    returned vector is re-multiplied against M as a self-check.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise DomainError("kernel computation requires a rectangular matrix")
    if n == 0:
        return []
    work = [[rows[i][j] for i in range(m)] + [1 if t == j else 0 for t in range(n)] for j in range(n)]
    r = 0
    for c in range(m):
        while True:
            pivot = None
            for i in range(r, n):
                if work[i][c] and (pivot is None or abs(work[i][c]) < abs(work[pivot][c])):
                    pivot = i
            if pivot is None:
                break
            work[r], work[pivot] = work[pivot], work[r]
            done = True
            for i in range(r + 1, n):
                if work[i][c]:
                    q = work[i][c] // work[r][c]
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    if work[i][c]:
                        done = False
            if done:
                r += 1
                break
    basis = []
    for i in range(r, n):
        if any(work[i][c] for c in range(m)):
            raise AssertionError("row reduction left a nonzero entry outside the pivot block")
        basis.append(work[i][m:])
    for v in basis:
        for row in rows:
            if sum(a * b for a, b in zip(row, v)) != 0:
                raise AssertionError("kernel basis vector fails re-multiplication check")
    return basis


def min_delta_of_atoms(atom_set: AtomSet) -> int | None:
    """Minimal distance of the monoid with the given complete atom list.

    None means the distance set is empty (the monoid is half-factorial).
    """
    if not atom_set.vectors:
        return None
    basis = integer_kernel_basis(atom_matrix(atom_set))
    g = 0
    for v in basis:
        g = math.gcd(g, sum(v))
    return g if g else None


def min_delta(
    group: Group,
    subset: Iterable[GroupElement],
    *,
    limits: Limits = DEFAULT_LIMITS,
    cache: AtomCache | None = None,
    reduce_signs: bool = True,
) -> int | None:
    """Exact min of the distance set of the signed zero-sum monoid over the subset.

    Computed from the kernel lattice of the atom matrix; ``None`` when the
    distance set is empty.  ``reduce_signs`` folds g with -g first, which
    preserves the value.
    """
    elems = [g for g in subset if not g.is_zero]
    if reduce_signs:
        elems = [group.element_at(i) for i in fold_negatives(group, [g.index for g in elems])]
    atom_set = enumerate_atoms(group, elems, limits=limits, cache=cache)
    return min_delta_of_atoms(atom_set)


@dataclass(frozen=True)
class FactorizationSet:
    """All factorizations of one element into atoms, with derived lengths.

    Each factorization is a sorted tuple of atom indices into the atom set
    (``ZERO_ATOM`` entries stand for the prime atom (0)).
    """

    element: Sequence
    factorizations: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]
    delta: tuple[int, ...]

    def to_json_dict(self) -> dict:
        packed = []
        for fac in self.factorizations:
            counts: dict[int, int] = {}
            for idx in fac:
                counts[idx] = counts.get(idx, 0) + 1
            packed.append([[idx, counts[idx]] for idx in sorted(counts)])
        return {
            "element": str(self.element),
            "factorizations": packed,
            "lengths": list(self.lengths),
            "delta": list(self.delta),
        }


def delta_of_lengths(lengths: Iterable[int]) -> tuple[int, ...]:
    """Successive gaps of a finite set of integers, in increasing order."""
    ordered = sorted(set(lengths))
    return tuple(b - a for a, b in zip(ordered, ordered[1:]))


class Factorizer:
    """Factorization queries against a fixed complete atom set.

    Depth-first search over atoms in index order with memoization on the
    residual exponent vector, so repeated queries (for example all products
    of two atoms) share work.
    """

    def __init__(self, atom_set: AtomSet, *, memo_size: int = 1 << 17):
        self.atom_set = atom_set
        self.vectors = atom_set.vectors

        @lru_cache(maxsize=memo_size)
        def suffix_factorizations(residual: tuple[int, ...], start: int) -> tuple[tuple[int, ...], ...]:
            if not any(residual):
                return ((),)
            out = []
            for k in range(start, len(self.vectors)):
                vec = self.vectors[k]
                if all(a >= b for a, b in zip(residual, vec)):
                    rest = tuple(a - b for a, b in zip(residual, vec))
                    for suffix in suffix_factorizations(rest, k):
                        out.append((k,) + suffix)
            return tuple(out)

        @lru_cache(maxsize=memo_size)
        def longest_factorization(residual: tuple[int, ...]) -> int:
            if not any(residual):
                return 0
            best = -1
            for vec in self.vectors:
                if all(a >= b for a, b in zip(residual, vec)):
                    rest = tuple(a - b for a, b in zip(residual, vec))
                    sub = longest_factorization(rest)
                    if sub >= 0 and sub + 1 > best:
                        best = sub + 1
            return best

        self._suffixes = suffix_factorizations
        self._longest = longest_factorization

    def _vector_and_zeros(self, element: Sequence) -> tuple[tuple[int, ...], int]:
        if element.group != self.atom_set.group:
            raise DomainError("element belongs to a different group than the atom set")
        if len(element) > 8 * max(self.atom_set.bound, 1):
            raise ResourceLimitError(
                f"factorization query capped at length {8 * max(self.atom_set.bound, 1)}, "
                f"got {len(element)}"
            )
        zeros = 0
        stripped = element
        if element.multiplicity(element.group.zero()) > 0:
            if not self.atom_set.includes_zero:
                raise DomainError("element contains 0 but 0 is not in the ground set")
            zeros = element.multiplicity(element.group.zero())
            stripped = element.remove(Sequence.from_items(element.group, [(element.group.zero(), zeros)]))
        if not element.is_pm_zero_sum():
            raise DomainError("only signed zero-sum sequences factor in this monoid")
        return self.atom_set.vector_of(stripped), zeros

    def factorizations(self, element: Sequence) -> FactorizationSet:
        vec, zeros = self._vector_and_zeros(element)
        raw = self._suffixes(vec, 0)
        if not raw and any(vec):
            raise AssertionError("a signed zero-sum element failed to factor over a complete atom set")
        facs = tuple(sorted((ZERO_ATOM,) * zeros + f for f in raw))
        lengths = tuple(sorted({len(f) for f in facs}))
        return FactorizationSet(element, facs, lengths, delta_of_lengths(lengths))

    def length_set(self, element: Sequence) -> tuple[int, ...]:
        return self.factorizations(element).lengths

    def max_length(self, element: Sequence) -> int:
        vec, zeros = self._vector_and_zeros(element)
        best = self._longest(vec)
        if best < 0:
            raise AssertionError("a signed zero-sum element failed to factor over a complete atom set")
        return best + zeros

    def max_length_of_vector(self, vec: tuple[int, ...]) -> int:
        return self._longest(vec)


def factorizations(element: Sequence, atom_set: AtomSet) -> FactorizationSet:
    return Factorizer(atom_set).factorizations(element)


def length_set(element: Sequence, atom_set: AtomSet) -> tuple[int, ...]:
    return factorizations(element, atom_set).lengths


def delta_of_element(element: Sequence, atom_set: AtomSet) -> tuple[int, ...]:
    return factorizations(element, atom_set).delta


def is_half_factorial(
    group: Group,
    subset: Iterable[GroupElement],
    *,
    limits: Limits = DEFAULT_LIMITS,
    cache: AtomCache | None = None,
) -> bool:
    """True iff every element has a single factorization length.

    Equivalent to an empty distance set, and to a monoid Davenport constant
    of at most 2; both are computed and cross-checked.
    """
    elems = [group.element_at(i) for i in fold_negatives(group, [g.index for g in subset if not g.is_zero])]
    atom_set = enumerate_atoms(group, elems, limits=limits, cache=cache)
    by_delta = min_delta_of_atoms(atom_set) is None
    by_davenport = atom_length_profile(atom_set).max_length <= 2
    if by_delta != by_davenport:
        raise AssertionError("half-factoriality criteria disagree; atom enumeration is inconsistent")
    return by_delta


def rho_k(
    group: Group,
    subset: Iterable[GroupElement],
    k: int,
    *,
    limits: Limits = DEFAULT_LIMITS,
    cache: AtomCache | None = None,
    reduce_signs: bool = True,
) -> int:
    """Largest factorization length among elements that are products of k atoms.

    Exact for every k: an element with k in its length set is such a product.
    k = 1 returns 1.  k above the configured cap raises ResourceLimitError.
    """
    if k < 1:
        raise DomainError(f"rho_k requires k >= 1, got {k}")
    if k > limits.rho_cap:
        raise ResourceLimitError(f"rho_k capped at k <= {limits.rho_cap}, got {k}")
    if k == 1:
        return 1
    all_elems = list(subset)
    has_zero = any(g.is_zero for g in all_elems)
    elems = [g for g in all_elems if not g.is_zero]
    if reduce_signs:
        elems = [group.element_at(i) for i in fold_negatives(group, [g.index for g in elems])]
    atom_set = enumerate_atoms(group, elems, limits=limits, cache=cache)
    if not atom_set.vectors:
        # only the prime atom (0) can be present; its powers have single lengths
        return k if has_zero else 0
    fz = Factorizer(atom_set)
    width = len(atom_set.ground)
    best = k
    for combo in combinations_with_replacement(range(len(atom_set.vectors)), k):
        total = [0] * width
        for idx in combo:
            vec = atom_set.vectors[idx]
            for i in range(width):
                total[i] += vec[i]
        best = max(best, fz.max_length_of_vector(tuple(total)))
    return best
