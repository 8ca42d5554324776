"""Finite abelian groups in invariant-factor form.

Elements carry reduced coordinate vectors and are densely indexed by the
mixed-radix rank of their coordinates (coordinate 0 most significant), so
subsets of a group can be stored as integer bitmasks and translated by a
group element with table lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator

from .errors import DomainError, ResourceLimitError


def _prime_factorization(n: int) -> dict[int, int]:
    """Map prime -> exponent for n >= 1, by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions_desc(n: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n in non-increasing order."""

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for part in range(min(largest, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


@lru_cache(maxsize=None)
def abelian_group_types(order: int) -> tuple[tuple[int, ...], ...]:
    """All invariant-factor chains (ascending) of abelian groups of the given order."""
    if order < 1:
        raise DomainError(f"group order must be positive, got {order}")
    if order == 1:
        return ((),)
    per_prime = []
    for p, a in sorted(_prime_factorization(order).items()):
        per_prime.append([tuple(p**e for e in part) for part in _partitions_desc(a)])
    types = set()
    for combo in product(*per_prime):
        width = max(len(chain) for chain in combo)
        factors_desc = []
        for i in range(width):
            f = 1
            for chain in combo:
                if i < len(chain):
                    f *= chain[i]
            factors_desc.append(f)
        types.add(tuple(reversed(factors_desc)))
    return tuple(sorted(types))


@dataclass(frozen=True)
class Group:
    """A finite abelian group given by its invariant factors n1 | n2 | ... | nr.

    The empty tuple is the trivial group.  Use :func:`make_group` to build a
    group from an arbitrary list of cyclic orders; the direct constructor
    insists on an already-canonical chain.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for n in factors:
            if n < 2:
                raise DomainError(f"invariant factor must be >= 2, got {n}")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise DomainError(f"invariant factors must form a divisibility chain, got {factors}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def m_rank(self, m: int) -> int:
        """Number of invariant factors divisible by m (m >= 2)."""
        if m < 2:
            raise DomainError(f"m-rank requires m >= 2, got {m}")
        return sum(1 for n in self.invariant_factors if n % m == 0)

    @property
    def d_star(self) -> int:
        """The classical lower-bound formula sum(ni - 1) + 1 for the Davenport constant."""
        return sum(n - 1 for n in self.invariant_factors) + 1

    @property
    def is_p_group(self) -> bool:
        return len(_prime_factorization(self.order)) <= 1

    # -- element construction and indexing ------------------------------------

    def element(self, *coords: int) -> "GroupElement":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element_at(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise DomainError(f"element index {index} out of range for {self}")
        coords = []
        for n in reversed(self.invariant_factors):
            index, c = divmod(index, n)
            coords.append(c)
        return GroupElement(self, tuple(reversed(coords)))

    def elements(self) -> Iterator["GroupElement"]:
        for i in range(self.order):
            yield self.element_at(i)

    def index_of(self, coords: tuple[int, ...]) -> int:
        idx = 0
        for c, n in zip(coords, self.invariant_factors):
            idx = idx * n + c
        return idx

    # -- dense arithmetic tables ----------------------------------------------

    @cached_property
    def _neg_table(self) -> tuple[int, ...]:
        table = []
        for i in range(self.order):
            coords = self.element_at(i).coords
            table.append(self.index_of(tuple((-c) % n for c, n in zip(coords, self.invariant_factors))))
        return tuple(table)

    @cached_property
    def _add_table(self) -> tuple[tuple[int, ...], ...]:
        coords_of = [self.element_at(i).coords for i in range(self.order)]
        rows = []
        for a in coords_of:
            row = [
                self.index_of(tuple((x + y) % n for x, y, n in zip(a, b, self.invariant_factors)))
                for b in coords_of
            ]
            rows.append(tuple(row))
        return tuple(rows)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "C1"
        return "x".join(f"C{n}" for n in self.invariant_factors)

    def __repr__(self) -> str:
        return f"Group({list(self.invariant_factors)})"


@lru_cache(maxsize=None)
def _canonical_group(factors: tuple[int, ...]) -> Group:
    return Group(factors)


def make_group(cyclic_orders: Iterable[int]) -> Group:
    """Build the group C_{m1} + ... + C_{mk} in canonical invariant-factor form.

    Any list of cyclic orders >= 2 is accepted; the result is the isomorphic
    invariant-factor decomposition, e.g. [2, 3] -> C6 and [6, 4] -> C2xC12.
    """
    orders = [int(m) for m in cyclic_orders]
    for m in orders:
        if m < 2:
            raise DomainError(f"cyclic order must be >= 2, got {m}")
    per_prime: dict[int, list[int]] = {}
    for m in orders:
        for p, e in _prime_factorization(m).items():
            per_prime.setdefault(p, []).append(e)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors_desc = []
    for i in range(width):
        f = 1
        for p, exps in per_prime.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                f *= p ** exps_sorted[i]
        factors_desc.append(f)
    return _canonical_group(tuple(reversed(factors_desc)))


@dataclass(frozen=True)
class GroupElement:
    """An element of a :class:`Group`; coordinates are kept reduced mod each factor."""

    group: Group
    coords: tuple[int, ...]

    def __post_init__(self):
        factors = self.group.invariant_factors
        if len(self.coords) != len(factors):
            raise DomainError(
                f"element needs {len(factors)} coordinates for {self.group}, got {len(self.coords)}"
            )
        object.__setattr__(self, "coords", tuple(int(c) % n for c, n in zip(self.coords, factors)))

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def _check_same_group(self, other: "GroupElement") -> None:
        if self.group != other.group:
            raise DomainError(f"elements belong to different groups: {self.group} vs {other.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_same_group(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple(k * c for c in self.coords))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def order(self) -> int:
        """Smallest k >= 1 with k * self = 0."""
        k = 1
        for c, n in zip(self.coords, self.group.invariant_factors):
            k = math.lcm(k, n // math.gcd(n, c))
        return k

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"{self.group}:{self}"


class ElementSet:
    """An immutable subset of a group stored as a bitmask over element indices."""

    __slots__ = ("group", "mask")

    def __init__(self, group: Group, mask: int = 0):
        self.group = group
        self.mask = mask

    @classmethod
    def from_elements(cls, group: Group, elements: Iterable[GroupElement]) -> "ElementSet":
        mask = 0
        for g in elements:
            if g.group != group:
                raise DomainError("element set members must belong to the given group")
            mask |= 1 << g.index
        return cls(group, mask)

    def __contains__(self, g: GroupElement) -> bool:
        return g.group == self.group and (self.mask >> g.index) & 1 == 1

    @property
    def contains_zero(self) -> bool:
        return self.mask & 1 == 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[GroupElement]:
        m = self.mask
        while m:
            low = m & -m
            yield self.group.element_at(low.bit_length() - 1)
            m ^= low

    def __or__(self, other: "ElementSet") -> "ElementSet":
        if self.group != other.group:
            raise DomainError("cannot combine element sets over different groups")
        return ElementSet(self.group, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        if self.group != other.group:
            raise DomainError("cannot combine element sets over different groups")
        return ElementSet(self.group, self.mask & other.mask)

    def shift(self, g: GroupElement) -> "ElementSet":
        """The translate {x + g : x in self}."""
        if g.group != self.group:
            raise DomainError("shift element must belong to the same group")
        return ElementSet(self.group, shift_mask(self.group, self.mask, g.index))

    def negate(self) -> "ElementSet":
        neg = self.group._neg_table
        out = 0
        m = self.mask
        while m:
            low = m & -m
            out |= 1 << neg[low.bit_length() - 1]
            m ^= low
        return ElementSet(self.group, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and self.group == other.group and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.group, self.mask))

    def __repr__(self) -> str:
        return "{" + ", ".join(str(g) for g in self) + "}"


def shift_mask(group: Group, mask: int, gi: int) -> int:
    """Translate a bitmask of element indices by the element with index gi."""
    row = group._add_table[gi]
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


def signed_shift_mask(group: Group, mask: int, gi: int) -> int:
    """(T + g) | (T - g) for a bitmask T; one step of the signed-sum recursion."""
    return shift_mask(group, mask, gi) | shift_mask(group, mask, group._neg_table[gi])


def is_independent(elements: Iterable[GroupElement]) -> bool:
    """True iff sum(ai * ei) = 0 forces every ai * ei = 0.

    Decided by comparing |<e1, ..., es>| with prod(ord(ei)).
    """
    elems = list(elements)
    if not elems:
        return True
    group = elems[0].group
    closure, _ = subgroup_generated(group, elems)
    return len(closure) == math.prod(g.order() for g in elems)


def subgroup_generated(group: Group, elements: Iterable[GroupElement]) -> tuple[ElementSet, Group]:
    """Closure of the given elements under addition, plus its abstract type."""
    gens = [g.index for g in elements]
    for g in elements:
        if g.group != group:
            raise DomainError("generators must belong to the given group")
    seen = {0}
    frontier = [0]
    add = group._add_table
    while frontier:
        new = []
        for x in frontier:
            for gi in gens:
                y = add[x][gi]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    mask = 0
    for i in seen:
        mask |= 1 << i
    return ElementSet(group, mask), _classify_subgroup(group, seen)


def _classify_subgroup(group: Group, indices: set[int]) -> Group:
    """Identify the abstract type of a subgroup given as a set of element indices."""
    m = len(indices)
    if m == 1:
        return _canonical_group(())
    orders = [group.element_at(i).order() for i in indices]
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    counts = {d: sum(1 for o in orders if d % o == 0) for d in divisors}
    for factors in abelian_group_types(m):
        if all(counts[d] == math.prod(math.gcd(n, d) for n in factors) for d in divisors):
            return _canonical_group(factors)
    raise AssertionError(f"no abelian type of order {m} matches the subgroup fingerprint")


def fold_negatives(group: Group, indices: Iterable[int]) -> tuple[int, ...]:
    """Replace each element index by min(i, index of -i) and deduplicate.

    Negating a single generator, or merging g with an already-present -g,
    preserves every set of signed sums, hence all sets of lengths computed
    from the resulting monoid; folding is therefore safe for any invariant
    derived from lengths (minimal distance, Davenport constant, rho_k).
    """
    neg = group._neg_table
    return tuple(sorted({min(i, neg[i]) for i in indices}))


@dataclass(frozen=True)
class GroupSummary:
    """Structural invariants reported by the CLI ``group`` command."""

    group: Group
    order: int
    exponent: int
    rank: int
    d_star: int
    m_ranks: dict[int, int]


def group_invariants(group: Group) -> GroupSummary:
    primes = sorted(_prime_factorization(group.order)) if group.order > 1 else []
    return GroupSummary(
        group=group,
        order=group.order,
        exponent=group.exponent,
        rank=group.rank,
        d_star=group.d_star,
        m_ranks={p: group.m_rank(p) for p in primes},
    )


@lru_cache(maxsize=None)
def _longest_zero_sum_free(group: Group) -> int:
    """Length of the longest zero-sum-free sequence, by pruned DFS.

    The DFS extends sequences with non-decreasing element index and carries
    the set of nonempty-subsequence sums as a bitmask; a branch dies as soon
    as 0 becomes a subsequence sum.
    """
    best = 0
    order = group.order

    def extend(min_index: int, length: int, sums: int) -> None:
        nonlocal best
        if length > best:
            best = length
        for gi in range(min_index, order):
            new_sums = sums | shift_mask(group, sums, gi) | (1 << gi)
            if new_sums & 1:
                continue
            extend(gi, length + 1, new_sums)

    extend(1, 0, 0)
    return best


def davenport_exhaustive(group: Group) -> int:
    """Davenport constant by exhaustive zero-sum-free search (no formula shortcut)."""
    if group.order == 1:
        return 1
    return _longest_zero_sum_free(group) + 1


def davenport(group: Group, *, max_order: int = 20) -> int:
    """Exact Davenport constant D(G).

    For p-groups and groups of rank at most two this equals the d_star
    formula (any order); otherwise an exhaustive search runs, capped at
    ``max_order`` because the search cost grows steeply with the order.
    Past the cap a ResourceLimitError carries the d_star lower bound.
    """
    if group.is_p_group or group.rank <= 2:
        return group.d_star
    if group.order > max_order:
        raise ResourceLimitError(
            f"exact Davenport search capped at order {max_order}; "
            f"d_star gives D({group}) >= {group.d_star}",
            lower_bound=group.d_star,
        )
    return davenport_exhaustive(group)


def automorphisms(group: Group, *, max_order: int = 32) -> list[tuple[int, ...]]:
    """All automorphisms of the group, as permutations of element indices.

    Enumerated by brute force over generator images; each candidate image
    tuple induces a well-defined endomorphism iff ni * image(ei) = 0, and is
    kept iff the induced map permutes the group.
    """
    if group.order > max_order:
        raise ResourceLimitError(f"automorphism enumeration capped at order {max_order}")
    if group.order == 1:
        return [()]
    factors = group.invariant_factors
    add = group._add_table
    orders = [group.element_at(i).order() for i in range(group.order)]
    candidates = [[i for i in range(group.order) if n % orders[i] == 0] for n in factors]
    out = []
    for images in product(*candidates):
        maps = [0]
        for n, gi in zip(factors, images):
            multiples = [0]
            for _ in range(n - 1):
                multiples.append(add[multiples[-1]][gi])
            # keep earlier coordinates most significant, matching element indexing
            maps = [add[x][m] for x in maps for m in multiples]
        if len(set(maps)) == group.order:
            out.append(tuple(maps))
    return out
