"""Sequences (finite multisets) over a finite abelian group, and their signed sums.

A sequence is hash-canonical: it stores (element index, multiplicity) pairs
sorted by index, so equal multisets compare and hash equal and can serve as
cache keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError
from .groups import ElementSet, Group, GroupElement, signed_shift_mask


@dataclass(frozen=True)
class Sequence:
    """A finite multiset of group elements (repetition allowed, order ignored)."""

    group: Group
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for idx, mult in self.entries:
            if not 0 <= idx < self.group.order:
                raise DomainError(f"element index {idx} out of range for {self.group}")
            if mult < 1:
                raise DomainError("multiplicities must be strictly positive")
            if idx in seen:
                raise DomainError("duplicate support element in sequence entries")
            seen.add(idx)
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    # -- construction ----------------------------------------------------------

    @classmethod
    def empty(cls, group: Group) -> "Sequence":
        return cls(group, ())

    @classmethod
    def of(cls, group: Group, *elements: GroupElement) -> "Sequence":
        counts: dict[int, int] = {}
        for g in elements:
            if g.group != group:
                raise DomainError("sequence terms must belong to the given group")
            counts[g.index] = counts.get(g.index, 0) + 1
        return cls(group, tuple(counts.items()))

    @classmethod
    def from_items(cls, group: Group, items: Iterable[tuple[GroupElement, int]]) -> "Sequence":
        counts: dict[int, int] = {}
        for g, mult in items:
            if g.group != group:
                raise DomainError("sequence terms must belong to the given group")
            if mult < 0:
                raise DomainError("multiplicities must be non-negative")
            if mult:
                counts[g.index] = counts.get(g.index, 0) + mult
        return cls(group, tuple(counts.items()))

    # -- basic multiset structure ----------------------------------------------

    def __len__(self) -> int:
        """Total length |S|, counting multiplicity."""
        return sum(mult for _, mult in self.entries)

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(self.group.element_at(idx) for idx, _ in self.entries)

    def multiplicity(self, g: GroupElement) -> int:
        if g.group != self.group:
            raise DomainError("multiplicity query for an element of a different group")
        for idx, mult in self.entries:
            if idx == g.index:
                return mult
        return 0

    def items(self) -> Iterator[tuple[GroupElement, int]]:
        for idx, mult in self.entries:
            yield self.group.element_at(idx), mult

    def terms(self) -> Iterator[GroupElement]:
        """The elements of the sequence, repeated per multiplicity."""
        for idx, mult in self.entries:
            g = self.group.element_at(idx)
            for _ in range(mult):
                yield g

    def concat(self, other: "Sequence") -> "Sequence":
        if other.group != self.group:
            raise DomainError("cannot concatenate sequences over different groups")
        counts = dict(self.entries)
        for idx, mult in other.entries:
            counts[idx] = counts.get(idx, 0) + mult
        return Sequence(self.group, tuple(counts.items()))

    def remove(self, other: "Sequence") -> "Sequence":
        if other.group != self.group:
            raise DomainError("cannot remove a sequence over a different group")
        counts = dict(self.entries)
        for idx, mult in other.entries:
            have = counts.get(idx, 0)
            if have < mult:
                raise DomainError("removal would make a multiplicity negative")
            if have == mult:
                del counts[idx]
            else:
                counts[idx] = have - mult
        return Sequence(self.group, tuple(counts.items()))

    def is_subsequence_of(self, other: "Sequence") -> bool:
        if other.group != self.group:
            return False
        theirs = dict(other.entries)
        return all(theirs.get(idx, 0) >= mult for idx, mult in self.entries)

    def power(self, k: int) -> "Sequence":
        if k < 0:
            raise DomainError("sequence powers must be non-negative")
        if k == 0:
            return Sequence.empty(self.group)
        return Sequence(self.group, tuple((idx, mult * k) for idx, mult in self.entries))

    # -- sums ------------------------------------------------------------------

    def sum(self) -> GroupElement:
        """The plain (all weights +1) sum; the empty sequence sums to 0."""
        total = self.group.zero()
        for g, mult in self.items():
            total = total + mult * g
        return total

    def signed_sums(self) -> ElementSet:
        """The set of all sums with per-term weights in {+1, -1}.

        Computed by set dynamic programming: starting from {0}, each copy of
        g maps the running set T to (T + g) | (T - g).
        """
        mask = 1
        for idx, mult in self.entries:
            for _ in range(mult):
                mask = signed_shift_mask(self.group, mask, idx)
        return ElementSet(self.group, mask)

    def is_pm_zero_sum(self) -> bool:
        """True iff some choice of plus-minus weights makes the sequence sum to 0."""
        return self.signed_sums().contains_zero

    def __str__(self) -> str:
        parts = []
        for g, mult in self.items():
            parts.append(str(g) if mult == 1 else f"{g}^{mult}")
        return "[" + ", ".join(parts) + "]"


def divides_pm(part: Sequence, whole: Sequence) -> bool:
    """Divisibility in the monoid of plus-minus weighted zero-sum sequences.

    True iff ``part`` is a subsequence of ``whole`` and both ``part`` and the
    complementary subsequence admit a signed zero sum.
    """
    if part.group != whole.group:
        raise DomainError("divisibility requires sequences over the same group")
    if not part.is_subsequence_of(whole):
        return False
    return part.is_pm_zero_sum() and whole.remove(part).is_pm_zero_sum()
