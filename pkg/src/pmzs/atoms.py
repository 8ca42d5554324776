"""Atom (irreducible element) testing and complete enumeration for the monoid
of plus-minus weighted zero-sum sequences over a subset of a finite abelian group.

The enumeration walks exponent vectors over the ground set depth first with
non-decreasing ground index, so every multiset is visited exactly once.  The
set of signed sums of the current prefix is carried down the recursion as a
bitmask and extended in O(|G|) per added term.  Every signed-zero-sum node is
tested for irreducibility by searching for a proper nonempty split into two
signed-zero-sum parts, again with incrementally maintained sum sets.

Atom lengths are bounded by the Davenport constant of the subgroup generated
by the ground set: in any longer signed zero sum, the first length-minus-one
weighted terms already contain a proper nonempty zero-sum block, and both the
block and its complement inherit signed zero sums.  The sequence (0) is an
atom (in fact prime); a zero in the ground set is stripped and tracked by the
``includes_zero`` flag since it never affects distances.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .errors import DomainError, ResourceLimitError
from .groups import Group, GroupElement, davenport, fold_negatives, signed_shift_mask, subgroup_generated
from .limits import DEFAULT_LIMITS, Limits
from .notation import format_group, parse_group, subset_from_json, subset_to_json
from .sequences import Sequence

CACHE_VERSION = 1


@dataclass(frozen=True)
class AtomSet:
    """The complete list of atoms over a ground set, as exponent vectors.

    ``ground`` lists the distinct nonzero support elements in index order and
    ``vectors[k][i]`` is the multiplicity of ``ground[i]`` in the k-th atom.
    The length-1 atom (0) is tracked only by ``includes_zero``.
    """

    group: Group
    ground: tuple[GroupElement, ...]
    vectors: tuple[tuple[int, ...], ...]
    includes_zero: bool
    bound: int

    def __len__(self) -> int:
        return len(self.vectors)

    def lengths(self) -> tuple[int, ...]:
        return tuple(sum(v) for v in self.vectors)

    def sequence(self, k: int) -> Sequence:
        vec = self.vectors[k]
        return Sequence.from_items(self.group, [(g, m) for g, m in zip(self.ground, vec) if m])

    def sequences(self) -> list[Sequence]:
        return [self.sequence(k) for k in range(len(self.vectors))]

    def vector_of(self, seq: Sequence) -> tuple[int, ...]:
        """Exponent vector of a sequence over this ground set (0 entries not represented)."""
        index_pos = {g.index: i for i, g in enumerate(self.ground)}
        vec = [0] * len(self.ground)
        for idx, mult in seq.entries:
            if idx == 0:
                raise DomainError("sequence contains 0; strip it before exponent-vector queries")
            if idx not in index_pos:
                raise DomainError("sequence support is not contained in the ground set")
            vec[index_pos[idx]] = mult
        return tuple(vec)

    def to_json_dict(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "group": format_group(self.group),
            "ground_set": subset_to_json(self.ground),
            "bound": self.bound,
            "atoms": [list(v) for v in self.vectors],
            "includes_zero": self.includes_zero,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "AtomSet":
        group = parse_group(data["group"])
        ground = subset_from_json(group, data["ground_set"])
        return cls(
            group=group,
            ground=ground,
            vectors=tuple(tuple(int(x) for x in v) for v in data["atoms"]),
            includes_zero=bool(data["includes_zero"]),
            bound=int(data["bound"]),
        )


@dataclass(frozen=True)
class LengthProfile:
    max_length: int
    gcd_lengths_minus_2: int


def _has_proper_pm_split(group: Group, ground_indices: tuple[int, ...], vec) -> bool:
    """True iff the sequence splits as C * R with C, R nonempty and both
    admitting signed zero sums.

    Walks all sub-multisets, carrying the signed-sum masks of both sides and
    stopping at the first witness.
    """
    positions = [i for i, m in enumerate(vec) if m]

    def split(i: int, mask_c: int, mask_r: int, took_c: int, took_r: int) -> bool:
        if i == len(positions):
            return took_c > 0 and took_r > 0 and mask_c & 1 == 1 and mask_r & 1 == 1
        p = positions[i]
        gi = ground_indices[p]
        v = vec[p]
        rest = [mask_r]
        for _ in range(v):
            rest.append(signed_shift_mask(group, rest[-1], gi))
        mc = mask_c
        for k in range(v + 1):
            if k:
                mc = signed_shift_mask(group, mc, gi)
            if split(i + 1, mc, rest[v - k], took_c + k, took_r + v - k):
                return True
        return False

    return split(0, 1, 1, 0, 0)


def _enumerate_atom_vectors(group: Group, ground_indices: tuple[int, ...], bound: int) -> list[tuple[int, ...]]:
    n = len(ground_indices)
    vec = [0] * n
    found: list[tuple[int, ...]] = []

    def extend(min_pos: int, length: int, mask: int) -> None:
        if length >= 2 and mask & 1:
            if not _has_proper_pm_split(group, ground_indices, vec):
                found.append(tuple(vec))
        if length == bound:
            return
        for j in range(min_pos, n):
            new_mask = signed_shift_mask(group, mask, ground_indices[j])
            vec[j] += 1
            extend(j, length + 1, new_mask)
            vec[j] -= 1

    extend(0, 0, 1)
    found.sort(key=lambda v: (sum(v), v))
    return found


@lru_cache(maxsize=4096)
def is_atom(seq: Sequence) -> bool:
    """True iff the sequence is an irreducible element of the signed zero-sum monoid.

    The single-term sequence (0) is an atom; any longer sequence containing 0
    splits off (0) and is reducible.
    """
    length = len(seq)
    if length == 0 or not seq.is_pm_zero_sum():
        return False
    if length == 1:
        return seq.entries[0][0] == 0
    ground = tuple(idx for idx, _ in seq.entries)
    vec = tuple(mult for _, mult in seq.entries)
    return not _has_proper_pm_split(seq.group, ground, vec)


class AtomCache:
    """Persistent JSON store for enumerated atom sets, keyed by content hash."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, group: Group, ground_indices: tuple[int, ...], bound: int) -> Path:
        key = f"{CACHE_VERSION}|{format_group(group)}|{','.join(map(str, ground_indices))}|{bound}"
        digest = hashlib.sha256(key.encode()).hexdigest()[:24]
        return self.directory / f"atoms-{digest}.json"

    def load(self, group: Group, ground_indices: tuple[int, ...], bound: int) -> AtomSet | None:
        path = self._path(group, ground_indices, bound)
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("version") != CACHE_VERSION:
            return None
        atom_set = AtomSet.from_json_dict(data)
        if atom_set.group != group or atom_set.bound != bound:
            return None
        return atom_set

    def store(self, atom_set: AtomSet) -> None:
        ground_indices = tuple(g.index for g in atom_set.ground)
        path = self._path(atom_set.group, ground_indices, atom_set.bound)
        path.write_text(json.dumps(atom_set.to_json_dict(), sort_keys=True))


def enumerate_atoms(
    group: Group,
    subset: Iterable[GroupElement],
    *,
    limits: Limits = DEFAULT_LIMITS,
    cache: AtomCache | None = None,
) -> AtomSet:
    """Complete atom list of the signed zero-sum monoid over the given subset.

    Zero is stripped first and recorded in the flag.  Raises
    :class:`ResourceLimitError` when the support size or the length bound
    exceeds the configured caps, rather than returning a partial list.
    """
    indices = set()
    includes_zero = False
    for g in subset:
        if g.group != group:
            raise DomainError("subset members must belong to the given group")
        if g.is_zero:
            includes_zero = True
        else:
            indices.add(g.index)
    ground_indices = tuple(sorted(indices))
    if len(ground_indices) > limits.max_support:
        raise ResourceLimitError(
            f"atom enumeration capped at {limits.max_support} support elements, got {len(ground_indices)}"
        )
    ground = tuple(group.element_at(i) for i in ground_indices)
    _, span = subgroup_generated(group, ground)
    bound = davenport(span, max_order=limits.max_davenport_order)
    if bound > limits.max_atom_length:
        raise ResourceLimitError(
            f"atom length bound {bound} exceeds the cap {limits.max_atom_length} for {format_group(group)}"
        )
    if cache is not None:
        cached = cache.load(group, ground_indices, bound)
        if cached is not None and tuple(g.index for g in cached.ground) == ground_indices:
            return AtomSet(group, ground, cached.vectors, includes_zero, bound)
    vectors = tuple(_enumerate_atom_vectors(group, ground_indices, bound))
    atom_set = AtomSet(group, ground, vectors, includes_zero, bound)
    if cache is not None:
        cache.store(atom_set)
    return atom_set


def atom_length_profile(atom_set: AtomSet) -> LengthProfile:
    """Maximum atom length and gcd of (length - 2) over the listed atoms.

    The flag atom (0) contributes its length 1 only when it is the sole atom;
    the gcd of an empty collection is reported as 0.
    """
    lengths = atom_set.lengths()
    if lengths:
        max_length = max(lengths)
    elif atom_set.includes_zero:
        max_length = 1
    else:
        max_length = 0
    g = 0
    for length in lengths:
        g = math.gcd(g, length - 2)
    return LengthProfile(max_length=max_length, gcd_lengths_minus_2=g)


def davenport_monoid(
    group: Group,
    subset: Iterable[GroupElement],
    *,
    limits: Limits = DEFAULT_LIMITS,
    cache: AtomCache | None = None,
    reduce_signs: bool = True,
) -> int:
    """Largest atom length of the signed zero-sum monoid over the subset.

    With ``reduce_signs`` the ground set is first folded by g -> -g merging,
    which preserves all atom lengths (see :func:`pmzs.groups.fold_negatives`)
    and often halves the support.
    """
    elems = list(subset)
    if reduce_signs:
        indices = fold_negatives(group, [g.index for g in elems if not g.is_zero])
        has_zero = any(g.is_zero for g in elems)
        elems = [group.element_at(i) for i in indices]
        if has_zero:
            elems.append(group.zero())
    atom_set = enumerate_atoms(group, elems, limits=limits, cache=cache)
    return atom_length_profile(atom_set).max_length
