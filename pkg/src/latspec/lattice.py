"""Complete subgroup lattices: enumeration, meet/join, Möbius values, permuting core.

A lattice is built once (single writer) and is immutable afterwards; the
Möbius memo is filled lazily with deterministic values, so concurrent readers
always observe a consistent map.

Subgroup member sets are stored as integer bitsets over the parent group's
element indices. The canonical subgroup order is (order, member tuple), which
makes every id, dump, and downstream artifact deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InputError, SizeError
from .perm import FiniteGroup, Permutation, bits_of, iter_bits

DEFAULT_SUBGROUP_CAP = 100_000


@dataclass(frozen=True)
class Subgroup:
    """One lattice member: `members` is a bitset over parent element indices."""

    id: int
    members: int
    order: int

    def member_indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.members))


@dataclass(frozen=True)
class Interval:
    """All lattice members Z with lower <= Z <= upper (a sublattice)."""

    lower: int
    upper: int
    members: tuple[int, ...]


def _closure_bits(table: list[list[int]], start_bits: int, gens: Sequence[int]) -> int:
    """Subgroup bitset generated by `gens`, seeded with `start_bits` (must contain e)."""
    members = start_bits
    frontier = list(iter_bits(start_bits))
    while frontier:
        row = table[frontier.pop()]
        for g in gens:
            y = row[g]
            bit = 1 << y
            if not members & bit:
                members |= bit
                frontier.append(y)
    return members


class SubgroupLattice:
    """The lattice of all subgroups of a finite group, ordered by inclusion."""

    def __init__(self, group: FiniteGroup, member_bits: Iterable[int]) -> None:
        self.group = group
        uniq = sorted(set(member_bits), key=lambda m: (m.bit_count(), tuple(iter_bits(m))))
        self.subgroups: tuple[Subgroup, ...] = tuple(
            Subgroup(i, m, m.bit_count()) for i, m in enumerate(uniq)
        )
        self._id_of: dict[int, int] = {s.members: s.id for s in self.subgroups}
        self._member_tuples: list[tuple[int, ...]] = [s.member_indices() for s in self.subgroups]

        triv = 1 << group.identity_index
        whole = bits_of(range(group.order))
        if triv not in self._id_of or whole not in self._id_of:
            raise InputError("lattice must contain the trivial subgroup and the whole group")
        self.bottom_id: int = self._id_of[triv]
        self.top_id: int = self._id_of[whole]

        n = len(self.subgroups)
        self._down = [0] * n   # ids z with z <= i
        self._up = [0] * n     # ids z with i <= z
        for i, si in enumerate(self.subgroups):
            mi = si.members
            for j, sj in enumerate(self.subgroups):
                if sj.members & mi == sj.members:
                    self._down[i] |= 1 << j
                    self._up[j] |= 1 << i
        for i, si in enumerate(self.subgroups):
            for j in range(i + 1, n):
                meet_bits = si.members & self.subgroups[j].members
                if meet_bits not in self._id_of:
                    raise InputError("member sets are not meet-closed")

        self._mobius_memo: dict[tuple[int, int], int] = {}
        self._core: frozenset[int] | None = None
        self._min_gens: dict[int, tuple[int, ...]] = {}

    # -- basic structure ----------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.subgroups)

    def subgroup(self, sid: int) -> Subgroup:
        return self.subgroups[sid]

    def id_of_members(self, members: int) -> int:
        try:
            return self._id_of[members]
        except KeyError:
            raise DomainError("the given member set is not a subgroup of this lattice") from None

    def leq(self, a: int, b: int) -> bool:
        return bool(self._up[a] & (1 << b))

    def down_ids(self, sid: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._down[sid]))

    def up_ids(self, sid: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._up[sid]))

    def meet(self, a: int, b: int) -> int:
        return self._id_of[self.subgroups[a].members & self.subgroups[b].members]

    def join(self, a: int, b: int) -> int:
        # the generated join is present (join-closed lattice) and is contained
        # in every other common upper bound, so it alone has minimal order and
        # therefore the smallest id in the common up-set
        common = self._up[a] & self._up[b]
        return (common & -common).bit_length() - 1

    def interval(self, lower: int, upper: int) -> Interval:
        if not self.leq(lower, upper):
            raise DomainError(f"subgroup {lower} is not contained in {upper}")
        ids = tuple(iter_bits(self._down[upper] & self._up[lower]))
        return Interval(lower, upper, ids)

    # -- Möbius function -----------------------------------------------------

    def mobius(self, lower: int, upper: int) -> int:
        """Möbius value of the interval [upper/lower] by the zeta recursion.

        mu(H, H) = 1 and the values on every nontrivial interval sum to zero.
        Memo writes are idempotent, so concurrent queries stay consistent.
        """
        if not self.leq(lower, upper):
            raise DomainError(f"subgroup {lower} is not contained in {upper}")
        return self._mobius(lower, upper)

    def _mobius(self, lower: int, upper: int) -> int:
        key = (lower, upper)
        memo = self._mobius_memo
        if key in memo:
            return memo[key]
        if lower == upper:
            val = 1
        else:
            total = 0
            between = self._down[upper] & self._up[lower] & ~(1 << upper)
            for z in iter_bits(between):
                total += self._mobius(lower, z)
            val = -total
        memo[key] = val
        return val

    # -- complex products ----------------------------------------------------

    def product_bits(self, a: int, b: int) -> int:
        """Bitset of the complex product (members of a) * (members of b)."""
        table = self.group.mul_table
        out = 0
        kt = self._member_tuples[b]
        for h in self._member_tuples[a]:
            row = table[h]
            for k in kt:
                out |= 1 << row[k]
        return out

    def products_commute(self, a: int, b: int) -> bool:
        """True when the two member sets permute: AB = BA as element sets."""
        if a == b:
            return True
        return self.product_bits(a, b) == self.product_bits(b, a)

    # -- permuting core and derived predicates --------------------------------

    def permuting_core(self) -> frozenset[int]:
        """Ids of the sublattice closure of the permute-with-all subgroup set.

        Starts from {Y : YX = XY for every X}, which need not be a sublattice,
        and alternates meet- and join-closure passes until a fixpoint.
        """
        if self._core is not None:
            return self._core
        size = self.size
        core = {
            y for y in range(size)
            if all(self.products_commute(y, x) for x in range(size))
        }
        changed = True
        while changed:
            changed = False
            ids = sorted(core)
            for i, a in enumerate(ids):
                for b in ids[i + 1:]:
                    for c in (self.meet(a, b), self.join(a, b)):
                        if c not in core:
                            core.add(c)
                            changed = True
        self._core = frozenset(core)
        return self._core

    def is_quasihamiltonian(self) -> bool:
        """True iff every pair of subgroups permutes (the whole lattice is the core)."""
        size = self.size
        return all(
            self.products_commute(a, b)
            for a in range(size)
            for b in range(a + 1, size)
        )

    # -- materializing members as standalone groups ---------------------------

    def minimal_generators(self, sid: int) -> tuple[int, ...]:
        """A small generating set of element indices for the given subgroup (greedy, deterministic)."""
        cached = self._min_gens.get(sid)
        if cached is not None:
            return cached
        target = self.subgroups[sid].members
        table = self.group.mul_table
        ident_bits = 1 << self.group.identity_index
        gens: list[int] = []
        closure = ident_bits
        for idx in self._member_tuples[sid]:
            if closure == target:
                break
            if closure & (1 << idx):
                continue
            gens.append(idx)
            closure = _closure_bits(table, closure | (1 << idx), gens)
        self._min_gens[sid] = tuple(gens)
        return self._min_gens[sid]

    def standalone_group(self, sid: int) -> FiniteGroup:
        """The subgroup as its own FiniteGroup (same degree, re-sorted element list)."""
        if sid == self.top_id:
            return self.group
        elems = [self.group.elements[i] for i in self._member_tuples[sid]]
        gens = [self.group.elements[i] for i in self.minimal_generators(sid)]
        if not gens:
            gens = [Permutation.identity(self.group.degree)]
        return FiniteGroup(self.group.degree, elems, gens)

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical JSON form: member index arrays, strict containment pairs, core ids."""
        pairs = [
            [a, b]
            for b in range(self.size)
            for a in iter_bits(self._down[b])
            if a != b
        ]
        return {
            "group_order": self.group.order,
            "degree": self.group.degree,
            "size": self.size,
            "subgroups": [
                {"id": s.id, "order": s.order, "members": list(self._member_tuples[s.id])}
                for s in self.subgroups
            ],
            "leq_pairs": sorted(pairs),
            "core": sorted(self.permuting_core()),
        }

    @classmethod
    def from_member_lists(cls, group: FiniteGroup,
                          member_lists: Iterable[Sequence[int]]) -> "SubgroupLattice":
        """Rebuild a lattice from dumped member index arrays (e.g. a cache entry).

        Every member set is re-checked to be closed under the group operation;
        completeness of the family is the dump writer's contract.
        """
        lattice = cls(group, (bits_of(m) for m in member_lists))
        table = group.mul_table
        for sub, members in zip(lattice.subgroups, lattice._member_tuples):
            bits = sub.members
            for x in members:
                row = table[x]
                for y in members:
                    if not bits & (1 << row[y]):
                        raise InputError("dumped member sets are not subgroups")
        return lattice

    def __repr__(self) -> str:
        return f"SubgroupLattice(group_order={self.group.order}, size={self.size})"


def enumerate_subgroups(group: FiniteGroup,
                        subgroup_cap: int = DEFAULT_SUBGROUP_CAP) -> SubgroupLattice:
    """Enumerate every subgroup: cyclic seeds, then pairwise join closure to a fixpoint.

    Every subgroup is a join of cyclic subgroups, so the fixpoint is complete.
    Raises SizeError if more than `subgroup_cap` subgroups appear.
    """
    table = group.mul_table
    e = group.identity_index
    n = group.order

    found: dict[int, tuple[int, ...]] = {1 << e: ()}
    for g in range(n):
        if g == e:
            continue
        bits = 1 << e
        cur = g
        while cur != e:
            bits |= 1 << cur
            cur = table[cur][g]
        if bits not in found:
            found[bits] = (g,)

    subs = list(found)
    i = 1
    while i < len(subs):
        a = subs[i]
        gens_a = found[a]
        for j in range(1, i):
            b = subs[j]
            ab = a & b
            if ab == a or ab == b:
                continue
            gens = tuple(dict.fromkeys(gens_a + found[b]))
            joined = _closure_bits(table, a | b, gens)
            if joined not in found:
                if len(found) >= subgroup_cap:
                    raise SizeError(f"subgroup count exceeded cap {subgroup_cap}")
                found[joined] = gens
                subs.append(joined)
        i += 1

    return SubgroupLattice(group, subs)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def hughes_subgroup(lattice: SubgroupLattice, p: int) -> Subgroup:
    """The subgroup generated by all elements g with g^p != identity.

    Trivial when every non-identity element has order p; the result is stable
    under the generation closure, so it is always a lattice member.
    """
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    group = lattice.group
    gens = [
        i for i in range(group.order)
        if group.order_of_index(i) not in (1, p)
    ]
    bits = _closure_bits(group.mul_table, 1 << group.identity_index, gens)
    return lattice.subgroup(lattice.id_of_members(bits))
