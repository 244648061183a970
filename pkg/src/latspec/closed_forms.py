"""Analytic formulas evaluated independently of any lattice, for cross-checking.

Closed forms for the factorization number of PSL(2,q) and PGL(2,q), the
classical census of PSL(2,q) subgroup types, and the known Möbius values for
p-groups and symmetric groups. Lattice sizes are inputs, not computed here:
the caller wires in brute-force sizes when the group is small enough to
enumerate.

Where the published statements carry known transcription hazards (overlapping
branches for the symmetric-group Möbius value, even-characteristic census
counts), the result is flagged for confirmation against the lattice recursion
or the brute-force census instead of being silently "fixed".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InputError


@dataclass(frozen=True)
class PrimePower:
    p: int
    n: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.n < 1:
            raise InputError("exponent must be >= 1")

    @property
    def q(self) -> int:
        return self.p ** self.n

    @classmethod
    def from_value(cls, q: int) -> "PrimePower":
        if q < 2:
            raise InputError(f"{q} is not a prime power")
        p = 2
        while p * p <= q:
            if q % p == 0:
                break
            p += 1
        else:
            p = q
        n = 0
        rest = q
        while rest % p == 0:
            rest //= p
            n += 1
        if rest != 1:
            raise InputError(f"{q} is not a prime power")
        return cls(p, n)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _as_prime_power(q) -> PrimePower:
    return q if isinstance(q, PrimePower) else PrimePower.from_value(q)


# -- factorization numbers ----------------------------------------------------

_PSL_F2_TABLE = {
    2: 17, 3: 27, 5: 237, 7: 1_141, 9: 2_033, 11: 4_935,
    19: 17_223, 23: 48_261, 29: 68_799, 59: 780_695,
}

_PGL_F2_TABLE = {
    3: 177, 5: 1_103, 7: 3_083, 9: 4_919, 11: 15_549, 13: 14_529,
    17: 31_093, 19: 58_429, 23: 111_567, 25: 99_527, 27: 144_297, 29: 192_349,
}


def f2_psl_closed(q, lattice_size: int) -> int:
    """Factorization number of PSL(2,q) from the published closed form.

    The special-value table is consulted first; outside it the three branches
    need n > 1. `lattice_size` is |L(PSL(2,q))|, supplied by the caller.
    """
    pp = _as_prime_power(q)
    value = pp.q
    if value in _PSL_F2_TABLE:
        return _PSL_F2_TABLE[value]
    volume = value * (value * value - 1)
    if pp.p == 2 and pp.n > 1:
        return 2 * lattice_size + 2 * volume - 1
    if pp.p > 2 and pp.n > 1:
        if ((value - 1) // 2) % 2 == 1:
            return 2 * lattice_size + volume - 1
        return 2 * lattice_size - 1
    raise DomainError(f"no closed-form branch covers q = {value}")


def f2_pgl_closed(q, lattice_g: int, lattice_m: int) -> int:
    """Factorization number of PGL(2,q), q odd; M is its PSL(2,q) subgroup.

    `lattice_g` and `lattice_m` are |L(PGL(2,q))| and |L(M)|; they only enter
    the q > 29 branches.
    """
    pp = _as_prime_power(q)
    if pp.p == 2:
        raise DomainError("PGL(2,q) = PSL(2,q) in characteristic 2")
    value = pp.q
    if value in _PGL_F2_TABLE:
        return _PGL_F2_TABLE[value]
    volume = value * (value * value - 1)
    if pp.n % 2 == 0 or pp.p % 4 == 1:
        return 3 * volume + 4 * lattice_g - 2 * lattice_m - 3
    return 4 * volume + 4 * lattice_g - 2 * lattice_m - 3


# -- the subgroup census of PSL(2,q) -------------------------------------------

STATED = "stated"
STATED_UNVERIFIED = "stated_unverified"
NOT_STATED = "not_stated"


@dataclass(frozen=True)
class CensusEntry:
    family: str
    label: str
    param: int | None
    count: int | None
    status: str
    note: str = ""

    def to_json_dict(self) -> dict:
        out = {
            "family": self.family,
            "label": self.label,
            "param": self.param,
            "count": self.count if self.count is not None else "not stated",
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _integral(value: Fraction, family: str, label: str, param,
              status: str, note: str = "") -> CensusEntry:
    if value.denominator != 1:
        return CensusEntry(family, label, param, None, STATED_UNVERIFIED,
                           (note + "; " if note else "")
                           + f"formula value {value} is not an integer")
    return CensusEntry(family, label, param, int(value), status, note)


def dickson_census(q) -> list[CensusEntry]:
    """Per-type subgroup counts of PSL(2,q) for q >= 4.

    Families with no published count (elementary abelian and the semidirect
    family) are emitted with count "not stated" so a caller holding the full
    lattice can fill them by subtraction. For even q the dihedral/alternating
    count formulas are flagged unverified: they are stated for odd
    characteristic and may fail to be integers.
    """
    pp = _as_prime_power(q)
    value = pp.q
    if value < 4:
        raise InputError("the census needs q >= 4")
    volume = value * (value * value - 1)
    even = pp.p == 2
    # torus orders: (q-1)/2 and (q+1)/2 for odd q, q-1 and q+1 for even q
    t_minus = value - 1 if even else (value - 1) // 2
    t_plus = value + 1 if even else (value + 1) // 2
    entries: list[CensusEntry] = []

    for torus, count in ((t_minus, value * (value + 1) // 2),
                         (t_plus, value * (value - 1) // 2)):
        for d in _divisors(torus):
            if d > 1:
                entries.append(CensusEntry("cyclic", f"C{d}", d, count, STATED))

    dihedral_status = STATED_UNVERIFIED if even else STATED
    dihedral_note = "odd-characteristic formula" if even else ""
    entries.append(_integral(Fraction(volume, 24), "dihedral", "D4 (order 4)", 2,
                             dihedral_status, dihedral_note))
    for torus in (t_minus, t_plus):
        for d in _divisors(torus):
            if d > 2:
                entries.append(_integral(Fraction(volume, 4 * d), "dihedral",
                                         f"D{2 * d} (order {2 * d})", d,
                                         dihedral_status, dihedral_note))

    entries.append(_integral(Fraction(volume, 24), "alt4", "A4", None,
                             dihedral_status, dihedral_note))
    if value % 8 == 7:
        entries.append(_integral(Fraction(volume, 24), "sym4", "S4", None, STATED))
    if value % 10 in (1, 9) or pp.p == 5:
        status = STATED_UNVERIFIED if value == 5 else STATED
        note = "counts proper copies only; not checkable inside the group itself" \
            if value == 5 else ""
        entries.append(_integral(Fraction(volume, 60), "alt5", "A5", None, status, note))

    for m in _divisors(pp.n):
        sub_q = pp.p ** m
        sub_volume = sub_q * (sub_q * sub_q - 1)
        entries.append(_integral(Fraction(volume, sub_volume), "psl",
                                 f"PSL(2,{sub_q})", m, STATED))

    for m in range(1, pp.n + 1):
        entries.append(CensusEntry("elementary_abelian", f"C{pp.p}^{m}", m,
                                   None, NOT_STATED))
    for m in range(1, pp.n + 1):
        for d in _divisors(math.gcd(t_minus, pp.p ** m - 1)):
            if d > 1:
                entries.append(CensusEntry("semidirect", f"C{pp.p}^{m}:C{d}", d,
                                           None, NOT_STATED))
    return entries


# -- Möbius closed forms --------------------------------------------------------


def mobius_hall(p: int, order_exponent: int, elementary_abelian: bool) -> int:
    """Bottom-to-top Möbius value of a p-group of order p^n.

    Zero unless the group is elementary abelian, where it is
    (-1)^n * p^binomial(n, 2).
    """
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    if order_exponent < 0:
        raise InputError("order exponent must be >= 0")
    if not elementary_abelian:
        return 0
    n = order_exponent
    return (-1) ** n * p ** (n * (n - 1) // 2)


@dataclass(frozen=True)
class MobiusSymmetricValue:
    """Transcribed Möbius number of a symmetric group, with its provenance rule.

    The published branches overlap and conflict at n = 4, so any value with
    `check_by_recursion` set must be confirmed against the lattice recursion
    before use.
    """

    value: int
    rule: str
    check_by_recursion: bool


def mobius_symmetric(n: int) -> MobiusSymmetricValue:
    if n < 2:
        raise InputError("defined for n >= 2")
    if _is_prime(n):
        return MobiusSymmetricValue(
            (-1) ** (n - 1) * math.factorial(n) // 2, "n prime", False)
    if _is_prime(n - 1) and (n - 1) % 4 == 3:
        return MobiusSymmetricValue(
            -math.factorial(n), "n-1 prime, congruent 3 mod 4", True)
    if n == 22:
        return MobiusSymmetricValue(math.factorial(n) // 2, "n = 22", True)
    return MobiusSymmetricValue(-math.factorial(n) // 2, "otherwise", True)


# -- brute-force census comparison ----------------------------------------------


def _iso_key(order: int, abelian: bool, histogram: dict[int, int]) -> tuple:
    """(order, abelian, exponent, element-order histogram): separates every
    isomorphism type occurring in the target groups."""
    exponent = 1
    for k in histogram:
        exponent = math.lcm(exponent, k)
    return (order, abelian, exponent, tuple(sorted(histogram.items())))


def _group_iso_key(group) -> tuple:
    return _iso_key(group.order, group.is_abelian(), group.element_order_histogram())


def _subgroup_iso_key(lattice, sid: int) -> tuple:
    members = lattice.subgroup(sid).member_indices()
    group = lattice.group
    hist: dict[int, int] = {}
    for i in members:
        k = group.order_of_index(i)
        hist[k] = hist.get(k, 0) + 1
    table = group.mul_table
    abelian = all(
        table[a][b] == table[b][a] for a in members for b in members
    )
    return _iso_key(len(members), abelian, hist)


def _reference_key(entry: CensusEntry, pp: PrimePower) -> tuple | None:
    from . import catalog

    if entry.family == "cyclic":
        return _group_iso_key(catalog.cyclic(entry.param))
    if entry.family == "dihedral":
        return _group_iso_key(catalog.dihedral(entry.param))
    if entry.family == "alt4":
        return _group_iso_key(catalog.alternating(4))
    if entry.family == "sym4":
        return _group_iso_key(catalog.symmetric(4))
    if entry.family == "alt5":
        return _group_iso_key(catalog.alternating(5))
    if entry.family == "psl":
        sub_q = pp.p ** entry.param
        if sub_q in catalog.PSL_SUPPORTED:
            return _group_iso_key(catalog.psl2(sub_q))
        return None
    if entry.family == "elementary_abelian":
        return _group_iso_key(catalog.elementary_abelian(pp.p, entry.param))
    return None


def census_comparison(lattice, q) -> dict:
    """Analytic census vs the brute-force isomorphism-type census of a lattice.

    Entries sharing an isomorphism type are compared as a sum (the families
    partition the subgroups); a comparison is made only when every entry for
    that type carries a stated integral count. Types not covered by any entry
    are reported under "unmatched", which also fills the not-stated families.
    """
    pp = _as_prime_power(q)
    entries = dickson_census(pp)

    brute: dict[tuple, int] = {}
    for sid in range(lattice.size):
        key = _subgroup_iso_key(lattice, sid)
        brute[key] = brute.get(key, 0) + 1

    keyed: dict[tuple | None, list[CensusEntry]] = {}
    for entry in entries:
        keyed.setdefault(_reference_key(entry, pp), []).append(entry)

    rows = []
    covered: set[tuple] = set()
    for entry in entries:
        key = _reference_key(entry, pp)
        brute_count = brute.get(key) if key is not None else None
        group_entries = keyed[key] if key is not None else [entry]
        comparable = (
            key is not None
            and brute_count is not None
            and all(e.status == STATED and e.count is not None for e in group_entries)
        )
        if key is not None:
            covered.add(key)
        match = None
        if comparable:
            match = sum(e.count for e in group_entries) == brute_count
        row = entry.to_json_dict()
        row["brute_count"] = brute_count
        row["match"] = match
        rows.append(row)

    unmatched = [
        {
            "description": f"order {key[0]}, "
                           f"{'abelian' if key[1] else 'nonabelian'}, "
                           f"exponent {key[2]}",
            "brute_count": count,
        }
        for key, count in sorted(brute.items())
        if key not in covered
    ]
    return {"q": pp.q, "entries": rows, "unmatched": unmatched}
