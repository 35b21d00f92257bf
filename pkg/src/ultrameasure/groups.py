"""Finite groups, subgroup views and descending subgroup chains.

Group elements are indices ``0..order-1`` into a full multiplication
table.  Two families are built from formulas (cyclic ``Z/p**n`` and the
mod-``p**n`` Heisenberg group of upper unitriangular 3x3 matrices); an
explicit table can encode anything else.  A :class:`Subgroup` is a
validated subset view sharing the ambient table, and a
:class:`SubgroupChain` is a descending sequence of such views used as the
level structure for measures, convolutions and towers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import ValidationError
from .scalar import is_prime

MAX_ORDER = 243  # desk scale: keeps every exhaustive check sub-second


class FiniteGroup:
    """A finite group on indices 0..order-1 backed by a multiplication table."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        descriptor: dict,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        self._table = tuple(tuple(row) for row in table)
        self.order = len(self._table)
        self.descriptor = descriptor
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        if self.order == 0:
            raise ValidationError("group must have at least one element")
        if self.order > MAX_ORDER:
            raise ValidationError(f"group order {self.order} exceeds the supported maximum {MAX_ORDER}")
        for i, row in enumerate(self._table):
            if len(row) != self.order or any(not (0 <= v < self.order) for v in row):
                raise ValidationError(f"multiplication table row {i} is not a map into the element range")
        if check:
            self._check_axioms()
        self.identity = self._find_identity()
        self._inverse = self._build_inverses()

    def _find_identity(self) -> int:
        for e in range(self.order):
            row = self._table[e]
            if all(row[a] == a and self._table[a][e] == a for a in range(self.order)):
                return e
        raise ValidationError("table has no identity element")

    def _build_inverses(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self._table[a][b] == self.identity and self._table[b][a] == self.identity:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise ValidationError(f"element {a} has no inverse")
        return tuple(inv)

    def _check_axioms(self) -> None:
        n = self.order
        t = self._table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValidationError(f"table is not associative at ({a}, {b}, {c})")

    def mul(self, a: int, b: int) -> int:
        self._require_member(a)
        self._require_member(b)
        return self._table[a][b]

    def inv(self, a: int) -> int:
        self._require_member(a)
        return self._inverse[a]

    def _require_member(self, a: int) -> None:
        if not isinstance(a, int) or not (0 <= a < self.order):
            raise ValidationError(f"element index {a!r} is outside the group of order {self.order}")

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return self.labels[a]

    @cached_property
    def full(self) -> "Subgroup":
        """The whole group as a subgroup view of itself."""
        return Subgroup(self, tuple(range(self.order)))

    def subgroup(self, members: Sequence[int]) -> "Subgroup":
        return Subgroup(self, tuple(members))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._table == other._table

    def __hash__(self) -> int:
        return hash((self.order, self.descriptor.get("kind")))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.descriptor})"


@lru_cache(maxsize=None)
def cyclic(p: int, n: int) -> FiniteGroup:
    """The additive group of integers mod p**n."""
    if not is_prime(p):
        raise ValidationError(f"p must be prime, got {p}")
    if n < 1:
        raise ValidationError("n must be at least 1")
    m = p**n
    if m > MAX_ORDER:
        raise ValidationError(f"cyclic({p},{n}) has order {m} > {MAX_ORDER}")
    table = [[(a + b) % m for b in range(m)] for a in range(m)]
    return FiniteGroup(table, {"kind": "cyclic", "p": p, "n": n}, check=False)


@lru_cache(maxsize=None)
def heisenberg(p: int, n: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p**n; non-abelian of order p**(3n).

    The matrix with superdiagonal a, b and corner c is encoded as the index
    ``(a*m + b)*m + c`` for m = p**n.
    """
    if not is_prime(p):
        raise ValidationError(f"p must be prime, got {p}")
    if n < 1:
        raise ValidationError("n must be at least 1")
    m = p**n
    order = m**3
    if order > MAX_ORDER:
        raise ValidationError(f"heisenberg({p},{n}) has order {order} > {MAX_ORDER}")

    def enc(a: int, b: int, c: int) -> int:
        return (a * m + b) * m + c

    triples = [(i // (m * m), (i // m) % m, i % m) for i in range(order)]
    table = []
    for a1, b1, c1 in triples:
        row = []
        for a2, b2, c2 in triples:
            row.append(enc((a1 + a2) % m, (b1 + b2) % m, (c1 + c2 + a1 * b2) % m))
        table.append(row)
    labels = [f"({a},{b},{c})" for a, b, c in triples]
    return FiniteGroup(table, {"kind": "heisenberg", "p": p, "n": n}, labels=labels, check=False)


def from_table(rows: Sequence[Sequence[int]]) -> FiniteGroup:
    """Group from an explicit multiplication table; axioms are checked exhaustively."""
    return FiniteGroup(rows, {"kind": "table", "mul": [list(r) for r in rows]}, check=True)


def group_from_descriptor(desc: dict) -> FiniteGroup:
    """Build a group from its JSON descriptor."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValidationError(f"not a group descriptor: {desc!r}")
    kind = desc["kind"]
    if kind == "cyclic":
        return cyclic(int(desc["p"]), int(desc["n"]))
    if kind == "heisenberg":
        return heisenberg(int(desc["p"]), int(desc["n"]))
    if kind == "table":
        return from_table(desc["mul"])
    raise ValidationError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class Subgroup:
    """A subset of a group's indices, validated closed under product and inverse."""

    group: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        if not members:
            raise ValidationError("subgroup must be nonempty")
        for a in members:
            self.group._require_member(a)
        if len(members) == self.group.order:
            return  # the whole group needs no closure check
        member_set = set(members)
        if self.group.identity not in member_set:
            raise ValidationError("subgroup does not contain the identity")
        table = self.group._table
        inverse = self.group._inverse
        for a in members:
            if inverse[a] not in member_set:
                raise ValidationError(f"subset not closed under inversion: inverse of {a} is missing")
            row = table[a]
            for b in members:
                if row[b] not in member_set:
                    raise ValidationError(f"subset not closed under the group law: {a}*{b} = {row[b]} is missing")

    @cached_property
    def position(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.members)}

    def __contains__(self, a: int) -> bool:
        return a in self.position

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def mul(self, a: int, b: int) -> int:
        return self.group.mul(a, b)

    def inv(self, a: int) -> int:
        return self.group.inv(a)

    @property
    def identity(self) -> int:
        return self.group.identity

    def is_subset_of(self, other: "Subgroup") -> bool:
        return self.group == other.group and set(self.members) <= set(other.members)

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self.members)} of {self.group.descriptor})"


@dataclass(frozen=True)
class SubgroupChain:
    """A descending chain of subgroups of one ambient group."""

    levels: tuple[Subgroup, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValidationError("chain must have at least one level")
        ambient = self.levels[0].group
        for i, level in enumerate(self.levels):
            if level.group != ambient:
                raise ValidationError(f"chain level {i} lives in a different group")
            if i > 0 and not level.is_subset_of(self.levels[i - 1]):
                raise ValidationError(f"chain level {i} is not contained in level {i - 1}")

    @property
    def group(self) -> FiniteGroup:
        return self.levels[0].group

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, i: int) -> Subgroup:
        return self.levels[i]

    def truncated(self, count: int) -> "SubgroupChain":
        return SubgroupChain(self.levels[:count])

    def descriptor(self) -> dict:
        return {"levels": [list(level.members) for level in self.levels]}


def make_chain(group: FiniteGroup, spec: str | Sequence[Sequence[int]] = "full") -> SubgroupChain:
    """Build a chain from explicit member lists or the kind-specific "full" default.

    The full chain for cyclic(p, n) is multiples of p**i for i = 0..n; for
    heisenberg(p, n) it interleaves principal congruence levels with the
    intermediate levels where both superdiagonal entries vanish one power
    deeper, ending at the trivial subgroup.
    """
    if spec == "full":
        kind = group.descriptor.get("kind")
        if kind == "cyclic":
            p, n = group.descriptor["p"], group.descriptor["n"]
            m = p**n
            levels = [tuple(range(0, m, p**i)) for i in range(n + 1)]
        elif kind == "heisenberg":
            p, n = group.descriptor["p"], group.descriptor["n"]
            m = p**n
            levels = []
            for j in range(n + 1):
                pj = p**j
                levels.append(
                    tuple(
                        (a * m + b) * m + c
                        for a in range(0, m, pj)
                        for b in range(0, m, pj)
                        for c in range(0, m, pj)
                    )
                )
                if j < n:
                    pj1 = p ** (j + 1)
                    levels.append(
                        tuple(
                            (a * m + b) * m + c
                            for a in range(0, m, pj1)
                            for b in range(0, m, pj1)
                            for c in range(0, m, pj)
                        )
                    )
        else:
            raise ValidationError("the full chain is only defined for cyclic and heisenberg groups")
        return SubgroupChain(tuple(Subgroup(group, lvl) for lvl in levels))
    if isinstance(spec, str):
        raise ValidationError(f"unknown chain spec {spec!r}")
    return SubgroupChain(tuple(Subgroup(group, tuple(level)) for level in spec))


def chain_from_descriptor(group: FiniteGroup, desc: dict) -> SubgroupChain:
    if not isinstance(desc, dict) or "levels" not in desc:
        raise ValidationError(f"not a chain descriptor: {desc!r}")
    return make_chain(group, desc["levels"])


def quotient_project(fine: FiniteGroup, coarse: FiniteGroup, a: int) -> int:
    """Reduce an element of cyclic(p, n+k) mod p**n; a group homomorphism."""
    dfine, dcoarse = fine.descriptor, coarse.descriptor
    if dfine.get("kind") != "cyclic" or dcoarse.get("kind") != "cyclic":
        raise ValidationError("quotient projection is defined for cyclic groups")
    if dfine["p"] != dcoarse["p"]:
        raise ValidationError(f"mismatched primes {dfine['p']} and {dcoarse['p']}")
    if dfine["n"] < dcoarse["n"]:
        raise ValidationError("projection goes from the finer group to the coarser one")
    fine._require_member(a)
    return a % coarse.order
