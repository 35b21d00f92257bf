"""The graded convolution algebra over a subgroup chain, and its scalar model.

A tower element is one function per chain level.  The star product shifts
grades: level i of f * g convolves f's level i+1 against g's level i, so
the result loses the deepest level and the algebra is genuinely
non-associative and non-commutative.  Setting every level to the trivial
group collapses the construction to finitely supported scalar sequences
with the product gamma[i] = alpha[i+1] * beta[i]; the head- and
tail-vanishing ideals of that model are implemented alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .convolve import level_convolve, level_norm
from .errors import PreconditionError, ValidationError
from .groups import Subgroup, SubgroupChain, group_from_descriptor, make_chain
from .measures import Measure, ScalarFunction, integrate
from .scalar import Rational, UltraNorm, abs_q

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Tower:
    """A chain with one probability measure per level; the shared context of tower elements."""

    chain: SubgroupChain
    measures: tuple[Measure, ...]

    def __post_init__(self) -> None:
        if len(self.measures) != len(self.chain):
            raise ValidationError(
                f"chain has {len(self.chain)} levels but {len(self.measures)} measures were given"
            )
        q = self.measures[0].q
        for i, mu in enumerate(self.measures):
            if mu.domain != self.chain[i]:
                raise ValidationError(f"measure {i} does not live on chain level {i}")
            if not mu.probability:
                raise ValidationError(f"measure {i} is not a probability measure")
            if mu.q != q:
                raise ValidationError("tower measures must share one prime q")

    @property
    def q(self) -> int:
        return self.measures[0].q

    def __len__(self) -> int:
        return len(self.chain)

    def truncated(self) -> "Tower":
        if len(self) < 2:
            raise ValidationError("cannot truncate a single-level tower")
        return Tower(self.chain.truncated(len(self) - 1), self.measures[:-1])

    def element(self, components: Sequence[ScalarFunction]) -> "TowerElement":
        return TowerElement(self, tuple(components))

    def zero(self) -> "TowerElement":
        return self.element([ScalarFunction.constant(level, 0) for level in self.chain.levels])

    def indicators(self) -> "TowerElement":
        """The element whose level i is the indicator of the whole level."""
        return self.element([ScalarFunction.constant(level, 1) for level in self.chain.levels])


@dataclass(frozen=True)
class TowerElement:
    tower: Tower
    components: tuple[ScalarFunction, ...]

    def __post_init__(self) -> None:
        if len(self.components) != len(self.tower):
            raise ValidationError(
                f"tower has {len(self.tower)} levels but {len(self.components)} components were given"
            )
        for i, f in enumerate(self.components):
            if f.domain != self.tower.chain[i]:
                raise ValidationError(f"component {i} does not live on chain level {i}")

    def __add__(self, other: "TowerElement") -> "TowerElement":
        self._require_same_tower(other)
        return TowerElement(self.tower, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "TowerElement") -> "TowerElement":
        self._require_same_tower(other)
        return TowerElement(self.tower, tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c: Rational) -> "TowerElement":
        return TowerElement(self.tower, tuple(f.scale(c) for f in self.components))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def truncated(self, count: int) -> "TowerElement":
        if count > len(self.components):
            raise ValidationError("cannot truncate to more levels than exist")
        t = self.tower
        while len(t) > count:
            t = t.truncated()
        return TowerElement(t, self.components[:count])

    def _require_same_tower(self, other: "TowerElement") -> None:
        if self.tower != other.tower:
            raise ValidationError("tower elements belong to different towers")

    def to_json(self) -> dict:
        chain = self.tower.chain
        return {
            "chain": {"group": chain.group.descriptor, **chain.descriptor()},
            "measures": [m.to_json() for m in self.tower.measures],
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "TowerElement":
        chain_desc = payload.get("chain", {})
        if "group" in chain_desc:
            group = group_from_descriptor(chain_desc["group"])
        elif payload.get("measures"):
            group = group_from_descriptor(payload["measures"][0]["group"])
        else:
            raise ValidationError("tower payload names no group")
        chain = make_chain(group, chain_desc["levels"])
        measures = tuple(
            Measure.from_json(m, domain=chain[i]) for i, m in enumerate(payload.get("measures", ()))
        )
        tower = Tower(chain, measures)
        components = tuple(
            ScalarFunction.from_json(c, domain=chain[i]) for i, c in enumerate(payload.get("components", ()))
        )
        return cls(tower, components)


def star(f: TowerElement, g: TowerElement) -> TowerElement:
    """Graded product: level i of the result is f's level i+1 convolved against g's level i.

    The result lives on the tower with the deepest level dropped.
    """
    f._require_same_tower(g)
    tower = f.tower
    if len(tower) < 2:
        raise ValidationError("the star product needs at least two levels")
    out = tuple(
        level_convolve(f.components[i + 1], g.components[i], tower.measures[i + 1])
        for i in range(len(tower) - 1)
    )
    return TowerElement(tower.truncated(), out)


def involution(f: TowerElement) -> TowerElement:
    """Componentwise precomposition with group inversion; an exact involution."""
    return TowerElement(f.tower, tuple(c.involute() for c in f.components))


def algebra_norm(f: TowerElement) -> UltraNorm:
    """max over levels of the level norm; the deepest level uses the degenerate continuation."""
    tower = f.tower
    best = UltraNorm.ZERO
    for i, component in enumerate(f.components):
        mu_next = tower.measures[i + 1] if i + 1 < len(tower) else None
        value = level_norm(component, tower.measures[i], mu_next)[2]
        if value > best:
            best = value
    return best


def associativity_defect(f: TowerElement, g: TowerElement, h: TowerElement) -> TowerElement:
    """(f*g)*h minus f*(g*h), compared on the twice-truncated tower."""
    left = star(star(f, g), h.truncated(len(h.components) - 1))
    right = star(f.truncated(len(f.components) - 1), star(g, h))
    return left - right


def commutativity_defect(f: TowerElement, g: TowerElement) -> TowerElement:
    return star(f, g) - star(g, f)


def idempotent_tower(tower: Tower, inner: Sequence[Subgroup]) -> TowerElement:
    """Scaled indicators of nested subgroups forming a star-idempotent element.

    Level j carries alpha_j * Ch(U_j) with alpha_0 = 1 and
    alpha_{j+1} = 1 / mu_{j+1}(U_{j+1}); the nesting
    U_{j+1} <= U_j intersect level_{j+1} makes e * e = e on every level of
    the product.
    """
    if len(inner) != len(tower):
        raise ValidationError(f"need one inner subgroup per level, got {len(inner)} for {len(tower)}")
    for j, u in enumerate(inner):
        if not u.is_subset_of(tower.chain[j]):
            raise ValidationError(f"inner subgroup {j} is not contained in chain level {j}")
        if j > 0 and not u.is_subset_of(inner[j - 1]):
            raise ValidationError(f"inner subgroup {j} is not contained in inner subgroup {j - 1}")
    components = []
    for j, u in enumerate(inner):
        mass = tower.measures[j].mass(u.members)
        if mass == 0:
            raise PreconditionError(f"inner subgroup {j} has measure zero; the idempotent degenerates")
        alpha = Fraction(1) if j == 0 else Fraction(1) / mass
        components.append(ScalarFunction.indicator(tower.chain[j], u.members).scale(alpha))
    return TowerElement(tower, tuple(components))


def autocorrelation_at_identity(f: TowerElement, j: int) -> tuple[Fraction, Fraction]:
    """Both sides of the pairing identity at level j.

    Requires f's level-j component to restrict on the next level to the
    level-(j+1) component.  Returns (involuted convolution evaluated at the
    identity, integral of the squared next-level component); the two agree
    whenever the next-level measure is inversion-invariant.
    """
    tower = f.tower
    if not (0 <= j + 1 < len(tower)):
        raise ValidationError(f"level {j} has no successor in a tower of {len(tower)} levels")
    nxt = tower.chain[j + 1]
    f_j, f_next = f.components[j], f.components[j + 1]
    for g in nxt.members:
        if f_j(g) != f_next(g):
            raise PreconditionError(
                f"component {j} restricted to level {j + 1} differs from component {j + 1} at {g}"
            )
    mu_next = tower.measures[j + 1]
    lhs_fn = level_convolve(f_next.involute(), f_j, mu_next)
    lhs = lhs_fn(f_j.domain.identity)
    rhs = integrate(f_next.square(), mu_next)
    return lhs, rhs


# --- scalar-sequence model -------------------------------------------------


@dataclass(frozen=True)
class ScalarSequence:
    """A finitely supported sequence of rationals, stored without trailing zeros."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(v if type(v) is Fraction else Fraction(v) for v in self.entries)
        k = len(entries)
        while k and entries[k - 1] == 0:
            k -= 1
        object.__setattr__(self, "entries", entries[:k])

    @classmethod
    def of(cls, *values: Rational) -> "ScalarSequence":
        return cls(tuple(Fraction(v) for v in values))

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i] if 0 <= i < len(self.entries) else _ZERO

    def __len__(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "ScalarSequence") -> "ScalarSequence":
        n = max(len(self), len(other))
        return ScalarSequence(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "ScalarSequence") -> "ScalarSequence":
        n = max(len(self), len(other))
        return ScalarSequence(tuple(self[i] - other[i] for i in range(n)))

    def scale(self, c: Rational) -> "ScalarSequence":
        c = Fraction(c)
        return ScalarSequence(tuple(c * v for v in self.entries))

    def shifted_up(self) -> "ScalarSequence":
        """Prepend a zero; the right-factor preimage under the graded product."""
        if not self.entries:
            return self
        return ScalarSequence((_ZERO,) + self.entries)

    def sup_norm(self, q: int) -> UltraNorm:
        return max((abs_q(v, q) for v in self.entries), default=UltraNorm.ZERO)


def c0_star(alpha: ScalarSequence, beta: ScalarSequence) -> ScalarSequence:
    """Graded scalar product: entry i is alpha[i+1] * beta[i]."""
    n = min(len(alpha) - 1, len(beta))
    if n <= 0:
        return ScalarSequence(())
    return ScalarSequence(tuple(alpha[i + 1] * beta[i] for i in range(n)))


def ideal_member(x: ScalarSequence, kind: str, i: int) -> bool:
    """Membership in the tail-vanishing ideal J_i or the head-vanishing ideal K_i.

    J_i: entries vanish strictly beyond index i.  K_i: entries vanish at
    indices 0..i.  K_{-1} is everything.
    """
    if i < -1 or (kind == "J" and i < 0):
        raise ValidationError(f"no ideal of index {i}")
    if kind == "J":
        return len(x) <= i + 1
    if kind == "K":
        return all(x[j] == 0 for j in range(0, i + 1))
    raise ValidationError(f"ideal kind must be 'J' or 'K', got {kind!r}")


def constant_tower(tower: Tower, seq: ScalarSequence | Iterable[Rational]) -> TowerElement:
    """Embed a scalar sequence as constant components; on a trivial-group chain
    the star product then reproduces the scalar model exactly."""
    values = list(seq.entries) if isinstance(seq, ScalarSequence) else [Fraction(v) for v in seq]
    if len(values) > len(tower):
        raise ValidationError("sequence is longer than the tower")
    values += [_ZERO] * (len(tower) - len(values))
    return tower.element(
        [ScalarFunction.constant(level, v) for level, v in zip(tower.chain.levels, values)]
    )
