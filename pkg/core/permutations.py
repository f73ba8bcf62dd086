import logging
from dataclasses import dataclass, field
from functools import cached_property, reduce
from operator import and_

import numpy as np

from core.errors import (
    DegreeMismatch,
    ElementNotInGroup,
    InvalidPermutation,
    NotCentreless,
    NotFaithful,
    NotTransitive,
    PointOutOfRange,
    ResourceLimit,
)
from core.settings import LIMITS, Limits


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., d-1}`` given by its image sequence.

    Products follow function composition: ``(p * q)(i) == p(q(i))``, so ``q``
    acts first. Ordering is lexicographic on the image sequence.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"Not a bijection on 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, degree):
        return cls(tuple(range(degree)))

    @property
    def degree(self):
        return len(self.images)

    @property
    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"Cannot compose degree {self.degree} with degree {other.degree}")
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self):
        inverse = [0] * self.degree
        for i, j in enumerate(self.images):
            inverse[j] = i
        return Permutation(tuple(inverse))

    def to_list(self):
        return list(self.images)

    def cycles(self):
        """Cycle notation without fixed points, e.g. ``(0 1)(2 3)``; ``()`` for the identity."""
        seen = set()
        parts = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point]
            parts.append('(' + ' '.join(map(str, cycle)) + ')')
        return ''.join(parts) or '()'

    def __str__(self):
        return self.cycles()


def mask_indices(mask):
    """Indices of the set bits of ``mask`` in increasing order"""
    indices = []
    while mask:
        low = mask & -mask
        indices.append(low.bit_length() - 1)
        mask ^= low
    return tuple(indices)


def mask_from_flags(flags):
    mask = 0
    for i in np.flatnonzero(flags).tolist():
        mask |= 1 << i
    return mask


class FiniteGroup:
    """A permutation group stored by full enumeration.

    Elements are kept sorted lexicographically by image sequence, which makes
    element indices (and therefore subgroup bitmasks) deterministic.

    Attributes:
        degree (int): number of points acted upon.
        elements (tuple[Permutation, ...]): canonically ordered elements.
        array (np.ndarray): ``(order, degree)`` array of image rows in the same order.
        generators (tuple[Permutation, ...]): the generating set the group was built from.
    """

    def __init__(self, degree, rows, generators=()):
        if isinstance(rows, np.ndarray):
            data = rows
        else:
            data = [p.images if isinstance(p, Permutation) else tuple(p) for p in rows]
        array = np.unique(np.asarray(data, dtype=np.int64).reshape(-1, degree), axis=0)
        self.degree = degree
        self.array = array
        self.elements = tuple(Permutation(tuple(row)) for row in array.tolist())
        self.generators = tuple(generators)
        self._index = {p.images: i for i, p in enumerate(self.elements)}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    @cached_property
    def identity_index(self):
        return self._index[tuple(range(self.degree))]

    @property
    def full_mask(self):
        return (1 << self.order) - 1

    def index(self, perm):
        """Position of ``perm`` in the canonical order.

        Raises:
            ElementNotInGroup: if ``perm`` is not an element of the group.
        """
        images = perm.images if isinstance(perm, Permutation) else tuple(perm)
        try:
            return self._index[images]
        except KeyError:
            raise ElementNotInGroup(f"{list(images)} is not an element of the group") from None

    def __contains__(self, perm):
        return perm.images in self._index

    def mask_of(self, perms):
        mask = 0
        for perm in perms:
            mask |= 1 << self.index(perm)
        return mask


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` stored as a bitmask over the parent's canonical order.

    Equality and hashing use the member set only.
    """

    parent: FiniteGroup = field(compare=False, repr=False)
    mask: int

    @cached_property
    def indices(self):
        return mask_indices(self.mask)

    @cached_property
    def members(self):
        return tuple(self.parent.elements[i] for i in self.indices)

    @cached_property
    def array(self):
        return self.parent.array[list(self.indices)]

    @property
    def order(self):
        return len(self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, perm):
        index = self.parent._index.get(perm.images)
        return index is not None and bool(self.mask >> index & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __and__(self, other):
        return Subgroup(self.parent, self.mask & other.mask)

    @property
    def is_trivial(self):
        return self.mask == 1 << self.parent.identity_index

    @cached_property
    def orbit_labels(self):
        """Per point, the smallest point of its orbit (orbits of a group are images of one column)"""
        return self.array.min(axis=0)

    def _check_point(self, point):
        if not 0 <= point < self.parent.degree:
            raise PointOutOfRange(f"Point {point} outside 0..{self.parent.degree - 1}")

    def orbit(self, point):
        self._check_point(point)
        labels = self.orbit_labels
        return tuple(np.flatnonzero(labels == labels[point]).tolist())

    def orbits(self):
        labels = self.orbit_labels.tolist()
        grouped = {}
        for point, label in enumerate(labels):
            grouped.setdefault(label, []).append(point)
        return [tuple(points) for _, points in sorted(grouped.items())]

    def stabilizer(self, point):
        self._check_point(point)
        flags = self.array[:, point] == point
        return Subgroup(self.parent, lift_flags(self.indices, flags))

    def __str__(self):
        return '{' + ', '.join(str(p) for p in self.members) + '}'


def lift_flags(indices, flags):
    """Bitmask over the parent group of the ``indices`` whose flag is set"""
    mask = 0
    for position in np.flatnonzero(flags).tolist():
        mask |= 1 << indices[position]
    return mask


def _as_permutation(value, degree):
    perm = value if isinstance(value, Permutation) else Permutation(tuple(value))
    if perm.degree != degree:
        raise DegreeMismatch(f"Generator {perm.to_list()} has degree {perm.degree}, expected {degree}")
    return perm


def generate_group(degree, generators, limits=None):
    """
    Builds the smallest permutation group containing the generators.

    Args:
        degree (int): number of points.
        generators (Iterable[Permutation | Sequence[int]]): generating permutations.
        limits (Limits | None): caps; ``max_order`` bounds the closure.

    Returns:
        FiniteGroup: the generated group in canonical element order.
    """
    limits = limits or LIMITS
    if degree < 1:
        raise DegreeMismatch(f"Degree must be positive, got {degree}")
    gens = sorted({_as_permutation(g, degree) for g in generators})

    identity = np.arange(degree, dtype=np.int64)
    seen = {identity.tobytes()}
    rows = [identity]
    frontier = identity[None, :]
    gen_arrays = [np.asarray(g.images, dtype=np.int64) for g in gens if not g.is_identity]

    # Breadth-first search on the Cayley graph, left-multiplying by generators
    while len(frontier) and gen_arrays:
        products = np.concatenate([g[frontier] for g in gen_arrays])
        fresh = []
        for row in np.unique(products, axis=0):
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(row)
        rows.extend(fresh)
        if len(rows) > limits.max_order:
            raise ResourceLimit(f"Group closure exceeds max_order={limits.max_order}")
        frontier = np.asarray(fresh, dtype=np.int64).reshape(-1, degree)

    group = FiniteGroup(degree, np.asarray(rows), generators=gens)
    logging.debug(f"Generated group of order {group.order} on {degree} points from {len(gens)} generators")
    return group


def subgroup_generated_by(group, generators, limits=None):
    """The subgroup of ``group`` generated by ``generators``"""
    gens = [_as_permutation(g, group.degree) for g in generators]
    for g in gens:
        group.index(g)
    closure = generate_group(group.degree, gens, limits)
    return Subgroup(group, group.mask_of(closure.elements))


def commuting_flags(array, perm):
    """Boolean flags over the rows of ``array``: does the row commute with ``perm``?"""
    s = np.asarray(perm.images, dtype=np.int64)
    return (array[:, s] == s[array]).all(axis=1)


def centralizer(group, subset):
    """
    Returns the elements of ``group`` commuting with every element of ``subset``.

    Args:
        group (FiniteGroup): ambient group.
        subset (Iterable[Permutation]): elements of ``group``; empty gives the whole group.

    Returns:
        Subgroup: the centralizer.
    """
    flags = np.ones(group.order, dtype=bool)
    for perm in subset:
        group.index(perm)
        flags &= commuting_flags(group.array, perm)
    return Subgroup(group, mask_from_flags(flags))


def centre(group):
    return centralizer(group, group.elements)


def orbit(sub, point):
    return sub.orbit(point)


@dataclass(frozen=True, eq=False)
class GlobalTheory:
    """A centreless group acting transitively and faithfully on ``{0, ..., degree-1}``.

    Instances compare by identity so that computations can be memoised per theory.
    """

    group: FiniteGroup
    degree: int
    limits: Limits = LIMITS
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def points(self):
        return range(self.degree)

    @cached_property
    def whole(self):
        return Subgroup(self.group, self.group.full_mask)

    @cached_property
    def trivial(self):
        return Subgroup(self.group, 1 << self.group.identity_index)

    @cached_property
    def centralizer_masks(self):
        """Bitmask of the centralizer of every element, in canonical element order"""
        array = self.group.array
        return tuple(mask_from_flags(commuting_flags(array, g)) for g in self.group.elements)

    def subgroup(self, generators):
        return subgroup_generated_by(self.group, generators, self.limits)

    def owns(self, sub):
        return sub.parent is self.group or sub.parent == self.group

    def memo(self, key, compute):
        """Per-theory memoisation of derived values (systems and tensors are hashable)"""
        if key not in self.cache:
            self.cache[key] = compute()
        return self.cache[key]


def stabilizer(theory, sub, point):
    """
    Returns ``{g in sub : g(point) == point}``.

    Raises:
        PointOutOfRange: if ``point`` is not a point of the theory.
    """
    if not 0 <= point < theory.degree:
        raise PointOutOfRange(f"Point {point} outside 0..{theory.degree - 1}")
    return sub.stabilizer(point)


def theory_violations(group, degree):
    """Names of the global-theory conditions that ``group`` fails on ``degree`` points"""
    if group.degree != degree:
        raise DegreeMismatch(f"Group acts on {group.degree} points, theory declares {degree}")
    whole = Subgroup(group, group.full_mask)
    violations = []
    if len(whole.orbit(0)) != degree:
        violations.append('transitive')
    centre_mask = reduce(and_, (mask_from_flags(commuting_flags(group.array, g)) for g in group.generators),
                         group.full_mask) if group.generators else centre(group).mask
    if centre_mask != 1 << group.identity_index:
        violations.append('centreless')
    kernel = np.flatnonzero((group.array == np.arange(degree)).all(axis=1))
    if len(kernel) != 1:
        violations.append('faithful')
    return violations


_VIOLATION_ERRORS = {
    'transitive': NotTransitive,
    'centreless': NotCentreless,
    'faithful': NotFaithful,
}


def validate_global_theory(group, degree, limits=None):
    """
    Checks that ``group`` acting on ``degree`` points is a global process theory.

    Returns:
        GlobalTheory: the validated theory.

    Raises:
        NotTransitive, NotCentreless, NotFaithful: for the first failed condition;
            ``violations`` on the exception lists all of them.
    """
    violations = theory_violations(group, degree)
    if violations:
        error = _VIOLATION_ERRORS[violations[0]]
        raise error(f"Not a global process theory: fails {', '.join(violations)}", violations)
    theory = GlobalTheory(group, degree, limits or LIMITS)
    logging.info(f"Validated global theory: order {group.order} on {degree} points")
    return theory
