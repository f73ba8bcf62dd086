"""Standard permutation groups used as theories: symmetric groups, product actions and coset actions."""
import logging

import numpy as np

from core.errors import DegreeMismatch
from core.permutations import Permutation, generate_group


def symmetric_group(n, limits=None):
    """The symmetric group on ``n`` points, generated by ``(0 1)`` and the cycle ``(0 1 ... n-1)``"""
    if n < 1:
        raise DegreeMismatch(f"Degree must be positive, got {n}")
    generators = []
    if n >= 2:
        generators.append(Permutation((1, 0) + tuple(range(2, n))))
    if n >= 3:
        generators.append(Permutation(tuple(range(1, n)) + (0,)))
    return generate_group(n, generators, limits)


def product_action(*groups, limits=None):
    """
    Builds the direct product of ``groups`` acting coordinate-wise on the product of their point sets.

    Point ``(x1, ..., xm)`` is coded in mixed radix with the first coordinate most
    significant, so for two factors of degree 3 the point ``(i, j)`` is ``3*i + j``.

    Args:
        *groups (FiniteGroup): the factors.
        limits (Limits | None): caps forwarded to the closure.

    Returns:
        tuple[FiniteGroup, list[list[Permutation]]]: the product group, and for every
            factor the lifts of its generators (the generators of ``1 x ... x G_i x ... x 1``).
    """
    if not groups:
        raise DegreeMismatch("product_action needs at least one factor")
    dims = tuple(g.degree for g in groups)
    size = int(np.prod(dims))
    coords = np.array(np.unravel_index(np.arange(size), dims))

    factor_generators = []
    for axis, group in enumerate(groups):
        lifts = []
        for gen in group.generators:
            moved = coords.copy()
            moved[axis] = np.asarray(gen.images)[coords[axis]]
            lifts.append(Permutation(tuple(np.ravel_multi_index(tuple(moved), dims).tolist())))
        factor_generators.append(lifts)

    product = generate_group(size, [g for lifts in factor_generators for g in lifts], limits)
    logging.debug(f"Product action of degrees {dims}: order {product.order} on {size} points")
    return product, factor_generators


def coset_action(group, subgroup, limits=None):
    """
    Builds the action of ``group`` on the left cosets of ``subgroup``.

    Cosets are numbered by the canonical index of their smallest element.

    Args:
        group (FiniteGroup): acting group.
        subgroup (Subgroup): subgroup of ``group`` whose cosets form the points.
        limits (Limits | None): caps forwarded to the closure.

    Returns:
        tuple[FiniteGroup, Callable[[Permutation], Permutation]]: the permutation group on
            the cosets, and the map sending an element of ``group`` to its coset permutation.
    """
    array = group.array
    # products[i, j] = element_i * subgroup_j
    products = array[:, subgroup.array]
    coset_of = np.empty(group.order, dtype=np.int64)
    for i in range(group.order):
        members = [group._index[tuple(row)] for row in products[i].tolist()]
        coset_of[i] = min(members)
    labels = sorted(set(coset_of.tolist()))
    point_of = {label: position for position, label in enumerate(labels)}
    representatives = [group.elements[label] for label in labels]

    def induce(perm):
        group.index(perm)
        images = tuple(point_of[int(coset_of[group.index(perm * rep)])] for rep in representatives)
        return Permutation(images)

    action = generate_group(len(labels), [induce(g) for g in group.generators], limits)
    logging.debug(f"Coset action: {len(labels)} cosets, image of order {action.order}")
    return action, induce
