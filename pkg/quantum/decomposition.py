"""Sector calculus for self-bicommutant subgroups of the projective unitary group.

A subgroup is described by a decomposition of the Hilbert space as a direct sum of
sectors ``A_j (x) B_j``: the subgroup acts by arbitrary unitaries on every ``A_j``
and trivially on every ``B_j``; its commutant does the opposite.
"""
import re
from dataclasses import dataclass
from enum import Enum

from core.errors import DegenerateDimension, GeneralCaseUnsupported, NotNested, ParseError, ZeroDimension

SECTOR = re.compile(r'\s*(\d+)\s*[xX]\s*(\d+)\s*')


class Classification(str, Enum):
    PURELY_MULTIPLICATIVE = 'purely_multiplicative'
    PURELY_ADDITIVE = 'purely_additive'
    GENERAL = 'general'


@dataclass(frozen=True)
class SectorDecomposition:
    """Sectors ``(a_j, b_j)`` sorted by ``a`` then ``b``, both descending.

    Raises:
        ZeroDimension: if some dimension is below 1.
        DegenerateDimension: if the total dimension is below 2.
    """

    sectors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.sectors:
            raise ParseError("A decomposition needs at least one sector")
        sectors = tuple(sorted(((int(a), int(b)) for a, b in self.sectors), reverse=True))
        if any(a < 1 or b < 1 for a, b in sectors):
            raise ZeroDimension(f"Sector dimensions must be positive: {list(sectors)}")
        object.__setattr__(self, 'sectors', sectors)
        if self.n < 2:
            raise DegenerateDimension(f"Total dimension must be at least 2, got {self.n}")

    @property
    def n(self):
        return sum(a * b for a, b in self.sectors)

    @property
    def sector_count(self):
        return len(self.sectors)

    def __str__(self):
        return ' + '.join(f"{a}x{b}" for a, b in self.sectors)

    def to_dict(self):
        return {'sectors': [list(s) for s in self.sectors], 'n': self.n, 'text': str(self)}


def parse_decomposition(text):
    """
    Parses ``a x b (+ a x b)*``, whitespace tolerant.

    Raises:
        ParseError: if the text does not match the grammar.
        ZeroDimension, DegenerateDimension: if the parsed dimensions are invalid.
    """
    parts = text.split('+') if text and text.strip() else []
    sectors = []
    for part in parts:
        match = SECTOR.fullmatch(part)
        if not match:
            raise ParseError(f"Malformed sector {part.strip()!r} in {text!r}")
        sectors.append((int(match.group(1)), int(match.group(2))))
    if not sectors:
        raise ParseError(f"Empty decomposition {text!r}")
    return SectorDecomposition(tuple(sectors))


def commutant_decomp(d):
    """Swaps the tensor factors of every sector"""
    return SectorDecomposition(tuple((b, a) for a, b in d.sectors))


def centre_rank(d):
    """Rank of the centre: one relative phase per extra sector"""
    return d.sector_count - 1


def system_count(d):
    """Number of distinct, mutually incompatible systems: one per sector"""
    return d.sector_count


def classify(d):
    if d.sector_count == 1:
        return Classification.PURELY_MULTIPLICATIVE
    if d.sector_count == 2:
        (a1, b1), (a2, b2) = d.sectors
        if (b1 == 1 and a2 == 1) or (b2 == 1 and a1 == 1):
            return Classification.PURELY_ADDITIVE
    return Classification.GENERAL


def group_dimension(d):
    """Real dimension of the transformation group: ``sum a_j^2 - 1``"""
    return sum(a * a for a, _ in d.sectors) - 1


def join_decomp(d):
    """The group generated by ``d`` and its commutant: a full block on every sector"""
    return SectorDecomposition(tuple((a * b, 1) for a, b in d.sectors))


def meet_decomp(d):
    """``d`` meets its commutant in the centre: scalars on every sector"""
    return SectorDecomposition(tuple((1, a * b) for a, b in d.sectors))


def _blocks(d, ambient):
    """Sectors of ``d`` grouped by the full block of ``ambient`` that holds them"""
    if any(b != 1 for _, b in ambient.sectors) or ambient.n != d.n:
        raise NotNested(f"{ambient} is not block diagonal on the space of {d}")
    if ambient.sector_count == 1:
        return [list(d.sectors)]
    remaining = list(d.sectors)
    blocks = []
    for size, _ in ambient.sectors:
        block = next((s for s in remaining if s[0] * s[1] == size), None)
        if block is None:
            raise NotNested(f"{d} does not fit the blocks of {ambient}")
        remaining.remove(block)
        blocks.append([block])
    if remaining:
        raise NotNested(f"{d} does not fit the blocks of {ambient}")
    return blocks


def relative_commutant_decomp(d, ambient):
    """
    The commutant of ``d`` inside ``ambient``.

    ``ambient`` is block diagonal with full blocks (sectors ``c x 1``), each holding
    whole sectors of ``d``. The commutant splits over the blocks, and inside a block
    the commutant of ``U(a) (x) 1_b`` is ``1_a (x) U(b)``.

    Raises:
        NotNested: if ``d`` does not lie in ``ambient``.
    """
    blocks = _blocks(d, ambient)
    return SectorDecomposition(tuple((b, a) for block in blocks for a, b in block))


def check_special_pair_claims(d):
    """
    Reports how a subgroup and its commutant compose in the two special cases.

    Purely multiplicative ``A (x) B``: the pair is orthocomplementary and its join is
    the whole group, i.e. the single sector ``n x 1``. Purely additive
    ``(A (x) C) + (C (x) B)``: the pair is orthogonal but not orthocomplementary and
    its join is block diagonal with one full block per sector.

    Raises:
        GeneralCaseUnsupported: for decompositions that are neither.
    """
    kind = classify(d)
    if kind is Classification.GENERAL:
        raise GeneralCaseUnsupported(f"No pair claim for the general decomposition {d}")
    comm = commutant_decomp(d)
    join = join_decomp(d)
    meet = meet_decomp(d)
    orthogonal = relative_commutant_decomp(d, join) == comm
    orthocomplementary = (orthogonal and relative_commutant_decomp(comm, join) == d
                          and meet.sector_count == 1)
    return {
        'decomposition': str(d),
        'n': d.n,
        'classification': kind.value,
        'commutant': str(comm),
        'centre_rank': centre_rank(d),
        'commutant_centre_rank': centre_rank(comm),
        'system_count': system_count(d),
        'group_dimension': group_dimension(d),
        'commutant_group_dimension': group_dimension(comm),
        'orthogonal': orthogonal,
        'orthocomplementary': orthocomplementary,
        'join': str(join),
        'join_full': join.sector_count == 1,
        'meet': str(meet),
    }
