import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import DegenerateDimension, GeneralCaseUnsupported, NotNested, ParseError, ZeroDimension
from quantum.decomposition import (
    Classification,
    SectorDecomposition,
    centre_rank,
    check_special_pair_claims,
    classify,
    commutant_decomp,
    group_dimension,
    join_decomp,
    meet_decomp,
    parse_decomposition,
    relative_commutant_decomp,
    system_count,
)

sectors = st.lists(
    st.tuples(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6)),
    min_size=1,
    max_size=5,
).filter(lambda items: sum(a * b for a, b in items) >= 2)


def test_parse_sorts_and_tolerates_whitespace():
    d = parse_decomposition(' 1 x 3 +2X1 ')
    assert d.sectors == ((2, 1), (1, 3))
    assert d.n == 5
    assert str(d) == '2x1 + 1x3'
    assert d.to_dict() == {'sectors': [[2, 1], [1, 3]], 'n': 5, 'text': '2x1 + 1x3'}


@pytest.mark.parametrize('text, error', [
    ('2x', ParseError),
    ('', ParseError),
    ('2x2 +', ParseError),
    ('two x 2', ParseError),
    ('0x3', ZeroDimension),
    ('1x1', DegenerateDimension),
])
def test_parse_rejects(text, error):
    with pytest.raises(error):
        parse_decomposition(text)


def test_multiplicative_pair():
    report = check_special_pair_claims(parse_decomposition('2x2'))
    assert report['classification'] == 'purely_multiplicative'
    assert report['orthocomplementary']
    assert report['join'] == '4x1'
    assert report['join_full']
    assert report['centre_rank'] == 0
    assert report['meet'] == '1x4'
    assert report['group_dimension'] == 3


def test_additive_pair():
    report = check_special_pair_claims(parse_decomposition('2x1+1x3'))
    assert report['classification'] == 'purely_additive'
    assert report['commutant'] == '3x1 + 1x2'
    assert report['join'] == '3x1 + 2x1'
    assert report['meet'] == '1x3 + 1x2'
    assert not report['join_full']
    assert report['orthogonal'] and not report['orthocomplementary']
    assert report['n'] == 5
    assert report['centre_rank'] == report['commutant_centre_rank'] == 1
    assert report['system_count'] == 2
    assert report['group_dimension'] == 4
    assert report['commutant_group_dimension'] == 9


def test_general_case_is_unsupported():
    d = parse_decomposition('2x2+2x2')
    assert classify(d) is Classification.GENERAL
    with pytest.raises(GeneralCaseUnsupported):
        check_special_pair_claims(d)


@given(sectors)
def test_commutant_is_an_involution(items):
    d = SectorDecomposition(tuple(items))
    assert commutant_decomp(commutant_decomp(d)) == d
    assert commutant_decomp(d).n == d.n


@given(sectors)
def test_centre_rank_counts_extra_sectors(items):
    d = SectorDecomposition(tuple(items))
    assert centre_rank(d) == len(items) - 1 == system_count(d) - 1
    assert group_dimension(d) == sum(a * a for a, _ in items) - 1
    assert parse_decomposition(str(d)) == d


def test_relative_commutant_inside_blocks():
    d = parse_decomposition('2x1+1x3')
    assert relative_commutant_decomp(d, join_decomp(d)) == commutant_decomp(d)
    assert relative_commutant_decomp(d, SectorDecomposition(((5, 1),))) == commutant_decomp(d)
    with pytest.raises(NotNested):
        relative_commutant_decomp(d, parse_decomposition('4x1+1x1'))
    with pytest.raises(NotNested):
        relative_commutant_decomp(d, d)


@given(sectors)
def test_pair_lies_in_its_join(items):
    d = SectorDecomposition(tuple(items))
    comm = commutant_decomp(d)
    assert join_decomp(comm) == join_decomp(d)
    assert relative_commutant_decomp(d, join_decomp(d)) == comm
    assert relative_commutant_decomp(comm, join_decomp(d)) == d
    assert meet_decomp(d).sector_count == d.sector_count
