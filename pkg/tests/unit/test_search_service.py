import itertools

import pytest
from pydantic import ValidationError

from perfect_latin.models.search import SearchMode, SearchQuery
from perfect_latin.services.generator_service import generator_service
from perfect_latin.services.perfection_service import perfection_service
from perfect_latin.services.rectangle_service import rectangle_service
from perfect_latin.services.search_service import search_service

pytestmark = pytest.mark.unit


def brute_force_reduced(m, n, perfect_only=True):
    """Reduced rectangles built row by row from all permutations, filtered by the verifier"""
    perms = list(itertools.permutations(range(n)))
    found = []

    def extend(rows):
        if len(rows) == m:
            rect = rectangle_service.from_rows(rows)
            if not perfect_only or perfection_service.perfection_report(rect).perfect:
                found.append(rect)
            return
        for p in perms:
            if p[0] <= rows[-1][0]:
                continue
            if all(p[c] != r[c] for r in rows for c in range(n)):
                extend(rows + [list(p)])

    extend([list(range(n))])
    return found


def count(m, n, **kwargs):
    return search_service.search(SearchQuery(m=m, n=n, **kwargs))


def test_order_two():
    result = count(2, 2)
    assert result.count == 1
    assert not result.truncated


def test_order_four_has_no_perfect_square():
    assert count(4, 4).count == 0
    assert count(4, 4, require_perfect=False).count == 4


def test_order_six_has_no_perfect_square():
    result = count(6, 6)
    assert result.count == 0
    assert not result.truncated
    assert result.stats.prunes > 0


@pytest.mark.slow
def test_order_six_reduced_squares_enumerated():
    """Test the unfiltered node space holds the 9408 reduced squares of order 6"""
    result = count(6, 6, require_perfect=False)
    assert result.count == 9408
    assert not result.truncated


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_counts_match_brute_force(n):
    assert count(n, n).count == len(brute_force_reduced(n, n))
    assert count(n, n, require_perfect=False).count == len(brute_force_reduced(n, n, perfect_only=False))


def test_all_mode_matches_brute_force_3x5():
    result = count(3, 5, mode=SearchMode.ALL)
    assert result.rectangles == brute_force_reduced(3, 5)


def test_pruning_changes_nodes_not_counts():
    pruned = count(5, 5, prune_pairs=True)
    unpruned = count(5, 5, prune_pairs=False)
    assert pruned.count == unpruned.count
    assert pruned.stats.nodes <= unpruned.stats.nodes
    assert unpruned.stats.prunes == 0


def test_results_are_sound():
    result = count(3, 7, mode=SearchMode.ALL, cutoff_nodes=200_000)
    assert result.rectangles
    for rect in result.rectangles:
        assert rectangle_service.validate(rect).valid
        assert rectangle_service.is_reduced(rect)
        assert perfection_service.perfection_report(rect).perfect


def test_first_is_lexicographic_minimum():
    first = count(3, 5, mode=SearchMode.FIRST)
    everything = count(3, 5, mode=SearchMode.ALL)
    assert first.count == 1
    assert first.rectangles[0] == everything.rectangles[0]
    assert sorted(r.to_lists() for r in everything.rectangles)[0] == first.rectangles[0].to_lists()


def test_first_without_witness():
    result = count(4, 4, mode=SearchMode.FIRST)
    assert result.count == 0
    assert result.rectangles == []
    assert not result.truncated


def test_single_row():
    assert count(1, 4).count == 1
    assert count(1, 4, reduce=False).count == 24


def test_unreduced_order_three():
    assert count(3, 3, reduce=False, require_perfect=False).count == 12
    assert count(3, 3, reduce=False).count == 12


def test_reduction_is_lossless(rng, random_isotopy):
    """Test every isotopic copy of a perfect 3x5 reduces into the reduced enumeration"""
    reduced = set(count(3, 5, mode=SearchMode.ALL).rectangles)
    base = rectangle_service.truncate_rows(generator_service.cyclic(5), 3)
    for _ in range(50):
        assert rectangle_service.reduce(random_isotopy(base, rng)) in reduced


def test_budget_truncates():
    result = count(6, 6, require_perfect=False, cutoff_nodes=1000)
    assert result.truncated
    assert result.stats.nodes == 1000


def test_deterministic():
    a = count(5, 7, mode=SearchMode.FIRST)
    b = count(5, 7, mode=SearchMode.FIRST)
    assert a.rectangles == b.rectangles
    assert a.stats.nodes == b.stats.nodes


def test_parallel_matches_serial():
    assert count(5, 5, threads=2).count == count(5, 5).count
    assert count(4, 4, require_perfect=False, threads=2).count == 4
    assert count(3, 5, mode=SearchMode.FIRST, threads=2).rectangles == count(3, 5, mode=SearchMode.FIRST).rectangles


def test_query_rejects_tall_shape():
    with pytest.raises(ValidationError):
        SearchQuery(m=4, n=3)


def test_result_serializes():
    dumped = count(2, 3, mode=SearchMode.ALL).model_dump(mode="json")
    assert dumped["rectangles"] == [[[0, 1, 2], [1, 2, 0]], [[0, 1, 2], [2, 0, 1]]]
    assert dumped["query"]["mode"] == "all"
