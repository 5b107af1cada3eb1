import pytest
from pydantic import ValidationError

from perfect_latin.core.exceptions import DimensionError
from perfect_latin.models.extension import ExtensionPlan
from perfect_latin.models.factorization import OneFactorization
from perfect_latin.services.extension_service import extension_service
from perfect_latin.services.factorization_service import factorization_service
from perfect_latin.services.generator_service import generator_service
from perfect_latin.services.perfection_service import perfection_service
from perfect_latin.services.rectangle_service import rectangle_service

pytestmark = pytest.mark.unit


def edges(factor):
    return set(enumerate(factor))


def test_order_two_matchings():
    f = factorization_service.to_factorization(generator_service.cyclic(2))
    assert edges(f.factors[0]) == {(0, 0), (1, 1)}
    assert edges(f.factors[1]) == {(0, 1), (1, 0)}
    assert f.is_complete


def test_order_three_partitions_all_edges():
    f = factorization_service.to_factorization(generator_service.cyclic(3))
    assert factorization_service.edge_disjoint(f)
    covered = set().union(*(edges(x) for x in f.factors))
    assert len(covered) == 9


def test_extended_rectangle_gives_disjoint_matchings(cyclic5):
    first = extension_service.extend(cyclic5, cyclic5, ExtensionPlan(c=3, s=5))
    second = extension_service.extend(first, cyclic5, ExtensionPlan(c=0, s=14, relabel_base=10))
    f = factorization_service.to_factorization(second.result)
    assert (f.n, f.size) == (13, 5)
    assert factorization_service.edge_disjoint(f)


@pytest.mark.parametrize("n,a,b,expected", [(2, 0, 1, True), (3, 0, 1, True), (9, 0, 3, False), (9, 0, 1, True)])
def test_union_is_hamiltonian(n, a, b, expected):
    f = factorization_service.to_factorization(generator_service.cyclic(n))
    assert factorization_service.union_is_hamiltonian(f, a, b) is expected


def test_union_cycles_cyclic9():
    f = factorization_service.to_factorization(generator_service.cyclic(9))
    assert factorization_service.union_cycles(f, 0, 3) == [6, 6, 6]


def test_union_cycles_twice_permutation_cycles(rng, random_isotopy):
    for n in (8, 9, 10, 12):
        rect = random_isotopy(generator_service.cyclic(n), rng)
        f = factorization_service.to_factorization(rect)
        for a in range(n):
            for b in range(a + 1, n):
                perm = perfection_service.pair_permutation(rect, a, b)
                lengths = perfection_service.cycle_structure(perm).lengths
                assert factorization_service.union_cycles(f, a, b) == [2 * x for x in lengths]


def test_union_rejects_same_factor():
    f = factorization_service.to_factorization(generator_service.cyclic(3))
    with pytest.raises(DimensionError):
        factorization_service.union_is_hamiltonian(f, 1, 1)
    with pytest.raises(DimensionError):
        factorization_service.union_cycles(f, 0, 3)


@pytest.mark.parametrize("rect", [
    generator_service.cyclic(5),
    generator_service.cyclic(9),
    rectangle_service.truncate_rows(generator_service.cyclic(6), 1),
])
def test_oracle_agrees_with_permutation_path(rect):
    assert factorization_service.oracle_perfection(rect) == perfection_service.perfection_report(rect)
    assert factorization_service.compare(rect).agree


def test_oracle_cyclic9_pf():
    assert factorization_service.oracle_perfection(generator_service.cyclic(9)).pf == 27


def test_disjointness_breaks_with_column_repeat(rng):
    """Test injecting a column repeat into a Latin grid breaks edge-disjointness"""
    for n in (4, 5, 7):
        grid = generator_service.cyclic(n).to_lists()
        assert factorization_service.edge_disjoint(factorization_service.matchings_from_grid(grid))
        a, b = rng.sample(range(n), 2)
        grid[b] = list(grid[a])
        assert not factorization_service.edge_disjoint(factorization_service.matchings_from_grid(grid))
    swapped = [[0, 1, 2], [1, 0, 2]]
    assert not factorization_service.edge_disjoint(factorization_service.matchings_from_grid(swapped))


def test_factorization_rejects_non_matchings():
    with pytest.raises(ValidationError):
        OneFactorization(n=3, factors=[[0, 0, 1]])


def test_export_edges():
    f = factorization_service.to_factorization(generator_service.cyclic(2))
    assert factorization_service.export_edges(f) == "0 2 0\n1 3 0\n0 3 1\n1 2 1\n"


def test_write_edges(tmp_path, cyclic5):
    f = factorization_service.to_factorization(cyclic5)
    out = tmp_path / "edges.txt"
    factorization_service.write_edges(f, out)
    lines = out.read_text().splitlines()
    assert len(lines) == 25
    assert all(5 <= int(line.split()[1]) < 10 for line in lines)
