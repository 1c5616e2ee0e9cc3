import pytest

from submon.errors import NotALattice, SizeLimitExceeded
from submon.monoid import PartialOrder, from_spec, join_monoid, semilattice_order
from submon.submonoids import enumerate_submonoids
from submon.transfer import build_transfer_matrix, count_sequence
from submon.transfersystems import (
    TransferRelation,
    chi,
    enumerate_saturated_transfer_systems,
    is_saturated_transfer_system,
    st_count_sequence,
    st_weight,
    verify_graph_isomorphism,
)

LATTICE_SPECS = ["chain:1", "chain:2", "chain:1 x chain:1", "chain:1 x chain:2", "mk:3"]


def _order(spec):
    return semilattice_order(from_spec(spec))


def _discrete(order):
    return TransferRelation.from_pairs(order, [])


def _full(order):
    pairs = [
        (x, y)
        for x in range(order.size)
        for y in range(order.size)
        if x != y and order.leq(x, y)
    ]
    return TransferRelation.from_pairs(order, pairs)


def test_discrete_and_full_systems_are_valid():
    for spec in LATTICE_SPECS:
        order = _order(spec)
        ok, violation = is_saturated_transfer_system(order, _discrete(order).rows)
        assert ok, violation
        ok, violation = is_saturated_transfer_system(order, _full(order).rows)
        assert ok, violation


def test_violations_are_reported():
    chain = _order("chain:2")
    # A bare jump 0 R 2 already fails restriction along the middle element.
    jump = TransferRelation.from_pairs(chain, [(0, 2)])
    ok, violation = is_saturated_transfer_system(chain, jump.rows)
    assert not ok and violation.rule == "restriction"
    assert violation.elements == (0, 2, 1)

    # With 0 R 1 added, restriction holds but 1 R 2 is still missing.
    partial_chain = TransferRelation.from_pairs(chain, [(0, 1), (0, 2)])
    ok, violation = is_saturated_transfer_system(chain, partial_chain.rows)
    assert not ok and violation.rule == "saturation"
    assert violation.elements == (0, 1, 2)

    grid = _order("chain:1 x chain:1")
    # (0,1) R (1,1) alone breaks restriction along the other axis.
    partial = TransferRelation.from_pairs(grid, [(1, 3)])
    ok, violation = is_saturated_transfer_system(grid, partial.rows)
    assert not ok and violation.rule == "restriction"

    not_refining = TransferRelation.from_pairs(chain, [(2, 0)])
    ok, violation = is_saturated_transfer_system(chain, not_refining.rows)
    assert not ok and violation.rule == "refines-order"


def test_meets_are_required():
    antichain = PartialOrder(size=2, up=(0b01, 0b10))
    with pytest.raises(NotALattice):
        is_saturated_transfer_system(antichain, (0b01, 0b10))


def test_enumeration_counts_match_submonoid_counts():
    for spec in LATTICE_SPECS:
        order = _order(spec)
        systems = enumerate_saturated_transfer_systems(order)
        monoid = join_monoid(order)
        assert len(systems) == len(enumerate_submonoids(monoid))
        assert len(set(s.rows for s in systems)) == len(systems)


def test_enumeration_budget():
    with pytest.raises(SizeLimitExceeded):
        enumerate_saturated_transfer_systems(_order("bool:3"), max_size=4)


def test_chi_extremes():
    order = _order("chain:1 x chain:1")
    assert chi(order, _discrete(order)) == order.full_mask
    assert chi(order, _full(order)) == 0b0001


def test_chi_is_an_order_reversing_bijection():
    for spec in LATTICE_SPECS:
        order = _order(spec)
        systems = enumerate_saturated_transfer_systems(order)
        masks = [chi(order, system) for system in systems]
        members = enumerate_submonoids(join_monoid(order)).members
        assert sorted(masks) == sorted(members)
        for a, mask_a in zip(systems, masks):
            for b, mask_b in zip(systems, masks):
                if a.refines(b):
                    assert mask_b & ~mask_a == 0


def test_st_weight_positive_iff_refines():
    for spec in ["chain:1", "chain:2", "chain:1 x chain:1"]:
        order = _order(spec)
        systems = enumerate_saturated_transfer_systems(order)
        for top in systems:
            for bottom in systems:
                w = st_weight(order, top, bottom)
                assert (w > 0) == top.refines(bottom)


def test_st_weights_total_to_cylinder_count():
    order = _order("chain:1 x chain:1")
    systems = enumerate_saturated_transfer_systems(order)
    total = sum(
        st_weight(order, top, bottom) for top in systems for bottom in systems
    )
    cylinder = count_sequence(build_transfer_matrix(join_monoid(order)), 1)
    assert total == cylinder.values[1] == 61


def test_st_weight_discrete_pair():
    order = _order("chain:1")
    systems = enumerate_saturated_transfer_systems(order)
    discrete = next(s for s in systems if not s.pairs())
    # Three cylinder systems keep both layers discrete: no relations, the
    # pillar over the bottom alone, and both pillars (the pillar over the
    # top forces the bottom one by restriction).  This matches the ideal
    # count of the two-element chain through the correspondence.
    assert st_weight(order, discrete, discrete) == 3


def test_st_weight_rejects_unknown_relations():
    order = _order("chain:2")
    jump = TransferRelation.from_pairs(order, [(0, 2)])
    with pytest.raises(ValueError):
        st_weight(order, jump, jump)


def test_graph_isomorphism_on_all_lattices():
    for spec in LATTICE_SPECS:
        ok, details = verify_graph_isomorphism(_order(spec))
        assert ok, (spec, details)


def test_st_count_sequence_matches_transfer_matrix():
    for spec in LATTICE_SPECS:
        order = _order(spec)
        st_values = st_count_sequence(order, 3).values
        tm_values = count_sequence(
            build_transfer_matrix(join_monoid(order)), 3
        ).values
        assert st_values == tm_values


def test_pairs_round_trip():
    order = _order("chain:2")
    for system in enumerate_saturated_transfer_systems(order):
        rebuilt = TransferRelation.from_pairs(order, system.pairs())
        assert rebuilt.rows == system.rows


@pytest.mark.slow
def test_cube_lattice_agrees_across_routes():
    # The cube's cylinder has 16 elements and 2480 systems, so this one
    # exercises the enumeration at real scale; 2480 is the known count of
    # submonoids of the four-dimensional cube.
    order = _order("bool:3")
    st_values = st_count_sequence(order, 2).values
    tm_values = count_sequence(build_transfer_matrix(join_monoid(order)), 2).values
    assert st_values == tm_values == (61, 2480, 70780)
