import json

import pytest

from submon.errors import (
    AssociativityViolation,
    CommutativityViolation,
    IdentityViolation,
    MonoidSpecError,
    NotIdempotent,
    SizeLimitExceeded,
)
from submon.monoid import (
    from_spec,
    from_table,
    is_group,
    is_idempotent,
    join_monoid,
    make_bool,
    make_chain,
    make_cyclic_group,
    make_mk,
    make_n5,
    make_product,
    monoid_from_json,
    monoid_to_json,
    semilattice_order,
    validate,
)
from submon.submonoids import enumerate_submonoids


def test_from_table_accepts_small_monoids():
    assert from_table([[0]], 0).size == 1
    chain = from_table([[0, 1], [1, 1]], 0)
    assert chain.op(1, 1) == 1
    group = from_table([[0, 1], [1, 0]], 0)
    assert is_group(group)


def test_from_table_identity_violation():
    with pytest.raises(IdentityViolation) as err:
        from_table([[1, 0], [0, 1]], 0)
    assert err.value.witness == (0, 0)


def test_from_table_commutativity_violation():
    with pytest.raises(CommutativityViolation) as err:
        from_table([[0, 1], [0, 0]], 0)
    assert err.value.witness == (0, 1)


def test_from_table_associativity_violation():
    # Commutative with identity, but (1*1)*2 == 0 while 1*(1*2) == 1.
    table = [[0, 1, 2], [1, 1, 0], [2, 0, 2]]
    with pytest.raises(AssociativityViolation) as err:
        from_table(table, 0)
    assert len(err.value.witness) == 3


def test_from_table_rejects_malformed_input():
    with pytest.raises(ValueError):
        from_table([[0, 1]], 0)
    with pytest.raises(ValueError):
        from_table([[0]], 3)
    with pytest.raises(ValueError):
        from_table([[5]], 0)


@pytest.mark.parametrize("maker", [make_chain(3), make_mk(3), make_n5(),
                                   make_cyclic_group(6), make_bool(2)])
def test_constructors_produce_valid_monoids(maker):
    validate(maker)


def test_make_chain_counts():
    assert enumerate_submonoids(make_chain(0)).members == (1,)
    assert len(enumerate_submonoids(make_chain(1))) == 2
    # Submonoids of a chain are the subsets containing the bottom.
    assert len(enumerate_submonoids(make_chain(2))) == 4
    assert is_idempotent(make_chain(5))


def test_make_product_encoding_is_row_major():
    grid = make_product(make_chain(1), make_chain(1))
    # (1, 0) has index 2 and (0, 1) has index 1; their product is (1, 1).
    assert grid.op(2, 1) == 3
    assert grid.identity == 0


def test_product_with_trivial_is_identity():
    m = make_mk(2)
    assert make_product(m, make_chain(0)).table == m.table


def test_product_size_guard():
    with pytest.raises(SizeLimitExceeded):
        make_product(make_chain(9), make_chain(9), max_size=50)


def test_product_submonoid_counts_are_associative():
    a, b, c = make_chain(1), make_chain(1), make_chain(2)
    left = make_product(make_product(a, b), c)
    right = make_product(a, make_product(b, c))
    assert len(enumerate_submonoids(left)) == len(enumerate_submonoids(right))


def test_make_bool_matches_iterated_product():
    assert len(enumerate_submonoids(make_bool(2))) == 7
    assert len(enumerate_submonoids(make_bool(3))) == 61


def test_make_mk_shape():
    m = make_mk(2)
    assert m.size == 4
    assert len(enumerate_submonoids(m)) == 7
    assert make_mk(3).size == 5
    with pytest.raises(ValueError):
        make_mk(0)


def test_make_n5_order():
    order = semilattice_order(make_n5())
    # bottom 0, a 1, b 2, c 3, top 4 with a < c and b incomparable to both
    assert order.leq(0, 4) and order.leq(1, 3)
    assert not order.leq(2, 1) and not order.leq(1, 2)
    assert not order.leq(2, 3) and not order.leq(3, 2)
    assert make_n5().op(1, 2) == 4


def test_make_cyclic_group():
    assert make_cyclic_group(1).size == 1
    c4 = make_cyclic_group(4)
    assert is_group(c4)
    assert not is_idempotent(c4)
    assert c4.op(3, 2) == 1
    with pytest.raises(ValueError):
        make_cyclic_group(0)


def test_is_group_on_non_groups():
    assert not is_group(make_chain(1))
    assert is_group(make_chain(0))


def test_semilattice_order_chain_is_total():
    order = semilattice_order(make_chain(2))
    assert all(order.leq(x, y) for x in range(3) for y in range(x, 3))


def test_semilattice_order_rejects_groups():
    with pytest.raises(NotIdempotent):
        semilattice_order(make_cyclic_group(2))


def test_semilattice_order_grid_is_componentwise():
    order = semilattice_order(make_product(make_chain(1), make_chain(1)))
    for x in range(4):
        for y in range(4):
            expected = x >> 1 <= y >> 1 and x & 1 <= y & 1
            assert order.leq(x, y) == expected


def test_join_monoid_round_trip():
    m = make_mk(3)
    assert join_monoid(semilattice_order(m)).table == m.table


def test_json_round_trip(tmp_path):
    m = make_mk(2)
    data = monoid_to_json(m)
    assert monoid_from_json(json.loads(json.dumps(data))).table == m.table
    path = tmp_path / "monoid.json"
    path.write_text(json.dumps(data))
    assert from_spec(f"file:{path}").table == m.table


def test_from_spec_grammar():
    assert from_spec("chain:1 x chain:1").size == 4
    assert from_spec("bool:2").size == 4
    assert from_spec("n5").size == 5
    assert from_spec("cyclic:3 x chain:1").size == 6
    assert from_spec("chain:1 x chain:1 x chain:1").size == 8


@pytest.mark.parametrize("bad", ["", "chain", "chain:x", "chain:1 y chain:1",
                                 "chain:1 x", "mk:0", "nope:1"])
def test_from_spec_rejects_garbage(bad):
    with pytest.raises(MonoidSpecError):
        from_spec(bad)
