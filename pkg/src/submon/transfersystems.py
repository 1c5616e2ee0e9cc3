"""Saturated transfer systems on finite lattices.

A saturated transfer system is a partial order R refining the lattice
order that is closed under restriction along meets and decomposes across
intermediate elements.  Relations are stored one bitmask row per element,
like orders.  The module enumerates all systems on a lattice, realizes the
order-reversing correspondence onto submonoids under join, and builds the
weighted graph whose walk counts enumerate systems on lattice x chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NonUniqueMinimal, SizeLimitExceeded
from .monoid import (
    PartialOrder,
    down_masks,
    join_monoid,
    make_chain,
    make_product,
    meet_table,
    semilattice_order,
)
from .submonoids import bits_of
from .transfer import CountSequence, build_transfer_matrix

DEFAULT_MAX_ST_SIZE = 8


@dataclass(frozen=True)
class TransferRelation:
    """A relation on a lattice: bit y of rows[x] is set iff x R y."""

    order: PartialOrder
    rows: tuple[int, ...]

    def contains(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """Non-reflexive related pairs, sorted; the serialization form."""
        out = []
        for x, row in enumerate(self.rows):
            for y in bits_of(row & ~(1 << x)):
                out.append((x, y))
        return out

    def refines(self, other: TransferRelation) -> bool:
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    @classmethod
    def from_pairs(cls, order: PartialOrder, pairs) -> TransferRelation:
        rows = [1 << x for x in range(order.size)]
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(order=order, rows=tuple(rows))


@dataclass(frozen=True)
class Violation:
    rule: str
    elements: tuple[int, ...]


@dataclass(frozen=True)
class _LatticeContext:
    order: PartialOrder
    meet: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[int, int], ...]
    between: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _lattice_context(order: PartialOrder) -> _LatticeContext:
    n = order.size
    meet = meet_table(order)
    down = down_masks(order)
    covers = []
    for x in range(n):
        strict_up = order.up[x] & ~(1 << x)
        for z in bits_of(strict_up):
            if not strict_up & (down[z] & ~(1 << z)):
                covers.append((x, z))
    between = tuple(
        tuple(order.up[x] & down[z] for z in range(n)) for x in range(n)
    )
    return _LatticeContext(
        order=order, meet=meet, covers=tuple(covers), between=between
    )


def is_saturated_transfer_system(order: PartialOrder, rows) -> tuple[bool, Violation | None]:
    """Check all defining clauses; on failure report the first violation.

    Clauses: the relation refines the lattice order, is reflexive and
    transitive, is closed under restriction (x R z implies
    meet(x, y) R meet(z, y) for every y), and is saturated (x R z with
    x <= y <= z implies x R y and y R z).
    """
    ctx = _lattice_context(order)
    n = order.size
    rows = tuple(rows)
    for x in range(n):
        if not rows[x] >> x & 1:
            return False, Violation("reflexive", (x,))
        if rows[x] & ~order.up[x]:
            y = next(bits_of(rows[x] & ~order.up[x]))
            return False, Violation("refines-order", (x, y))
    for x in range(n):
        for y in bits_of(rows[x]):
            if rows[y] & ~rows[x]:
                z = next(bits_of(rows[y] & ~rows[x]))
                return False, Violation("transitive", (x, y, z))
    for x in range(n):
        for z in bits_of(rows[x] & ~(1 << x)):
            for y in range(n):
                if not rows[ctx.meet[x][y]] >> ctx.meet[z][y] & 1:
                    return False, Violation("restriction", (x, z, y))
            for y in bits_of(ctx.between[x][z] & ~(1 << x) & ~(1 << z)):
                if not rows[x] >> y & 1:
                    return False, Violation("saturation", (x, y, z))
                if not rows[y] >> z & 1:
                    return False, Violation("saturation", (x, y, z))
    return True, None


def _close(ctx: _LatticeContext, rows) -> tuple[int, ...]:
    """Close a reflexive sub-order relation under transitivity,
    restriction, and saturation, to a fixed point."""
    n = ctx.order.size
    rows = list(rows)
    meet = ctx.meet
    between = ctx.between
    changed = True
    while changed:
        changed = False
        for x in range(n):
            acc = rows[x]
            rest = acc
            while rest:
                y = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc |= rows[y]
            if acc != rows[x]:
                rows[x] = acc
                changed = True
        for x in range(n):
            meet_x = meet[x]
            for z in bits_of(rows[x] & ~(1 << x)):
                meet_z = meet[z]
                for y in range(n):
                    a, b = meet_x[y], meet_z[y]
                    if not rows[a] >> b & 1:
                        rows[a] |= 1 << b
                        changed = True
                mid = between[x][z] & ~(1 << x) & ~(1 << z)
                if mid:
                    if mid & ~rows[x]:
                        rows[x] |= mid
                        changed = True
                    z_bit = 1 << z
                    for y in bits_of(mid):
                        if not rows[y] & z_bit:
                            rows[y] |= z_bit
                            changed = True
    return tuple(rows)


@lru_cache(maxsize=None)
def _saturated_rows(order: PartialOrder) -> tuple[tuple[int, ...], ...]:
    """Every saturated transfer system on the lattice, canonically sorted.

    Systems are generated by closing cover-pair additions: starting from
    the discrete system, repeatedly add one cover of the lattice order and
    close.  Every system is the closure of its own cover pairs, so this
    walk reaches all of them.
    """
    ctx = _lattice_context(order)
    start = tuple(1 << x for x in range(order.size))
    seen = {start}
    queue = [start]
    while queue:
        rows = queue.pop()
        for x, z in ctx.covers:
            if rows[x] >> z & 1:
                continue
            grown = list(rows)
            grown[x] |= 1 << z
            closed = _close(ctx, grown)
            if closed not in seen:
                seen.add(closed)
                queue.append(closed)
    for rows in seen:
        ok, violation = is_saturated_transfer_system(order, rows)
        assert ok, f"enumeration produced an invalid system: {violation}"
    return tuple(sorted(seen, key=lambda r: (sum(v.bit_count() for v in r), r)))


def enumerate_saturated_transfer_systems(
    order: PartialOrder, max_size: int = DEFAULT_MAX_ST_SIZE
) -> list[TransferRelation]:
    if order.size > max_size:
        raise SizeLimitExceeded(
            f"lattice has {order.size} elements, enumeration budget {max_size}"
        )
    return [TransferRelation(order, rows) for rows in _saturated_rows(order)]


def chi(order: PartialOrder, relation: TransferRelation) -> int:
    """Minimal element of each connected component of the relation.

    The result, as a subset mask, is a submonoid of the lattice under
    join, and the assignment reverses the refinement order.
    """
    n = order.size
    rows = relation.rows
    incoming = [0] * n
    for x in range(n):
        for y in bits_of(rows[x] & ~(1 << x)):
            incoming[y] |= 1 << x
    component = list(range(n))

    def find(x):
        while component[x] != x:
            component[x] = component[component[x]]
            x = component[x]
        return x

    for x in range(n):
        for y in bits_of(rows[x]):
            component[find(x)] = find(y)
    members: dict[int, list[int]] = {}
    for x in range(n):
        members.setdefault(find(x), []).append(x)
    result = 0
    for group in members.values():
        group_mask = 0
        for x in group:
            group_mask |= 1 << x
        minima = [x for x in group if not incoming[x] & group_mask]
        if len(minima) != 1:
            raise NonUniqueMinimal(
                f"component {sorted(group)} has minima {minima}"
            )
        result |= 1 << minima[0]
    return result


@lru_cache(maxsize=None)
def _cylinder_order(order: PartialOrder) -> PartialOrder:
    """The lattice order of (P x two-element chain); (x, level) sits at
    index 2 * x + level."""
    product = make_product(join_monoid(order), make_chain(1))
    return semilattice_order(product)


def _layer(cyl_rows, size: int, level: int) -> tuple[int, ...]:
    rows = []
    for x in range(size):
        src = cyl_rows[2 * x + level]
        row = 0
        for y in range(size):
            if src >> (2 * y + level) & 1:
                row |= 1 << y
        rows.append(row)
    return tuple(rows)


@lru_cache(maxsize=None)
def _st_data(order: PartialOrder):
    """Canonical system list, index map, and the weighted adjacency matrix
    counting cylinder systems by (top layer, bottom layer)."""
    systems = _saturated_rows(order)
    index = {rows: i for i, rows in enumerate(systems)}
    k = len(systems)
    matrix = [[0] * k for _ in range(k)]
    for cyl_rows in _saturated_rows(_cylinder_order(order)):
        top = _layer(cyl_rows, order.size, 1)
        bottom = _layer(cyl_rows, order.size, 0)
        matrix[index[top]][index[bottom]] += 1
    return systems, index, tuple(tuple(row) for row in matrix)


def st_weight(
    order: PartialOrder,
    top: TransferRelation,
    bottom: TransferRelation,
    max_size: int = DEFAULT_MAX_ST_SIZE,
) -> int:
    """Number of saturated transfer systems on (lattice x chain of length 1)
    whose level-0 layer is ``bottom`` and level-1 layer is ``top``."""
    if order.size > max_size:
        raise SizeLimitExceeded(
            f"lattice has {order.size} elements, enumeration budget {max_size}"
        )
    _, index, matrix = _st_data(order)
    try:
        i, j = index[top.rows], index[bottom.rows]
    except KeyError:
        raise ValueError("arguments are not saturated transfer systems") from None
    return matrix[i][j]


def verify_graph_isomorphism(
    order: PartialOrder, max_size: int = DEFAULT_MAX_ST_SIZE
):
    """Check that mapping systems to submonoids matches cylinder counts
    against ideal-counting weights for every pair.

    Returns (True, None), or (False, details) where details carries the
    first mismatching pair of systems and the two weights.
    """
    if order.size > max_size:
        raise SizeLimitExceeded(
            f"lattice has {order.size} elements, enumeration budget {max_size}"
        )
    systems, _, st_matrix = _st_data(order)
    monoid = join_monoid(order)
    weights = build_transfer_matrix(monoid)
    lattice = weights.lattice
    masks = [chi(order, TransferRelation(order, rows)) for rows in systems]
    if sorted(masks) != sorted(lattice.members):
        return False, ("chi is not a bijection onto the submonoids", masks)
    for i, r_rows in enumerate(systems):
        for j, q_rows in enumerate(systems):
            st = st_matrix[i][j]
            w = weights.entries[lattice.index_of[masks[i]]][lattice.index_of[masks[j]]]
            if st != w:
                return False, (
                    "weight mismatch",
                    TransferRelation(order, r_rows).pairs(),
                    TransferRelation(order, q_rows).pairs(),
                    st,
                    w,
                )
    return True, None


def st_count_sequence(
    order: PartialOrder,
    n_max: int,
    max_size: int = DEFAULT_MAX_ST_SIZE,
    label: str = "",
) -> CountSequence:
    """Counts of saturated transfer systems on (lattice x chain of length n)
    for n = 0..n_max, via powers of the system adjacency matrix."""
    if order.size > max_size:
        raise SizeLimitExceeded(
            f"lattice has {order.size} elements, enumeration budget {max_size}"
        )
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    systems, _, matrix = _st_data(order)
    sparse = [
        tuple((j, w) for j, w in enumerate(row) if w) for row in matrix
    ]
    vector = [1] * len(systems)
    values = [len(systems)]
    for _ in range(n_max):
        vector = [sum(w * vector[j] for j, w in row) for row in sparse]
        values.append(sum(vector))
    return CountSequence(values=tuple(values), label=label)
