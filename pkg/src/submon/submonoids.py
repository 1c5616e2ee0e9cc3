"""Submonoid enumeration, ideal counting, and the weighted submonoid graph.

Subsets of a monoid are plain integer bitmasks: bit ``i`` marks element
``i``.  Bits at positions >= the ambient size must be zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotASubmonoid, SizeLimitExceeded
from .monoid import CayleyMonoid, PartialOrder, down_masks

# Exhaustive mask filtering is used up to this many elements; past it (only
# reachable by raising the budget) enumeration switches to closure BFS.
DEFAULT_MAX_MONOID_SIZE = 20
_EXHAUSTIVE_LIMIT = 20


def bits_of(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements) -> int:
    out = 0
    for x in elements:
        out |= 1 << x
    return out


def mask_to_hex(mask: int) -> str:
    return hex(mask)


def mask_from_hex(text: str) -> int:
    return int(text, 16)


def closure(monoid: CayleyMonoid, seed: int) -> int:
    """Smallest submonoid containing ``seed``: add the identity, then close
    under pairwise products until a fixed point."""
    if seed >> monoid.size:
        raise ValueError("seed has bits beyond the monoid")
    mask = seed | 1 << monoid.identity
    table = monoid.table
    changed = True
    while changed:
        changed = False
        els = list(bits_of(mask))
        for i, x in enumerate(els):
            row = table[x]
            for y in els[i:]:
                p = row[y]
                if not mask >> p & 1:
                    mask |= 1 << p
                    changed = True
    return mask


def is_submonoid(monoid: CayleyMonoid, mask: int) -> bool:
    if mask >> monoid.size or not mask >> monoid.identity & 1:
        return False
    els = list(bits_of(mask))
    for i, x in enumerate(els):
        row = monoid.table[x]
        for y in els[i:]:
            if not mask >> row[y] & 1:
                return False
    return True


@dataclass
class SubmonoidLattice:
    """All submonoids of a monoid in a fixed inclusion-respecting order.

    ``members`` is sorted by (popcount, mask value), which is a linear
    extension of inclusion and is part of the serialization contract.
    """

    monoid: CayleyMonoid
    members: tuple[int, ...]
    index_of: dict[int, int]

    def __len__(self) -> int:
        return len(self.members)


def enumerate_submonoids(
    monoid: CayleyMonoid, max_size: int = DEFAULT_MAX_MONOID_SIZE
) -> SubmonoidLattice:
    """Enumerate every submonoid of ``monoid``.

    Raises :class:`SizeLimitExceeded` when ``monoid.size`` is over budget,
    since the exhaustive filter scans ``2**(size-1)`` candidate masks.
    """
    if monoid.size > max_size:
        raise SizeLimitExceeded(
            f"monoid has {monoid.size} elements, enumeration budget {max_size}"
        )
    if monoid.size <= _EXHAUSTIVE_LIMIT:
        members = _filter_all_masks(monoid)
    else:
        members = _closure_bfs(monoid)
    members.sort(key=lambda m: (m.bit_count(), m))
    return SubmonoidLattice(
        monoid=monoid,
        members=tuple(members),
        index_of={m: i for i, m in enumerate(members)},
    )


def _filter_all_masks(monoid):
    n = monoid.size
    e_bit = 1 << monoid.identity
    # Pairs whose product lands outside the pair never constrain a mask.
    pairs = []
    for x in range(n):
        for y in range(x, n):
            pair_bits = 1 << x | 1 << y
            prod_bit = 1 << monoid.table[x][y]
            if not pair_bits & prod_bit:
                pairs.append((pair_bits, prod_bit))
    out = []
    for mask in range(1 << n):
        if not mask & e_bit:
            continue
        for pair_bits, prod_bit in pairs:
            if mask & pair_bits == pair_bits and not mask & prod_bit:
                break
        else:
            out.append(mask)
    return out


def _closure_bfs(monoid):
    start = closure(monoid, 0)
    seen = {start}
    queue = [start]
    while queue:
        current = queue.pop()
        missing = ((1 << monoid.size) - 1) & ~current
        for x in bits_of(missing):
            grown = closure(monoid, current | 1 << x)
            if grown not in seen:
                seen.add(grown)
                queue.append(grown)
    return list(seen)


def inclusion_order(lattice: SubmonoidLattice) -> PartialOrder:
    """The containment order on the members of a submonoid lattice."""
    ups = []
    for a in lattice.members:
        row = 0
        for j, b in enumerate(lattice.members):
            if a & ~b == 0:
                row |= 1 << j
        ups.append(row)
    return PartialOrder(size=len(lattice.members), up=tuple(ups))


@dataclass(frozen=True)
class Preorder:
    """Divisibility preorder on the elements of a submonoid.

    ``elements`` lists the ambient indices in ascending order and
    ``reach[i]`` is a bitmask over local positions: bit ``j`` is set iff
    ``elements[j]`` lies in ``elements[i] * A``.
    """

    elements: tuple[int, ...]
    reach: tuple[int, ...]


def divisibility_preorder(monoid: CayleyMonoid, submonoid: int) -> Preorder:
    """x divides y within the submonoid A iff y == x*a for some a in A.

    Reflexive because e is in A; transitive because A is closed.  A subset
    I of A satisfies I*A == I exactly when I is upward closed for this
    preorder: since e is in A we always have I a subset of I*A, so the ideal
    condition reduces to absorption, which is upward closure here.
    """
    elements = tuple(bits_of(submonoid))
    local = {x: i for i, x in enumerate(elements)}
    reach = []
    for x in elements:
        row = 0
        table_x = monoid.table[x]
        for a in elements:
            row |= 1 << local[table_x[a]]
        reach.append(row)
    return Preorder(elements=elements, reach=tuple(reach))


@dataclass(frozen=True)
class CondensedPreorder:
    """Strongly connected classes of a divisibility preorder.

    ``classes`` holds ambient element indices per class and is listed in a
    linear extension of the induced class order, so the highest class index
    present in any subset is always maximal in it.
    """

    classes: tuple[tuple[int, ...], ...]
    order: PartialOrder


def condense(preorder: Preorder) -> CondensedPreorder:
    k = len(preorder.elements)
    assigned = [-1] * k
    raw_classes = []
    for i in range(k):
        if assigned[i] >= 0:
            continue
        cls = [
            j
            for j in bits_of(preorder.reach[i])
            if preorder.reach[j] >> i & 1
        ]
        for j in cls:
            assigned[j] = len(raw_classes)
        raw_classes.append(cls)
    # Strict reach sets shrink upward, so sorting by reach size descending
    # is a linear extension of the class order.
    reach_size = [preorder.reach[cls[0]].bit_count() for cls in raw_classes]
    ordering = sorted(
        range(len(raw_classes)), key=lambda c: (-reach_size[c], raw_classes[c][0])
    )
    position = {old: new for new, old in enumerate(ordering)}
    classes = tuple(
        tuple(preorder.elements[j] for j in raw_classes[old]) for old in ordering
    )
    ups = [0] * len(ordering)
    for new, old in enumerate(ordering):
        rep = raw_classes[old][0]
        row = 0
        for j in bits_of(preorder.reach[rep]):
            row |= 1 << position[assigned[j]]
        ups[new] = row
    return CondensedPreorder(
        classes=classes, order=PartialOrder(size=len(classes), up=tuple(ups))
    )


class UpsetCounter:
    """Counts up-closed subsets of a poset whose indexing is a linear
    extension, by branching on the maximal element of highest index.

    The memo table maps free-element masks to counts and lives on the
    instance, so independent computations never share state.
    """

    def __init__(self, order: PartialOrder):
        self._down = down_masks(order)
        self._memo = {0: 1}

    def count(self, free: int) -> int:
        memo = self._memo
        cached = memo.get(free)
        if cached is not None:
            return cached
        top = 1 << free.bit_length() - 1
        # Up-closed sets containing the top element, then those avoiding
        # it (which must also avoid everything below it).
        total = self.count(free ^ top) + self.count(
            free & ~self._down[free.bit_length() - 1]
        )
        memo[free] = total
        return total


def count_upsets_containing(cond: CondensedPreorder, required: int) -> int:
    """Number of up-closed class sets containing the class set ``required``.

    ``required`` must itself be up-closed; the count equals the number of
    upsets of the subposet induced on its complement.
    """
    for c in bits_of(required):
        if cond.order.up[c] & ~required:
            raise ValueError("required class set is not up-closed")
    free = cond.order.full_mask & ~required
    return UpsetCounter(cond.order).count(free)


def _iter_upsets(order: PartialOrder, free: int, down):
    if free == 0:
        yield 0
        return
    top_index = free.bit_length() - 1
    top = 1 << top_index
    for upset in _iter_upsets(order, free ^ top, down):
        yield upset | top
    for upset in _iter_upsets(order, free & ~down[top_index], down):
        yield upset


def enumerate_ideals(monoid: CayleyMonoid, submonoid: int) -> list[int]:
    """All subsets I of the submonoid with I*A == I, as element masks.

    Includes the empty set and the submonoid itself; sorted by
    (popcount, mask value).
    """
    cond = condense(divisibility_preorder(monoid, submonoid))
    down = down_masks(cond.order)
    ideals = []
    for upset in _iter_upsets(cond.order, cond.order.full_mask, down):
        mask = 0
        for c in bits_of(upset):
            mask |= mask_of(cond.classes[c])
        ideals.append(mask)
    ideals.sort(key=lambda m: (m.bit_count(), m))
    return ideals


def _require_submonoid(monoid, mask, label):
    if not is_submonoid(monoid, mask):
        raise NotASubmonoid(f"{label} mask {hex(mask)} is not a submonoid")


def weight(monoid: CayleyMonoid, a: int, b: int) -> int:
    """Number of ideals I of the submonoid ``a`` with I union ``b`` == ``a``.

    Zero whenever ``b`` is not contained in ``a``.  Such an ideal must
    contain every class meeting ``a`` minus ``b`` together with everything
    above, so the count reduces to :func:`count_upsets_containing`.
    """
    _require_submonoid(monoid, a, "first")
    _require_submonoid(monoid, b, "second")
    if b & ~a:
        return 0
    cond = condense(divisibility_preorder(monoid, a))
    required = _required_classes(cond, a & ~b)
    return count_upsets_containing(cond, required)


def _required_classes(cond: CondensedPreorder, forced_elements: int) -> int:
    required = 0
    for c, cls in enumerate(cond.classes):
        if forced_elements & mask_of(cls):
            required |= cond.order.up[c]
    return required
