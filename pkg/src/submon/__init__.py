"""Exact enumeration of submonoids of finite commutative monoids.

The package builds the weighted submonoid graph of a finite commutative
monoid, counts submonoids of the monoid times a chain through powers of
the adjacency matrix, extracts exact growth spectra in the idempotent
case, and realizes the correspondence with saturated transfer systems on
finite lattices.  All arithmetic is exact (big integers and fractions).
"""

from .closedforms import (
    ChainCountVector,
    abelian_group_count,
    chain_coefficient,
    chain_counts,
    chain_eigenvalues,
    ladder_eigenvalues,
    mk_eigenvalues,
    poly_bernoulli,
    stirling2,
    subsemigroup_count,
)
from .errors import SubmonError
from .monoid import (
    CayleyMonoid,
    PartialOrder,
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
from .spectral import (
    RationalOGF,
    Spectrum,
    chain_eigenmatrix,
    closed_form_eval,
    eigenvalues,
    normalize_coefficients,
    ogf,
    solve_coefficients,
    spectrum_of,
    verify_recurrence,
)
from .submonoids import (
    SubmonoidLattice,
    closure,
    condense,
    count_upsets_containing,
    divisibility_preorder,
    enumerate_ideals,
    enumerate_submonoids,
    inclusion_order,
    is_submonoid,
    weight,
)
from .transfer import (
    AsymptoticProfile,
    CountSequence,
    TransferMatrix,
    asymptotics,
    build_transfer_matrix,
    count_sequence,
    counts_by_projection,
)
from .transfersystems import (
    TransferRelation,
    chi,
    enumerate_saturated_transfer_systems,
    is_saturated_transfer_system,
    st_count_sequence,
    st_weight,
    verify_graph_isomorphism,
)

__version__ = "0.1.0"
