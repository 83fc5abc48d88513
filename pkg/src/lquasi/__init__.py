"""Finite left quasigroups from Cayley tables: identities, congruences,
commutators, displacement groups, constructions, and exhaustive small-order
verification."""

from .commutator import (
    SeriesReport,
    center_congruence,
    center_formula,
    centralizes,
    classify_congruence,
    commutator_generic,
    commutator_lt,
    series_and_class,
    tc_matrices,
)
from .congruence import (
    CongruenceLattice,
    GaloisReport,
    c_relation,
    congruence_lattice,
    dis_kernel,
    dis_relative,
    galois_verify,
    generated_congruence,
    is_congruence,
    lmlt_kernel,
    norm_admissible,
    orbit_congruence,
    quotient,
    relative_groups,
)
from .constructions import (
    AbelianGroup,
    AffineData,
    Cocycle,
    QuandleWithAutomorphism,
    SpellingWitness,
    abelian_groups_of_order,
    affine,
    affine_data_cyclic,
    classify_connected_medial_racks,
    cocycle_tools,
    cyclic_shift,
    extension,
    from_quandle,
    is_medial_cocycle,
    maltsev_check,
    medial_cocycles,
    monogenic_by_translations,
    normalize_cocycle,
    spelling_search,
    to_quandle,
    transform_cocycle,
    word_matches,
)
from .core import (
    IdentityProfile,
    LeftQuasigroup,
    automorphism_group,
    are_isomorphic,
    cayley_kernel,
    connectivity,
    direct_product,
    find_isomorphism,
    from_table,
    identity_profile,
    is_faithful,
    iso_and_aut,
    lmlt_and_dis,
    reductivity_level,
    squaring_profile,
    subalgebra_generate,
    word_s_map,
)
from .enumeration import (
    EnumSpec,
    dedupe_up_to_iso,
    enumerate_tables,
    enumerate_tables_plain,
)
from .errors import LqError
from .partition import Partition, all_partitions
from .perm import (
    GroupSeries,
    Perm,
    PermGroup,
    center,
    centralizer,
    commutator_subgroup,
    group_from_generators,
    group_series,
    is_semiregular,
    normal_closure,
    normal_subgroups,
    orbit_partition,
    stabilizer_partition,
)

__version__ = "0.1.0"
