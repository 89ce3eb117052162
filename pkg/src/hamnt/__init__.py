"""Exact computations with codes in Hamming graphs H(m, q) and their diagonal automorphisms."""

from .codes import (
    Code,
    DistancePartition,
    NTCertificate,
    distance_partition,
    is_completely_regular,
    is_completely_transitive,
    is_connected,
    is_diagonally_nt,
    is_nt,
    is_qary_design,
    is_s_regular,
    min_distance,
    neighbour_set,
    parse_code,
    read_code,
    setwise_stabilizer,
    write_code,
)
from .families import (
    FamilyTag,
    Variant,
    a_group,
    all_fpa,
    classify,
    inj,
    perm_code,
    rep,
    rep_p_blowup,
    w_half,
)
from .hamming import HammingAut, apply, distance, nu
from .limits import CapacityError, ParseError
from .perm import Permutation, PermGroup, all_subgroups, generate, normalizer_in_sym

__version__ = "0.1.0"
