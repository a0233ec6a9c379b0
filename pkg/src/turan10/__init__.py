"""Flat-spectrum unimodular tuples and their power-sum certificates.

The package constructs n-tuples of unit complex numbers whose power sums
S(nu) = sum_k z_k^nu stay near sqrt(n) over nu = 1..n^2, certifies them
against the classical lower and upper bounds, and runs the prime-jump plus
subset-removal pipeline that achieves sqrt(n) + o(sqrt(n)) for every n.
"""

from .certificates import (Certificate, Check, andersson_lower_check,
                           cassels_check, envelope_A, envelope_B,
                           erdos_renyi_bound, full_certificate, ncs_check,
                           ncs_lower_bound)
from .errors import DomainError, ResourceError, SearchError
from .evaluator import (PowerSumProfile, distinct_power_sum,
                        partition_expansion_check, power_sums_direct,
                        power_sums_fft, subset_moment)
from .numtheory import (CharacterTable, DifferenceSet, FiniteField, bose_set,
                        character_table, finite_field, gauss_sum_magnitude,
                        is_prime, next_prime, next_prime_in_progression,
                        primitive_root, sieve_primes, singer_set)
from .pipeline import (DeltaRecord, delta_sweep, theorem1_tuple,
                       theorem2_tuple, trim_tuple)
from .selector import (SearchConfig, SubsetSearchResult,
                       exhaustive_subset_search, moment_greedy_search,
                       random_subset_search, search_subset, subset_score)
from .tuples import (FloatTuple, RootTuple, bose_tuple, erdos_renyi_random,
                     montgomery, montgomery_modified, normalized,
                     singer_tuple, subtuple, to_float)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Check", "CharacterTable", "DeltaRecord", "DifferenceSet",
    "DomainError", "FiniteField", "FloatTuple", "PowerSumProfile",
    "ResourceError", "RootTuple", "SearchConfig", "SearchError",
    "SubsetSearchResult", "andersson_lower_check", "bose_set", "bose_tuple",
    "cassels_check", "character_table", "delta_sweep", "distinct_power_sum",
    "envelope_A", "envelope_B", "erdos_renyi_bound", "erdos_renyi_random",
    "exhaustive_subset_search", "finite_field", "full_certificate",
    "gauss_sum_magnitude", "is_prime", "moment_greedy_search",
    "montgomery", "montgomery_modified", "ncs_check", "ncs_lower_bound",
    "next_prime", "next_prime_in_progression", "normalized",
    "partition_expansion_check", "power_sums_direct", "power_sums_fft",
    "primitive_root", "random_subset_search", "search_subset",
    "sieve_primes", "singer_set", "singer_tuple", "subset_moment",
    "subset_score", "subtuple", "theorem1_tuple", "theorem2_tuple",
    "to_float", "trim_tuple",
]
