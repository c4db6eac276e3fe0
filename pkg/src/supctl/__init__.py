"""Supremal sublanguage synthesis and coordinator-based control for discrete-event systems."""

from .checks import (Witness, check_controllability, check_normality, check_observability,
                     check_rel_observability)
from .coordination import (ComparisonReport, build_coordinator, check_cond_decomposable, compare,
                           extend_coordinator_alphabet, make_setup, run_coordination, run_monolithic)
from .errors import (BoundError, ConsistencyError, InclusionError, InputError, ParseError,
                     SupctlError, TheoremViolation)
from .fsa import (EventAlphabet, Generator, Projection, StringSet, accessible, empty,
                  enumerate_language, epsilon, from_words, generates, refine_pair, word)
from .langops import (intersection, inverse_projection, language_eq, language_leq,
                      natural_projection, project_string, sync_product, union)
from .mutual import (ModularInstance, check_gm_k_obs, check_gmc, check_gmn, check_mc, check_mn,
                     check_mutual_l_obs, check_wgmc)
from .oracle import brute_maximal_observable, brute_supremal, random_instance
from .supervisor import Supervisor, closed_loop, induce_supervisor
from .synthesis import (Flavor, sup_combined, sup_controllable, sup_normal, sup_rel_observable,
                        synthesize)
from .textio import parse_generator, read_generator, serialize_generator, to_dot
