"""Deterministic error detection and correction protocols on graphs:
simulation engine, concrete protocols, exact-rational lower bounds and an
exhaustive desk-scale verifier."""

from .codes import (ExplicitCode, MDSCode, ParityCheckCode, RepetitionCode,
                    Symbol, Word, all_words, hamming_distance,
                    load_explicit_code, save_explicit_code)
from .engine import (AdaptiveProtocol, LocalView, Round, StaticSchedule,
                     Transcript, execute_adaptive, execute_static, is_linear,
                     normalized_cost)
from .errors import (CapacityError, ConstructionFault, ParameterError,
                     ProtocolFault)
from .graphs import (Cut, Graph, complete_graph, cut_set, cuts_of_size,
                     cycle_graph, graph_from_spec, hamiltonian_cycle,
                     load_graph, mix, path_graph, save_graph, spanning_tree)
from .progressions import (FreeSet, ProgressionEncoder, behrend_set,
                           build_encoder, exact_max_free_set, load_free_set,
                           save_free_set, smallest_range, verify_free)
from .protocols import (SymbolCycleGraph, build_cycle_graph, cycle_correct,
                        cycle_detect, load_cycle_graph, parity_protocol,
                        save_cycle_graph, triangle_protocol, trivial_correct,
                        trivial_detect, verify_properties)
from .bounds import (BoundReport, bound_report, closed_nkd, combined_bound,
                     dimension_bound, linear_bound, lp_bound, mds_bound)
from .verify import (Budgets, VerificationReport, collision_count,
                     cut_mixing_check, exhaustive_correct_check,
                     exhaustive_detect_check, extract_induced_cycle_graph,
                     induced_graph_checks, share_history_check)

__version__ = "0.1.0"
