"""Exact combinatorial Hopf-algebra machinery for renormalization.

Decorated rooted trees and their coproduct-by-cuts Hopf algebra, Birkhoff
factorization of Laurent-valued characters, the renormalization group and
its generator, Nijenhuis-deformed convolution products, quasi-shuffle and
Hall/Lyndon word combinatorics, combinatorial Dyson-Schwinger solvers, and
the universal singular frame.  All arithmetic is exact rational.
"""

from .trees import (Alphabet, EMPTY_FOREST, Forest, RootedTree, TreePoly,
                    admissible_cuts, b_plus, circ_power, enumerate_forests,
                    enumerate_trees, forests_of_weight, graft, hu_alphabet,
                    ladder, leaf, linear_extension_words, symmetry_factor,
                    trees_of_weight)
from .hopf import (TensorPoly, antipode, antipode_series, aug_power,
                   aug_tensors, bidegree, cocycle_check, coproduct, counit)
from .laurent import (LaurentSeries, LimitError, Poly, PoleOverflowError,
                      exp_t_poly, exp_tz_series, limit_at_zero,
                      minimal_subtraction, pole_free_part, rota_baxter_check)
from .characters import (BirkhoffPair, Functional, NonLocalityError,
                         TruncationError, birkhoff_bch, birkhoff_bogoliubov,
                         bogoliubov_bar, commutator, conv_inverse, conv_power,
                         convolve, exp_star, grading_Y, grading_flow,
                         infinite_simplex_integral, is_infinitesimal_on,
                         is_multiplicative, log_star, random_character,
                         rg_flow, rg_one_parameter_check, rg_substitute,
                         scattering_beta, theta_t, theta_tz,
                         time_ordered_counterterm)
from .nijenhuis import (bracket_lambda, circ_lambda, circ_n,
                        counterterm_exchange_sums, motion_integral_check,
                        motion_integral_residual, nijenhuis_check, star_r,
                        upsilon, upsilon_lambda)
from .words import (ADDITIVE_INT_PAIRING, Pairing, PairingError, WordPoly,
                    WordTensor, ZERO_PAIRING, compositions, concat_product,
                    contract_blocks, deconcat, deconcat_reduced, hoffman_exp,
                    hoffman_log, hu_pairing, lyndon_factorize, lyndon_words,
                    pi_map, qsh_product, unshuffle_reduced, word_antipode,
                    word_counit, zhao_dual)
from .hall import (HallSet, circ_graft, in_ideal, ipi_generator,
                   reduce_mod_ipi, tree_from_presentation)
from .dse import (DSESpec, ZetaValue, dse_word_solve, euler_expand,
                  foissy_criterion, phi_multiset, phi_paper,
                  predicted_left_legs, solve_dse, subalgebra_check,
                  tree_formula_solution, zeta_character)
from .usf import (ForestFunctional, FrameExpansion, alpha_tree_recursive,
                  alpha_word, chain_coefficient, functional_convolve,
                  functional_exp, functional_log, hall_lie_element,
                  hall_representation_check, simplex_integral, usf_alpha,
                  usf_beta, usf_expand)
from .parsing import (ParseError, parse_alphabet, parse_character_text,
                      parse_forest, parse_laurent, parse_poly, parse_rational,
                      parse_tree, parse_tree_poly, parse_word,
                      parse_word_poly, read_character_file,
                      read_dse_spec_file)

__version__ = "0.1.0"
