"""Synchronizing automata: word matrices, solution spans and reset-word oracles."""

from .automaton import Dfa, StateSet, apply_word, image_of_automaton, is_strongly_connected, is_synchronizing
from .chain import ChainLimits, ChainTrace, build_chain, subspace_report, verify_dimension_law
from .corpus import builtin, parse, random_automaton, serialize
from .matrices import WordMatrix, column_units, matrix_of_word, multiply, nonzero_columns, rank
from .oracle import greedy_reset, rank_k_word, shortest_reset
from .series import SeriesContext, is_solution, propagate_solution, pseudoinverses, series, solve_equation
from .space import RationalCombo, SpanBasis, dimension_bound, evaluate_combo, extend_basis, is_word_matrix, column_basis

__all__ = [
    "ChainLimits", "ChainTrace", "Dfa", "RationalCombo", "SeriesContext", "SpanBasis", "StateSet", "WordMatrix",
    "apply_word", "build_chain", "builtin", "column_units", "dimension_bound", "evaluate_combo", "extend_basis",
    "greedy_reset", "image_of_automaton", "is_solution", "is_strongly_connected", "is_synchronizing",
    "is_word_matrix", "column_basis", "matrix_of_word", "multiply", "nonzero_columns", "parse",
    "propagate_solution", "pseudoinverses", "random_automaton", "rank", "rank_k_word", "serialize", "series",
    "shortest_reset", "solve_equation", "subspace_report", "verify_dimension_law",
]
