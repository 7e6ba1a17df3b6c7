"""Regular and context-free path queries via Kronecker products and
incremental transitive closure."""
from .boolmat import BoolMatrix, BoolVector, MatrixSet, kron, kron_set, union_into, vec_mat_mul
from .closure import DynClosure
from .graph import LabeledGraph, graph_stats, load_graph, save_graph
from .index import KronIndex, build_index, load_index, reachable_pairs, save_index
from .language import Grammar, Rsm, grammar_to_rsm, parse_grammar, parse_regex, regex_to_rsm
from .paths import Budget, GraphPath, gen_index_paths, get_paths, word_of

__version__ = "0.1.0"

__all__ = [
    "BoolMatrix",
    "BoolVector",
    "Budget",
    "DynClosure",
    "Grammar",
    "GraphPath",
    "KronIndex",
    "LabeledGraph",
    "MatrixSet",
    "Rsm",
    "build_index",
    "gen_index_paths",
    "get_paths",
    "grammar_to_rsm",
    "graph_stats",
    "kron",
    "kron_set",
    "load_graph",
    "load_index",
    "parse_grammar",
    "parse_regex",
    "reachable_pairs",
    "regex_to_rsm",
    "save_graph",
    "save_index",
    "union_into",
    "vec_mat_mul",
    "word_of",
]
