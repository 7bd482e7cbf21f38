"""numreg: decide whether the numeration language of a linear positional
numeration system is regular, with exact certificates, and compile an
accepting automaton whenever it is."""

from .altbase import (
    AlternateBase,
    ExpansionBudget,
    ExpansionRecord,
    SuccessorGraph,
    build_graph,
    expand_one,
    extract_base,
    intermediate_w,
    quasi_greedy,
)
from .automaton import (
    Dfa,
    Nfa,
    SlenderDecomposition,
    compile_dfa,
    decompose_max_words,
    max_words_automaton,
)
from .decide import NOT_REGULAR, REGULAR, UNKNOWN, AnalysisReport, Budgets, VertexVerdict, analyze
from .errors import NumregError
from .numeration import PositionalSystem, oracle_language, system_from_max_words, word, word_str

__version__ = "0.1.0"

__all__ = [
    "PositionalSystem",
    "AlternateBase",
    "ExpansionBudget",
    "ExpansionRecord",
    "SuccessorGraph",
    "AnalysisReport",
    "Budgets",
    "VertexVerdict",
    "SlenderDecomposition",
    "Dfa",
    "Nfa",
    "NumregError",
    "REGULAR",
    "NOT_REGULAR",
    "UNKNOWN",
    "analyze",
    "extract_base",
    "expand_one",
    "build_graph",
    "quasi_greedy",
    "intermediate_w",
    "compile_dfa",
    "decompose_max_words",
    "max_words_automaton",
    "oracle_language",
    "system_from_max_words",
    "word",
    "word_str",
    "__version__",
]
