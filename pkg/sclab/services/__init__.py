"""
sclab Services Module

The computational layer: automata constructions, tableaux, exact
combinatorics, witness automata and the state-complexity verification
harness. Independent of the HTTP layer (routes), the CLI and the worker.
"""

from sclab.services.automata import BooleanOp, Dfa, Nfa
from sclab.services.complexity import VerificationReport, verify
from sclab.services.sweep import VerificationSweep
from sclab.services.tableaux import Tableau, TableauWord

__all__ = [
    'BooleanOp',
    'Dfa',
    'Nfa',
    'Tableau',
    'TableauWord',
    'VerificationReport',
    'VerificationSweep',
    'verify',
]
