"""
sclab Pydantic Schemas

Pydantic models for the file formats, API payloads and CLI configuration.
These schemas validate everything crossing the package boundary before any
automaton is built; all counts leave the package as decimal strings.
"""

from datetime import datetime
from pathlib import Path
from typing import Literal, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    field_validator,
    model_validator,
)

from sclab.services.automata import BooleanOp, Dfa, Nfa, dfa_from_table
from sclab.services.tableaux import Tableau


# ============================================================================
# Automaton documents
# ============================================================================

class DfaDocument(BaseModel):
    """
    DFA file format: transitions[symbol][i] is the destination of state i.
    """

    alphabet: list[str] = Field(..., min_length=1)
    states: PositiveInt
    initial: int = Field(..., ge=0)
    finals: list[int] = Field(default_factory=list)
    transitions: dict[str, list[int]]

    @field_validator('alphabet', mode='after')
    @classmethod
    def single_character_symbols(cls, v: list[str]) -> list[str]:
        if any(len(symbol) != 1 for symbol in v):
            raise ValueError('alphabet symbols must be 1-character strings')
        if len(set(v)) != len(v):
            raise ValueError('alphabet symbols must be distinct')
        return v

    @model_validator(mode='after')
    def consistent_tables(self) -> 'DfaDocument':
        if set(self.transitions) != set(self.alphabet):
            raise ValueError('transitions must have exactly one entry per alphabet symbol')
        for symbol, column in self.transitions.items():
            if len(column) != self.states:
                raise ValueError(f'transitions[{symbol!r}] must have {self.states} entries')
        return self

    @classmethod
    def from_dfa(cls, dfa: Dfa) -> 'DfaDocument':
        return cls(
            alphabet=list(dfa.alphabet),
            states=dfa.state_count,
            initial=dfa.initial,
            finals=sorted(dfa.finals),
            transitions={
                symbol: [dfa.delta[q][a] for q in range(dfa.state_count)]
                for a, symbol in enumerate(dfa.alphabet)
            },
        )

    def to_dfa(self) -> Dfa:
        return dfa_from_table(self.alphabet, self.initial, self.finals, self.transitions)


class NfaDocument(BaseModel):
    """NFA file format: as DfaDocument with initial sets and destination sets."""

    alphabet: list[str] = Field(..., min_length=1)
    states: PositiveInt
    initials: list[int] = Field(default_factory=list)
    finals: list[int] = Field(default_factory=list)
    transitions: dict[str, list[list[int]]]

    @model_validator(mode='after')
    def consistent_tables(self) -> 'NfaDocument':
        if set(self.transitions) != set(self.alphabet):
            raise ValueError('transitions must have exactly one entry per alphabet symbol')
        for symbol, column in self.transitions.items():
            if len(column) != self.states:
                raise ValueError(f'transitions[{symbol!r}] must have {self.states} entries')
        return self

    @classmethod
    def from_nfa(cls, nfa: Nfa) -> 'NfaDocument':
        return cls(
            alphabet=list(nfa.alphabet),
            states=nfa.state_count,
            initials=sorted(nfa.initials),
            finals=sorted(nfa.finals),
            transitions={
                symbol: [sorted(nfa.delta[q][a]) for q in range(nfa.state_count)]
                for a, symbol in enumerate(nfa.alphabet)
            },
        )

    def to_nfa(self) -> Nfa:
        delta = tuple(
            tuple(frozenset(self.transitions[symbol][q]) for symbol in self.alphabet)
            for q in range(self.states)
        )
        return Nfa(
            tuple(self.alphabet),
            self.states,
            frozenset(self.initials),
            frozenset(self.finals),
            delta,
        )


# ============================================================================
# Counting schemas
# ============================================================================

class CountResponse(BaseModel):
    """Saturated tableau counts for one (n, p)."""

    n: int
    p: int
    alpha: str
    alpha_prime: Optional[str] = None
    poly: list[str] = Field(default_factory=list, description='Coefficients of α_{n,p}(t), lowest degree first')


class SequenceResponse(BaseModel):
    name: str
    values: list[str]


class WitnessResponse(BaseModel):
    a: DfaDocument
    b: DfaDocument
    c: DfaDocument


# ============================================================================
# Verification schemas
# ============================================================================

def _resolve_op(value):
    if isinstance(value, BooleanOp):
        return value
    return BooleanOp.from_name(str(value))


class VerificationReportSchema(BaseModel):
    """Serialized VerificationReport."""

    model_config = ConfigDict(from_attributes=True)

    m: int
    n: int
    p: int
    op: str
    op_label: str
    computed_sc: int
    predicted: int
    bound_only: bool
    accessible_count: int
    saturated_state_count: int
    status: Literal['PASSED', 'FAILED']
    elapsed_ms: Optional[int] = None

    @model_validator(mode='before')
    @classmethod
    def flatten_report(cls, data):
        """Accept a VerificationReport instance as well as a plain mapping."""
        if isinstance(data, dict):
            return data
        op = data.op
        return {
            'm': data.m,
            'n': data.n,
            'p': data.p,
            'op': op.name.lower(),
            'op_label': op.label,
            'computed_sc': data.computed_sc,
            'predicted': data.predicted,
            'bound_only': data.bound_only,
            'accessible_count': data.accessible_count,
            'saturated_state_count': data.saturated_state_count,
            'status': data.status,
            'elapsed_ms': int(data.elapsed.total_seconds() * 1000),
        }

    @field_validator('op', mode='before')
    @classmethod
    def normalize_op(cls, v) -> str:
        return _resolve_op(v).name.lower()

    @property
    def passed(self) -> bool:
        return self.status == 'PASSED'


class SweepRequest(BaseModel):
    """A sweep over every (m, n, p, op) combination, in the given order."""

    m: list[int] = Field(..., min_length=1)
    n: list[int] = Field(..., min_length=1)
    p: list[int] = Field(..., min_length=1)
    op: list[str] = Field(default_factory=lambda: ['xor'], min_length=1)
    budget: Optional[PositiveInt] = None

    @field_validator('m', 'n', 'p', mode='before')
    @classmethod
    def accept_scalars(cls, v):
        return [v] if isinstance(v, int) else v

    @field_validator('op', mode='before')
    @classmethod
    def accept_single_op(cls, v):
        return [v] if isinstance(v, str) else v

    @field_validator('m', 'n', 'p', mode='after')
    @classmethod
    def at_least_three(cls, v: list[int]) -> list[int]:
        if any(size < 3 for size in v):
            raise ValueError('witness sizes must be >= 3')
        return v

    @field_validator('op', mode='after')
    @classmethod
    def known_ops(cls, v: list[str]) -> list[str]:
        return [_resolve_op(name).name.lower() for name in v]

    def operations(self) -> list[BooleanOp]:
        return [BooleanOp.from_name(name) for name in self.op]


# ============================================================================
# CLI configuration
# ============================================================================

class CliConfig(BaseModel):
    """One validated CLI invocation."""

    subcommand: Literal['count', 'enumerate', 'saturate', 'witness', 'verify', 'sequences']
    m: list[int] = Field(default_factory=list)
    n: list[int] = Field(default_factory=list)
    p: list[int] = Field(default_factory=list)
    op: list[str] = Field(default_factory=list)
    output_format: Literal['table', 'csv', 'json'] = 'table'
    budget: PositiveInt = 2 ** 22
    output: Optional[Path] = None
    poly: bool = False
    origin: bool = False
    list_tableaux: bool = False
    cross_check: bool = False
    dispatch: Literal['local', 'celery'] = 'local'
    workers: PositiveInt = 1
    sequence: Optional[Literal['bell', 'rao', 'a296']] = None
    length: int = Field(default=0, ge=0)
    tableau: Optional[str] = None

    @model_validator(mode='after')
    def ranges_present(self) -> 'CliConfig':
        needs = {
            'count': ('n', 'p'),
            'enumerate': ('n', 'p'),
            'saturate': (),
            'witness': ('m', 'n', 'p'),
            'verify': ('m', 'n', 'p'),
            'sequences': (),
        }[self.subcommand]
        for name in needs:
            if not getattr(self, name):
                raise ValueError(f'{self.subcommand} needs a non-empty {name}')
        if self.subcommand == 'sequences' and self.sequence is None:
            raise ValueError('sequences needs a sequence name')
        if self.subcommand == 'saturate':
            if not (self.tableau or '').strip():
                raise ValueError('saturate needs a non-empty tableau')
            Tableau.from_text(self.tableau)
        return self


# ============================================================================
# Error Schemas
# ============================================================================

class ErrorResponse(BaseModel):
    """Standard error response schema."""

    error: str
    message: str
    details: Optional[dict | list] = None
    timestamp: datetime = Field(default_factory=datetime.utcnow)
