"""
sclab API Routes

JSON endpoints over the service layer: saturated tableau counts, the Bell
family sequences, witness automata and verification sweeps.
All requests are validated with Pydantic; all large integers are returned as
decimal strings.
"""

from datetime import datetime
import logging

from flask import Blueprint, current_app, jsonify, request
from pydantic import ValidationError

from sclab.schemas import (
    CountResponse,
    DfaDocument,
    ErrorResponse,
    SequenceResponse,
    SweepRequest,
    VerificationReportSchema,
    WitnessResponse,
)
from sclab.services.combinatorics import alpha, alpha_poly, alpha_prime, sequence
from sclab.services.errors import ScLabError, SizeError, SizeGuardExceededError, UnknownOperationError
from sclab.services.sweep import VerificationSweep
from sclab.services.witness import witness_triple

logger = logging.getLogger(__name__)

# Largest row/column count served by /alpha; alpha_poly has degree n*p
MAX_COUNT_DIMENSION = 12
MAX_SEQUENCE_INDEX = 500
MAX_WITNESS_SIZE = 256

# Create blueprint for API routes
api_bp = Blueprint('api', __name__)


# =============================================================================
# Error Handlers
# =============================================================================

def _error(code: str, message: str, status: int, details=None):
    body = ErrorResponse(error=code, message=message, details=details)
    return jsonify(body.model_dump(mode='json')), status


@api_bp.errorhandler(ValidationError)
def handle_validation_error(error: ValidationError):
    """Handle Pydantic validation errors."""
    details = [
        {'loc': list(e['loc']), 'msg': e['msg'], 'type': e['type']}
        for e in error.errors()
    ]
    return _error('VALIDATION_ERROR', 'Request validation failed', 400, details)


@api_bp.errorhandler(UnknownOperationError)
def handle_unknown_operation(error: UnknownOperationError):
    return _error('UNKNOWN_OPERATION', str(error), 400)


@api_bp.errorhandler(SizeError)
def handle_size_error(error: SizeError):
    """Sizes outside what the request can be computed for."""
    return _error('SIZE_REJECTED', str(error), 422)


@api_bp.errorhandler(ScLabError)
def handle_domain_error(error: ScLabError):
    return _error(type(error).__name__, str(error), 400)


# =============================================================================
# Counting Endpoints
# =============================================================================

@api_bp.route('/alpha/<int:n>/<int:p>', methods=['GET'])
def get_alpha(n: int, p: int):
    """
    Saturated n×p tableau counts.

    Returns:
        200: alpha, alpha_prime (null when n or p is 0) and the coefficients
             of the generating polynomial, lowest degree first
        422: dimensions above MAX_COUNT_DIMENSION
    """
    if max(n, p) > MAX_COUNT_DIMENSION:
        raise SizeGuardExceededError(
            f'alpha is served for n, p <= {MAX_COUNT_DIMENSION}, got ({n}, {p})'
        )
    response = CountResponse(
        n=n,
        p=p,
        alpha=str(alpha(n, p)),
        alpha_prime=str(alpha_prime(n, p)) if n and p else None,
        poly=alpha_poly(n, p).to_strings(),
    )
    return jsonify(response.model_dump(mode='json')), 200


@api_bp.route('/sequences/<name>/<int:k>', methods=['GET'])
def get_sequence(name: str, k: int):
    """
    Prefix of a Bell-family sequence (bell, rao, a296), indices 0..k.
    """
    if k > MAX_SEQUENCE_INDEX:
        raise SizeGuardExceededError(f'sequences are served up to index {MAX_SEQUENCE_INDEX}')
    try:
        values = sequence(name, k)
    except ValueError as e:
        return _error('UNKNOWN_SEQUENCE', str(e), 404)
    response = SequenceResponse(name=name.lower(), values=[str(v) for v in values])
    return jsonify(response.model_dump(mode='json')), 200


# =============================================================================
# Witness and Verification Endpoints
# =============================================================================

@api_bp.route('/witness/<int:m>/<int:n>/<int:p>', methods=['GET'])
def get_witness(m: int, n: int, p: int):
    """
    The witness triple A = W_m, B = W_n, C = W_p as DFA documents.

    Returns:
        200: {"a": ..., "b": ..., "c": ...}
        422: a size below 3 or above MAX_WITNESS_SIZE
    """
    if max(m, n, p) > MAX_WITNESS_SIZE:
        raise SizeGuardExceededError(f'witnesses are served up to {MAX_WITNESS_SIZE} states')
    a, b, c = witness_triple(m, n, p)
    response = WitnessResponse(
        a=DfaDocument.from_dfa(a),
        b=DfaDocument.from_dfa(b),
        c=DfaDocument.from_dfa(c),
    )
    return jsonify(response.model_dump(mode='json')), 200


@api_bp.route('/verify', methods=['POST'])
def post_verify():
    """
    Run a verification sweep synchronously.

    Request Body:
        - m, n, p: sizes or lists of sizes (each >= 3)
        - op: operation name or list of names (default "xor")
        - budget: optional state budget (defaults to the configured one)

    Returns:
        200: reports in input order, plus `passed` for the whole sweep
        400: validation error or unknown operation
        422: a case over the state budget
    """
    data = SweepRequest.model_validate(request.get_json(silent=True) or {})
    budget = data.budget or current_app.config['SETTINGS'].budget

    sweep = VerificationSweep(budget=budget)
    reports = sweep.run(sweep.cases(data.m, data.n, data.p, data.operations()))
    body = [VerificationReportSchema.model_validate(r).model_dump(mode='json') for r in reports]

    logger.info(f'POST /verify: {len(reports)} case(s), budget={budget}')
    return jsonify({
        'reports': body,
        'passed': all(r.passed for r in reports),
        'timestamp': datetime.utcnow().isoformat(),
    }), 200
