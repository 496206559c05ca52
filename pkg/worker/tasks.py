"""
sclab Celery Tasks

Background tasks for the verification harness. Results are JSON records in
the VerificationReportSchema layout so any client can read them back.
"""

from datetime import datetime

from celery.utils.log import get_task_logger

from sclab.config import get_settings
from sclab.schemas import VerificationReportSchema
from sclab.services.automata import BooleanOp
from sclab.services.complexity import DEFAULT_BUDGET, verify
from worker.celery_config import celery_app

# Use Celery's task logger for proper log aggregation
logger = get_task_logger(__name__)


@celery_app.task(
    bind=True,
    name='worker.tasks.verify_case',
    max_retries=0,
)
def verify_case(
    self,
    m: int,
    n: int,
    p: int,
    op: str,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """
    Run verify() on the witness triple (m, n, p) for the named operation.

    Args:
        m, n, p: witness sizes (>= 3)
        op: operation name or alias ('xor', 'and', 'nor', ...)
        budget: state budget for the combined automaton

    Returns:
        Dict in the VerificationReportSchema layout
    """
    operation = BooleanOp.from_name(op)
    logger.info(f'Starting verification ({m}, {n}, {p}, {operation.label}), task {self.request.id}')
    report = verify(m, n, p, operation, budget)
    logger.info(f'Verification ({m}, {n}, {p}, {operation.label}) {report.status}')
    return VerificationReportSchema.model_validate(report).model_dump(mode='json')


@celery_app.task(name='worker.tasks.health_check')
def health_check() -> dict:
    """Round trip through the broker; reports the worker's state budget."""
    return {
        'status': 'healthy',
        'service': 'sclab-worker',
        'budget': get_settings().budget,
        'timestamp': datetime.utcnow().isoformat(),
    }
