"""
sclab Verification Sweep Service

Runs verify() over a grid of (m, n, p, op) cases and collects the reports in
input order. Cases are independent, so they can be fanned out:

- local:  in-process, optionally over a process pool
- celery: one `worker.tasks.verify_case` task per case, gathered as a group

Whatever the dispatch, the returned list follows the order of the cases.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import timedelta
from itertools import product
from typing import Iterable, Literal
import csv
import io
import logging

from sclab.services.automata import BooleanOp
from sclab.services.complexity import DEFAULT_BUDGET, VerificationReport, verify

logger = logging.getLogger(__name__)

CSV_HEADER = ('m', 'n', 'p', 'op', 'computed', 'predicted', 'bound_only', 'status')

Dispatch = Literal['local', 'celery']


@dataclass(frozen=True)
class SweepCase:
    m: int
    n: int
    p: int
    op: BooleanOp


def _run_case(case: SweepCase, budget: int) -> VerificationReport:
    return verify(case.m, case.n, case.p, case.op, budget)


def report_from_record(record: dict) -> VerificationReport:
    """Rebuild a report from its serialized form (as returned by the worker)."""
    return VerificationReport(
        m=record['m'],
        n=record['n'],
        p=record['p'],
        op=BooleanOp.from_name(record['op']),
        computed_sc=record['computed_sc'],
        predicted=record['predicted'],
        bound_only=record['bound_only'],
        accessible_count=record['accessible_count'],
        saturated_state_count=record['saturated_state_count'],
        elapsed=timedelta(milliseconds=record.get('elapsed_ms') or 0),
    )


class VerificationSweep:
    """
    Verification harness over many cases.

    Usage:
        sweep = VerificationSweep(budget=2**22)
        reports = sweep.run(sweep.cases([3, 4], [3], [3], [BooleanOp.XOR]))
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, dispatch: Dispatch = 'local', workers: int = 1):
        if budget <= 0:
            raise ValueError('The state budget must be positive')
        self.budget = budget
        self.dispatch = dispatch
        self.workers = max(1, workers)

    @staticmethod
    def cases(
        ms: Iterable[int],
        ns: Iterable[int],
        ps: Iterable[int],
        ops: Iterable[BooleanOp],
    ) -> list[SweepCase]:
        """Cartesian product of the ranges, m varying slowest and op fastest."""
        return [SweepCase(m, n, p, op) for m, n, p, op in product(ms, ns, ps, ops)]

    def run(self, cases: list[SweepCase]) -> list[VerificationReport]:
        logger.info(f'Running {len(cases)} verification case(s) via {self.dispatch}')
        if self.dispatch == 'celery':
            reports = self._run_celery(cases)
        elif self.workers > 1 and len(cases) > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                reports = list(pool.map(_run_case, cases, [self.budget] * len(cases)))
        else:
            reports = [_run_case(case, self.budget) for case in cases]

        failed = [r for r in reports if not r.passed]
        if failed:
            logger.warning(f'{len(failed)} of {len(reports)} verification(s) FAILED')
        else:
            logger.info(f'All {len(reports)} verification(s) passed')
        return reports

    def _run_celery(self, cases: list[SweepCase]) -> list[VerificationReport]:
        # Import here to avoid a hard dependency on the worker at import time
        from celery import group
        from worker.tasks import verify_case

        job = group(
            verify_case.s(case.m, case.n, case.p, case.op.name.lower(), self.budget)
            for case in cases
        )
        records = job.apply_async().get()
        return [report_from_record(record) for record in records]


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    """CSV export with header m,n,p,op,computed,predicted,bound_only,status."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow([
            r.m, r.n, r.p, r.op.name.lower(), r.computed_sc, r.predicted,
            str(r.bound_only).lower(), r.status,
        ])
    return buffer.getvalue()
