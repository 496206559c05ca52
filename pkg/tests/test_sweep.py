import pytest

from sclab.services.automata import BooleanOp
from sclab.services.complexity import verify
from sclab.services.sweep import (
    CSV_HEADER,
    SweepCase,
    VerificationSweep,
    report_from_record,
    reports_to_csv,
)
from sclab.schemas import VerificationReportSchema


def test_cases_follow_input_order():
    cases = VerificationSweep.cases([3, 4], [3], [3, 4], [BooleanOp.XOR, BooleanOp.AND])
    assert [(c.m, c.p, c.op) for c in cases] == [
        (3, 3, BooleanOp.XOR), (3, 3, BooleanOp.AND),
        (3, 4, BooleanOp.XOR), (3, 4, BooleanOp.AND),
        (4, 3, BooleanOp.XOR), (4, 3, BooleanOp.AND),
        (4, 4, BooleanOp.XOR), (4, 4, BooleanOp.AND),
    ]


def test_local_sweep_returns_reports_in_order():
    sweep = VerificationSweep()
    cases = [SweepCase(3, 3, 3, BooleanOp.OR), SweepCase(3, 3, 3, BooleanOp.XOR)]
    reports = sweep.run(cases)
    assert [r.op for r in reports] == [BooleanOp.OR, BooleanOp.XOR]
    assert reports[1].computed_sc == 299
    assert all(r.passed for r in reports)


def test_process_pool_sweep_matches_serial_sweep():
    cases = VerificationSweep.cases([3, 4], [3], [3], [BooleanOp.XOR])
    serial = VerificationSweep().run(cases)
    pooled = VerificationSweep(workers=2).run(cases)
    assert [r.computed_sc for r in pooled] == [r.computed_sc for r in serial] == [299, 427]


def test_celery_dispatch_runs_eagerly():
    reports = VerificationSweep(dispatch='celery').run([SweepCase(3, 3, 3, BooleanOp.XOR)])
    assert reports[0].computed_sc == 299
    assert reports[0].op is BooleanOp.XOR


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        VerificationSweep(budget=0)


def test_csv_export():
    report = verify(3, 3, 3, BooleanOp.XOR)
    lines = reports_to_csv([report]).splitlines()
    assert lines[0] == ','.join(CSV_HEADER)
    assert lines[1] == '3,3,3,xor,299,299,false,PASSED'


def test_record_round_trip():
    report = verify(3, 3, 3, BooleanOp.OR)
    record = VerificationReportSchema.model_validate(report).model_dump(mode='json')
    rebuilt = report_from_record(record)
    assert (rebuilt.op, rebuilt.computed_sc, rebuilt.predicted, rebuilt.bound_only) == \
        (report.op, report.computed_sc, report.predicted, report.bound_only)
    assert record['status'] == 'PASSED'
    assert record['op_label'] == 'N∪P'
