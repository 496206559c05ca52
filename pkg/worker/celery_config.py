"""
sclab Celery Configuration

Celery 5+ configuration for distributed verification sweeps.
Uses Redis as both broker and result backend; the testing environment runs
tasks eagerly in-process.
"""

from celery import Celery
from kombu import Queue

from sclab.config import BaseConfig, get_settings


def make_celery(app_name: str = 'sclab', settings: BaseConfig = None) -> Celery:
    """
    Celery app for verification sweeps, configured from sclab settings.

    `settings` defaults to the cached settings of SC_LAB_ENV; under
    TestingConfig tasks run eagerly and exceptions propagate to the caller.
    """
    settings = settings or get_settings()
    celery = Celery(
        app_name,
        broker=settings.celery_broker_url,
        backend=settings.celery_result_backend,
        include=['worker.tasks'],
    )

    celery.conf.update(
        # Task execution settings
        task_serializer='json',
        accept_content=['json'],
        result_serializer='json',
        timezone='UTC',
        enable_utc=True,

        # Task behavior
        task_track_started=True,
        task_time_limit=1800,  # the largest desk-scale cases take about a minute
        task_soft_time_limit=1500,
        task_always_eager=settings.celery_always_eager,
        task_eager_propagates=True,

        # Worker settings
        worker_prefetch_multiplier=1,  # cases are long and uneven
        worker_concurrency=4,

        # Result backend settings
        result_expires=3600,
        result_extended=True,

        # Task routing
        task_queues=(
            Queue('default', routing_key='default'),
            Queue('verification', routing_key='verification'),
        ),
        task_default_queue='default',
        task_default_exchange='sclab',
        task_default_routing_key='default',
        task_routes={
            'worker.tasks.verify_case': {'queue': 'verification'},
        },

        task_acks_late=True,
        task_reject_on_worker_lost=True,
        broker_connection_retry_on_startup=True,
    )

    return celery


# Create the Celery application instance
celery_app = make_celery()
