"""
sclab Worker Module

Celery worker running verification cases in the background, so sweeps can
fan out across processes or machines.
"""
