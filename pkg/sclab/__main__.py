"""python -m sclab: the command line (see sclab.cli)."""

from sclab.cli import cli

cli(prog_name='sclab')
