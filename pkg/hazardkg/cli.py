"""
Command Line Interface.
Single `hazardkg` entry point for every pipeline stage.

Failures print one line, `hazardkg: error: <code>: <message>`, to stderr and
exit with status 1; usage errors exit with status 2.
"""

import sys

import click

from hazardkg import __version__, create_pipeline
from hazardkg.errors import HazardKGError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def format_error(error):
    """One machine-parseable line for a failure."""
    if isinstance(error, HazardKGError):
        return f'hazardkg: error: {error.code}: {error.message}'
    if isinstance(error, OSError):
        detail = error.strerror or str(error)
        path = f': {error.filename}' if error.filename else ''
        return f'hazardkg: error: io-error: {detail}{path}'
    return f'hazardkg: error: {type(error).__name__}: {error}'


class PipelineGroup(click.Group):
    """Command group that turns pipeline failures into the one-line error format."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (HazardKGError, OSError) as e:
            click.echo(format_error(e), err=True)
            ctx.exit(EXIT_FAILURE)


@click.group(cls=PipelineGroup)
@click.version_option(__version__, prog_name='hazardkg')
@click.option('--verbose', is_flag=True, help='Log debug messages to stderr.')
@click.option('--config', 'config_file', type=click.Path(dir_okay=False), default=None,
              help='Settings file (KEY=value lines named after the settings).')
@click.option('--env', 'config_name', type=click.Choice(['development', 'testing', 'production']),
              default=None, help='Configuration environment (default: $HAZARDKG_ENV).')
@click.pass_context
def cli(ctx, verbose, config_file, config_name):
    """Substation hidden-danger knowledge pipeline."""
    try:
        ctx.obj = create_pipeline(config_name, config_file=config_file, verbose=verbose)
    except HazardKGError as e:
        click.echo(format_error(e), err=True)
        ctx.exit(EXIT_FAILURE)


def register_commands(group):
    """Attach every stage's commands to the group."""
    from hazardkg.ingest.commands import ingest
    from hazardkg.segmenter.commands import evaluate, segment, train
    from hazardkg.search.commands import delete, index, merge, search
    from hazardkg.graph.commands import kg
    from hazardkg.analytics.commands import predict, stats

    for command in (ingest, train, segment, evaluate, index, search, delete, merge, kg, stats, predict):
        group.add_command(command)


register_commands(cli)


def run_command(argv):
    """
    Run one command line and return its exit code.

    Output goes to the current stdout and stderr.
    """
    try:
        result = cli.main(args=list(argv), prog_name='hazardkg', standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo('Aborted!', err=True)
        return EXIT_FAILURE
    return result if isinstance(result, int) else EXIT_OK


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
