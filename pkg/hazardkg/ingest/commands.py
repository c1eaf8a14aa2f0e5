"""
Ingest Commands.
Turns investigation table files into records.jsonl.
"""

import click

from hazardkg import pass_pipeline
from .parser import ingest_tables, load_header_lexicon, read_table, write_records


@click.command('ingest')
@click.option('--in', 'inputs', multiple=True, required=True,
              type=click.Path(dir_okay=False),
              help='Table text file (repeat for several files).')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Output records file (records.jsonl).')
@click.option('--headers', type=click.Path(dir_okay=False), default=None,
              help='Header lexicon, one header per line.')
@pass_pipeline
def ingest(pipeline, inputs, out, headers):
    """Parse hazard investigation tables into records."""
    out = out or pipeline.settings.records_path
    lexicon = load_header_lexicon(headers or pipeline.settings.header_lexicon_path)

    raws = [read_table(path) for path in inputs]
    records = ingest_tables(raws, lexicon)
    write_records(records, out)

    pipeline.logger.info(f'Ingested {len(records)} records from {len(raws)} tables into {out}')
    click.echo(f'ingested {len(records)} records -> {out}')
