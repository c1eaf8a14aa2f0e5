"""
Analytics Commands.
Monthly hazard statistics and rule-based risk prediction.
"""

import json

import click

from hazardkg import pass_pipeline
from hazardkg.ingest.parser import read_records
from hazardkg.models.hazard import MONTH_NAMES
from .rules import default_rules, load_rules, predict_all
from .statistics import category_counts, monthly_counts, seasonal_flags, stats_report


@click.command('stats')
@click.option('--records', 'records_path', type=click.Path(dir_okay=False), default=None,
              help='Records file (records.jsonl).')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Plot-data CSV (month, type, count).')
@click.option('--factor', type=float, default=None,
              help='Seasonal flag factor over the monthly mean (default 1.5).')
@click.option('--categories', is_flag=True, help='Also print record counts per broad hazard category.')
@pass_pipeline
def stats(pipeline, records_path, out, factor, categories):
    """Count the six hazard types per month and flag seasonal peaks."""
    factor = factor if factor is not None else pipeline.settings.seasonal_factor
    records = read_records(records_path or pipeline.settings.records_path)

    monthly = monthly_counts(records)
    table, _ = stats_report(monthly, out)
    click.echo(table, nl=False)
    for hazard_type, month in seasonal_flags(monthly, factor):
        click.echo(f'flag: {hazard_type.code} {hazard_type.value} peaks in {MONTH_NAMES[month - 1]}')
    if monthly.excluded_undated or monthly.excluded_unclassified:
        click.echo(f'excluded: {len(monthly.excluded_undated)} undated, '
                   f'{len(monthly.excluded_unclassified)} unclassified')
    if categories:
        for label, count in category_counts(records).items():
            click.echo(f'category: {label}\t{count}')


@click.command('predict')
@click.option('--records', 'records_path', type=click.Path(dir_okay=False), default=None,
              help='Records file (records.jsonl).')
@click.option('--rules', 'rules_path', type=click.Path(dir_okay=False), default=None,
              help='Rules file (JSON list); the six shipped rules when omitted.')
@pass_pipeline
def predict(pipeline, records_path, rules_path):
    """Print one JSON advisory per line for every fired rule."""
    records = read_records(records_path or pipeline.settings.records_path)
    rules = load_rules(rules_path) if rules_path else default_rules()
    for advisory in predict_all(records, rules):
        click.echo(json.dumps(advisory.to_dict(), ensure_ascii=False, sort_keys=True))
