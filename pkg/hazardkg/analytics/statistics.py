"""
Hazard Statistics.
Monthly counts of the six hazard types, seasonal flags and report files.
"""

import csv
import io
import logging
from collections import Counter

from hazardkg.errors import InvalidInputError
from hazardkg.graph.extraction import load_lexicons
from hazardkg.models.hazard import MONTH_NAMES, HazardType, MonthlyStats
from .classify import classify_hazard, load_hazard_keywords

logger = logging.getLogger(__name__)

DEFAULT_SEASONAL_FACTOR = 1.5


def monthly_counts(records, keywords=None):
    """
    Count classified records per (hazard type, month).

    Records without an inspection month or without a hazard type are left
    out and listed in the result.
    """
    keywords = keywords or load_hazard_keywords()
    tally = Counter()
    undated, unclassified = [], []
    for record in records:
        if record.month is None:
            undated.append(record.id)
            continue
        hazard_type = classify_hazard(record, keywords)
        if hazard_type is None:
            unclassified.append(record.id)
            continue
        tally[(hazard_type, record.month)] += 1

    months = frozenset(month for _, month in tally)
    counts = {(t, m): tally[(t, m)] for t in HazardType for m in sorted(months)}
    if undated or unclassified:
        logger.info(f'Excluded {len(undated)} undated and {len(unclassified)} unclassified records')
    return MonthlyStats(counts, months, undated, unclassified)


def seasonal_flags(stats, factor=DEFAULT_SEASONAL_FACTOR):
    """
    (hazard type, month) pairs whose count exceeds ``factor`` times the
    type's mean over the covered months.
    """
    if not factor > 0:
        raise InvalidInputError(f'factor must be > 0, got {factor}')
    months = sorted(stats.months_covered)
    if not months:
        return []
    flags = []
    for hazard_type in HazardType:
        total = stats.total(hazard_type)
        for month in months:
            # count > factor * total / n, kept in integers on the left
            if stats.count(hazard_type, month) * len(months) > factor * total:
                flags.append((hazard_type, month))
    return flags


def category_counts(records, lexicons=None):
    """Records per broad hazard category, largest first then by name."""
    lexicons = lexicons or load_lexicons()
    tally = Counter(
        lexicons.canonical_category(record.detail_category)
        for record in records
        if record.detail_category and record.detail_category.strip()
    )
    return dict(sorted(tally.items(), key=lambda item: (-item[1], item[0])))


def stats_table(stats):
    """Hazard types as rows, covered months as columns, plus a total column."""
    months = sorted(stats.months_covered)
    headers = ['Type', 'Hazard'] + [MONTH_NAMES[m - 1][:3] for m in months] + ['Total']
    rows = [
        [t.code, t.value] + [str(stats.count(t, m)) for m in months] + [str(stats.total(t))]
        for t in HazardType
    ]
    widths = [max(len(row[i]) for row in [headers] + rows) for i in range(len(headers))]

    def line(cells):
        return '  '.join(
            cell.ljust(width) if i < 2 else cell.rjust(width)
            for i, (cell, width) in enumerate(zip(cells, widths))
        ).rstrip()

    return '\n'.join([line(headers)] + [line(row) for row in rows]) + '\n'


def stats_csv(stats):
    """Plot data: one (month, type, count) row per covered month and hazard type."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['month', 'type', 'count'])
    for month in sorted(stats.months_covered):
        for hazard_type in HazardType:
            writer.writerow([month, hazard_type.code, stats.count(hazard_type, month)])
    return buffer.getvalue()


def stats_report(stats, csv_path=None):
    """
    Render the month x type table and, when ``csv_path`` is given, write
    the plot-data file.

    Returns:
        tuple: (table text, csv text)
    """
    table, plot_data = stats_table(stats), stats_csv(stats)
    if csv_path:
        with open(csv_path, 'w', encoding='utf-8', newline='') as f:
            f.write(plot_data)
        logger.info(f'Wrote plot data for {len(stats.months_covered)} months to {csv_path}')
    return table, plot_data
