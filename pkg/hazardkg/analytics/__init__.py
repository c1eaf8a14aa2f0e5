"""Hazard statistics, seasonal patterns and rule-based risk prediction."""
from .classify import classify_hazard, load_hazard_keywords
from .statistics import (
    DEFAULT_SEASONAL_FACTOR, category_counts, monthly_counts, seasonal_flags, stats_csv, stats_report,
    stats_table
)
from .rules import default_rules, load_rules, predict_all, predict_risks

__all__ = [
    'classify_hazard', 'load_hazard_keywords',
    'DEFAULT_SEASONAL_FACTOR', 'category_counts', 'monthly_counts', 'seasonal_flags', 'stats_csv',
    'stats_report', 'stats_table',
    'default_rules', 'load_rules', 'predict_all', 'predict_risks',
]
