"""
Risk Prediction Rules.
Attribute predicates over record extras that predict hazard types.
"""

import json
import logging

from hazardkg.data import data_path
from hazardkg.errors import RuleFormatError
from hazardkg.models.hazard import Advisory, PredictionRule

logger = logging.getLogger(__name__)


def load_rules(path):
    """Read a rules file: a JSON list of rule objects."""
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise RuleFormatError(f'{path}: {e}')
    if not isinstance(data, list):
        raise RuleFormatError(f'{path}: expected a list of rules')
    rules = [PredictionRule.from_dict(item) for item in data]
    ids = [rule.rule_id for rule in rules]
    if len(set(ids)) != len(ids):
        raise RuleFormatError(f'{path}: duplicate rule ids')
    return rules


def default_rules():
    """The six shipped rules."""
    return load_rules(data_path('rules.json'))


def predict_risks(record, rules=None):
    """Advisories of every rule whose predicate holds for ``record``."""
    rules = default_rules() if rules is None else rules
    return [
        Advisory(record.id, rule.rule_id, rule.hazard_type, rule.advisory)
        for rule in rules
        if rule.matches(record)
    ]


def predict_all(records, rules=None):
    rules = default_rules() if rules is None else rules
    advisories = [advisory for record in records for advisory in predict_risks(record, rules)]
    logger.info(f'{len(advisories)} advisories for {len(records)} records')
    return advisories
