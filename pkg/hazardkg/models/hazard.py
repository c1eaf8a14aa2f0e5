"""
Hazard Analysis Models.
Hazard type taxonomy, monthly statistics and prediction rules.
"""

import operator
from dataclasses import dataclass, field
from enum import Enum

from hazardkg.errors import RuleFormatError

MONTH_NAMES = ('January', 'February', 'March', 'April', 'May', 'June', 'July',
               'August', 'September', 'October', 'November', 'December')


class HazardType(Enum):
    """The six substation hazard types."""
    E1 = 'winding_deformation'
    E2 = 'fault_shutdown'
    E3 = 'protection_misoperation'
    E4 = 'drainage_line_falloff'
    E5 = 'pollution_rain_flashover'
    E6 = 'mechanism_pressure_relief'

    @property
    def code(self):
        return self.name

    @classmethod
    def parse(cls, value):
        """Accept either the code ('E1') or the value ('winding_deformation')."""
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        if text.upper() in cls.__members__:
            return cls[text.upper()]
        return cls(text.lower())


@dataclass
class MonthlyStats:
    """
    Counts of hazard types per calendar month.

    Attributes:
        counts (dict): (HazardType, month) -> count, filled for every covered month
        months_covered (frozenset): Months with at least one counted record
        excluded_undated (list): Ids of records without an inspection month
        excluded_unclassified (list): Ids of dated records with no hazard type
    """
    counts: dict = field(default_factory=dict)
    months_covered: frozenset = frozenset()
    excluded_undated: list = field(default_factory=list)
    excluded_unclassified: list = field(default_factory=list)

    def count(self, hazard_type, month):
        return self.counts.get((hazard_type, month), 0)

    def total(self, hazard_type):
        return sum(self.count(hazard_type, m) for m in self.months_covered)

    @property
    def totals(self):
        return {t: self.total(t) for t in HazardType}

    def scaled(self, factor):
        """Copy with every count multiplied by an integer factor."""
        return MonthlyStats(
            counts={k: v * factor for k, v in self.counts.items()},
            months_covered=self.months_covered,
        )


COMPARATORS = {
    '>': operator.gt,
    '>=': operator.ge,
    '<': operator.lt,
    '<=': operator.le,
    '==': operator.eq,
    '!=': operator.ne,
}

_TRUE_WORDS = {'true', 'yes', 'y', '1', 'on', '是', '已'}
_FALSE_WORDS = {'false', 'no', 'n', '0', 'off', '否', '未'}


def coerce_bool(value):
    """bool for booleans and yes/no words, None when the value is not boolean-like."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)) and value in (0, 1):
        return bool(value)
    text = str(value).strip().lower()
    if text in _TRUE_WORDS:
        return True
    if text in _FALSE_WORDS:
        return False
    return None


def coerce_number(value):
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return float(str(value).strip())
    except ValueError:
        return None


@dataclass(frozen=True)
class PredictionRule:
    """
    Attribute predicate that predicts a hazard type.

    The predicate reads record.extra[attribute]; a missing or uncomparable
    attribute never fires. When equipment_keywords is non-empty the record's
    equipment name must contain one of them.
    """
    rule_id: str
    attribute: str
    comparator: str
    value: object
    hazard_type: HazardType
    advisory: str
    equipment_keywords: tuple = ()

    def __post_init__(self):
        if self.comparator not in COMPARATORS:
            raise RuleFormatError(f'rule {self.rule_id}: unknown comparator {self.comparator!r}')

    def matches(self, record):
        """Pure, total predicate over a record."""
        if self.equipment_keywords:
            equipment = (record.equipment_name or '').casefold()
            if not any(k.casefold() in equipment for k in self.equipment_keywords):
                return False
        if self.attribute not in record.extra:
            return False
        actual = record.extra[self.attribute]
        compare = COMPARATORS[self.comparator]
        if isinstance(self.value, bool):
            actual_bool = coerce_bool(actual)
            return actual_bool is not None and compare(actual_bool, self.value)
        expected = coerce_number(self.value)
        if expected is not None:
            actual_number = coerce_number(actual)
            return actual_number is not None and compare(actual_number, expected)
        return compare(str(actual).strip().casefold(), str(self.value).strip().casefold())

    def to_dict(self):
        data = {
            'rule_id': self.rule_id,
            'attribute': self.attribute,
            'comparator': self.comparator,
            'value': self.value,
            'hazard_type': self.hazard_type.code,
            'advisory': self.advisory,
        }
        if self.equipment_keywords:
            data['equipment_keywords'] = list(self.equipment_keywords)
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                rule_id=str(data['rule_id']),
                attribute=str(data['attribute']),
                comparator=str(data['comparator']),
                value=data['value'],
                hazard_type=HazardType.parse(data['hazard_type']),
                advisory=str(data['advisory']),
                equipment_keywords=tuple(data.get('equipment_keywords', ())),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise RuleFormatError(f'malformed rule {data!r}: {e}')


@dataclass(frozen=True)
class Advisory:
    """A fired prediction rule for one record."""
    record_id: str
    rule_id: str
    hazard_type: HazardType
    advisory: str

    def to_dict(self):
        return {
            'record_id': self.record_id,
            'rule_id': self.rule_id,
            'hazard_type': self.hazard_type.code,
            'advisory': self.advisory,
        }
