"""
Hazard Record Models.
Canonical form of one hidden-danger investigation report and the raw
table text it is parsed from.

The field order of HazardRecord.to_dict() is the records.jsonl schema and
must not change.
"""

from dataclasses import dataclass, field
from datetime import date
from enum import Enum

from hazardkg.errors import InvalidRecordError

DOCUMENT_KEYS = (
    'id',
    'inspect_time',
    'location',
    'equipment_name',
    'hazard_content',
    'detail_category',
    'violation_info',
    'severity_level',
    'control_measures',
    'voltage_class',
    'extra',
)


class SeverityLevel(Enum):
    """Hazard evaluation level."""
    I = 'I'
    II = 'II'
    III = 'III'
    UNRATED = 'unrated'

    @classmethod
    def parse(cls, value):
        """Map a data-area string onto a level; unknown text is unrated."""
        text = (value or '').strip().upper().rstrip('级').strip()
        aliases = {
            'I': cls.I, '1': cls.I, '一': cls.I,
            'II': cls.II, '2': cls.II, '二': cls.II,
            'III': cls.III, '3': cls.III, '三': cls.III,
        }
        return aliases.get(text, cls.UNRATED)


@dataclass(frozen=True)
class RawTableText:
    """Plain text of one investigation table with its source name."""
    content: str
    source_name: str = ''


@dataclass(frozen=True)
class HeaderDataPair:
    """
    One recognized header with the data area that follows it.

    Attributes:
        header (str): Header text as it appears in the table
        value (str): Data area text, surrounding whitespace trimmed
        char_span (tuple): (start, end) offsets of the value
        header_span (tuple): (start, end) offsets of the header
    """
    header: str
    value: str
    char_span: tuple
    header_span: tuple = (0, 0)


@dataclass
class HazardRecord:
    """
    One normalized hidden-danger report.

    Attributes:
        id (str): Unique record identifier
        inspect_time (date): Investigation date, None when absent or unparseable
        location (str): Investigation place
        equipment_name (str): Equipment the hazard concerns
        hazard_content (str): Free-text hazard description
        detail_category (str): Detailed hazard classification
        violation_info (str): Violated regulation, if any
        severity_level (SeverityLevel): Evaluation level
        control_measures (str): Prevention and control measures
        voltage_class (str): Voltage class such as '220kV', or None
        extra (dict): Unknown headers and auxiliary attributes
    """
    id: str
    hazard_content: str = ''
    inspect_time: date = None
    location: str = ''
    equipment_name: str = ''
    detail_category: str = ''
    violation_info: str = ''
    severity_level: SeverityLevel = SeverityLevel.UNRATED
    control_measures: str = ''
    voltage_class: str = None
    extra: dict = field(default_factory=dict)

    @property
    def month(self):
        """Calendar month of the inspection, None when the date is unset."""
        return self.inspect_time.month if self.inspect_time else None

    def searchable_text(self):
        """Text fed to the search analyzer."""
        parts = (self.equipment_name, self.hazard_content, self.detail_category, self.control_measures)
        return '\n'.join(p for p in parts if p)

    def validate(self):
        """Check record invariants; raises InvalidRecordError."""
        if not self.id or not str(self.id).strip():
            raise InvalidRecordError('record id must be non-empty')
        if not self.hazard_content or not self.hazard_content.strip():
            raise InvalidRecordError(f'record {self.id}: hazard_content must be non-empty')
        if not isinstance(self.severity_level, SeverityLevel):
            raise InvalidRecordError(f'record {self.id}: invalid severity level')
        return self

    def to_dict(self):
        """Convert record to dictionary for JSON serialization."""
        return {
            'id': self.id,
            'inspect_time': self.inspect_time.isoformat() if self.inspect_time else None,
            'location': self.location,
            'equipment_name': self.equipment_name,
            'hazard_content': self.hazard_content,
            'detail_category': self.detail_category,
            'violation_info': self.violation_info,
            'severity_level': self.severity_level.value,
            'control_measures': self.control_measures,
            'voltage_class': self.voltage_class,
            'extra': dict(self.extra),
        }

    @classmethod
    def from_dict(cls, data):
        """Rebuild a record from its document form."""
        missing = [k for k in DOCUMENT_KEYS if k not in data]
        if missing:
            raise InvalidRecordError(f'document missing keys: {", ".join(missing)}')
        inspect_time = data['inspect_time']
        try:
            severity = SeverityLevel(data['severity_level'])
        except ValueError:
            raise InvalidRecordError(f'unknown severity level {data["severity_level"]!r}')
        return cls(
            id=data['id'],
            inspect_time=date.fromisoformat(inspect_time) if inspect_time else None,
            location=data['location'],
            equipment_name=data['equipment_name'],
            hazard_content=data['hazard_content'],
            detail_category=data['detail_category'],
            violation_info=data['violation_info'],
            severity_level=severity,
            control_measures=data['control_measures'],
            voltage_class=data['voltage_class'],
            extra=dict(data['extra'] or {}),
        )

    def __repr__(self):
        return f'<HazardRecord {self.id}>'
