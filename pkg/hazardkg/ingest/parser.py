"""
Investigation Table Parser.
Extracts header/data areas from plain-text investigation tables and
assembles them into HazardRecord documents.

A header is recognized only where a data area has ended: at the start of
the text or after a whitespace run of two or more characters or containing
a line break (the remains of the original table lines).
"""

import json
import logging
import os
import re
from pathlib import Path

from dateutil import parser as date_parser

from hazardkg.data import data_path
from hazardkg.errors import DuplicateIdError, InvalidInputError, InvalidRecordError, TableDecodeError
from hazardkg.models.record import HazardRecord, HeaderDataPair, RawTableText, SeverityLevel

logger = logging.getLogger(__name__)

# Header -> HazardRecord field, keys compared after normalize_header()
HEADER_FIELDS = {
    'hidden danger investigation time': 'inspect_time',
    'investigation time': 'inspect_time',
    'investigation place': 'location',
    'equipment name': 'equipment_name',
    'accident hidden danger content': 'hazard_content',
    'detailed classification of hidden dangers': 'detail_category',
    'violation information': 'violation_info',
    'evaluation level': 'severity_level',
    'prevention and control measures': 'control_measures',
    'voltage class': 'voltage_class',
    '隐患排查时间': 'inspect_time',
    '排查时间': 'inspect_time',
    '排查地点': 'location',
    '设备名称': 'equipment_name',
    '事故隐患内容': 'hazard_content',
    '隐患细分类': 'detail_category',
    '违章信息': 'violation_info',
    '评估等级': 'severity_level',
    '防控措施': 'control_measures',
    '电压等级': 'voltage_class',
}

_DATE_RE = re.compile(r'(\d{4})([-/])(\d{1,2})\2(\d{1,2})')
_VOLTAGE_RE = re.compile(r'(\d+(?:\.\d+)?)\s*[kK][vV]')

# Header of the pair holding text found before the first recognized header
PREAMBLE_HEADER = ''
PREAMBLE_KEY = 'preamble'


def normalize_header(header):
    return re.sub(r'\s+', ' ', header).strip().casefold()


def load_header_lexicon(path=None):
    """Read a header lexicon file (one header per line); defaults to the shipped lexicon."""
    path = path or data_path('headers.txt')
    with open(path, encoding='utf-8') as f:
        headers = {line.strip() for line in f if line.strip() and not line.lstrip().startswith('#')}
    if not headers:
        raise InvalidInputError(f'header lexicon {path} is empty')
    return headers


def read_table(path):
    """Read a table file as strict UTF-8."""
    with open(path, 'rb') as f:
        data = f.read()
    try:
        content = data.decode('utf-8')
    except UnicodeDecodeError as e:
        raise TableDecodeError(f'{path}: not valid UTF-8 ({e.reason} at byte {e.start})')
    return RawTableText(content=content, source_name=Path(path).stem)


def _at_cell_start(content, position):
    j = position
    while j > 0 and content[j - 1].isspace():
        j -= 1
    if j == 0:
        return True
    gap = content[j:position]
    return len(gap) >= 2 or '\n' in gap


def _trim(content, start, end):
    while start < end and content[start].isspace():
        start += 1
    while end > start and content[end - 1].isspace():
        end -= 1
    return start, end


def parse_table(raw, header_lexicon):
    """
    Extract all header areas and their data areas.

    Args:
        raw (RawTableText): Table text
        header_lexicon (set): Recognized header strings

    Returns:
        list: HeaderDataPair objects ordered by position. Non-blank text
            before the first header comes first, under PREAMBLE_HEADER.
    """
    headers = sorted({h for h in header_lexicon or () if h and h.strip()}, key=lambda h: (-len(h), h))
    if not headers:
        raise InvalidInputError('header lexicon must be non-empty')
    content = raw.content
    if not content:
        return []

    # Longest alternative first so that a header never loses to its own suffix
    pattern = re.compile(r'(?<!\S)(?:' + '|'.join(re.escape(h) for h in headers) + r')(?!\S)')
    matches = [m for m in pattern.finditer(content) if _at_cell_start(content, m.start())]

    pairs = []
    first = matches[0].start() if matches else len(content)
    start, end = _trim(content, 0, first)
    if start < end:
        pairs.append(HeaderDataPair(
            header=PREAMBLE_HEADER,
            value=content[start:end],
            char_span=(start, end),
            header_span=(start, start),
        ))

    for i, match in enumerate(matches):
        limit = matches[i + 1].start() if i + 1 < len(matches) else len(content)
        start, end = _trim(content, match.end(), limit)
        pairs.append(HeaderDataPair(
            header=match.group(0),
            value=content[start:end],
            char_span=(start, end),
            header_span=match.span(),
        ))

    return pairs


def split_header_cycles(pairs):
    """Group pairs into records: a repeated field starts the next record."""
    groups, current, seen = [], [], set()
    for pair in pairs:
        key = HEADER_FIELDS.get(normalize_header(pair.header), pair.header)
        if key in seen:
            groups.append(current)
            current, seen = [], set()
        current.append(pair)
        seen.add(key)
    if current:
        groups.append(current)
    return groups


def parse_inspect_date(text):
    """
    Parse YYYY-MM-DD or YYYY/MM/DD.

    Returns:
        tuple: (date or None, warning text or None)
    """
    text = (text or '').strip()
    if not text:
        return None, None
    if not _DATE_RE.fullmatch(text):
        return None, f'unparseable inspect_time {text!r}'
    try:
        return date_parser.parse(text, yearfirst=True, dayfirst=False).date(), None
    except (ValueError, OverflowError):
        return None, f'unparseable inspect_time {text!r}'


def normalize_voltage(text):
    """'220 kv' -> '220kV'; None when no voltage is mentioned."""
    match = _VOLTAGE_RE.search(text or '')
    return f'{match.group(1)}kV' if match else None


def assemble_record(pairs, record_id):
    """
    Map header/data pairs onto a HazardRecord.

    Unknown headers are kept in ``extra``; missing fields stay empty and the
    severity defaults to unrated. Never raises for any list of pairs.
    """
    if not record_id or not str(record_id).strip():
        raise InvalidInputError('record id must be non-empty')

    values, extra = {}, {}
    for pair in pairs:
        field_name = HEADER_FIELDS.get(normalize_header(pair.header))
        if pair.header == PREAMBLE_HEADER:
            extra.setdefault(PREAMBLE_KEY, pair.value)
        elif field_name is None:
            extra.setdefault(pair.header, pair.value)
        elif field_name in values:
            logger.debug(f'{record_id}: repeated field {field_name} ignored')
        else:
            values[field_name] = pair.value

    inspect_time, warning = parse_inspect_date(values.get('inspect_time'))
    if warning:
        extra['parse_warning'] = warning
        logger.warning(f'{record_id}: {warning}')

    voltage_class = normalize_voltage(values.get('voltage_class'))
    if voltage_class is None:
        for source in ('equipment_name', 'location', 'hazard_content'):
            voltage_class = normalize_voltage(values.get(source))
            if voltage_class:
                break

    return HazardRecord(
        id=str(record_id),
        inspect_time=inspect_time,
        location=values.get('location', ''),
        equipment_name=values.get('equipment_name', ''),
        hazard_content=values.get('hazard_content', ''),
        detail_category=values.get('detail_category', ''),
        violation_info=values.get('violation_info', ''),
        severity_level=SeverityLevel.parse(values.get('severity_level')),
        control_measures=values.get('control_measures', ''),
        voltage_class=voltage_class,
        extra=extra,
    )


def to_document(record):
    """Serialize a record to one line of the records.jsonl format."""
    return json.dumps(record.to_dict(), ensure_ascii=False, separators=(',', ':'))


def from_document(text):
    """Parse one records.jsonl line."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidRecordError(f'malformed record document: {e}')
    return HazardRecord.from_dict(data)


def ingest_tables(raws, header_lexicon):
    """Parse tables into validated records with ids '<source_name>-<n>'."""
    records = []
    for raw in raws:
        groups = split_header_cycles(parse_table(raw, header_lexicon))
        for n, group in enumerate(groups, start=1):
            record = assemble_record(group, f'{raw.source_name or "table"}-{n}')
            try:
                records.append(record.validate())
            except InvalidRecordError as e:
                logger.warning(f'Skipping record: {e}')
    return records


def write_records(records, path):
    """Write records as line-delimited documents; ids must be unique."""
    seen = set()
    for record in records:
        if record.id in seen:
            raise DuplicateIdError(record.id, 'dataset')
        seen.add(record.id)
    tmp_path = f'{path}.tmp'
    with open(tmp_path, 'w', encoding='utf-8', newline='\n') as f:
        for record in records:
            f.write(to_document(record))
            f.write('\n')
    os.replace(tmp_path, path)


def read_records(path):
    """Read records.jsonl; duplicate ids raise DuplicateIdError."""
    records, seen = [], set()
    with open(path, encoding='utf-8') as f:
        for line in f:
            if not line.strip():
                continue
            record = from_document(line)
            if record.id in seen:
                raise DuplicateIdError(record.id, str(path))
            seen.add(record.id)
            records.append(record)
    return records
