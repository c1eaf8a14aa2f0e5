"""
Entity and Relation Extraction.
Turns one hazard record into typed entities and template-driven relations.

Structured fields map straight onto entities. Free text is segmented and
runs of tokens that spell a lexicon term become entities; each occurrence is
recorded as '<record>/<field>@<token position>' in the 'mentions' attribute.
"""

import json
import logging
from dataclasses import dataclass, field

from hazardkg.data import data_path
from hazardkg.errors import InvalidInputError
from hazardkg.models.graph import (
    EntityCategory, EntityNode, RelationEdge, RelationType, merge_attributes, normalize_label
)
from hazardkg.models.hazard import MONTH_NAMES
from hazardkg.models.record import SeverityLevel
from hazardkg.search.analyzer import tokenize

logger = logging.getLogger(__name__)

MENTIONS = 'mentions'

# Free-text field -> entity categories looked up in it
LEXICON_FIELDS = (
    ('hazard_content', (EntityCategory.EQUIPMENT, EntityCategory.HAZARD_PHENOMENON)),
    ('control_measures', (EntityCategory.MEASURE,)),
)


def _compact(text):
    return normalize_label(text).replace(' ', '')


@dataclass(frozen=True)
class Lexicons:
    """
    Per-category term lists plus broad hazard category aliases.

    Attributes:
        terms (dict): EntityCategory -> tuple of terms
        category_aliases (tuple): (broad category label, aliases) pairs in match order
    """
    terms: dict = field(default_factory=dict)
    category_aliases: tuple = ()

    def canonical_category(self, detail):
        """Broad category whose alias occurs in ``detail``; the detail itself otherwise."""
        text = normalize_label(detail)
        for label, aliases in self.category_aliases:
            if normalize_label(label) in text or any(normalize_label(a) in text for a in aliases):
                return label
        return detail.strip()

    @classmethod
    def from_dict(cls, data):
        terms = {}
        for key, values in data.items():
            if key == 'category_aliases':
                continue
            try:
                category = EntityCategory(key)
            except ValueError:
                raise InvalidInputError(f'unknown lexicon category {key!r}')
            terms[category] = tuple(v for v in values if v and v.strip())
        aliases = tuple((label, tuple(a)) for label, a in data.get('category_aliases', {}).items())
        return cls(terms, aliases)


def load_lexicons(path=None):
    """Read a lexicon file; defaults to the shipped bilingual lexicons."""
    path = path or data_path('lexicons.json')
    with open(path, encoding='utf-8') as f:
        return Lexicons.from_dict(json.load(f))


def find_mentions(tokens, terms):
    """
    Non-overlapping token runs that spell a term, longest run first.

    Returns:
        list: (token position, term) pairs in text order
    """
    keys = {}
    for term in terms:
        keys.setdefault(_compact(term), term)
    keys.pop('', None)
    if not keys:
        return []
    longest = max(len(k) for k in keys)
    compact_tokens = [_compact(t) for t in tokens]

    mentions, i = [], 0
    while i < len(tokens):
        best, spelled = None, ''
        for j in range(i, len(tokens)):
            spelled += compact_tokens[j]
            if len(spelled) > longest:
                break
            if spelled in keys:
                best = (j, keys[spelled])
        if best is None:
            i += 1
        else:
            mentions.append((i, best[1]))
            i = best[0] + 1
    return mentions


class _EntitySet:
    """Per-record entities deduplicated by node id."""

    def __init__(self, record_id):
        self.record_id = record_id
        self.nodes = {}

    def add(self, label, category, attributes=None):
        if not label or not label.strip():
            return None
        node = EntityNode(label.strip(), category, dict(attributes or {}), {self.record_id})
        existing = self.nodes.get(node.node_id)
        if existing is None:
            self.nodes[node.node_id] = node
        else:
            merge_attributes(existing.attributes, node.attributes)
        return node.node_id


def extract_entities(record, model, lexicons=None):
    """
    Typed entities of one record.

    Args:
        record (HazardRecord): Source record
        model (HmmModel): Segmenter for free-text fields
        lexicons (Lexicons): Term lists; shipped defaults when None

    Returns:
        list: EntityNode objects, one per (normalized label, category)
    """
    lexicons = lexicons or load_lexicons()
    found = _EntitySet(record.id)

    found.add(record.equipment_name, EntityCategory.EQUIPMENT)
    found.add(record.location, EntityCategory.LOCATION)
    if record.detail_category and record.detail_category.strip():
        found.add(lexicons.canonical_category(record.detail_category), EntityCategory.HAZARD_CATEGORY,
                  {'details': [record.detail_category.strip()]})
    found.add(record.voltage_class, EntityCategory.VOLTAGE_CLASS)
    if record.inspect_time:
        found.add(record.inspect_time.isoformat(), EntityCategory.TIME,
                  {'kind': 'date', 'month': record.month})
        found.add(MONTH_NAMES[record.month - 1], EntityCategory.TIME, {'kind': 'month'})
    found.add(record.violation_info, EntityCategory.VIOLATION)

    for field_name, categories in LEXICON_FIELDS:
        text = getattr(record, field_name) or ''
        if not text.strip():
            continue
        tokens = tokenize(text, model)
        for category in categories:
            for position, term in find_mentions(tokens, lexicons.terms.get(category, ())):
                found.add(term, category, {MENTIONS: [f'{record.id}/{field_name}@{position}']})

    # Text with no lexicon term still yields one phenomenon and one measure
    for field_name, category in (('hazard_content', EntityCategory.HAZARD_PHENOMENON),
                                 ('control_measures', EntityCategory.MEASURE)):
        text = getattr(record, field_name) or ''
        if text.strip() and not any(n.category == category for n in found.nodes.values()):
            found.add(text, category, {MENTIONS: [f'{record.id}/{field_name}@0']})

    if record.severity_level != SeverityLevel.UNRATED:
        for node in found.nodes.values():
            if node.category == EntityCategory.HAZARD_PHENOMENON:
                merge_attributes(node.attributes, {'severity': [record.severity_level.value]})

    logger.debug(f'{record.id}: {len(found.nodes)} entities')
    return list(found.nodes.values())


def _ids(entities, category, kind=None):
    return sorted(
        e.node_id for e in entities
        if e.category == category and (kind is None or e.attributes.get('kind') == kind)
    )


def extract_relations(record, entities):
    """
    Apply the relation templates to one record's entities.

    Templates: equipment has_hazard phenomenon; phenomenon (or equipment)
    belongs_to_category, violates and occurred_on; equipment (or phenomenon)
    located_at and has_attribute voltage class; phenomenon mitigated_by
    measure; inspection date has_attribute month.

    Returns:
        list: RelationEdge objects sorted by (src, dst, relation)
    """
    equipment = _ids(entities, EntityCategory.EQUIPMENT)
    phenomena = _ids(entities, EntityCategory.HAZARD_PHENOMENON)
    hazards = phenomena or equipment
    holders = equipment or phenomena
    dates = _ids(entities, EntityCategory.TIME, 'date')

    templates = (
        (equipment, RelationType.HAS_HAZARD, phenomena),
        (hazards, RelationType.BELONGS_TO_CATEGORY, _ids(entities, EntityCategory.HAZARD_CATEGORY)),
        (holders, RelationType.LOCATED_AT, _ids(entities, EntityCategory.LOCATION)),
        (phenomena, RelationType.MITIGATED_BY, _ids(entities, EntityCategory.MEASURE)),
        (hazards, RelationType.VIOLATES, _ids(entities, EntityCategory.VIOLATION)),
        (hazards, RelationType.OCCURRED_ON, dates),
        (holders, RelationType.HAS_ATTRIBUTE, _ids(entities, EntityCategory.VOLTAGE_CLASS)),
        (dates, RelationType.HAS_ATTRIBUTE, _ids(entities, EntityCategory.TIME, 'month')),
    )
    sources = frozenset({record.id})
    edges = {
        (src, dst, relation): RelationEdge(src, dst, relation, sources)
        for srcs, relation, dsts in templates
        for src in srcs
        for dst in dsts
        if src != dst
    }
    return [edges[key] for key in sorted(edges, key=lambda k: (k[0], k[1], k[2].value))]
