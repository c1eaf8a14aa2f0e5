"""
Hazard Classification.
Keyword-driven mapping of records onto the six hazard types.
"""

import json

from hazardkg.data import data_path
from hazardkg.errors import InvalidInputError
from hazardkg.models.hazard import HazardType


def load_hazard_keywords(path=None):
    """
    Read the keyword file: hazard type code -> list of keywords.

    Every one of the six types needs a non-empty list.

    Returns:
        dict: HazardType -> tuple of case-folded keywords, in E1..E6 order
    """
    path = path or data_path('hazard_keywords.json')
    with open(path, encoding='utf-8') as f:
        raw = json.load(f)
    try:
        parsed = {HazardType.parse(key): values for key, values in raw.items()}
    except ValueError as e:
        raise InvalidInputError(f'{path}: {e}')

    keywords = {}
    for hazard_type in HazardType:
        values = tuple(v.casefold() for v in parsed.get(hazard_type, ()) if v and v.strip())
        if not values:
            raise InvalidInputError(f'{path}: no keywords for {hazard_type.code}')
        keywords[hazard_type] = values
    return keywords


def classify_hazard(record, keywords=None):
    """First hazard type (E1..E6) with a keyword in hazard_content or detail_category."""
    keywords = keywords or load_hazard_keywords()
    text = f'{record.hazard_content or ""}\n{record.detail_category or ""}'.casefold()
    if not text.strip():
        return None
    for hazard_type in HazardType:
        if any(keyword in text for keyword in keywords[hazard_type]):
            return hazard_type
    return None
