"""Table ingestion: header/data extraction and record documents."""
from .parser import (
    assemble_record, from_document, ingest_tables, load_header_lexicon, parse_table, read_records,
    read_table, split_header_cycles, to_document, write_records
)

__all__ = [
    'assemble_record', 'from_document', 'ingest_tables', 'load_header_lexicon', 'parse_table',
    'read_records', 'read_table', 'split_header_cycles', 'to_document', 'write_records',
]
