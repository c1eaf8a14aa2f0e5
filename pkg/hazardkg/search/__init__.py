"""Embedded sharded inverted-index search engine."""
from .analyzer import analyze, tokenize
from .engine import SearchEngine, inverse_document_frequency, open_index, route_shard
from .shard import Shard, ShardSnapshot

__all__ = [
    'analyze', 'tokenize',
    'SearchEngine', 'inverse_document_frequency', 'open_index', 'route_shard',
    'Shard', 'ShardSnapshot',
]
