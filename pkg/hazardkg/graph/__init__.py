"""Hazard knowledge graph: extraction, building, subgraph queries and export."""
from .extraction import Lexicons, extract_entities, extract_relations, find_mentions, load_lexicons
from .builder import build_graph
from .query import query_subgraph, seed_nodes
from .export import export_graph, import_graph, load_graph, save_graph

__all__ = [
    'Lexicons', 'extract_entities', 'extract_relations', 'find_mentions', 'load_lexicons',
    'build_graph', 'query_subgraph', 'seed_nodes',
    'export_graph', 'import_graph', 'load_graph', 'save_graph',
]
