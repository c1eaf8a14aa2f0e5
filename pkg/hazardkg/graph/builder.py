"""
Graph Builder.
Unions per-record extraction into one knowledge graph.
"""

import logging

from hazardkg.models.graph import KnowledgeGraph
from .extraction import extract_entities, extract_relations, load_lexicons

logger = logging.getLogger(__name__)


def build_graph(records, model, lexicons=None, graph=None):
    """
    Build or extend a knowledge graph.

    Nodes are merged by (normalized label, category) and edges by
    (src, dst, relation), so adding a record twice changes nothing.

    Args:
        records (list): HazardRecord objects
        model (HmmModel): Segmenter for free-text fields
        lexicons (Lexicons): Term lists; shipped defaults when None
        graph (KnowledgeGraph): Existing graph to extend in place

    Returns:
        KnowledgeGraph: The built graph
    """
    lexicons = lexicons or load_lexicons()
    graph = graph if graph is not None else KnowledgeGraph()
    for record in records:
        entities = extract_entities(record, model, lexicons)
        for entity in entities:
            graph.add_entity(entity)
        for edge in extract_relations(record, entities):
            graph.add_relation(edge)
    logger.info(f'Graph built from {len(records)} records: '
                f'{graph.node_count()} nodes, {graph.edge_count()} edges')
    return graph
