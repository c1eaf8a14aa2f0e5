"""
Subgraph Queries.
Keyword-seeded neighbourhood extraction.
"""

import copy
import logging

import networkx as nx

from hazardkg.errors import InvalidInputError
from hazardkg.models.graph import KnowledgeGraph
from .extraction import MENTIONS

# Attribute keys never matched against keywords
UNSEARCHED_KEYS = frozenset({MENTIONS, 'kind'})

logger = logging.getLogger(__name__)


def _node_texts(data):
    yield data['label']
    for key, value in data['attributes'].items():
        if key in UNSEARCHED_KEYS:
            continue
        if isinstance(value, (list, tuple, set)):
            yield from (str(v) for v in value)
        else:
            yield str(value)


def seed_nodes(graph, keywords):
    """Node ids whose label or attribute values contain any keyword (case-insensitive)."""
    needles = [k.strip().casefold() for k in keywords if k and k.strip()]
    if not needles:
        return []
    return sorted(
        node_id for node_id, data in graph.graph.nodes(data=True)
        if any(n in text.casefold() for text in _node_texts(data) for n in needles)
    )


def query_subgraph(graph, keywords, hops):
    """
    Induced subgraph of every node within ``hops`` undirected hops of a seed.

    Returns:
        KnowledgeGraph: Independent copy; empty when no node matches
    """
    if hops < 0:
        raise InvalidInputError(f'hops must be >= 0, got {hops}')
    seeds = seed_nodes(graph, keywords)
    if not seeds:
        return KnowledgeGraph()

    keep = set()
    for depth, layer in enumerate(nx.bfs_layers(graph.graph.to_undirected(as_view=True), seeds)):
        if depth > hops:
            break
        keep.update(layer)

    subgraph = copy.deepcopy(graph.graph.subgraph(keep).copy())
    logger.info(f'Subgraph for {list(keywords)} at {hops} hops: {len(seeds)} seeds, {len(keep)} nodes')
    return KnowledgeGraph(subgraph)
