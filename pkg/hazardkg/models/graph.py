"""
Knowledge Graph Models.
Typed entity nodes and typed relation edges over a networkx MultiDiGraph.

Quality Management Principles:
- Data Integrity: edges are only added between existing nodes, never as self-loops
- Identity: a node is identified by its (normalized label, category) pair
- Idempotence: merging the same entity or edge twice leaves the graph unchanged
"""

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from hazardkg.errors import InvalidInputError


class EntityCategory(Enum):
    """Entity node categories."""
    EQUIPMENT = 'equipment'
    HAZARD_PHENOMENON = 'hazard_phenomenon'
    HAZARD_CATEGORY = 'hazard_category'
    LOCATION = 'location'
    MEASURE = 'measure'
    VIOLATION = 'violation'
    TIME = 'time'
    VOLTAGE_CLASS = 'voltage_class'


class RelationType(Enum):
    """Relation edge types."""
    HAS_HAZARD = 'has_hazard'
    LOCATED_AT = 'located_at'
    BELONGS_TO_CATEGORY = 'belongs_to_category'
    MITIGATED_BY = 'mitigated_by'
    VIOLATES = 'violates'
    OCCURRED_ON = 'occurred_on'
    HAS_ATTRIBUTE = 'has_attribute'


def normalize_label(label):
    """NFKC, case-folded, whitespace-collapsed form used for node identity."""
    text = unicodedata.normalize('NFKC', label or '')
    return re.sub(r'\s+', ' ', text).strip().casefold()


def make_node_id(label, category):
    return f'{EntityCategory(category).value}:{normalize_label(label)}'


@dataclass
class EntityNode:
    """
    Typed entity extracted from hazard records.

    Attributes:
        node_id (str): '<category>:<normalized label>'
        label (str): Surface form of the first mention
        category (EntityCategory): Fixed at creation
        attributes (dict): Key/value attributes, lists for multi-valued keys
        source_record_ids (set): Records the entity was extracted from
    """
    label: str
    category: EntityCategory
    attributes: dict = field(default_factory=dict)
    source_record_ids: set = field(default_factory=set)
    node_id: str = None

    def __post_init__(self):
        if not self.label or not self.label.strip():
            raise InvalidInputError('entity label must be non-empty')
        self.category = EntityCategory(self.category)
        if self.node_id is None:
            self.node_id = make_node_id(self.label, self.category)


@dataclass(frozen=True)
class RelationEdge:
    """Typed, directed relation between two entity nodes."""
    src: str
    dst: str
    relation: RelationType
    source_record_ids: frozenset = frozenset()


def merge_attributes(target, incoming):
    """Merge attribute maps: list values are unioned and sorted, scalars keep the first value."""
    for key, value in incoming.items():
        if isinstance(value, (list, tuple, set)):
            merged = set(target.get(key, [])) | set(value)
            target[key] = sorted(merged)
        elif key not in target:
            target[key] = value
    return target


class KnowledgeGraph:
    """
    Hazard knowledge graph.

    Nodes carry 'label', 'category', 'attributes' and 'sources'; edges are
    keyed by relation value so (src, dst, relation) is unique.
    """

    def __init__(self, graph=None):
        self.graph = graph if graph is not None else nx.MultiDiGraph()

    # Node Methods
    def add_entity(self, entity):
        """Insert or merge an entity; returns its node_id."""
        node_id = entity.node_id
        if node_id in self.graph:
            data = self.graph.nodes[node_id]
            if data['category'] != entity.category:
                raise InvalidInputError(f'node {node_id} category mismatch')
            merge_attributes(data['attributes'], entity.attributes)
            data['sources'] |= set(entity.source_record_ids)
        else:
            self.graph.add_node(
                node_id,
                label=entity.label,
                category=entity.category,
                attributes=merge_attributes({}, entity.attributes),
                sources=set(entity.source_record_ids),
            )
        return node_id

    def add_relation(self, edge):
        """Insert or merge a relation between existing nodes."""
        relation = RelationType(edge.relation)
        if edge.src not in self.graph or edge.dst not in self.graph:
            raise InvalidInputError(f'edge {edge.src} -> {edge.dst} references a missing node')
        if edge.src == edge.dst:
            raise InvalidInputError(f'self-loop on {edge.src}')
        key = relation.value
        if self.graph.has_edge(edge.src, edge.dst, key=key):
            self.graph.edges[edge.src, edge.dst, key]['sources'] |= set(edge.source_record_ids)
        else:
            self.graph.add_edge(edge.src, edge.dst, key=key, relation=relation,
                                sources=set(edge.source_record_ids))

    def node(self, node_id):
        data = self.graph.nodes[node_id]
        return EntityNode(
            label=data['label'],
            category=data['category'],
            attributes=dict(data['attributes']),
            source_record_ids=set(data['sources']),
            node_id=node_id,
        )

    @property
    def nodes(self):
        """node_id -> EntityNode."""
        return {node_id: self.node(node_id) for node_id in self.graph.nodes}

    @property
    def edges(self):
        """All relation edges, sorted by (src, dst, relation)."""
        result = [
            RelationEdge(src, dst, data['relation'], frozenset(data['sources']))
            for src, dst, data in self.graph.edges(data=True)
        ]
        return sorted(result, key=lambda e: (e.src, e.dst, e.relation.value))

    def outgoing(self, node_id):
        """Edges leaving a node, sorted by (dst, relation)."""
        edges = [RelationEdge(s, d, data['relation'], frozenset(data['sources']))
                 for s, d, data in self.graph.out_edges(node_id, data=True)]
        return sorted(edges, key=lambda e: (e.dst, e.relation.value))

    def incoming(self, node_id):
        """Edges entering a node, sorted by (src, relation)."""
        edges = [RelationEdge(s, d, data['relation'], frozenset(data['sources']))
                 for s, d, data in self.graph.in_edges(node_id, data=True)]
        return sorted(edges, key=lambda e: (e.src, e.relation.value))

    def find(self, label, category):
        node_id = make_node_id(label, category)
        return self.node(node_id) if node_id in self.graph else None

    def node_count(self):
        return self.graph.number_of_nodes()

    def edge_count(self):
        return self.graph.number_of_edges()

    def check_integrity(self):
        """
        True when no edge references a missing node, there are no self-loops
        and every edge is listed once as outgoing and once as incoming.
        """
        for src, dst in self.graph.edges():
            if src == dst or src not in self.graph or dst not in self.graph:
                return False
        listed_out = sorted((e.src, e.dst, e.relation.value) for n in self.graph for e in self.outgoing(n))
        listed_in = sorted((e.src, e.dst, e.relation.value) for n in self.graph for e in self.incoming(n))
        every_edge = [(e.src, e.dst, e.relation.value) for e in self.edges]
        return listed_out == listed_in == every_edge

    def signature(self):
        """Comparable snapshot of nodes and edges."""
        nodes = {
            node_id: (data['label'], data['category'].value,
                      repr(sorted(data['attributes'].items())), tuple(sorted(data['sources'])))
            for node_id, data in self.graph.nodes(data=True)
        }
        edges = {
            (s, d, data['relation'].value): tuple(sorted(data['sources']))
            for s, d, data in self.graph.edges(data=True)
        }
        return nodes, edges

    def __eq__(self, other):
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return self.signature() == other.signature()

    __hash__ = None

    def __repr__(self):
        return f'<KnowledgeGraph nodes={self.node_count()} edges={self.edge_count()}>'
