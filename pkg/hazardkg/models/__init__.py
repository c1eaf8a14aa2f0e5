"""Domain models package initialization."""
from .record import HazardRecord, HeaderDataPair, RawTableText, SeverityLevel
from .hmm import HmmModel, Tag, TaggedCorpus, ViterbiTrellis
from .index import (
    ClusterMeta, CommitPoint, InvertedIndex, PostingEntry, SearchHit, Segment, ShardRouter
)
from .graph import EntityCategory, EntityNode, KnowledgeGraph, RelationEdge, RelationType
from .hazard import Advisory, HazardType, MonthlyStats, PredictionRule

__all__ = [
    'HazardRecord', 'HeaderDataPair', 'RawTableText', 'SeverityLevel',
    'HmmModel', 'Tag', 'TaggedCorpus', 'ViterbiTrellis',
    'ClusterMeta', 'CommitPoint', 'InvertedIndex', 'PostingEntry', 'SearchHit', 'Segment',
    'ShardRouter',
    'EntityCategory', 'EntityNode', 'KnowledgeGraph', 'RelationEdge', 'RelationType',
    'Advisory', 'HazardType', 'MonthlyStats', 'PredictionRule',
]
