"""
Search Index Models.
Postings, segments, commit manifests, routing and cluster metadata for the
embedded sharded engine.
"""

from bisect import insort
from dataclasses import dataclass, field

from hazardkg.errors import InvalidInputError

FNV_OFFSET_BASIS = 14695981039346656037
FNV_PRIME = 1099511628211
MASK_64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data):
    """64-bit FNV-1a over a bytes object."""
    h = FNV_OFFSET_BASIS
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & MASK_64
    return h


@dataclass(frozen=True)
class PostingEntry:
    """One document's entry in a term's posting list."""
    doc_id: str
    positions: tuple

    @property
    def term_frequency(self):
        return len(self.positions)

    def is_valid(self):
        return len(self.positions) >= 1 and all(a < b for a, b in zip(self.positions, self.positions[1:]))


class InvertedIndex:
    """
    Term -> posting list map with per-document lengths.

    Posting lists are kept sorted by doc_id.
    """

    def __init__(self, terms=None, doc_lengths=None):
        self.terms = terms if terms is not None else {}
        self.doc_lengths = doc_lengths if doc_lengths is not None else {}

    @property
    def doc_count(self):
        return len(self.doc_lengths)

    def add_document(self, doc_id, analyzed):
        """Add one analyzed document given as [(term, position), ...]."""
        if doc_id in self.doc_lengths:
            raise InvalidInputError(f'document {doc_id!r} already in segment')
        positions = {}
        for term, position in analyzed:
            positions.setdefault(term, []).append(position)
        for term, plist in positions.items():
            insort(self.terms.setdefault(term, []), PostingEntry(doc_id, tuple(sorted(plist))),
                   key=lambda p: p.doc_id)
        self.doc_lengths[doc_id] = len(analyzed)

    def postings(self, term):
        return self.terms.get(term, ())

    def check_invariants(self):
        """True when posting lists are sorted, valid and reference known documents."""
        for plist in self.terms.values():
            ids = [p.doc_id for p in plist]
            if ids != sorted(ids) or len(set(ids)) != len(ids):
                return False
            if any(not p.is_valid() or p.doc_id not in self.doc_lengths for p in plist):
                return False
        return True


@dataclass(frozen=True)
class Segment:
    """Sealed, immutable inverted-index unit."""
    segment_id: int
    index: InvertedIndex
    checksum: int = 0

    @property
    def doc_count(self):
        return self.index.doc_count


@dataclass(frozen=True)
class CommitPoint:
    """
    Durable manifest of a shard's visible state.

    Tombstones map a deleted doc_id to the highest segment id the deletion
    covers; copies in later segments (re-indexed documents) stay live.
    """
    commit_id: int
    live_segment_ids: tuple = ()
    tombstones: dict = field(default_factory=dict)
    checksums: dict = field(default_factory=dict)

    def is_deleted(self, doc_id, segment_id):
        watermark = self.tombstones.get(doc_id)
        return watermark is not None and segment_id <= watermark

    def to_dict(self):
        return {
            'format_version': 1,
            'commit_id': self.commit_id,
            'live_segment_ids': list(self.live_segment_ids),
            'tombstones': dict(sorted(self.tombstones.items())),
            'checksums': {str(k): v for k, v in sorted(self.checksums.items())},
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            commit_id=int(data['commit_id']),
            live_segment_ids=tuple(int(s) for s in data['live_segment_ids']),
            tombstones={str(k): int(v) for k, v in data.get('tombstones', {}).items()},
            checksums={int(k): int(v) for k, v in data.get('checksums', {}).items()},
        )


@dataclass(frozen=True)
class ShardRouter:
    """Deterministic doc -> shard mapping by FNV-1a-64 hash modulo."""
    num_shards: int

    def __post_init__(self):
        if self.num_shards < 1:
            raise InvalidInputError(f'num_shards must be >= 1, got {self.num_shards}')

    def route(self, key):
        if not key:
            raise InvalidInputError('routing key must be non-empty')
        return fnv1a_64(key.encode('utf-8')) % self.num_shards


@dataclass(frozen=True)
class ClusterMeta:
    """
    Shard placement over simulated nodes.

    Attributes:
        shard_nodes (dict): shard_id -> node_id, exactly one node per shard
        node_paths (dict): node_id -> storage directory relative to the index root
    """
    shard_nodes: dict
    node_paths: dict

    @property
    def num_shards(self):
        return len(self.shard_nodes)

    @classmethod
    def create(cls, num_shards, num_nodes=0):
        """Assign shard s to node s mod num_nodes (one node per shard when num_nodes is 0)."""
        if num_shards < 1:
            raise InvalidInputError(f'num_shards must be >= 1, got {num_shards}')
        num_nodes = num_nodes or num_shards
        shard_nodes = {s: s % num_nodes for s in range(num_shards)}
        node_paths = {n: f'node-{n}' for n in range(num_nodes)}
        return cls(shard_nodes, node_paths)

    def shard_path(self, shard_id):
        """Directory of a shard relative to the index root."""
        node = self.shard_nodes[shard_id]
        return f'{self.node_paths[node]}/shard-{shard_id}'

    def to_dict(self):
        return {
            'format_version': 1,
            'num_shards': self.num_shards,
            'shards': {str(s): n for s, n in sorted(self.shard_nodes.items())},
            'nodes': {str(n): p for n, p in sorted(self.node_paths.items())},
        }

    @classmethod
    def from_dict(cls, data):
        shard_nodes = {int(s): int(n) for s, n in data['shards'].items()}
        node_paths = {int(n): p for n, p in data['nodes'].items()}
        if sorted(shard_nodes) != list(range(len(shard_nodes))):
            raise InvalidInputError('shard ids must be 0..num_shards-1')
        if any(n not in node_paths for n in shard_nodes.values()):
            raise InvalidInputError('shard assigned to an unknown node')
        return cls(shard_nodes, node_paths)


@dataclass(frozen=True)
class SearchHit:
    """One ranked search result."""
    doc_id: str
    score: float
    matched_terms: tuple = ()

    def sort_key(self):
        return (-self.score, self.doc_id)

    def to_dict(self):
        return {'doc_id': self.doc_id, 'score': self.score, 'matched_terms': list(self.matched_terms)}
