"""
Index Shard.
One horizontal partition of the index: its sealed segments, the visible
commit point, and the single writer that advances it.
"""

import heapq
import logging
import os
import threading
from dataclasses import dataclass

from hazardkg.models.index import CommitPoint, InvertedIndex, SearchHit
from . import storage

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShardSnapshot:
    """Immutable view readers search against."""
    commit: CommitPoint
    segments: tuple

    def live_postings(self, term):
        """Yield (segment_id, PostingEntry) for non-deleted postings of ``term``."""
        for segment in self.segments:
            for posting in segment.index.postings(term):
                if not self.commit.is_deleted(posting.doc_id, segment.segment_id):
                    yield segment.segment_id, posting

    def live_doc_ids(self):
        ids = set()
        for segment in self.segments:
            for doc_id in segment.index.doc_lengths:
                if not self.commit.is_deleted(doc_id, segment.segment_id):
                    ids.add(doc_id)
        return ids


class Shard:
    """
    Segments and commit points of one shard directory.

    Readers call snapshot() and never block the writer; commits swap the
    snapshot reference under a lock once the new manifest is durable.
    """

    def __init__(self, shard_id, path, seal_threshold=1000):
        self.shard_id = shard_id
        self.path = path
        self.seal_threshold = seal_threshold
        self._snapshot = ShardSnapshot(CommitPoint(0), ())
        self._swap_lock = threading.Lock()
        self._write_lock = threading.Lock()

    @classmethod
    def open(cls, shard_id, path, seal_threshold=1000):
        """Load the highest valid commit; raises IndexIntegrityError on corrupt segments."""
        shard = cls(shard_id, path, seal_threshold)
        commit = storage.read_latest_commit(path)
        if commit is not None:
            segments = tuple(
                storage.read_segment(path, segment_id, shard_id, commit.checksums.get(segment_id))
                for segment_id in commit.live_segment_ids
            )
            shard._snapshot = ShardSnapshot(commit, segments)
            logger.debug(f'Shard {shard_id} opened at commit {commit.commit_id} '
                         f'with {len(segments)} segments')
        return shard

    def snapshot(self):
        with self._swap_lock:
            return self._snapshot

    @property
    def commit(self):
        return self.snapshot().commit

    @property
    def doc_count(self):
        return len(self.snapshot().live_doc_ids())

    def _next_segment_id(self, snapshot):
        used = [s.segment_id for s in snapshot.segments] + storage.segment_ids_on_disk(self.path)
        return max(used, default=0) + 1

    def _publish(self, commit, segments):
        storage.write_commit(self.path, commit)
        with self._swap_lock:
            self._snapshot = ShardSnapshot(commit, tuple(segments))
        storage.prune_shard_files(self.path, commit)
        logger.info(f'Shard {self.shard_id} commit {commit.commit_id}: '
                    f'segments {list(commit.live_segment_ids)}, {len(commit.tombstones)} tombstones')
        return commit

    def add_documents(self, documents):
        """
        Seal analyzed documents into new segments and commit them.

        Args:
            documents (list): (doc_id, [(term, position), ...]) pairs with unique ids

        Returns:
            CommitPoint: The new visible commit
        """
        with self._write_lock:
            os.makedirs(self.path, exist_ok=True)
            snapshot = self.snapshot()
            segment_id = self._next_segment_id(snapshot)
            existing = snapshot.live_doc_ids()

            # Older copies of re-indexed documents are hidden by a watermark
            watermark = segment_id - 1
            tombstones = dict(snapshot.commit.tombstones)
            for doc_id, _ in documents:
                if doc_id in existing:
                    tombstones[doc_id] = watermark

            new_segments = []
            for start in range(0, len(documents), self.seal_threshold):
                index = InvertedIndex()
                for doc_id, analyzed in documents[start:start + self.seal_threshold]:
                    index.add_document(doc_id, analyzed)
                new_segments.append(storage.write_segment(self.path, segment_id, index))
                segment_id += 1

            segments = list(snapshot.segments) + new_segments
            commit = CommitPoint(
                commit_id=snapshot.commit.commit_id + 1,
                live_segment_ids=tuple(s.segment_id for s in segments),
                tombstones=tombstones,
                checksums={s.segment_id: s.checksum for s in segments},
            )
            return self._publish(commit, segments)

    def delete_documents(self, doc_ids):
        """Tombstone live documents; returns the new commit, or None when nothing matched."""
        with self._write_lock:
            snapshot = self.snapshot()
            live = snapshot.live_doc_ids()
            targets = sorted(set(doc_ids) & live)
            if not targets:
                return None
            watermark = max(s.segment_id for s in snapshot.segments)
            tombstones = dict(snapshot.commit.tombstones)
            tombstones.update({doc_id: watermark for doc_id in targets})
            commit = CommitPoint(
                commit_id=snapshot.commit.commit_id + 1,
                live_segment_ids=snapshot.commit.live_segment_ids,
                tombstones=tombstones,
                checksums=dict(snapshot.commit.checksums),
            )
            return self._publish(commit, snapshot.segments)

    def merge_segments(self):
        """Rewrite all live segments as one, physically dropping tombstoned documents."""
        with self._write_lock:
            snapshot = self.snapshot()
            if not snapshot.segments:
                return snapshot.commit

            documents = {}
            for segment in snapshot.segments:
                for doc_id in segment.index.doc_lengths:
                    if not snapshot.commit.is_deleted(doc_id, segment.segment_id):
                        documents[doc_id] = []
                for term, plist in segment.index.terms.items():
                    for posting in plist:
                        if not snapshot.commit.is_deleted(posting.doc_id, segment.segment_id):
                            documents[posting.doc_id].extend((term, p) for p in posting.positions)

            merged = InvertedIndex()
            for doc_id in sorted(documents):
                merged.add_document(doc_id, documents[doc_id])

            segments = []
            if merged.doc_count:
                segment_id = self._next_segment_id(snapshot)
                segments.append(storage.write_segment(self.path, segment_id, merged))
            commit = CommitPoint(
                commit_id=snapshot.commit.commit_id + 1,
                live_segment_ids=tuple(s.segment_id for s in segments),
                tombstones={},
                checksums={s.segment_id: s.checksum for s in segments},
            )
            logger.info(f'Shard {self.shard_id} merged {len(snapshot.segments)} segments, '
                        f'{merged.doc_count} live documents')
            return self._publish(commit, segments)

    def term_statistics(self, terms):
        """Live document count and per-term document frequency."""
        snapshot = self.snapshot()
        df = {term: sum(1 for _ in snapshot.live_postings(term)) for term in terms}
        return len(snapshot.live_doc_ids()), df

    def search(self, terms, idf, k):
        """
        Top-k hits of this shard.

        Args:
            terms (list): Unique query terms in a fixed order
            idf (dict): Global inverse document frequency per term
            k (int): Number of hits
        """
        snapshot = self.snapshot()
        scores, matched = {}, {}
        for term in terms:
            weight = idf.get(term, 0.0)
            for _, posting in snapshot.live_postings(term):
                scores[posting.doc_id] = scores.get(posting.doc_id, 0.0) + posting.term_frequency * weight
                matched.setdefault(posting.doc_id, []).append(term)
        hits = (SearchHit(doc_id, score, tuple(matched[doc_id])) for doc_id, score in scores.items())
        return heapq.nsmallest(k, hits, key=SearchHit.sort_key)
