"""
Search Engine.
Embedded sharded full-text engine over simulated nodes.

Documents are routed to shards by FNV-1a-64 of their id. A search first
gathers global term statistics from every shard, then scatters the scoring
to all shards on a thread pool and merges their top-k lists, so scores do
not depend on the shard count.
"""

import heapq
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

from hazardkg.errors import DuplicateIdError, IndexIntegrityError, IndexNotFoundError, InvalidInputError
from hazardkg.models.index import ClusterMeta, SearchHit, ShardRouter
from . import storage
from .analyzer import analyze, tokenize
from .shard import Shard

logger = logging.getLogger(__name__)


def route_shard(router, key):
    """Shard id of a routing key."""
    return router.route(key)


def inverse_document_frequency(num_docs, df):
    """ln(1 + (N - df + 0.5) / (df + 0.5))."""
    return math.log(1.0 + (num_docs - df + 0.5) / (df + 0.5))


class SearchEngine:
    """
    Handle on an open index directory.

    Attributes:
        root (str): Index root directory
        meta (ClusterMeta): Shard placement
        model (HmmModel): Analyzer model, required for indexing and search
        shards (dict): shard_id -> Shard for every shard that opened cleanly
        failed_shards (dict): shard_id -> IndexIntegrityError
    """

    def __init__(self, root, meta, model=None, seal_threshold=1000, max_workers=None):
        self.root = root
        self.meta = meta
        self.model = model
        self.seal_threshold = seal_threshold
        self.router = ShardRouter(meta.num_shards)
        self.shards = {}
        self.failed_shards = {}
        self._executor = ThreadPoolExecutor(
            max_workers=max_workers or min(meta.num_shards, 8),
            thread_name_prefix='hazardkg-shard',
        )
        self._meta_written = os.path.exists(os.path.join(root, storage.META_FILE))

    def shard_dir(self, shard_id):
        return os.path.join(self.root, *self.meta.shard_path(shard_id).split('/'))

    def _load_shards(self):
        for shard_id in range(self.meta.num_shards):
            try:
                self.shards[shard_id] = Shard.open(shard_id, self.shard_dir(shard_id), self.seal_threshold)
            except IndexIntegrityError as e:
                logger.error(f'Shard {shard_id} failed to open: {e}')
                self.failed_shards[shard_id] = e

    def shard(self, shard_id):
        """Open shard by id; raises the stored IndexIntegrityError for a failed shard."""
        if shard_id in self.failed_shards:
            raise self.failed_shards[shard_id]
        if shard_id not in self.shards:
            raise InvalidInputError(f'no shard {shard_id}; index has {self.meta.num_shards}')
        return self.shards[shard_id]

    def _require_model(self):
        if self.model is None:
            raise InvalidInputError('an analyzer model is required for this operation')
        return self.model

    def _ensure_meta(self):
        if not self._meta_written:
            os.makedirs(self.root, exist_ok=True)
            storage.write_meta(self.root, self.meta)
            self._meta_written = True

    @property
    def doc_count(self):
        return sum(shard.doc_count for shard in self.shards.values())

    def index_documents(self, records):
        """
        Analyze records and commit them to their routed shards.

        Re-indexing an id already in the index replaces the older copy.

        Returns:
            dict: shard_id -> CommitPoint for every shard that received documents
        """
        model = self._require_model()
        seen = set()
        for record in records:
            if record.id in seen:
                raise DuplicateIdError(record.id, 'batch')
            seen.add(record.id)

        batches = {}
        for record in records:
            shard_id = self.router.route(record.id)
            batches.setdefault(shard_id, []).append((record.id, analyze(record.searchable_text(), model)))
        for shard_id in batches:
            self.shard(shard_id)

        self._ensure_meta()
        commits = {}
        for shard_id in sorted(batches):
            commits[shard_id] = self.shards[shard_id].add_documents(batches[shard_id])
        logger.info(f'Indexed {len(records)} documents into {len(batches)} shards')
        return commits

    def delete_documents(self, doc_ids):
        """Tombstone documents by id; returns shard_id -> CommitPoint for shards that changed."""
        targets = {}
        for doc_id in doc_ids:
            targets.setdefault(self.router.route(doc_id), set()).add(doc_id)
        commits = {}
        for shard_id in sorted(targets):
            commit = self.shard(shard_id).delete_documents(targets[shard_id])
            if commit is not None:
                commits[shard_id] = commit
        logger.info(f'Delete of {len(doc_ids)} ids committed on {len(commits)} shards')
        return commits

    def merge_segments(self, shard_id=None):
        """Compact one shard, or every shard when ``shard_id`` is None."""
        shard_ids = [shard_id] if shard_id is not None else sorted(self.shards)
        return {s: self.shard(s).merge_segments() for s in shard_ids}

    def _active_shards(self, allow_partial):
        if self.failed_shards and not allow_partial:
            raise self.failed_shards[min(self.failed_shards)]
        for shard_id in sorted(self.failed_shards):
            logger.warning(f'Searching without shard {shard_id}')
        return [self.shards[s] for s in sorted(self.shards)]

    def search(self, query, k=10, allow_partial=False):
        """
        OR query ranked by tf-idf.

        Args:
            query (str): Free-text query, analyzed like the documents
            k (int): Maximum number of hits, >= 1
            allow_partial (bool): Skip shards that failed to open instead of raising

        Returns:
            list: SearchHit objects ordered by (score desc, doc_id asc)
        """
        if k < 1:
            raise InvalidInputError(f'k must be >= 1, got {k}')
        shards = self._active_shards(allow_partial)
        terms = list(dict.fromkeys(tokenize(query, self._require_model())))
        if not terms or not shards:
            return []

        # Query-then-fetch: global statistics first
        num_docs, df = 0, dict.fromkeys(terms, 0)
        for shard_docs, shard_df in self._executor.map(lambda s: s.term_statistics(terms), shards):
            num_docs += shard_docs
            for term, count in shard_df.items():
                df[term] += count
        idf = {term: inverse_document_frequency(num_docs, df[term]) for term in terms}

        per_shard = self._executor.map(lambda s: s.search(terms, idf, k), shards)
        hits = heapq.nsmallest(k, (hit for shard_hits in per_shard for hit in shard_hits),
                               key=SearchHit.sort_key)
        logger.debug(f'Query {query!r}: terms {terms}, {len(hits)} hits')
        return hits

    def close(self):
        self._executor.shutdown(wait=True)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def __repr__(self):
        return f'<SearchEngine {self.root} shards={self.meta.num_shards}>'


def open_index(root, model=None, num_shards=None, num_nodes=0, create=False,
               seal_threshold=1000, max_workers=None):
    """
    Open (or create) an index directory.

    An existing index keeps the shard layout recorded in its meta.json.
    A fresh directory opens as an empty index; metadata is written with the
    first commit.

    Raises:
        IndexNotFoundError: ``root`` does not exist and ``create`` is False
        InvalidInputError: ``num_shards`` conflicts with an existing layout
    """
    if not os.path.isdir(root):
        if not create:
            raise IndexNotFoundError(root)
        os.makedirs(root, exist_ok=True)

    meta = storage.read_meta(root)
    if meta is None:
        meta = ClusterMeta.create(num_shards or 1, num_nodes or 0)
    elif num_shards is not None and num_shards != meta.num_shards:
        raise InvalidInputError(f'index {root} has {meta.num_shards} shards, not {num_shards}')

    engine = SearchEngine(root, meta, model=model, seal_threshold=seal_threshold,
                          max_workers=max_workers)
    engine._load_shards()
    logger.info(f'Opened index {root}: {meta.num_shards} shards, {engine.doc_count} documents')
    return engine
