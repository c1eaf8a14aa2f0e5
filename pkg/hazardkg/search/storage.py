"""
Index Storage.
On-disk codec for sealed segments, commit manifests and cluster metadata.

A segment file is a magic header, a sequence of length-prefixed JSON
records (one header record with the document lengths, then one record per
term in term order) and a footer holding the record count and the CRC32 of
everything before it. Manifests are written to a temporary file, synced and
renamed into place, so a crash leaves either the old or the new manifest.
"""

import json
import logging
import os
import re
import struct
import zlib

from hazardkg.errors import IndexIntegrityError, StorageError
from hazardkg.models.index import ClusterMeta, CommitPoint, InvertedIndex, PostingEntry, Segment

logger = logging.getLogger(__name__)

SEGMENT_MAGIC = b'HKGSEG01'
FOOTER_MAGIC = b'HKGEND01'
_LENGTH = struct.Struct('<I')
_FOOTER = struct.Struct('<8sII')  # magic, record count, crc32

META_FILE = 'meta.json'
_SEGMENT_RE = re.compile(r'seg-(\d+)\.idx')
_COMMIT_RE = re.compile(r'commit-(\d+)\.json')


def segment_file(shard_dir, segment_id):
    return os.path.join(shard_dir, f'seg-{segment_id}.idx')


def commit_file(shard_dir, commit_id):
    return os.path.join(shard_dir, f'commit-{commit_id}.json')


def _record(obj):
    payload = json.dumps(obj, ensure_ascii=False, separators=(',', ':')).encode('utf-8')
    return _LENGTH.pack(len(payload)) + payload


def encode_segment(segment_id, index):
    """Serialize an inverted index; returns (bytes, crc32)."""
    parts = [SEGMENT_MAGIC, _record({
        'segment_id': segment_id,
        'doc_lengths': dict(sorted(index.doc_lengths.items())),
    })]
    for term in sorted(index.terms):
        parts.append(_record({
            'term': term,
            'postings': [[p.doc_id, list(p.positions)] for p in index.terms[term]],
        }))
    body = b''.join(parts)
    checksum = zlib.crc32(body)
    return body + _FOOTER.pack(FOOTER_MAGIC, len(parts) - 1, checksum), checksum


def decode_segment(data, shard_id, expected_id=None):
    """
    Parse segment bytes back into a Segment.

    Raises:
        IndexIntegrityError: Any truncation, checksum or structure problem
    """
    def fail(detail):
        raise IndexIntegrityError(shard_id, detail)

    if len(data) < len(SEGMENT_MAGIC) + _FOOTER.size or not data.startswith(SEGMENT_MAGIC):
        fail('segment file truncated or missing header')
    body, footer = data[:-_FOOTER.size], data[-_FOOTER.size:]
    magic, count, checksum = _FOOTER.unpack(footer)
    if magic != FOOTER_MAGIC:
        fail('segment footer missing')
    if zlib.crc32(body) != checksum:
        fail('segment checksum mismatch')

    records, offset = [], len(SEGMENT_MAGIC)
    while offset < len(body):
        if offset + _LENGTH.size > len(body):
            fail('segment record header truncated')
        (length,) = _LENGTH.unpack_from(body, offset)
        offset += _LENGTH.size
        if offset + length > len(body):
            fail('segment record truncated')
        try:
            records.append(json.loads(body[offset:offset + length].decode('utf-8')))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            fail(f'segment record unreadable: {e}')
        offset += length

    if not records or len(records) - 1 != count:
        fail('segment record count mismatch')
    header = records[0]
    segment_id = header.get('segment_id')
    if expected_id is not None and segment_id != expected_id:
        fail(f'segment id {segment_id} found where {expected_id} expected')

    index = InvertedIndex(doc_lengths=dict(header.get('doc_lengths', {})))
    for rec in records[1:]:
        index.terms[rec['term']] = [PostingEntry(doc_id, tuple(pos)) for doc_id, pos in rec['postings']]
    if not index.check_invariants():
        fail(f'segment {segment_id} posting lists violate ordering invariants')
    return Segment(segment_id, index, checksum)


def _fsync_dir(path):
    try:
        fd = os.open(path, os.O_RDONLY)
    except OSError:
        return
    try:
        os.fsync(fd)
    except OSError:
        pass
    finally:
        os.close(fd)


def atomic_write(path, data):
    """Write bytes to ``path`` through a synced temporary file and a rename."""
    tmp_path = f'{path}.tmp'
    try:
        with open(tmp_path, 'wb') as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_path, path)
    except OSError as e:
        if os.path.exists(tmp_path):
            try:
                os.remove(tmp_path)
            except OSError:
                pass
        raise StorageError(f'cannot write {path}: {e}')
    _fsync_dir(os.path.dirname(path) or '.')


def write_segment(shard_dir, segment_id, index):
    """Seal an index into seg-<id>.idx; returns the Segment."""
    data, checksum = encode_segment(segment_id, index)
    atomic_write(segment_file(shard_dir, segment_id), data)
    return Segment(segment_id, index, checksum)


def read_segment(shard_dir, segment_id, shard_id, expected_checksum=None):
    path = segment_file(shard_dir, segment_id)
    try:
        with open(path, 'rb') as f:
            data = f.read()
    except FileNotFoundError:
        raise IndexIntegrityError(shard_id, f'segment file {path} missing')
    segment = decode_segment(data, shard_id, expected_id=segment_id)
    if expected_checksum is not None and segment.checksum != expected_checksum:
        raise IndexIntegrityError(shard_id, f'segment {segment_id} does not match its commit checksum')
    return segment


def write_commit(shard_dir, commit):
    payload = json.dumps(commit.to_dict(), ensure_ascii=False, sort_keys=True).encode('utf-8')
    atomic_write(commit_file(shard_dir, commit.commit_id), payload)


def list_ids(shard_dir, pattern):
    if not os.path.isdir(shard_dir):
        return []
    ids = []
    for name in os.listdir(shard_dir):
        match = pattern.fullmatch(name)
        if match:
            ids.append(int(match.group(1)))
    return sorted(ids)


def segment_ids_on_disk(shard_dir):
    return list_ids(shard_dir, _SEGMENT_RE)


def read_latest_commit(shard_dir):
    """Highest-numbered commit manifest that parses; None for a fresh shard."""
    for commit_id in reversed(list_ids(shard_dir, _COMMIT_RE)):
        path = commit_file(shard_dir, commit_id)
        try:
            with open(path, encoding='utf-8') as f:
                commit = CommitPoint.from_dict(json.load(f))
        except (OSError, ValueError, KeyError, TypeError) as e:
            logger.warning(f'Skipping unreadable commit manifest {path}: {e}')
            continue
        if commit.commit_id != commit_id:
            logger.warning(f'Skipping commit manifest {path}: id mismatch')
            continue
        return commit
    return None


def prune_shard_files(shard_dir, commit):
    """Remove manifests older than ``commit`` and segments it no longer references."""
    live = set(commit.live_segment_ids)
    for commit_id in list_ids(shard_dir, _COMMIT_RE):
        if commit_id < commit.commit_id:
            _remove_quietly(commit_file(shard_dir, commit_id))
    for segment_id in segment_ids_on_disk(shard_dir):
        if segment_id not in live:
            _remove_quietly(segment_file(shard_dir, segment_id))


def _remove_quietly(path):
    try:
        os.remove(path)
    except OSError as e:
        logger.debug(f'Could not remove {path}: {e}')


def write_meta(root, meta):
    payload = json.dumps(meta.to_dict(), sort_keys=True, indent=2).encode('utf-8')
    atomic_write(os.path.join(root, META_FILE), payload)


def read_meta(root):
    """Cluster metadata of an index root, None when it has none yet."""
    path = os.path.join(root, META_FILE)
    if not os.path.exists(path):
        return None
    try:
        with open(path, encoding='utf-8') as f:
            return ClusterMeta.from_dict(json.load(f))
    except (ValueError, KeyError, TypeError) as e:
        raise StorageError(f'cannot read cluster metadata {path}: {e}')
