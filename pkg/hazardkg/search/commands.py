"""
Search Commands.
Index records, query the index and maintain its segments.
"""

import click

from hazardkg import pass_pipeline
from hazardkg.ingest.parser import read_records
from hazardkg.segmenter.training import load_model
from .engine import open_index
from .storage import read_meta


@click.command('index')
@click.option('--records', 'records_path', type=click.Path(dir_okay=False), default=None,
              help='Records file (records.jsonl).')
@click.option('--model', 'model_path', type=click.Path(dir_okay=False), default=None,
              help='Segmentation model file.')
@click.option('--dir', 'index_dir', type=click.Path(file_okay=False), default=None,
              help='Index root directory.')
@click.option('--shards', type=click.IntRange(min=1), default=None,
              help='Shard count for a new index.')
@click.option('--nodes', type=click.IntRange(min=0), default=None,
              help='Simulated node count for a new index (0: one node per shard).')
@pass_pipeline
def index(pipeline, records_path, model_path, index_dir, shards, nodes):
    """Index records into the sharded search engine."""
    settings = pipeline.settings
    records = read_records(records_path or settings.records_path)
    model = load_model(model_path or settings.model_path)
    index_dir = index_dir or settings.index_dir

    engine = open_index(
        index_dir, model=model, create=True,
        num_shards=shards or (None if read_meta(index_dir) else settings.num_shards),
        num_nodes=nodes if nodes is not None else settings.num_nodes,
        seal_threshold=settings.segment_seal_threshold,
    )
    with engine:
        commits = engine.index_documents(records)
        for shard_id, commit in sorted(commits.items()):
            pipeline.logger.info(f'shard {shard_id}: commit {commit.commit_id}')
        click.echo(f'indexed {len(records)} records into {engine.meta.num_shards} shards -> {index_dir}')


@click.command('search')
@click.option('--dir', 'index_dir', type=click.Path(), default=None,
              help='Index root directory.')
@click.option('--model', 'model_path', type=click.Path(dir_okay=False), default=None,
              help='Segmentation model file.')
@click.option('--query', required=True, help='Query text.')
@click.option('-k', 'k', type=click.IntRange(min=1), default=10, show_default=True,
              help='Number of hits.')
@pass_pipeline
def search(pipeline, index_dir, model_path, query, k):
    """Search the index; prints doc_id, score and matched terms."""
    index_dir = index_dir or pipeline.settings.index_dir
    engine = open_index(index_dir)
    with engine:
        engine.model = load_model(model_path or pipeline.settings.model_path)
        hits = engine.search(query, k)
    for hit in hits:
        click.echo(f'{hit.doc_id}\t{hit.score:.6f}\t{",".join(hit.matched_terms)}')
    pipeline.logger.info(f'Query {query!r} returned {len(hits)} hits')


@click.command('delete')
@click.option('--dir', 'index_dir', type=click.Path(), default=None,
              help='Index root directory.')
@click.option('--id', 'doc_ids', multiple=True, required=True,
              help='Document id to delete (repeatable).')
@pass_pipeline
def delete(pipeline, index_dir, doc_ids):
    """Tombstone documents by id."""
    index_dir = index_dir or pipeline.settings.index_dir
    with open_index(index_dir) as engine:
        commits = engine.delete_documents(list(doc_ids))
    click.echo(f'deleted {len(doc_ids)} ids; {len(commits)} shards committed')


@click.command('merge')
@click.option('--dir', 'index_dir', type=click.Path(), default=None,
              help='Index root directory.')
@click.option('--shard', 'shard_id', type=click.IntRange(min=0), default=None,
              help='Merge only this shard.')
@pass_pipeline
def merge(pipeline, index_dir, shard_id):
    """Merge each shard's segments into one, dropping deleted documents."""
    index_dir = index_dir or pipeline.settings.index_dir
    with open_index(index_dir) as engine:
        commits = engine.merge_segments(shard_id)
        for sid, commit in sorted(commits.items()):
            click.echo(f'shard {sid}: commit {commit.commit_id}, segments {list(commit.live_segment_ids)}')
