"""
Knowledge Graph Commands.
`hazardkg kg build | query | export`.
"""

import os

import click

from hazardkg import pass_pipeline
from hazardkg.ingest.parser import read_records
from hazardkg.segmenter.training import load_model
from .builder import build_graph
from .export import FORMATS, export_graph, load_graph, save_graph
from .extraction import load_lexicons
from .query import query_subgraph


@click.group('kg')
def kg():
    """Build, query and export the hazard knowledge graph."""


@kg.command('build')
@click.option('--records', 'records_path', type=click.Path(dir_okay=False), default=None,
              help='Records file (records.jsonl).')
@click.option('--model', 'model_path', type=click.Path(dir_okay=False), default=None,
              help='Segmentation model file.')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Graph file; an existing graph is extended.')
@click.option('--lexicons', 'lexicons_path', type=click.Path(dir_okay=False), default=None,
              help='Entity lexicon file (JSON).')
@pass_pipeline
def build(pipeline, records_path, model_path, out, lexicons_path):
    """Extract entities and relations from records into a graph."""
    settings = pipeline.settings
    out = out or settings.graph_path
    records = read_records(records_path or settings.records_path)
    model = load_model(model_path or settings.model_path)

    graph = load_graph(out) if os.path.exists(out) else None
    graph = build_graph(records, model, load_lexicons(lexicons_path), graph=graph)
    save_graph(graph, out)
    click.echo(f'graph: {graph.node_count()} nodes, {graph.edge_count()} edges -> {out}')


@kg.command('query')
@click.option('--graph', 'graph_path', type=click.Path(dir_okay=False), default=None,
              help='Graph file.')
@click.option('--keywords', required=True, help='Comma-separated keywords.')
@click.option('--hops', type=click.IntRange(min=0), default=1, show_default=True,
              help='Undirected hops around the matching nodes.')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Write the subgraph here instead of printing it.')
@pass_pipeline
def query(pipeline, graph_path, keywords, hops, out):
    """Extract the keyword-seeded subgraph."""
    graph = load_graph(graph_path or pipeline.settings.graph_path)
    subgraph = query_subgraph(graph, [k for k in keywords.split(',') if k.strip()], hops)
    if out:
        save_graph(subgraph, out)
        click.echo(f'subgraph: {subgraph.node_count()} nodes, {subgraph.edge_count()} edges -> {out}')
    else:
        click.echo(export_graph(subgraph).decode('utf-8'), nl=False)


@kg.command('export')
@click.option('--graph', 'graph_path', type=click.Path(dir_okay=False), default=None,
              help='Graph file.')
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default='dot', show_default=True,
              help='Output format.')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Output file (stdout when omitted).')
@pass_pipeline
def export(pipeline, graph_path, fmt, out):
    """Export a graph as DOT or as a graph document."""
    data = export_graph(load_graph(graph_path or pipeline.settings.graph_path), fmt)
    if out:
        with open(out, 'wb') as f:
            f.write(data)
        pipeline.logger.info(f'Exported graph as {fmt} to {out}')
    else:
        click.echo(data.decode('utf-8'), nl=False)
