"""
Graph Export.
Graph-document (JSON) and DOT serializations, plus graph files on disk.
"""

import json
import os

from hazardkg.errors import InvalidInputError, StorageError, UnknownFormatError
from hazardkg.models.graph import EntityCategory, KnowledgeGraph, RelationType

GRAPH_FORMAT_VERSION = 1
FORMATS = ('graph-document', 'dot')

CATEGORY_STYLES = {
    EntityCategory.EQUIPMENT: ('box', '#9ecae1'),
    EntityCategory.HAZARD_PHENOMENON: ('ellipse', '#fc9272'),
    EntityCategory.HAZARD_CATEGORY: ('hexagon', '#fdd0a2'),
    EntityCategory.LOCATION: ('house', '#a1d99b'),
    EntityCategory.MEASURE: ('note', '#c7e9c0'),
    EntityCategory.VIOLATION: ('octagon', '#fbb4b9'),
    EntityCategory.TIME: ('circle', '#dadaeb'),
    EntityCategory.VOLTAGE_CLASS: ('diamond', '#ffffb3'),
}

RELATION_STYLES = {
    RelationType.HAS_HAZARD: ('#de2d26', 'solid'),
    RelationType.LOCATED_AT: ('#31a354', 'solid'),
    RelationType.BELONGS_TO_CATEGORY: ('#e6550d', 'dashed'),
    RelationType.MITIGATED_BY: ('#3182bd', 'solid'),
    RelationType.VIOLATES: ('#756bb1', 'bold'),
    RelationType.OCCURRED_ON: ('#636363', 'dotted'),
    RelationType.HAS_ATTRIBUTE: ('#969696', 'dashed'),
}


def graph_to_document(graph):
    """Plain-data form with nodes sorted by id and edges by (src, dst, relation)."""
    nodes = []
    for node_id in sorted(graph.graph.nodes):
        data = graph.graph.nodes[node_id]
        nodes.append({
            'id': node_id,
            'label': data['label'],
            'category': data['category'].value,
            'attributes': {k: data['attributes'][k] for k in sorted(data['attributes'])},
            'sources': sorted(data['sources']),
        })
    edges = [
        {
            'src': edge.src,
            'dst': edge.dst,
            'relation': edge.relation.value,
            'sources': sorted(edge.source_record_ids),
        }
        for edge in graph.edges
    ]
    return {'nodes': nodes, 'edges': edges, 'format_version': GRAPH_FORMAT_VERSION}


def graph_from_document(document):
    """Rebuild a KnowledgeGraph from its graph-document form."""
    if not isinstance(document, dict) or document.get('format_version') != GRAPH_FORMAT_VERSION:
        raise InvalidInputError('not a graph document of a supported format_version')
    graph = KnowledgeGraph()
    try:
        for node in document['nodes']:
            graph.graph.add_node(
                node['id'],
                label=node['label'],
                category=EntityCategory(node['category']),
                attributes=dict(node.get('attributes', {})),
                sources=set(node.get('sources', [])),
            )
        for edge in document['edges']:
            relation = RelationType(edge['relation'])
            if edge['src'] not in graph.graph or edge['dst'] not in graph.graph:
                raise InvalidInputError(f'edge {edge["src"]} -> {edge["dst"]} references a missing node')
            if edge['src'] == edge['dst']:
                raise InvalidInputError(f'self-loop on {edge["src"]}')
            graph.graph.add_edge(edge['src'], edge['dst'], key=relation.value, relation=relation,
                                 sources=set(edge.get('sources', [])))
    except InvalidInputError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInputError(f'malformed graph document: {e!r}')
    return graph


def _dot_quote(text):
    escaped = str(text).replace('\\', '\\\\').replace('"', '\\"').replace('\n', '\\n')
    return f'"{escaped}"'


def graph_to_dot(graph):
    lines = ['digraph hazardkg {', '  graph [rankdir=LR];', '  node [style=filled, fontname="sans-serif"];']
    for node_id in sorted(graph.graph.nodes):
        data = graph.graph.nodes[node_id]
        shape, color = CATEGORY_STYLES[data['category']]
        lines.append(f'  {_dot_quote(node_id)} [label={_dot_quote(data["label"])}, '
                     f'shape={shape}, fillcolor="{color}", category="{data["category"].value}"];')
    for edge in graph.edges:
        color, style = RELATION_STYLES[edge.relation]
        lines.append(f'  {_dot_quote(edge.src)} -> {_dot_quote(edge.dst)} '
                     f'[label="{edge.relation.value}", color="{color}", style={style}];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def export_graph(graph, fmt='graph-document'):
    """
    Serialize a graph.

    Args:
        graph (KnowledgeGraph): Graph to export
        fmt (str): 'graph-document' or 'dot'

    Returns:
        bytes: UTF-8 encoded output, byte-stable for equal graphs
    """
    if fmt == 'graph-document':
        text = json.dumps(graph_to_document(graph), ensure_ascii=False, indent=1) + '\n'
    elif fmt == 'dot':
        text = graph_to_dot(graph)
    else:
        raise UnknownFormatError(f'unknown export format {fmt!r}; expected one of {", ".join(FORMATS)}')
    return text.encode('utf-8')


def import_graph(data):
    """Inverse of export_graph(graph, 'graph-document')."""
    try:
        document = json.loads(data.decode('utf-8') if isinstance(data, bytes) else data)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InvalidInputError(f'graph document is not valid JSON: {e}')
    return graph_from_document(document)


def save_graph(graph, path):
    """Write the graph-document file atomically."""
    tmp_path = f'{path}.tmp'
    try:
        with open(tmp_path, 'wb') as f:
            f.write(export_graph(graph, 'graph-document'))
        os.replace(tmp_path, path)
    except OSError as e:
        raise StorageError(f'cannot write graph {path}: {e}')


def load_graph(path):
    with open(path, 'rb') as f:
        return import_graph(f.read())
