"""
Integration Tests for the Command Line Pipeline.
Runs ingest, training, indexing, graph building and analytics on the
shipped sample table and mini corpus.
"""

import json

import pytest

from hazardkg.cli import cli
from hazardkg.data import sample_path

# Mark all integration tests
pytestmark = pytest.mark.integration


class PipelineWorkspace:
    """Artifact paths of one pipeline run plus a helper to invoke commands."""

    def __init__(self, runner, root):
        self.runner = runner
        self.records = str(root / 'records.jsonl')
        self.model = str(root / 'model.bin')
        self.index = str(root / 'idx')
        self.graph = str(root / 'graph.json')
        self.root = root

    def run(self, *args):
        result = self.runner.invoke(cli, ['--env', 'testing', *args])
        assert result.exit_code == 0, result.output
        return result.output


@pytest.fixture
def workspace(runner, tmp_path):
    """Sample table ingested and the mini corpus model trained."""
    ws = PipelineWorkspace(runner, tmp_path)
    ws.run('ingest', '--in', sample_path('sample_table.txt'), '--out', ws.records)
    ws.run('train', '--corpus', sample_path('mini_corpus.txt'), '--out', ws.model)
    return ws


@pytest.fixture
def indexed(workspace):
    """Workspace with the records indexed into two shards."""
    workspace.run('index', '--records', workspace.records, '--model', workspace.model,
                  '--dir', workspace.index, '--shards', '2')
    return workspace


class TestIngestAndTrain:
    """Test cases for the first pipeline stages."""

    def test_records_file(self, workspace):
        """Test ingest writes one document per table record."""
        with open(workspace.records, encoding='utf-8') as f:
            documents = [json.loads(line) for line in f]

        assert [d['id'] for d in documents] == ['sample_table-1', 'sample_table-2', 'sample_table-3']
        assert documents[0]['severity_level'] == 'II'

    def test_segment_file(self, workspace, tmp_path):
        """Test line-by-line segmentation keeps every character."""
        source = tmp_path / 'text.txt'
        source.write_text('主变本体渗油\n引流线脱落\n', encoding='utf-8')

        output = workspace.run('segment', '--model', workspace.model, '--in', str(source))

        assert [''.join(line.split()) for line in output.splitlines()] == ['主变本体渗油', '引流线脱落']

    def test_eval_with_baseline(self, workspace):
        """Test evaluation prints the model row and the baseline row."""
        output = workspace.run('eval', '--model', workspace.model,
                               '--gold', sample_path('mini_corpus.txt'), '--baseline', 'maxmatch')

        lines = output.splitlines()
        assert lines[0].split() == ['Model', 'P', '(%)', 'R', '(%)', 'F', '(%)']
        assert lines[1].startswith('HMM-Viterbi')
        assert lines[2].startswith('Max-match')


class TestSearchPipeline:
    """Test cases for indexing, search and maintenance commands."""

    def test_search_hit(self, indexed):
        """Test the winding deformation report is found."""
        output = indexed.run('search', '--dir', indexed.index, '--model', indexed.model,
                             '--query', 'winding deformation')

        (line,) = output.splitlines()
        doc_id, score, terms = line.split('\t')
        assert doc_id == 'sample_table-3'
        assert float(score) > 0
        assert terms == 'winding,deformation'

    def test_delete_then_search(self, indexed):
        """Test deleted reports no longer match."""
        indexed.run('delete', '--dir', indexed.index, '--id', 'sample_table-3')

        output = indexed.run('search', '--dir', indexed.index, '--model', indexed.model,
                             '--query', 'winding deformation')

        assert output == ''

    def test_merge_keeps_results(self, indexed):
        """Test merging segments leaves search results unchanged."""
        query = ['search', '--dir', indexed.index, '--model', indexed.model, '--query', 'drainage line clamp']
        before = indexed.run(*query)

        output = indexed.run('merge', '--dir', indexed.index)

        assert output.splitlines()[0].startswith('shard 0: commit ')
        assert indexed.run(*query) == before

    def test_reindex_is_stable(self, indexed):
        """Test indexing the same records again keeps one copy of each."""
        query = ['search', '--dir', indexed.index, '--model', indexed.model, '--query', 'transformer', '-k', '10']
        before = indexed.run(*query)

        indexed.run('index', '--records', indexed.records, '--model', indexed.model, '--dir', indexed.index)

        assert indexed.run(*query) == before


class TestGraphPipeline:
    """Test cases for the knowledge graph commands."""

    @pytest.fixture
    def built(self, workspace):
        workspace.run('kg', 'build', '--records', workspace.records, '--model', workspace.model,
                      '--out', workspace.graph)
        return workspace

    def test_build_reports_counts(self, workspace):
        """Test build prints node and edge counts."""
        output = workspace.run('kg', 'build', '--records', workspace.records, '--model', workspace.model,
                               '--out', workspace.graph)

        assert output.startswith('graph: ')

    def test_build_twice_is_idempotent(self, built):
        """Test rebuilding into the same file changes nothing."""
        with open(built.graph, 'rb') as f:
            first = f.read()

        built.run('kg', 'build', '--records', built.records, '--model', built.model, '--out', built.graph)

        with open(built.graph, 'rb') as f:
            assert f.read() == first

    def test_query(self, built):
        """Test the keyword subgraph around the Beishan substation."""
        output = built.run('kg', 'query', '--graph', built.graph, '--keywords', 'Beishan', '--hops', '1')

        node_ids = {node['id'] for node in json.loads(output)['nodes']}
        assert 'location:66kv beishan substation' in node_ids
        assert 'equipment:no.1 transformer' in node_ids
        assert 'equipment:no.2 main transformer' not in node_ids

    def test_export_dot(self, built, tmp_path):
        """Test DOT export to a file."""
        out = tmp_path / 'graph.dot'

        built.run('kg', 'export', '--graph', built.graph, '--format', 'dot', '--out', str(out))

        assert out.read_text(encoding='utf-8').startswith('digraph hazardkg {')


class TestAnalyticsPipeline:
    """Test cases for statistics and prediction."""

    def test_stats(self, workspace, tmp_path):
        """Test monthly statistics flag the seasonal peaks."""
        csv_path = tmp_path / 'stats.csv'

        output = workspace.run('stats', '--records', workspace.records, '--out', str(csv_path), '--categories')

        assert 'flag: E1 winding_deformation peaks in March' in output
        assert 'flag: E4 drainage_line_falloff peaks in June' in output
        assert 'excluded: 0 undated, 1 unclassified' in output
        assert 'category: equipment and facility hazards\t2' in output
        assert len(csv_path.read_text(encoding='utf-8').splitlines()) == 1 + 2 * 6

    def test_predict(self, workspace):
        """Test each sample record triggers its rule."""
        output = workspace.run('predict', '--records', workspace.records)

        advisories = [json.loads(line) for line in output.splitlines()]
        assert [(a['record_id'], a['rule_id']) for a in advisories] == [
            ('sample_table-1', 'R2'), ('sample_table-2', 'R4'), ('sample_table-3', 'R1')
        ]


class TestEndToEnd:
    """Test cases for the whole pipeline on the shipped samples."""

    def test_sample_table_to_statistics(self, indexed):
        """Test search, graph and statistics agree on the transformer report."""
        output = indexed.run('search', '--dir', indexed.index, '--model', indexed.model, '--query', 'transformer')
        assert 'sample_table-1' in [line.split('\t')[0] for line in output.splitlines()]

        indexed.run('kg', 'build', '--records', indexed.records, '--model', indexed.model, '--out', indexed.graph)
        with open(indexed.graph, encoding='utf-8') as f:
            document = json.load(f)
        assert 'equipment:no.2 main transformer' in {node['id'] for node in document['nodes']}
        assert any(edge['src'] == 'equipment:no.2 main transformer' and edge['relation'] == 'has_hazard'
                   for edge in document['edges'])

        table = indexed.run('stats', '--records', indexed.records)
        rows = [line.split()[0] for line in table.splitlines()[1:7]]
        assert rows == ['E1', 'E2', 'E3', 'E4', 'E5', 'E6']
