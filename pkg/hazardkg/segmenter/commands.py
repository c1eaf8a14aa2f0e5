"""
Segmenter Commands.
Training, segmentation and evaluation from the command line.
"""

import click

from hazardkg import pass_pipeline
from hazardkg.errors import InvalidInputError
from .evaluation import BASELINES, evaluate_model, format_evaluation_table
from .training import load_model, read_gold_corpus, save_model, train_hmm
from .viterbi import segment as segment_text


@click.command('train')
@click.option('--corpus', required=True, type=click.Path(dir_okay=False),
              help='Gold corpus, one sentence per line, words separated by spaces.')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='Model file to write.')
@click.option('--epsilon', type=float, default=None,
              help='Additive smoothing constant (default 1e-6).')
@pass_pipeline
def train(pipeline, corpus, out, epsilon):
    """Train the BMES segmentation model."""
    out = out or pipeline.settings.model_path
    epsilon = epsilon if epsilon is not None else pipeline.settings.smoothing_epsilon

    tagged, lexicon = read_gold_corpus(corpus)
    model = train_hmm(tagged, epsilon, lexicon=lexicon)
    save_model(model, out)

    pipeline.logger.info(f'Model trained on {len(tagged)} sentences saved to {out}')
    click.echo(f'trained model on {len(tagged)} sentences ({len(model.vocab)} chars) -> {out}')


@click.command('segment')
@click.option('--model', 'model_path', type=click.Path(dir_okay=False), default=None,
              help='Model file.')
@click.option('--text', default=None, help='Text to segment.')
@click.option('--in', 'input_path', type=click.Path(dir_okay=False), default=None,
              help='File to segment line by line.')
@pass_pipeline
def segment(pipeline, model_path, text, input_path):
    """Segment text into words separated by spaces."""
    if (text is None) == (input_path is None):
        raise click.UsageError('give exactly one of --text or --in')
    model = load_model(model_path or pipeline.settings.model_path)

    if text is not None:
        lines = [text]
    else:
        with open(input_path, encoding='utf-8') as f:
            lines = f.read().splitlines()
    for line in lines:
        click.echo(' '.join(token for token in segment_text(model, line) if not token.isspace()))


@click.command('eval')
@click.option('--model', 'model_path', type=click.Path(dir_okay=False), default=None,
              help='Model file.')
@click.option('--gold', required=True, type=click.Path(dir_okay=False),
              help='Gold test corpus.')
@click.option('--baseline', type=click.Choice(BASELINES), default=None,
              help='Also score a baseline segmenter.')
@pass_pipeline
def evaluate(pipeline, model_path, gold, baseline):
    """Print precision, recall and F-value against a gold corpus."""
    model = load_model(model_path or pipeline.settings.model_path)
    with open(gold, encoding='utf-8') as f:
        sentences = [line.split() for line in f if line.split()]
    if not sentences:
        raise InvalidInputError(f'gold corpus {gold} has no sentences')

    rows = evaluate_model(model, sentences, baseline)
    click.echo(format_evaluation_table(rows), nl=False)
