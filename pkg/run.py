"""
Pipeline entry point.
Runs the hazardkg command line from a source checkout.

Usage:
    python run.py ingest --in table.txt --out records.jsonl
    python run.py --env production index --records records.jsonl --model model.bin --dir idx
"""

from hazardkg.cli import main

if __name__ == '__main__':
    main()
