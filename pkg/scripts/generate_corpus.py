"""Regenerate the built-in corpus under src/stabext/data/corpus."""

import argparse
from pathlib import Path

from stabext.workbench import generate_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    default = Path(__file__).resolve().parent.parent / "src" / "stabext" / "data" / "corpus"
    ap.add_argument("outdir", nargs="?", default=str(default))
    args = ap.parse_args()
    for d in generate_corpus(args.outdir):
        print(d)


if __name__ == "__main__":
    main()
