"""Write a seeded corpus of random arrangement files.

    python scripts/gen_corpus.py --seed 7 --hyperplane 100 --toric 25 --out corpus/
"""
import argparse
import json
import random
from dataclasses import dataclass
from pathlib import Path

from dissect.corpus import random_hyperplane_spec, random_toric_spec
from dissect.fileformat import dump_spec


@dataclass
class CorpusConfig:
    out: Path
    seed: int = 0
    hyperplane: int = 100
    toric: int = 25
    max_dim: int = 3
    max_n: int = 7


def generate(cfg: CorpusConfig) -> list[Path]:
    rng = random.Random(cfg.seed)
    cfg.out.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(cfg.hyperplane):
        spec = random_hyperplane_spec(rng, cfg.max_dim, cfg.max_n)
        written.append(_write(cfg.out / f"hyperplane-{i:03d}.json", dump_spec("hyperplane", spec)))
    for i in range(cfg.toric):
        written.append(_write(cfg.out / f"toric-{i:03d}.json", dump_spec("toric", random_toric_spec(rng))))
    return written


def _write(path: Path, doc: dict) -> Path:
    path.write_text(json.dumps(doc, indent=1) + "\n")
    return path


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("corpus"))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--hyperplane", type=int, default=100)
    ap.add_argument("--toric", type=int, default=25)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=7)
    a = ap.parse_args()
    cfg = CorpusConfig(a.out, a.seed, a.hyperplane, a.toric, a.max_dim, a.max_n)
    paths = generate(cfg)
    print(f"wrote {len(paths)} files to {cfg.out}")


if __name__ == "__main__":
    main()
