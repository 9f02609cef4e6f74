import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _util import AUC_FILE, CACHE, CKPT, CORPUS, METRICS, run_cnpkit


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    if not (CORPUS / "manifest.txt").exists():
        CORPUS.mkdir(parents=True, exist_ok=True)
        run_cnpkit(
            "gen-corpus",
            "--output", str(CORPUS),
            "--count", "100",
            "--seed", "7",
            "--label-runs", "4",
            "--cutoff", "2.0",
            "--n-min", "40",
            "--n-max", "120",
        )
    return CORPUS


@pytest.fixture(scope="session")
def corpus(corpus_dir):
    from cnpredictor import load_corpus

    return load_corpus(corpus_dir)


@pytest.fixture(scope="session")
def trained_model(corpus):
    """(model, best validation AUC), trained once and cached on disk."""

    from cnpredictor import ModelConfig, load_checkpoint, train

    if CKPT.exists() and AUC_FILE.exists():
        blob = json.loads(AUC_FILE.read_text())
        return load_checkpoint(CKPT), blob["best_auc"]
    CACHE.mkdir(exist_ok=True)
    result = train(
        corpus["train"],
        corpus["val"],
        ModelConfig(),
        seed=0,
        checkpoint_path=CKPT,
        metrics_path=METRICS,
    )
    AUC_FILE.write_text(
        json.dumps({"best_auc": result.best_auc, "best_epoch": result.best_epoch})
    )
    return load_checkpoint(CKPT), result.best_auc
