import shutil
from pathlib import Path

import pytest

from tiergraph.config import load_config
from tiergraph.diagnostics import DiagnosticLog
from tiergraph.store import rebuild

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus" / "shopdemo"
TRUTH_DIR = CORPUS_DIR / "truth"

# Hand-counted from a directory listing of the bundled corpus, recorded
# before the scanner existed.
SHOPDEMO_FILE_TOTAL = 31
SHOPDEMO_CLASS_TOTAL = 24


@pytest.fixture(scope="session")
def shopdemo_configs():
    configs, _ = load_config(CORPUS_DIR / "tiergraph.toml")
    return configs


@pytest.fixture(scope="session")
def shopdemo_build(shopdemo_configs):
    """One shared rebuild of the bundled corpus: (snapshot, diagnostics)."""
    log = DiagnosticLog()
    snapshot = rebuild(shopdemo_configs, diagnostics=log)
    return snapshot, log


@pytest.fixture(scope="session")
def shopdemo_snapshot(shopdemo_build):
    return shopdemo_build[0]


@pytest.fixture()
def corpus_copy(tmp_path):
    """Mutable copy of the corpus for churn tests; returns its config path."""
    dest = tmp_path / "shopdemo"
    shutil.copytree(CORPUS_DIR, dest)
    return dest / "tiergraph.toml"
