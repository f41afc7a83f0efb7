"""framewatch: frame-semantic pattern surveillance over annotated corpora."""

from importlib import resources

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Filesystem path of a shipped data file (frame store, pattern pack, sample corpus)."""
    return str(resources.files(__name__).joinpath("data", name))


DEFAULT_STORE = "frame_store.jsonl"
DEFAULT_PATTERNS = "patterns.jsonl"
SAMPLE_CORPUS = "sample_corpus.jsonl"
