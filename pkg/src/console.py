import sys

from src import config

_ALWAYS = {"Error", "Warning"}


def set_verbose(flag: bool):
    config.VERBOSE = bool(flag)


def log(tag: str, message: str):
    """Print a tagged status line to stderr; stdout is reserved for results."""
    if tag in _ALWAYS or config.VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)


def banner(title: str, detail: str = None):
    if not config.VERBOSE:
        return
    print(f"\n{'='*60}", file=sys.stderr)
    print(f"[{title}]", file=sys.stderr)
    if detail:
        print(detail, file=sys.stderr)
    print(f"{'='*60}\n", file=sys.stderr)
