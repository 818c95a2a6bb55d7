"""
The shipped fixture graphs F1-F8.
"""

from pathlib import Path
from typing import Dict, List

from ..exceptions import DomainError
from .formats import parse_graph
from .graph import Graph

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURES: Dict[str, str] = {
    'F1': 'triangle',
    'F2': 'c5',
    'F3': 'tadpole',
    'F4': 'tadpole_k2',
    'F5': 'two_tadpoles',
    'F6': 'posy_bridge',
    'F7': 'p4',
    'F8': 'double_pendant',
}


def fixture_names() -> List[str]:
    return list(FIXTURES)


def fixture_path(name: str) -> Path:
    """Resolve 'F3' or 'tadpole' to the fixture file."""
    stem = FIXTURES.get(name.upper(), name)
    if stem not in FIXTURES.values():
        raise DomainError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    return FIXTURE_DIR / f"{stem}.txt"


def load_fixture(name: str) -> Graph:
    return parse_graph(fixture_path(name).read_text(encoding='utf-8'), 'edgelist')
