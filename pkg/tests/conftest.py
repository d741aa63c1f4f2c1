import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permlab.distance import DistanceTable, build_distance_table


class TableStore:
    """Session-wide cache so each exact table is built once per run."""

    def __init__(self) -> None:
        self._cache: dict[tuple[int, str], DistanceTable] = {}

    def get(self, n: int, kind: str = "bt") -> DistanceTable:
        key = (n, kind)
        if key not in self._cache:
            self._cache[key] = build_distance_table(n, kind)  # type: ignore[arg-type]
        return self._cache[key]


@pytest.fixture(scope="session")
def tables() -> TableStore:
    return TableStore()
