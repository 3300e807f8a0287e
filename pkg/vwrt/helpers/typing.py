"""Define typing helpers."""
from collections.abc import Callable, Iterable, Iterator
from typing import Any

Coloring = tuple[int, ...]
Mapper = Callable[[Callable[..., Any], Iterable[Any]], Iterator[Any]]
Strand = tuple[int, int]
