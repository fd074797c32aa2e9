"""Provenance fingerprints for graphs and path systems.

Reports carry `graph_<hash>` and `paths_<hash>` so two runs can be matched to
the same inputs. Edges and paths are hashed as sorted tuples over vertices
1..n; the vertex count is part of the digest because isolated vertices do not
show up in the edge list.
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Mapping
from typing import Literal

FingerprintKind = Literal["graph", "paths"]

DIGEST_CHARS = 16


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("ascii")).hexdigest()[:DIGEST_CHARS]


def graph_fingerprint(n: int, edges: Iterable[tuple[int, int]]) -> str:
    """`graph_<hash>` of the vertex count and the undirected edge set."""

    canonical = sorted((min(u, v), max(u, v)) for u, v in edges)
    return _fingerprint("graph", f"{n}|{canonical}")


def path_system_fingerprint(n: int, paths: Mapping[tuple[int, int], tuple[int, ...]]) -> str:
    """`paths_<hash>` of the chosen path for every ordered pair."""

    canonical = sorted((u, v, tuple(route)) for (u, v), route in paths.items())
    return _fingerprint("paths", f"{n}|{canonical}")


def _fingerprint(kind: FingerprintKind, text: str) -> str:
    return f"{kind}_{_digest(text)}"
