"""Gazetteer store, place-name resolution, and the two location distances.

The gazetteer dump format is a tab-separated file with one node per line:

    id <TAB> name <TAB> parent_id <TAB> lat <TAB> lon <TAB> feature_class

``parent_id`` is empty for roots. Lines starting with '#' are comments.
A 50-node fixture ships with the repository; a full GeoNames ingestion is
an optional offline step producing the same format.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional

log = logging.getLogger(__name__)

EARTH_RADIUS_KM = 6371.0

# resolve() prefers administratively larger places when names collide.
_FEATURE_RANK = {"country": 3, "region": 2, "city": 1}


class GazetteerError(Exception):
    pass


@dataclass(frozen=True)
class GazetteerNode:
    id: str
    name: str
    parent_id: Optional[str]
    lat: float
    lon: float
    feature_class: str


class Gazetteer:
    """Immutable after ingest; all queries are read-only."""

    def __init__(self, nodes: Dict[str, GazetteerNode]):
        self._nodes = dict(nodes)
        self._by_name: Dict[str, list] = {}
        for node in self._nodes.values():
            self._by_name.setdefault(node.name.casefold(), []).append(node)
        self._check_acyclic()
        self._depths: Dict[str, int] = {}

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def get(self, node_id: str) -> Optional[GazetteerNode]:
        return self._nodes.get(node_id)

    def _check_acyclic(self) -> None:
        state = {}  # 0 visiting, 1 done
        for start in self._nodes:
            chain = []
            node_id = start
            while node_id is not None and node_id in self._nodes:
                if state.get(node_id) == 1:
                    break
                if node_id in chain:
                    cycle = chain[chain.index(node_id):] + [node_id]
                    raise GazetteerError(f"parent cycle: {' -> '.join(cycle)}")
                chain.append(node_id)
                node_id = self._nodes[node_id].parent_id
            for visited in chain:
                state[visited] = 1

    def resolve(self, name: str) -> Optional[GazetteerNode]:
        """Case-insensitive exact name match, deterministic among duplicates."""
        hits = self._by_name.get((name or "").strip().casefold())
        if not hits:
            return None
        return min(hits, key=lambda n: (-_FEATURE_RANK.get(n.feature_class, 0), n.id))

    def _ancestry(self, node: GazetteerNode) -> list:
        chain = [node.id]
        current = node
        while current.parent_id is not None:
            parent = self._nodes.get(current.parent_id)
            if parent is None:
                break  # dangling parent acts as a root
            chain.append(parent.id)
            current = parent
        return chain

    def hierarchy_distance(self, a: GazetteerNode, b: GazetteerNode) -> int:
        """Tree distance via the lowest common ancestor.

        Nodes under different roots are joined through a virtual global
        root with every real root at depth 1 beneath it.
        """
        chain_a = self._ancestry(a)
        chain_b = self._ancestry(b)
        positions_b = {node_id: depth for depth, node_id in enumerate(chain_b)}
        for depth_a, node_id in enumerate(chain_a):
            if node_id in positions_b:
                return depth_a + positions_b[node_id]
        return len(chain_a) + len(chain_b)  # via the virtual root


def ingest_gazetteer(path) -> Gazetteer:
    """Load a dump; duplicate ids keep the first record (single parent chain)."""
    path = Path(path)
    nodes: Dict[str, GazetteerNode] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 6:
            raise GazetteerError(f"{path.name}:{lineno}: expected 6 tab-separated fields")
        node_id, name, parent_id, lat, lon, feature_class = (p.strip() for p in parts)
        if node_id in nodes:
            log.warning("%s:%d: duplicate id %s, keeping first parent chain", path.name, lineno, node_id)
            continue
        try:
            nodes[node_id] = GazetteerNode(
                id=node_id,
                name=name,
                parent_id=parent_id or None,
                lat=float(lat),
                lon=float(lon),
                feature_class=feature_class,
            )
        except ValueError as exc:
            raise GazetteerError(f"{path.name}:{lineno}: {exc}") from exc
    return Gazetteer(nodes)


def resolve(name: str, store: Gazetteer) -> Optional[GazetteerNode]:
    return store.resolve(name)


def hierarchy_distance(a: GazetteerNode, b: GazetteerNode, store: Gazetteer) -> int:
    if a.id not in store or b.id not in store:
        raise GazetteerError("both nodes must come from the given store")
    return store.hierarchy_distance(a, b)


def haversine_km(p1, p2) -> float:
    """Great-circle distance in kilometers (mean Earth radius 6371.0 km)."""
    lat1, lon1 = p1
    lat2, lon2 = p2
    for lat, lon in ((lat1, lon1), (lat2, lon2)):
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            raise ValueError(f"coordinates out of range: {(lat, lon)!r}")
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    h = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))
