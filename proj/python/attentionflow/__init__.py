"""Python bindings for the attentionflow engine.

Series helpers take ISO dates and plain lists. ``Store`` wraps the indexed
dataset; its ``search``/``node``/``ego`` methods return the same JSON
documents the HTTP API serves, decoded into Python objects.
"""

import json

from ._core import (
    DuplicateIdError,
    IntegrityError,
    NotFoundError,
    ParseError,
    align_daily,
    generate_synthetic,
    window_sum,
    x_position,
    year_partition,
)
from ._core import Store as _Store

__all__ = [
    "DuplicateIdError",
    "IntegrityError",
    "NotFoundError",
    "ParseError",
    "Store",
    "align_daily",
    "generate_synthetic",
    "window_sum",
    "x_position",
    "year_partition",
]


class Store:
    def __init__(self, core):
        self._core = core

    @classmethod
    def ingest(cls, nodes, edges, events=None):
        return cls(_Store.ingest(nodes, edges, events))

    @classmethod
    def load(cls, path):
        return cls(_Store.load(path))

    def save(self, path):
        return self._core.save(path)

    def export(self, directory):
        self._core.export(directory)

    @property
    def node_count(self):
        return self._core.node_count

    @property
    def edge_count(self):
        return self._core.edge_count

    @property
    def snapshot_id(self):
        return self._core.snapshot_id

    def total_attention(self, node_id):
        return self._core.total_attention(node_id)

    def search(self, query, limit=20):
        return json.loads(self._core.search_json(query, limit))

    def node(self, node_id):
        return json.loads(self._core.node_json(node_id))

    def ego(self, node_id, start=None, end=None, threshold=0.01, sort="force", max_alters=200):
        return json.loads(self._core.ego_json(node_id, start, end, threshold, sort, max_alters))

    def render_svg(self, node_id, start=None, end=None, threshold=0.01, sort="force"):
        return self._core.render_svg(node_id, start, end, threshold, sort)
