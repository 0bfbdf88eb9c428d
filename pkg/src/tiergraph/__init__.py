"""tiergraph: structural code mining and layered call-graph navigation."""

__version__ = "0.1.0"
