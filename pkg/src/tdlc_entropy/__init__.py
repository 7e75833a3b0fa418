"""Exact topological entropy, scale and tidy-subgroup computations for
continuous endomorphisms of totally disconnected locally compact groups."""

__version__ = "0.1.0"

from .exact import ExactEntropy, IndexValue, entropy_add, entropy_from_index  # noqa: F401
