"""Quiver mutation, green sequences, Banff certificates and principal-coefficient seeds.

Analysis functions return certificate documents as dictionaries; pass
``json.dumps(doc)`` to :func:`check_document` to re-verify one.
"""

from ._core import (
    DocumentError,
    LaurentError,
    Quiver,
    QuiverError,
    __version__,
    certify_banff,
    check_document,
    explore_mutation_class,
    run_cli,
    search_maximal_green,
    search_reddening,
    seed_mutate,
    synthesize_from_banff,
    synthesize_from_tree,
    verify_class_p_tree,
    verify_maximal_green,
    verify_reddening,
)

__all__ = [
    "DocumentError",
    "LaurentError",
    "Quiver",
    "QuiverError",
    "__version__",
    "certify_banff",
    "check_document",
    "explore_mutation_class",
    "run_cli",
    "search_maximal_green",
    "search_reddening",
    "seed_mutate",
    "synthesize_from_banff",
    "synthesize_from_tree",
    "verify_class_p_tree",
    "verify_maximal_green",
    "verify_reddening",
]
