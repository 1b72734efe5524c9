"""Exact tree enumerators, Eulerian circuit counts and random-walk quantities
of weighted digraphs, computed directly and through biclique partitions.

All arithmetic is over :class:`fractions.Fraction`; floats are rejected.
"""

from . import errors, generators
from .arborescence import *  # noqa: F401,F403
from .arborescence import __all__ as _arb_all
from .biclique import *  # noqa: F401,F403
from .biclique import __all__ as _bic_all
from .errors import BicliqueTreesError
from .graph import *  # noqa: F401,F403
from .graph import __all__ as _graph_all
from .linalg import *  # noqa: F401,F403
from .linalg import __all__ as _lin_all
from .markov import *  # noqa: F401,F403
from .markov import __all__ as _markov_all
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    *_lin_all, *_graph_all, *_arb_all, *_bic_all, *_markov_all,
    "BicliqueTreesError", "SUITES", "run_suite", "errors", "generators",
]
