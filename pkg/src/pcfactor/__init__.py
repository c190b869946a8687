"""Properly colored 2-factors and even-pancyclic cycles in edge-colored
complete balanced bipartite graphs.

The package provides the data model (:mod:`pcfactor.graph`), seeded
generators (:mod:`pcfactor.gen`), exact desk-scale oracles
(:mod:`pcfactor.oracle`), the rotation/exchange factor builder
(:mod:`pcfactor.builder`), the absorbing machinery for cycles of every
prescribed even length (:mod:`pcfactor.absorb`), and a batch CLI
(:mod:`pcfactor.cli`).
"""

__version__ = "0.1.0"
