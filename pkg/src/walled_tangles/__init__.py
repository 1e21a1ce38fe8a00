"""Exact computation with oriented walled tangles, their skein-normal forms,
and their matrix action on mixed tensor space over the quantum group of gl_n.

Modules build on each other in this order: laurent (exact scalars), tangle
(diagram combinatorics), skein (normal forms and the algebra product), rep
(matrices on mixed tensor space), qgroup (quantum-group operators), duality
(commutant and rank checks), cli (command-line front end).
"""

from __future__ import annotations

__version__ = "0.1.0"
