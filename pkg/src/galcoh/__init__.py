"""galcoh: exact first Galois cohomology of finite groups.

Computes H^1 class sets of finite group actions together with the
classical classification bijections they realize: twisted forms of tensors
over finite fields, unit and ideal cohomology of quadratic number fields,
Galois-stable lattice classes, and semisimple commutative algebras.

Every claimed bijection is cross-checked against an independent brute
force oracle somewhere in the test suite; computations are exact (big
integers and rationals throughout) and deterministic.
"""

__version__ = "0.1.0"
