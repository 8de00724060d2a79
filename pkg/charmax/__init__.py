"""Character-Sum Maxima Laboratory

Exhaustive computation of M(chi) = max_t |S_chi(t)| over the characters of a modulus,
moment and tail statistics of the resulting tables, and numerical checks of the
analytic identities and constants that govern them.
"""

__version__ = "1.0.0"
