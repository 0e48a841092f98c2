"""convlab: a desk-scale laboratory for net convergence structures on
finite posets — induced topologies, generalized way-below relations, all
the continuity notions, and exhaustive property checking."""

__version__ = "0.1.0"
