"""Birationality, inverses, base loci and embeddings of rational maps."""

from .fields import GF, QQ, Field
from .rings import MonomialOrder, Poly, PolyRing

__version__ = "0.1.0"
