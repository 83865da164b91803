"""Branched arc algebras over F2: strands algebras, type-D endomorphism algebras,
transferred A-infinity operations, Khovanov's arc algebras and Hochschild homology
of tangle bimodules."""

__version__ = "0.1.0"
