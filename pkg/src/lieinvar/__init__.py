"""Exact computation of coadjoint invariants of semidirect sums sl(2) + V(m)."""

__version__ = "0.1.0"
