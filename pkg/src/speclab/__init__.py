"""Specialization laboratory: covers of the line over Q, Beckmann
ramification prediction, superelliptic twists with local and global point
tests, census experiments, and the exponent calculus."""

__version__ = "0.1.0"
