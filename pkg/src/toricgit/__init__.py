"""Exact polyhedral engine and verification harness for toric GIT quotients
of expanded degenerations of a nodal surface family."""

__version__ = "0.1.0"
