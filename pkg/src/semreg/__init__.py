"""semreg: an ontology-backed registry for robotics software components."""

__version__ = "0.1.0"
