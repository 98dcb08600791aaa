"""Random numerical semigroups under the ER-type model S(M, p)."""

__version__ = "0.1.0"
