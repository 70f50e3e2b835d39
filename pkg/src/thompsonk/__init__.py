"""Tree-pair arithmetic in the Brown-Thompson groups F_k and the oriented
subgroups of F_2 and F_3."""

__version__ = "0.1.0"
