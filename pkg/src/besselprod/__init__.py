"""Products of modified Bessel functions, their bounds and Turan-type inequalities."""

__version__ = "0.1.0"
