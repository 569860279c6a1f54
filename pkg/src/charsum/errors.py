"""Shared exception types and size policy.

Python integers are arbitrary precision, so the caps below are policy, not
correctness limits: they keep dense ring vectors and discrete-log tables at
desk-scale memory and runtime.
"""

MAX_M = 30          # closed-form evaluation refuses larger moduli
MAX_ORACLE_M = 26   # direct summation needs a 2^(m-1)-entry dlog table


class WidthCapError(Exception):
    """Requested modulus exponent exceeds the supported cap."""
