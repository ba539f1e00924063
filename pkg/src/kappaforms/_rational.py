"""Exact rational backend.

gmpy2's ``mpq`` is used when available; ``fractions.Fraction`` is the pure
stdlib fallback.  Set ``KAPPAFORMS_RATIONAL=fraction`` to force the fallback
(useful for benchmarking or when gmpy2 is absent).
"""
import os
from fractions import Fraction

_requested = os.environ.get("KAPPAFORMS_RATIONAL", "gmpy2").strip().lower()

if _requested not in ("gmpy2", "fraction"):
    raise ImportError(f"KAPPAFORMS_RATIONAL must be 'gmpy2' or 'fraction', got {_requested!r}")

Q = Fraction
BACKEND = "fraction"
if _requested == "gmpy2":
    try:
        import gmpy2

        Q = gmpy2.mpq
        BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - depends on environment
        pass


def rational(value, denominator=None):
    """Coerce ``value`` (int, str like "p/q", Fraction, mpq) to the backend type."""
    if denominator is not None:
        return Q(value, denominator)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use an exact rational")
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    return Q(value)


def to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))
