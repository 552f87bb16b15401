"""Exact rational scalars and deterministic rendering helpers.

Every quantity in this package is an exact rational; floating point never
enters any computation. `gmpy2.mpq` is used when available (much faster on
the deep grid solves), with `fractions.Fraction` as a pure-stdlib fallback.
Both store values in lowest terms with a positive denominator and hash/compare
identically, so the choice never changes any result.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    def Rat(*args) -> object:
        if len(args) == 1 and isinstance(args[0], str):
            return _mpq(args[0])
        return _mpq(*args)

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    def Rat(*args) -> object:
        return Fraction(*args)

    HAVE_GMPY2 = False

ZERO = Rat(0)
ONE = Rat(1)


def rat_from_str(text: str):
    """Parse 'p', '-p/q' or a plain integer literal into an exact rational."""
    return Rat(text.strip())


def rat_str(value) -> str:
    """Canonical 'p/q' (or 'p' when integral) rendering, identical across backends."""
    n, d = value.numerator, value.denominator
    return str(n) if d == 1 else f"{n}/{d}"


def rat_decimal(value, digits: int = 12) -> str:
    """Round-half-even decimal rendering with exactly `digits` fractional digits.

    Pure integer arithmetic, so the output is byte-identical across runs and
    rational backends.  Rendering is the only lossy step anywhere.
    """
    n, d = value.numerator, value.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    scaled = n * 10**digits
    q, r = divmod(scaled, d)
    if 2 * r > d or (2 * r == d and q % 2 == 1):
        q += 1
    whole, frac = divmod(q, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
