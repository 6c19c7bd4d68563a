"""Exact scalar arithmetic: binomials, factorials, powers, rational strings.

Everything in this package computes with arbitrary-precision integers and
exact rationals (``fractions.Fraction``).  No floating point enters any
computation; floats appear only in optional display fields of the CLI.
"""
from __future__ import annotations

import math
from fractions import Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k), with value 0 whenever k < 0, n < 0 or k > n.

    The out-of-range convention lets double sums over (s, q) drop their
    vanishing terms without explicit range bookkeeping.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def general_binomial(e: int, k: int) -> int:
    """C(e, k) for any integer e: the coefficient of u^k in (1 + u)^e."""
    if k < 0:
        return 0
    if e >= 0:
        return binomial(e, k)
    return (-1) ** k * math.comb(-e + k - 1, k)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def int_pow(base: Fraction | int, e: int) -> Fraction:
    """Exact integer power of a rational; 0**0 is 1, 0**negative is an error."""
    b = Fraction(base)
    if b == 0 and e < 0:
        raise ValueError("zero cannot be raised to a negative power")
    return b**e


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "p/q" (or plain integer) string form."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
    return value


def format_rational(value: Fraction | int) -> str:
    """Canonical string form: decimal integer, or "p/q" in lowest terms."""
    return str(Fraction(value))


def sign(value: Fraction | int) -> int:
    """-1, 0 or +1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0
