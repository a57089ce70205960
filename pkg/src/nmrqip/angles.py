"""Parsing and printing of angles written as multiples of pi."""

from __future__ import annotations

import math
import re
from fractions import Fraction

_SYMBOLIC = re.compile(r"^([+-]?)(\d+(?:\.\d*)?)?\*?pi(?:/(\d+))?$")


def parse_angle(text: str) -> float:
    """Accept ``pi``, ``-pi/2``, ``3pi/4``, ``3*pi/4`` or plain radians."""
    s = str(text).strip().lower().replace(" ", "").replace("π", "pi")
    m = _SYMBOLIC.match(s)
    if m:
        sign, coef, den = m.groups()
        value = float(coef) if coef else 1.0
        value = value * math.pi / (int(den) if den else 1)
        return -value if sign == "-" else value
    try:
        return float(s)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None


def format_angle(angle: float, max_den: int = 1024) -> str:
    """Symbolic form when ``angle`` is exactly a small rational multiple of pi."""
    frac = Fraction(angle / math.pi).limit_denominator(max_den)
    if frac.numerator and frac.numerator * math.pi / frac.denominator == angle:
        num, den = frac.numerator, frac.denominator
        head = {1: "pi", -1: "-pi"}.get(num, f"{num}pi")
        text = head if den == 1 else f"{head}/{den}"
        if parse_angle(text) == angle:
            return text
    if angle == 0:
        return "0"
    return repr(float(angle))
