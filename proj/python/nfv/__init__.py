"""Arbitrary-precision divisor sums, kernels and summation identities over number fields.

Numbers go in as int, float, complex, decimal strings or (re, im) string pairs and come back as
``Value`` objects holding exact decimal strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import _nfv
from ._nfv import Error

Number = Union[int, float, complex, str, tuple]

__all__ = [
    "Error",
    "Value",
    "field_info",
    "ideal_counts",
    "divisor_sigma",
    "dedekind_zeta",
    "kernel",
    "lambert_lhs",
    "verify_lambert",
    "verify_koshliakov",
    "run_cli",
]


@dataclass(frozen=True)
class Value:
    """A multiprecision complex number as decimal strings."""

    re: str
    im: str

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __float__(self) -> float:
        return float(self.re)


def _pair(z: Number) -> tuple[str, str]:
    if isinstance(z, tuple):
        re, im = z
        return str(re), str(im)
    if isinstance(z, str):
        re, _, im = z.partition(",")
        return re.strip(), (im.strip() or "0")
    if isinstance(z, complex):
        return repr(z.real), repr(z.imag)
    return repr(z) if isinstance(z, float) else str(z), "0"


def _value(p: tuple[str, str]) -> Value:
    return Value(*p)


def field_info(disc: int, bits: int = 256) -> dict:
    return _nfv.field_info(disc, bits)


def ideal_counts(disc: int, max_norm: int) -> list[int]:
    """v_K(m) for m = 0..max_norm (index 0 is unused)."""
    return _nfv.ideal_counts(disc, max_norm)


def divisor_sigma(disc: int, a: Number, n: int, bits: int = 256) -> Value:
    return _value(_nfv.divisor_sigma(disc, _pair(a), n, bits))


def dedekind_zeta(disc: int, s: Number, bits: int = 256) -> Value:
    return _value(_nfv.dedekind_zeta(disc, _pair(s), bits))


def kernel(disc: int, nu: Number, x: Number, bits: int = 256) -> Value:
    return _value(_nfv.kernel(disc, _pair(nu), _pair(x), bits))


def lambert_lhs(disc: int, a: Number, y: Number, bits: int = 256) -> Value:
    return _value(_nfv.lambert_lhs(disc, _pair(a), _pair(y), bits))


def verify_lambert(disc: int, a: Number, y: Number, continued: Optional[int] = None, bits: int = 256) -> dict:
    return json.loads(_nfv.verify_lambert(disc, _pair(a), _pair(y), continued, bits))


def verify_koshliakov(disc: int, mu: Number, nu: Number, x: Number, bits: int = 256) -> dict:
    return json.loads(_nfv.verify_koshliakov(disc, _pair(mu), _pair(nu), _pair(x), bits))


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    """Runs the command-line frontend in-process; returns (exit code, stdout, stderr)."""
    return _nfv.run_cli(list(args))
