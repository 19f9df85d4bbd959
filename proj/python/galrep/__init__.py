"""Python bindings for the galrep toolkit.

Polynomials are coefficient lists, constant term first, of Python ints.
"""

import json as _json
import os as _os

from . import _core
from ._core import GalrepError

__all__ = [
    "GalrepError",
    "verify",
    "frobenius_table",
    "predict_orders",
    "sextic_resolvent",
    "field_discriminant_certified",
    "elliptic_traces",
    "torsion_field_polynomial",
    "group_facts",
    "cli",
]


def _default_assets():
    bundled = _os.path.join(_os.path.dirname(__file__), "data")
    return bundled if _os.path.isdir(bundled) else _core.DEFAULT_ASSETS


def _strs(values):
    return [str(int(v)) for v in values]


def verify(assets=None, prime_bound=50, precision_bits=256, seed=0x5EED):
    """Run the verification pipeline and return the report as a dict."""
    text = _core.verify_json(assets or _default_assets(), prime_bound, precision_bits, seed)
    return _json.loads(text)


def frobenius_table(coeffs, upto):
    return _json.loads(_core.frobenius_json(_strs(coeffs), upto))


def predict_orders(traces):
    """Map l -> (GL orders, PGL orders) for a trace row {l: b}."""
    out = _core.predict_orders({int(l): int(b) for l, b in traces.items()})
    return {l: (sorted(gl), sorted(pgl)) for l, (gl, pgl) in out.items()}


def sextic_resolvent(coeffs, precision_bits=256):
    return [int(c) for c in _core.sextic_resolvent(_strs(coeffs), precision_bits)]


def field_discriminant_certified(coeffs, target, ramified_primes):
    return _core.field_discriminant_certified(_strs(coeffs), str(int(target)), list(ramified_primes))


def elliptic_traces(ainvs, upto):
    return _core.elliptic_traces(_strs(ainvs), upto)


def torsion_field_polynomial(ainvs, p=5):
    return [int(c) for c in _core.torsion_field_polynomial(_strs(ainvs), p)]


def group_facts():
    return _json.loads(_core.group_facts_json())


def cli(*args):
    """Run the command line in-process; returns (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
