"""Python bindings for the tritime verification engine."""

import json as _json

from ._core import (
    ConfigError,
    DomainError,
    EmptyBox,
    Error,
    GeometryError,
    UnsupportedJ,
    double_slit,
    g_factor,
    hopf,
    measure,
    quantize,
    rotation_eigenvalue,
    schema,
    two_path_probability,
    verify_json,
)


def verify(**options):
    """Run the claim suite and return the report as a dict."""
    return _json.loads(verify_json(**options))


def report_schema():
    return _json.loads(schema())


__all__ = [
    "ConfigError",
    "DomainError",
    "EmptyBox",
    "Error",
    "GeometryError",
    "UnsupportedJ",
    "double_slit",
    "g_factor",
    "hopf",
    "measure",
    "quantize",
    "report_schema",
    "rotation_eigenvalue",
    "two_path_probability",
    "verify",
    "verify_json",
]
