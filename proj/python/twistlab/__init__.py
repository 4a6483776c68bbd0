"""Quadratic twists of elliptic curves over Q and their 2-Selmer ranks."""

import json

from ._twistlab import TwistlabError, engine_version, factor, hilbert, kronecker, run_json

__all__ = [
    "TwistlabError",
    "analyze",
    "descend",
    "engine_version",
    "factor",
    "hilbert",
    "kronecker",
    "run",
    "twist",
]


def run(command, inputs=None):
    """Run an engine command. Returns the output dict."""
    text, _ = run_json(command, json.dumps(inputs or {}))
    return json.loads(text)


def analyze(curve):
    return run("analyze", {"curve": curve})


def twist(curve, d, **extra):
    return run("twist", {"curve": curve, "d": d, **extra})


def descend(curve, **extra):
    return run("descend", {"curve": curve, **extra})
