"""Account-takeover dependency analysis (C++ core)."""

import json as _json

try:
    from ._actfort import *  # noqa: F401,F403  (installed layout)
    from . import _actfort as _backend
except ImportError:  # build-tree layout: extension module sits on sys.path
    from _actfort import *  # noqa: F401,F403
    import _actfort as _backend

__version__ = _backend.__version__


def diagnostics(ecosystem):
    return _json.loads(_backend.validate_json(ecosystem))


def closure(ecosystem, seed=()):
    return _json.loads(_backend.victim_closure_json(ecosystem, list(seed)))


def depth(ecosystem, account):
    return _json.loads(_backend.classify_depth_json(ecosystem, account))


def hardening(ecosystem, target, budget=1):
    return _json.loads(_backend.harden_json(ecosystem, target, budget))


def stats(ecosystem):
    return _json.loads(_backend.stats_json(ecosystem))


def report(ecosystem, max_group_size=2, include_closure=False):
    return _json.loads(
        _backend.report_json(ecosystem, max_group_size, include_closure)
    )
