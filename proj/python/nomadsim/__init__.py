"""Nomadic private 5G network simulator.

Thin wrapper over the compiled core: every helper takes and returns plain
Python dicts and lists; the heavy lifting happens in C++.
"""

import json

try:
    from . import _nomadsim as _core
except ImportError:  # pragma: no cover - build-tree layout
    import _nomadsim as _core

__all__ = [
    "requirement_catalog",
    "default_rats",
    "plan",
    "brute_force_plan",
    "validate",
    "generate",
    "run",
    "report_from_trace",
    "scenario_hash",
]


def requirement_catalog():
    """Use case requirement rows."""
    return json.loads(_core.requirement_catalog_json())


def default_rats():
    """Built-in RAT catalog."""
    return json.loads(_core.default_rats_json())


def plan(strategy, vnfs, p):
    """Placement plan for a strategy at outage probability p."""
    return json.loads(_core.plan_json(strategy, json.dumps(vnfs), p))


def brute_force_plan(vnfs, p):
    """Exhaustive minimum-cost placement plan."""
    return json.loads(_core.brute_force_json(json.dumps(vnfs), p))


def validate(scenario):
    """Validation verdict: {'ok': bool, 'violations': [...], ...}."""
    return json.loads(_core.validate_json(json.dumps(scenario)))


def generate(template_name, **params):
    """Scenario dict from a named template ('agricultural' or 'construction')."""
    return json.loads(_core.generate_json(template_name, json.dumps(params)))


def run(scenario):
    """Simulate a scenario dict; returns (trace_jsonl, report_dict)."""
    trace_jsonl, report = _core.run_json(json.dumps(scenario))
    return trace_jsonl, json.loads(report)


def report_from_trace(trace_jsonl):
    """Score an existing trace; returns the report dict."""
    return json.loads(_core.report_from_trace_json(trace_jsonl))


def scenario_hash(scenario):
    """Canonical scenario content hash (16 hex digits)."""
    return _core.hash_json(json.dumps(scenario))
