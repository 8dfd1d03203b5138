"""Finite type refinement systems.

The heavy lifting happens in the C++ core; this package exposes the command
line front end and the law suites.
"""

import json

from ._core import EXIT, RefsysError, eval_int_expr, normalize_judgment, run, run_suite, suite_names

__all__ = [
    "EXIT",
    "RefsysError",
    "check",
    "eval_int_expr",
    "normalize_judgment",
    "query",
    "run",
    "run_suite",
    "suite_names",
]


def query(*args):
    """Run a command with --json and return (exit code, parsed report)."""
    code, out, _ = run(["--json", *map(str, args)])
    return code, json.loads(out) if out else None


def check(signature, judgment):
    """Verdict string for a judgment: derivable, underivable or ill-formed."""
    code, report = query("check", signature, judgment)
    if "error" in report:
        raise RefsysError(report["error"]["message"])
    return report["verdict"]
