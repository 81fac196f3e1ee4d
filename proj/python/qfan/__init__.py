"""Exact toric mirror-symmetry checks on smooth complete fans.

Thin wrapper over the C++ core: every function returns the decoded JSON
report of the corresponding pipeline command.
"""

import json

__version__ = "0.1.0"

try:
    from qfan._qfan import run, run_text, commands  # installed layout
except ImportError:  # development layout: extension next to the package
    from _qfan import run, run_text, commands

__all__ = [
    "commands", "run", "run_text", "report", "report_text", "verify", "classify",
    "check_fan", "mirror_map", "connection", "VerificationError", "InputError",
]


class VerificationError(RuntimeError):
    """A mathematical check failed; the report is attached."""

    def __init__(self, report):
        super().__init__(report.get("error") or "verification failed")
        self.report = report


class InputError(ValueError):
    def __init__(self, report):
        super().__init__(report.get("message") or report.get("error") or "bad input")
        self.report = report


def _decode(code, out, check=True):
    rep = json.loads(out)
    if code == 2:
        raise InputError(rep)
    if code == 1 and check:
        raise VerificationError(rep)
    return rep


def report(command, path, order=4, bound=4, check=True):
    """Run a pipeline command on a fan file and decode its JSON report."""
    code, out = run(command, str(path), order, bound)
    return _decode(code, out, check)


def report_text(command, text, toml=True, order=4, bound=4, check=True):
    """Same as report() but on fan data passed as TOML or JSON text."""
    code, out = run_text(command, text, toml, order, bound)
    return _decode(code, out, check)


def check_fan(path):
    return report("check-fan", path, check=False)


def classify(path):
    return report("classify", path)["fano"]


def mirror_map(path, order=4):
    return report("mirror-map", path, order=order)


def connection(path, order=4):
    return report("connection", path, order=order)


def verify(path, order=4, bound=4):
    """Full cross-verification; returns the stage report, raising
    VerificationError when any stage fails."""
    return report("verify", path, order=order, bound=bound)
