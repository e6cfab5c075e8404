"""Exact and finite-difference checks for Riemannian G-structures of vectorial type."""

import json as _json

from ._core import (
    Clifford,
    Form,
    __version__,
    casimir_split,
    group_catalog,
    invariant_form_count,
    invariant_spinor_count,
    model_catalog,
    monomial,
    subalgebra_dims,
    suite_names,
)
from ._core import characteristic_torsion_json as _characteristic_torsion_json
from ._core import run_suite_json as _run_suite_json
from ._core import theta_report_json as _theta_report_json


def run_suite(suite="all", **kwargs):
    """Run a verification suite and return the report as a dict."""
    return _json.loads(_run_suite_json(suite=suite, **kwargs))


def theta_report(group, n):
    """Rank analysis of the Theta embedding for a catalog group."""
    return _json.loads(_theta_report_json(group, n))


def characteristic_torsion(group, n, gamma):
    """Solve for the characteristic torsion of a vectorial structure.

    Returns a dict with status, uniqueness, residuals, and (when solved) the
    torsion 3-form in sparse JSON form.
    """
    return _json.loads(_characteristic_torsion_json(group, n, list(gamma)))


__all__ = [
    "Clifford",
    "Form",
    "__version__",
    "casimir_split",
    "characteristic_torsion",
    "group_catalog",
    "invariant_form_count",
    "invariant_spinor_count",
    "model_catalog",
    "monomial",
    "run_suite",
    "subalgebra_dims",
    "suite_names",
    "theta_report",
]
