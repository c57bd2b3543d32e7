"""Orbit kernel backend selection.

Imports the compiled kernel when the extension was built, otherwise falls
back to the pure-Python twin. Both expose the same twisted_orbit_count
contract and return identical counts.
"""

from __future__ import annotations

from . import _orbit_py

try:
    from . import _orbit_cy  # type: ignore[attr-defined]

    BACKEND = "compiled"
    twisted_orbit_count = _orbit_cy.twisted_orbit_count
except ImportError:
    _orbit_cy = None
    BACKEND = "python"
    twisted_orbit_count = _orbit_py.twisted_orbit_count


def available_backends() -> dict[str, object]:
    """Name -> kernel callable, for benchmarks and equivalence tests."""
    out: dict[str, object] = {"python": _orbit_py.twisted_orbit_count}
    if _orbit_cy is not None:
        out["compiled"] = _orbit_cy.twisted_orbit_count
    return out
