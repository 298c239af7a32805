# molcav/core/__init__.py
"""
Core package for scenario execution and orchestration.

Scenario modules import core.models, so the registry and executor are
exported lazily.
"""

from importlib import import_module

_EXPORTS = {
    "ScenarioExecutor": ".scenario_executor",
    "RunReport": ".scenario_executor",
    "get_scenario": ".scenario_registry",
    "get_all_scenarios": ".scenario_registry",
    "SCENARIO_SEQUENCE": ".scenario_registry",
}


def __getattr__(name):
    if name in _EXPORTS:
        return getattr(import_module(_EXPORTS[name], __name__), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = list(_EXPORTS)
