"""Causal wave fields of switched-on sources: oracles, pole/saddle decomposition, fronts, phase maps.

All quantities are in units with hbar = 1 (energies are frequencies).
"""

from ._evfront import (
    CausalRegionError,
    ConfigError,
    ConvergenceError,
    DispersionModel,
    DomainError,
    Error,
    QuadratureSettings,
    RegimeError,
    SaddleBranch,
    Sheet,
    SourceSpec,
    ThresholdError,
    WaveKind,
    WindowError,
    __version__,
    classify,
    cli,
    cross_check_field,
    decompose,
    front_velocity,
    reference_field,
    run_checks,
    saddle,
    traversal_time,
    wavenumber,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
