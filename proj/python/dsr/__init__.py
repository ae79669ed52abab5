"""Python front end for the stool-wheel self-recovery toolkit."""

from ._dsr import (
    boundedness_angle,
    boundedness_report,
    effective_damping,
    eigenvalues,
    exact_annular_damping,
    min_average_fluid_speed,
    normalize_config,
    preset_names,
    render_preset,
    run_experiment,
    validation_table,
)

__all__ = [
    "boundedness_angle",
    "boundedness_report",
    "effective_damping",
    "eigenvalues",
    "exact_annular_damping",
    "min_average_fluid_speed",
    "normalize_config",
    "preset_names",
    "render_preset",
    "run_experiment",
    "validation_table",
]
