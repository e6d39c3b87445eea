"""Seeded swarm metaheuristics for the largest-empty-circle packing benchmark."""

from .core import (
    ALGORITHM_IDS,
    ConfigurationError,
    Objective,
    RngStream,
    RunConfig,
    RunResult,
    clamp_to_bounds,
    default_params,
    function_objective,
    linear_schedule,
    make_rng,
    run_optimizer,
)
from . import bat, firefly, gwo, pso  # noqa: F401  (registers the optimizers)
from .packing import (
    Circle,
    PackingInstance,
    Point2,
    packing_fitness,
    packing_objective,
    table9_instance,
    verify_packing,
)

__all__ = [
    "ALGORITHM_IDS",
    "Circle",
    "ConfigurationError",
    "Objective",
    "PackingInstance",
    "Point2",
    "RngStream",
    "RunConfig",
    "RunResult",
    "clamp_to_bounds",
    "default_params",
    "function_objective",
    "linear_schedule",
    "make_rng",
    "packing_fitness",
    "packing_objective",
    "run_optimizer",
    "table9_instance",
    "verify_packing",
]
