"""Flow-network real-time scheduling toolkit.

Exact-arithmetic multiprocessor schedulers (a flow-network scheduler on
continuous and discrete time models, plus a boundary-fair baseline), an
event-driven simulator, a whole-hyper-period feasibility check, and a task-set
generator. Rationals cross the boundary as :class:`fractions.Fraction`.
"""

from ._core import (
    TaskSet,
    bf_windows,
    experiment_csv,
    first_window_allocations,
    generate,
    load_taskset,
    load_taskset_file,
    simulate,
    verify,
)

__all__ = [
    "TaskSet",
    "bf_windows",
    "experiment_csv",
    "first_window_allocations",
    "generate",
    "load_taskset",
    "load_taskset_file",
    "simulate",
    "verify",
]

__version__ = "0.1.0"
