"""Exact Neumann heat kernels, heat traces and convex-geometry checks for boxes and polygons."""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .geometry import Ball, Box, Polygon, body_from_dict, body_to_dict, validate  # noqa: F401
from .kernels import KernelSpec, box_kernel, box_kernel_diag, diag_deviation, interval_kernel  # noqa: F401
from .traces import heat_trace, kroger_check, trace_remainder  # noqa: F401
