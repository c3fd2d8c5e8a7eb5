"""Minimum enclosing balls, clustering testers and related convex geometry."""

from ._mebkit import (
    ConvergenceError,
    DegenerateInput,
    GuardExceeded,
    InvalidArgument,
    MebkitError,
    ParseError,
    __version__,
    caratheodory_reduce,
    diameter,
    gen_instance,
    jung_bound,
    k_g_tester,
    meb,
    mkeb,
    one_s_tester,
    outlier_meb_sample,
    radon_partition,
    stream_2approx,
    stream_eps_2d,
)

__all__ = [
    "ConvergenceError",
    "DegenerateInput",
    "GuardExceeded",
    "InvalidArgument",
    "MebkitError",
    "ParseError",
    "__version__",
    "caratheodory_reduce",
    "diameter",
    "gen_instance",
    "jung_bound",
    "k_g_tester",
    "meb",
    "mkeb",
    "one_s_tester",
    "outlier_meb_sample",
    "radon_partition",
    "stream_2approx",
    "stream_eps_2d",
]
