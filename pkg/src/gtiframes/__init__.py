"""Dual and Parseval frame verification for generalized translation invariant systems."""

from .groups import (
    FiniteAbelianGroup,
    GroupFunction,
    InvalidInput,
    Subgroup,
    annihilator,
    dft,
    idft,
    make_group,
    subgroup_from_generators,
    weil_check,
)
from .oracle import FrameBounds, frame_bounds_bruteforce, frame_operator, is_dual_bruteforce
from .systems import GaborSystem, Generator, GtiSystem, Layer, gabor_to_ti, modulate, translate
from .talpha import TAlphaReport, finite_gabor_check, gabor_dual_freq, gabor_dual_time, talpha, verify_dual_talpha, verify_parseval_talpha
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "annihilator",
    "dft",
    "finite_gabor_check",
    "FiniteAbelianGroup",
    "frame_bounds_bruteforce",
    "frame_operator",
    "FrameBounds",
    "gabor_dual_freq",
    "gabor_dual_time",
    "gabor_to_ti",
    "GaborSystem",
    "Generator",
    "GroupFunction",
    "GtiSystem",
    "idft",
    "InvalidInput",
    "is_dual_bruteforce",
    "Layer",
    "make_group",
    "modulate",
    "Subgroup",
    "subgroup_from_generators",
    "talpha",
    "TAlphaReport",
    "translate",
    "Verdict",
    "verify_dual_talpha",
    "verify_parseval_talpha",
    "weil_check",
]
