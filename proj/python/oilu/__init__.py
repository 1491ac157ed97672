"""Concentric square-ring fiducial markers: encode, decode, facet values."""

from ._oilu import (
    DecodeFailure,
    __version__,
    apply_blur,
    apply_contrast,
    apply_noise,
    apply_radial,
    apply_tilt,
    decode,
    digit_pattern,
    encode,
    facets,
    rotate_digit,
)

__all__ = [
    "DecodeFailure",
    "__version__",
    "apply_blur",
    "apply_contrast",
    "apply_noise",
    "apply_radial",
    "apply_tilt",
    "decode",
    "digit_pattern",
    "encode",
    "facets",
    "rotate_digit",
]
