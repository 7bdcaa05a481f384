"""Render figures from root point-cloud files (CSV or TPOT binary)."""

from .config import jobs_from_config, parse_center, parse_size
from .figures import DENSITY_THRESHOLD, KINDS, PlotJob, length_bands, render
from .pointfile import POINT_DTYPE, read_points, word_length

__version__ = "0.1.0"

__all__ = [
    "DENSITY_THRESHOLD",
    "KINDS",
    "POINT_DTYPE",
    "PlotJob",
    "jobs_from_config",
    "length_bands",
    "parse_center",
    "parse_size",
    "read_points",
    "render",
    "word_length",
]
