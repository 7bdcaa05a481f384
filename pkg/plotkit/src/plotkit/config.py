"""figures.cfg parsing: one stanza per figure, key = value pairs.

A stanza names its figure kind either through a `kind` key or through the
section name itself.  `input` is required and may list several files
separated by commas; `input` and `out` resolve relative to the config
file, so a config can sit next to the point files it describes.
"""

from __future__ import annotations

import configparser
from pathlib import Path

from .figures import KINDS, PlotJob

_DEFAULT_SIZE = "900x900"


def parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return (int(w), int(h))
    except ValueError:
        raise ValueError(f"expected WIDTHxHEIGHT, got {text!r}") from None


def parse_center(text: str) -> complex:
    try:
        parts = text.split(",")
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        re, im = parts
        return complex(float(re), float(im))
    except ValueError:
        raise ValueError(f"expected re,im for center, got {text!r}") from None


def jobs_from_config(path: str) -> list[PlotJob]:
    cfg = configparser.ConfigParser()
    if not cfg.read(path):
        raise ValueError(f"cannot read config {path}")
    base = Path(path).resolve().parent
    jobs = []
    for section in cfg.sections():
        stanza = cfg[section]
        kind = stanza.get("kind", section)
        if kind not in KINDS:
            raise ValueError(f"[{section}] kind must be one of {KINDS}")
        if "input" not in stanza:
            raise ValueError(f"[{section}] needs input = <point file>")
        inputs = tuple(str(base / p.strip())
                       for p in stanza["input"].split(",") if p.strip())
        jobs.append(PlotJob(
            inputs=inputs,
            kind=kind,
            out=str(base / stanza.get("out", f"{section}.png")),
            size=parse_size(stanza.get("size", _DEFAULT_SIZE)),
            scheme=stanza.get("scheme", "viridis"),
            center=parse_center(stanza.get("center", "0,1")),
            radius=stanza.getfloat("radius", 0.1),
        ))
    return jobs
