"""Bundled regression instances.

``example1`` exercises all three donation-handling variants of the
additive-sum rule; ``theorem1`` (plus its ``_donated`` twin) shows a single
donation harming a voter under every plain rule; ``welfare_mono`` shows a
raised donation lowering the sequential scheme's welfare; and
``theorem8_family`` is a two-donor tug-of-war (plus one stabilizer voter
pinning p1 into every winner) where withdrawing a donation pays off under
every rule and variant.
"""

from __future__ import annotations

from importlib.resources import files

from ..model import Instance, build_instance
from ..serialize import parse_instance

__all__ = [
    "load",
    "example1",
    "theorem1",
    "theorem1_donated",
    "welfare_mono",
    "theorem8_family",
    "theorem8_base",
]


def load(name: str) -> Instance:
    """Load a bundled fixture by stem name, e.g. ``load("example1")``."""
    return parse_instance((files(__package__) / f"{name}.json").read_text(encoding="utf-8"))


def example1() -> Instance:
    return load("example1")


def theorem1() -> Instance:
    return load("theorem1")


def theorem1_donated() -> Instance:
    return load("theorem1_donated")


def welfare_mono() -> Instance:
    return load("welfare_mono")


def theorem8_family() -> Instance:
    return load("theorem8_family")


def theorem8_base() -> Instance:
    """The tug-of-war instance without the stabilizer voter."""
    return build_instance(
        costs=[3, 4, 4],
        sats=[[1, 2, 3], [1, 3, 2]],
        donations=[[0, 1, 2], [0, 2, 1]],
        budget=4,
    )
