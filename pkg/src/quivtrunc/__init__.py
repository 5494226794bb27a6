"""Exact computations for truncated path algebras ``KQ / <paths of length L>``."""

from importlib import resources
import json

__version__ = "0.1.0"


def bundled_quiver(name: str):
    """One of the quivers shipped in ``quivtrunc/data`` (e.g. ``"two_loops"``)."""
    from .quiver import Quiver

    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return Quiver.from_dict(json.loads(text))


def bundled_quivers() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__package__).joinpath("data").iterdir()
                  if p.name.endswith(".json"))
