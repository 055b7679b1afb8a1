"""Bundled case-study edge lists."""

from __future__ import annotations

from importlib import resources

from ..graph import Graph, parse_edgelist

NAMES = ("abilene", "karate", "strike")
# weighted routing reproduces the described Abilene flows
DEFAULT_WEIGHTED = {"abilene": True, "karate": False, "strike": False}


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(NAMES)}")
    return resources.files(__package__).joinpath(f"{name}.txt").read_text(encoding="utf-8")


def load_fixture(name: str, weighted: bool | None = None) -> Graph:
    if weighted is None:
        weighted = DEFAULT_WEIGHTED[name]
    text = fixture_text(name)
    if not weighted:
        # drop any weight column so the two-column format stays consistent
        text = "\n".join(" ".join(line.split()[:2]) if not line.startswith("#") else line for line in text.splitlines())
    return parse_edgelist(text, weighted=weighted)


def provenance(name: str) -> dict[str, str]:
    """Header key/value comments such as ``transcribed-from-figure``."""
    out = {}
    for line in fixture_text(name).splitlines():
        if not line.startswith("#"):
            break
        key, sep, value = line[1:].partition(":")
        if sep and " " not in key.strip():
            out[key.strip()] = value.strip()
    return out
