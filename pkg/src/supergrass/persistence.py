"""JSON persistence of atlases, with a format header and located parse errors."""

from __future__ import annotations

import json
import os
from typing import Any

from .atlas import Atlas, ChartIndex, SuperMorphism, build_atlas
from .errors import AtlasFormatError, SuperGrassError, UnsupportedVersionError
from .superalgebra import VariableTable

__all__ = ["FORMAT", "VERSION", "atlas_to_json", "atlas_from_json", "dumps", "loads",
           "save_atlas", "load_atlas", "canonical_json"]

FORMAT = "supergrass-atlas"
VERSION = 1


def canonical_json(data: Any) -> str:
    """Deterministic text form used for files and report comparisons."""
    return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def atlas_to_json(atlas: Atlas) -> dict:
    transitions = atlas.all_transitions()
    return {
        "format": FORMAT,
        "version": VERSION,
        "flavor": atlas.flavor,
        "m": atlas.m,
        "n": atlas.n,
        "k": atlas.k,
        "l": atlas.l,
        "graded": atlas.graded,
        "doubled": atlas.table.doubled,
        "table": atlas.table.to_json(),
        "charts": [i.to_json() for i in atlas.indices],
        "transitions": [transitions[(i, j)].to_json() for i, j in atlas.pairs()],
    }


def _field(data: dict, key: str, kind, where: str):
    if not isinstance(data, dict) or key not in data:
        raise AtlasFormatError(f"{where}: missing field {key!r}")
    value = data[key]
    if kind is int and isinstance(value, bool):
        raise AtlasFormatError(f"{where}.{key}: expected int")
    if not isinstance(value, kind):
        raise AtlasFormatError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


def atlas_from_json(data: dict) -> Atlas:
    if not isinstance(data, dict):
        raise AtlasFormatError("$: expected an object")
    fmt = data.get("format")
    if fmt != FORMAT:
        raise AtlasFormatError(f"$.format: expected {FORMAT!r}, got {fmt!r}")
    version = data.get("version")
    if version != VERSION:
        raise UnsupportedVersionError(f"$.version: format version {version!r} is not supported "
                                      f"(this build reads version {VERSION})")
    flavor = _field(data, "flavor", str, "$")
    sizes = [_field(data, key, int, "$") for key in ("m", "n", "k", "l")]
    graded = _field(data, "graded", bool, "$")
    doubled = _field(data, "doubled", bool, "$")
    try:
        atlas = build_atlas(flavor, *sizes)
    except SuperGrassError as exc:
        raise AtlasFormatError(f"$: {exc}") from exc
    if graded:
        atlas = atlas.gr()
    if doubled:
        atlas = atlas.doubled()
    try:
        table = VariableTable.from_json(_field(data, "table", dict, "$"))
    except (KeyError, TypeError, SuperGrassError) as exc:
        raise AtlasFormatError(f"$.table: {exc}") from exc
    if table != atlas.table:
        raise AtlasFormatError("$.table: variable table does not match the declared sizes")
    charts = _field(data, "charts", list, "$")
    try:
        indices = [ChartIndex.from_json(flavor, c) for c in charts]
    except (TypeError, IndexError, SuperGrassError) as exc:
        raise AtlasFormatError(f"$.charts: {exc}") from exc
    if indices != atlas.indices:
        raise AtlasFormatError("$.charts: chart list does not match the declared sizes")
    expected = set(atlas.pairs())
    seen = set()
    for pos, t in enumerate(_field(data, "transitions", list, "$")):
        where = f"$.transitions[{pos}]"
        try:
            m = SuperMorphism.from_json(flavor, atlas.table, t)
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise AtlasFormatError(f"{where}: {exc}") from exc
        key = (m.source, m.target)
        if key not in expected or key in seen:
            raise AtlasFormatError(f"{where}: unexpected transition {m.source} -> {m.target}")
        if list(m.pullback) != list(atlas.chart(m.target).coordinates):
            raise AtlasFormatError(f"{where}: pullback does not list the target coordinates")
        seen.add(key)
        atlas._transitions[key] = m
    if seen != expected:
        raise AtlasFormatError(f"$.transitions: {len(expected - seen)} transitions missing")
    return atlas


def dumps(atlas: Atlas) -> str:
    return canonical_json(atlas_to_json(atlas))


def loads(text: str) -> Atlas:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AtlasFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return atlas_from_json(data)


def save_atlas(atlas: Atlas, path) -> None:
    path = os.fspath(path)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(dumps(atlas))
    os.replace(tmp, path)


def load_atlas(path) -> Atlas:
    with open(os.fspath(path), encoding="ascii") as fh:
        text = fh.read()
    try:
        return loads(text)
    except AtlasFormatError as exc:
        raise type(exc)(f"{os.fspath(path)}: {exc}") from exc
