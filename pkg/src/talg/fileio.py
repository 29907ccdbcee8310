"""Algebra and tri-module definition files.

A file is a JSON object with keys, in canonical order:

    field_order, dimension, declared_kind, structure_constants, star,
    metadata

plus, for tri-modules, ``module_dimension``, ``kind``, ``act_left``,
``act_central`` and ``act_right``.  Structure constants are sparse records
``{"n", "i", "j", "k", "value"}`` (0-based indices, ``value`` a scalar
literal, zero entries omitted); action records are ``{"i", "j", "a", "b",
"value"}``.  ``star`` is a dense matrix whose column j holds ``e_j*``.

The writer emits one record per line, sorted by index, with canonical
scalar literals, so ``dumps(loads(text)) == text`` for canonical files.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .arrays import FieldArray
from .errors import FileFormatError, ScalarParseError
from .scalars import field as _field, format_scalar, parse_scalar
from .ternary import KINDS, TernaryAlgebra
from .trimodule import TriModule

__all__ = [
    "load_algebra",
    "loads_algebra",
    "save_algebra",
    "dumps_algebra",
    "load_trimodule",
    "loads_trimodule",
    "dumps_trimodule",
    "save_trimodule",
    "load_any",
]

_ALG_KEYS = ("field_order", "dimension", "declared_kind", "structure_constants", "star", "metadata")
_TM_KEYS = ("module_dimension", "kind", "act_left", "act_central", "act_right")
_REC_KEYS = ("n", "i", "j", "k")
_ACT_KEYS = ("i", "j", "a", "b")


def _location(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _record_locator(text: str, key: str):
    """Positions of the flat ``{...}`` records inside the array under ``key``."""
    m = re.search(rf'"{re.escape(key)}"\s*:\s*\[', text)
    if not m:
        return []
    out = []
    depth = 0
    i = m.end()
    start = None
    while i < len(text):
        ch = text[i]
        if ch == '"':
            j = i + 1
            while j < len(text) and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            i = j + 1
            continue
        if ch == "{":
            if depth == 0:
                start = i
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == "]" and depth == 0:
            break
        if depth == 1 and ch == "{":
            out.append(start)
        i += 1
    return out


class _Ctx:
    def __init__(self, text):
        self.text = text
        self._locs = {}

    def fail(self, message, key=None, index=None):
        if key is not None and index is not None:
            locs = self._locs.setdefault(key, _record_locator(self.text, key))
            if index < len(locs):
                raise FileFormatError(message, *_location(self.text, locs[index]))
        if key is not None:
            m = re.search(rf'"{re.escape(key)}"', self.text)
            if m:
                raise FileFormatError(message, *_location(self.text, m.start()))
        raise FileFormatError(message)


def _parse_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise FileFormatError("top level must be a JSON object", 1, 1)
    return data


def _int_field(ctx, data, key, minimum=1):
    if key not in data:
        ctx.fail(f"missing required key {key!r}")
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        ctx.fail(f"{key!r} must be an integer >= {minimum}", key)
    return v


def _literal(ctx, fld, value, key, index):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        ctx.fail(f"{key}[{index}]: value must be a scalar literal string", key, index)
    try:
        return parse_scalar(str(value), fld)
    except ScalarParseError as exc:
        ctx.fail(f"{key}[{index}]: {exc}", key, index)


def _sparse(ctx, fld, records, key, names, sizes):
    if not isinstance(records, list):
        ctx.fail(f"{key!r} must be an array of records", key)
    arr = FieldArray.zeros(fld, sizes)
    seen = set()
    for idx, rec in enumerate(records):
        if not isinstance(rec, dict):
            ctx.fail(f"{key}[{idx}] is not an object", key, idx)
        extra = set(rec) - set(names) - {"value"}
        if extra:
            ctx.fail(f"{key}[{idx}]: unknown fields {sorted(extra)}", key, idx)
        pos = []
        for name, size in zip(names, sizes):
            if name not in rec:
                ctx.fail(f"{key}[{idx}]: missing index {name!r}", key, idx)
            v = rec[name]
            if not isinstance(v, int) or isinstance(v, bool):
                ctx.fail(f"{key}[{idx}]: index {name!r} must be an integer", key, idx)
            if not 0 <= v < size:
                ctx.fail(f"{key}[{idx}]: index {name}={v} out of range 0..{size - 1}", key, idx)
            pos.append(v)
        if "value" not in rec:
            ctx.fail(f"{key}[{idx}]: missing 'value'", key, idx)
        pos = tuple(pos)
        if pos in seen:
            ctx.fail(f"{key}[{idx}]: duplicate entry for {dict(zip(names, pos))}", key, idx)
        seen.add(pos)
        arr[pos] = FieldArray.from_scalars(fld, _literal(ctx, fld, rec["value"], key, idx))
    return arr.normalized()


def _algebra_from(ctx, data) -> TernaryAlgebra:
    order = _int_field(ctx, data, "field_order")
    dim = _int_field(ctx, data, "dimension")
    fld = _field(order)
    kind = data.get("declared_kind", "none")
    if kind not in KINDS + ("none",):
        ctx.fail(f"unknown declared_kind {kind!r}", "declared_kind")
    rho = _sparse(ctx, fld, data.get("structure_constants", []), "structure_constants", _REC_KEYS, (dim,) * 4)
    star = None
    if data.get("star") is not None:
        s = data["star"]
        if not isinstance(s, list) or len(s) != dim or any(not isinstance(r, list) or len(r) != dim for r in s):
            ctx.fail(f"'star' must be a {dim} x {dim} array", "star")
        vals = [[_literal(ctx, fld, v, "star", r) for v in row] for r, row in enumerate(s)]
        star = FieldArray.from_scalars(fld, vals)
    meta = data.get("metadata", {})
    if not isinstance(meta, dict):
        ctx.fail("'metadata' must be an object", "metadata")
    return TernaryAlgebra(rho, star, kind, name=str(meta.get("name", "")), metadata=dict(meta))


def _reject_unknown(ctx, data, allowed):
    extra = sorted(set(data) - set(allowed))
    if extra:
        ctx.fail(f"unknown top-level keys {extra}", extra[0])


def loads_algebra(text: str) -> TernaryAlgebra:
    ctx = _Ctx(text)
    data = _parse_json(text)
    _reject_unknown(ctx, data, _ALG_KEYS)
    return _algebra_from(ctx, data)


def load_algebra(path) -> TernaryAlgebra:
    return loads_algebra(Path(path).read_text(encoding="utf-8"))


def _records(arr: FieldArray, names) -> list[str]:
    lines = []
    mask = arr.nonzero_mask()
    for pos in zip(*mask.nonzero()):
        pos = tuple(int(p) for p in pos)
        fields = ", ".join(f'"{n}": {p}' for n, p in zip(names, pos))
        lines.append(f'    {{{fields}, "value": {json.dumps(format_scalar(arr[pos]))}}}')
    return lines


def _array_block(key, lines):
    if not lines:
        return f'  "{key}": []'
    return f'  "{key}": [\n' + ",\n".join(lines) + "\n  ]"


def _algebra_parts(alg: TernaryAlgebra, metadata=None) -> list[str]:
    meta = metadata if metadata is not None else alg.metadata
    if not meta and alg.name:
        meta = {"name": alg.name}
    parts = [
        f'  "field_order": {alg.field.order}',
        f'  "dimension": {alg.dim}',
        f'  "declared_kind": {json.dumps(alg.declared_kind)}',
        _array_block("structure_constants", _records(alg.rho, _REC_KEYS)),
    ]
    if alg.star is not None:
        rows = [
            "    [" + ", ".join(json.dumps(format_scalar(alg.star[r, c])) for c in range(alg.dim)) + "]"
            for r in range(alg.dim)
        ]
        parts.append('  "star": [\n' + ",\n".join(rows) + "\n  ]")
    parts.append(f'  "metadata": {json.dumps(meta, sort_keys=True)}')
    return parts


def dumps_algebra(alg: TernaryAlgebra, metadata=None) -> str:
    return "{\n" + ",\n".join(_algebra_parts(alg, metadata)) + "\n}\n"


def save_algebra(alg: TernaryAlgebra, path, metadata=None) -> None:
    Path(path).write_text(dumps_algebra(alg, metadata), encoding="utf-8")


def loads_trimodule(text: str) -> TriModule:
    ctx = _Ctx(text)
    data = _parse_json(text)
    _reject_unknown(ctx, data, _ALG_KEYS + _TM_KEYS)
    alg = _algebra_from(ctx, data)
    m = _int_field(ctx, data, "module_dimension")
    kind = data.get("kind", "standard")
    if kind not in ("standard", "B"):
        ctx.fail(f"unknown trimodule kind {kind!r}", "kind")
    d = alg.dim
    acts = [_sparse(ctx, alg.field, data.get(key, []), key, _ACT_KEYS, (d, d, m, m))
            for key in ("act_left", "act_central", "act_right")]
    return TriModule(alg, *acts, kind=kind, name=alg.name)


def load_trimodule(path) -> TriModule:
    return loads_trimodule(Path(path).read_text(encoding="utf-8"))


def dumps_trimodule(tm: TriModule, metadata=None) -> str:
    parts = _algebra_parts(tm.alg, metadata)
    parts += [
        f'  "module_dimension": {tm.mdim}',
        f'  "kind": {json.dumps(tm.kind)}',
        _array_block("act_left", _records(tm.act_left, _ACT_KEYS)),
        _array_block("act_central", _records(tm.act_central, _ACT_KEYS)),
        _array_block("act_right", _records(tm.act_right, _ACT_KEYS)),
    ]
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save_trimodule(tm: TriModule, path, metadata=None) -> None:
    Path(path).write_text(dumps_trimodule(tm, metadata), encoding="utf-8")


def load_any(path):
    """A TriModule when the file has ``module_dimension``, else an algebra."""
    text = Path(path).read_text(encoding="utf-8")
    data = _parse_json(text)
    if "module_dimension" in data:
        return loads_trimodule(text)
    return loads_algebra(text)
