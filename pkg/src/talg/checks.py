"""Exhaustive identity checking on basis tuples.

Every checker in the library evaluates both sides of a multilinear identity
as a tensor whose leading axes are the basis indices of the arguments and
whose last axis is the output coordinate.  Comparing the tensors covers all
basis tuples at once; the reported counterexample is the lexicographically
first failing tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arrays import FieldArray

__all__ = ["Counterexample", "CheckResult", "compare_sides", "first_failure"]


@dataclass(frozen=True, eq=False)
class Counterexample:
    identity: str
    indices: tuple[int, ...]
    residual: FieldArray
    argnames: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "arguments": list(self.argnames),
            "tuple": list(self.indices),
            "residual": self.residual.literals(),
        }


@dataclass(frozen=True, eq=False)
class CheckResult:
    name: str
    counterexample: Counterexample | None = None
    checked: int = 0
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        out = {"check": self.name, "verdict": "pass" if self.ok else "fail", "tuples_checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.as_dict()
        return out


def compare_sides(name: str, argnames, sides, labels=None) -> CheckResult:
    """Check ``sides[0] == sides[k]`` for every k on all basis tuples.

    Each side has shape ``(n_1, ..., n_r, out_dim)`` with one leading axis per
    name in ``argnames``.  ``labels`` optionally names each side for the
    counterexample text.
    """
    argnames = tuple(argnames)
    ref = sides[0]
    nargs = len(argnames)
    tuples = int(np.prod(ref.shape[:nargs], dtype=np.int64)) if nargs else 1
    best = None
    for k in range(1, len(sides)):
        if sides[k].shape != ref.shape:
            raise ValueError(f"side shapes differ: {ref.shape} vs {sides[k].shape}")
        diff = ref - sides[k]
        mask = diff.nonzero_mask()
        if nargs < diff.ndim:
            mask = mask.reshape(mask.shape[:nargs] + (-1,)).any(axis=-1)
        hits = np.flatnonzero(mask.ravel())
        if hits.size == 0:
            continue
        idx = tuple(int(i) for i in np.unravel_index(int(hits[0]), mask.shape)) if nargs else ()
        if best is None or idx < best[0]:
            best = (idx, k, diff)
    if best is None:
        return CheckResult(name, None, tuples)
    idx, k, diff = best
    residual = diff[idx] if idx else diff
    residual = residual.reshape(-1).normalized()
    text = name
    if labels:
        text = f"{name}: {labels[0]} = {labels[k]}"
    return CheckResult(name, Counterexample(text, idx, residual, argnames), tuples)


def first_failure(results) -> CheckResult | None:
    """First failing result of an iterable (evaluated lazily), else None."""
    for res in results:
        if not res.ok:
            return res
    return None
