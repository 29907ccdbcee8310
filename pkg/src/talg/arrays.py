"""Dense exact tensors over a cyclotomic field.

A :class:`FieldArray` of shape ``S`` over Q(zeta_n) keeps an object array of
Python integers with shape ``S + (phi,)`` (power-basis coordinates) and one
positive common denominator.  Every contraction is lowered to a single
integer matrix product handled by :mod:`talg._kernels`, so the structure
tensor computations never touch Fraction objects in their inner loops.

Vectors and matrices of the library are 1-D and 2-D FieldArrays.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from math import gcd

import numpy as np

from . import _kernels
from .errors import DimensionError, FieldMismatchError
from .scalars import Cyc, ScalarField, as_scalar, field as _field, format_scalar, lcm

__all__ = ["FieldArray", "einsum", "as_array"]


def _obj_zeros(shape):
    return np.zeros(shape, dtype=object)


class FieldArray:
    __slots__ = ("field", "num", "den")

    def __init__(self, fld: ScalarField, num, den: int = 1):
        num = np.asarray(num, dtype=object)
        if num.ndim == 0 or num.shape[-1] != fld.phi:
            raise ValueError("coordinate axis missing or of the wrong length")
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.field = fld
        self.num = num
        self.den = int(den)

    # constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, fld: ScalarField, shape) -> "FieldArray":
        if isinstance(shape, int):
            shape = (shape,)
        return cls(fld, _obj_zeros(tuple(shape) + (fld.phi,)))

    @classmethod
    def eye(cls, fld: ScalarField, n: int) -> "FieldArray":
        out = cls.zeros(fld, (n, n))
        for i in range(n):
            out.num[i, i, 0] = 1
        return out

    @classmethod
    def from_ints(cls, fld: ScalarField, values) -> "FieldArray":
        """Rational-integer entries (any nested sequence or integer ndarray)."""
        arr = np.asarray(values)
        num = _obj_zeros(arr.shape + (fld.phi,))
        num[..., 0] = np.vectorize(int, otypes=[object])(arr) if arr.size else 0
        return cls(fld, num)

    @classmethod
    def from_scalars(cls, fld: ScalarField, values) -> "FieldArray":
        """Entries given as ints, Fractions, literal strings or :class:`Cyc`."""
        arr = np.empty(np.shape(values) if not isinstance(values, np.ndarray) else values.shape,
                       dtype=object)
        flat_in = np.asarray(values, dtype=object).ravel() if np.ndim(values) else [values]
        scal = [as_scalar(v, fld) for v in flat_in]
        den = reduce(lcm, (c.denominator for s in scal for c in s.coeffs), 1)
        num = _obj_zeros((len(scal), fld.phi))
        for idx, s in enumerate(scal):
            for k, c in enumerate(s.coeffs):
                num[idx, k] = c.numerator * (den // c.denominator)
        return cls(fld, num.reshape(arr.shape + (fld.phi,)), den)

    @classmethod
    def stack(cls, arrays, axis=0) -> "FieldArray":
        arrays = list(arrays)
        fld = arrays[0].field
        den = reduce(lcm, (a.den for a in arrays), 1)
        nums = [a._check(fld).num * (den // a.den) for a in arrays]
        if axis < 0:
            axis += arrays[0].ndim + 1
        return cls(fld, np.stack(nums, axis=axis), den)

    @classmethod
    def concatenate(cls, arrays, axis=0) -> "FieldArray":
        arrays = list(arrays)
        fld = arrays[0].field
        den = reduce(lcm, (a.den for a in arrays), 1)
        nums = [a._check(fld).num * (den // a.den) for a in arrays]
        if axis < 0:
            axis += arrays[0].ndim
        return cls(fld, np.concatenate(nums, axis=axis), den)

    # basic properties ------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return self.num.shape[:-1]

    @property
    def ndim(self) -> int:
        return self.num.ndim - 1

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=np.int64))

    def __len__(self):
        return self.shape[0]

    def _check(self, fld):
        if self.field.order != fld.order:
            raise FieldMismatchError(
                f"array over Q(zeta_{self.field.order}) mixed with Q(zeta_{fld.order})"
            )
        return self

    def copy(self) -> "FieldArray":
        return FieldArray(self.field, self.num.copy(), self.den)

    def normalized(self) -> "FieldArray":
        if self.den == 1:
            return self
        g = gcd(self.den, *self.num.ravel().tolist())
        if g == 1:
            return self
        return FieldArray(self.field, self.num // g, self.den // g)

    def with_den(self, den: int) -> "FieldArray":
        if den % self.den:
            raise ValueError("new denominator must be a multiple of the old one")
        if den == self.den:
            return self
        return FieldArray(self.field, self.num * (den // self.den), den)

    # element access ---------------------------------------------------------
    def _scalar_at(self, coords) -> Cyc:
        return Cyc(self.field, (Fraction(int(c), self.den) for c in coords))

    def __getitem__(self, idx):
        key = idx if isinstance(idx, tuple) else (idx,)
        if len(key) == self.ndim and all(isinstance(k, (int, np.integer)) for k in key):
            return self._scalar_at(self.num[key])
        return FieldArray(self.field, self.num[key + (slice(None),)], self.den)

    def __setitem__(self, idx, value):
        key = idx if isinstance(idx, tuple) else (idx,)
        if not isinstance(value, FieldArray):
            value = FieldArray.from_scalars(self.field, value)
        value._check(self.field)
        den = lcm(self.den, value.den)
        if den != self.den:
            self.num = self.num * (den // self.den)
            self.den = den
        self.num[key + (slice(None),)] = value.num * (den // value.den)

    def entries(self):
        """Nested lists of :class:`Cyc` (a Cyc for 0-d arrays)."""
        flat = self.num.reshape(-1, self.field.phi)
        out = np.empty(len(flat), dtype=object)
        for i, row in enumerate(flat):
            out[i] = self._scalar_at(row)
        return out.reshape(self.shape).tolist() if self.ndim else out[0]

    def literals(self):
        """Nested lists of canonical scalar literals."""
        ent = self.entries()
        if not self.ndim:
            return format_scalar(ent)

        def conv(x):
            return [conv(y) for y in x] if isinstance(x, list) else format_scalar(x)

        return conv(ent)

    def __iter__(self):
        for i in range(self.shape[0]):
            yield self[i]

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldArray):
            return other._check(self.field)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = lcm(self.den, other.den)
        return FieldArray(self.field, self.num * (den // self.den) + other.num * (den // other.den), den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = lcm(self.den, other.den)
        return FieldArray(self.field, self.num * (den // self.den) - other.num * (den // other.den), den)

    def __neg__(self):
        return FieldArray(self.field, -self.num, self.den)

    def scale(self, s) -> "FieldArray":
        """Multiply every entry by the scalar ``s``."""
        s = as_scalar(s, self.field)
        den = reduce(lcm, (c.denominator for c in s.coeffs), 1)
        if self.field.phi == 1:
            c = s.coeffs[0]
            return FieldArray(self.field, self.num * (c.numerator * (den // c.denominator)),
                              self.den * den)
        svec = np.array([c.numerator * (den // c.denominator) for c in s.coeffs], dtype=object)
        # (x * s)_r = sum_pq x_p s_q T[p,q,r]
        mat = np.tensordot(svec, self.field.mul_table, axes=([0], [1]))  # (p, r)
        flat = self.num.reshape(-1, self.field.phi)
        out = _kernels.matmul(flat, mat)
        return FieldArray(self.field, out.reshape(self.num.shape), self.den * den)

    def __mul__(self, other):
        if isinstance(other, (Cyc, int, Fraction, str)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> "FieldArray":
        if self.field.phi == 1:
            return self
        flat = self.num.reshape(-1, self.field.phi)
        out = _kernels.matmul(flat, self.field.conj_matrix.T.copy())
        return FieldArray(self.field, out.reshape(self.num.shape), self.den)

    def __eq__(self, other):
        if not isinstance(other, FieldArray):
            return NotImplemented
        if other.field.order != self.field.order or other.shape != self.shape:
            return False
        if self.den == other.den:
            return bool(np.array_equal(self.num, other.num))
        return bool(np.array_equal(self.num * other.den, other.num * self.den))

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.num.any()

    def nonzero_mask(self):
        """Boolean array of shape ``self.shape`` marking nonzero entries."""
        return (self.num != 0).any(axis=-1)

    def first_nonzero(self):
        """Lexicographically first index with a nonzero entry, or None."""
        if self.size == 0:
            return None
        flat = self.nonzero_mask().ravel().astype(np.int64)
        pos = _kernels.first_nonzero(flat)
        if pos < 0:
            return None
        return tuple(int(i) for i in np.unravel_index(pos, self.shape))

    # shape manipulation ------------------------------------------------------
    def transpose(self, *axes) -> "FieldArray":
        if len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        if not axes:
            axes = tuple(reversed(range(self.ndim)))
        return FieldArray(self.field, self.num.transpose(tuple(axes) + (self.ndim,)), self.den)

    @property
    def T(self) -> "FieldArray":
        return self.transpose()

    def reshape(self, *shape) -> "FieldArray":
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return FieldArray(self.field, self.num.reshape(tuple(shape) + (self.field.phi,)), self.den)

    def reindex(self, spec: str) -> "FieldArray":
        """Permute axes with einsum-style letters, e.g. ``"nijk->njki"``."""
        src, dst = spec.replace(" ", "").split("->")
        if sorted(src) != sorted(dst) or len(set(src)) != len(src):
            raise ValueError(f"bad permutation spec {spec!r}")
        return self.transpose(tuple(src.index(c) for c in dst))

    def __repr__(self):
        return f"FieldArray(shape={self.shape}, order={self.field.order}, {self.literals()!r})"


def as_array(value, fld: ScalarField) -> FieldArray:
    if isinstance(value, FieldArray):
        return value._check(fld)
    return FieldArray.from_scalars(fld, value)


# ---------------------------------------------------------------------------
# exact einsum


def _parse_subscripts(subscripts, nops):
    subscripts = subscripts.replace(" ", "")
    if "->" not in subscripts:
        raise ValueError("explicit output subscripts ('->') are required")
    lhs, out = subscripts.split("->")
    ins = lhs.split(",")
    if len(ins) != nops:
        raise ValueError(f"{len(ins)} operand subscripts for {nops} operands")
    for s in ins + [out]:
        if len(set(s)) != len(s):
            raise ValueError(f"repeated index in {s!r} (diagonals are not supported)")
    return ins, out


def _sum_out(arr: FieldArray, letters: str, keep: set):
    drop = [i for i, c in enumerate(letters) if c not in keep]
    if not drop:
        return arr, letters
    num = arr.num.sum(axis=tuple(drop)) if arr.num.size else _obj_zeros(
        tuple(s for i, s in enumerate(arr.num.shape) if i not in drop))
    num = np.asarray(num, dtype=object)
    if num.ndim == 0:
        num = num.reshape(1)
    return FieldArray(arr.field, num, arr.den), "".join(c for c in letters if c in keep)


def _pair(a: FieldArray, la: str, b: FieldArray, lb: str, keep: set):
    fld = a.field
    phi = fld.phi
    a, la = _sum_out(a, la, keep | set(lb))
    b, lb = _sum_out(b, lb, keep | set(la))
    shared = [c for c in la if c in lb]
    batch = [c for c in shared if c in keep]
    contract = [c for c in shared if c not in keep]
    free_a = [c for c in la if c not in shared]
    free_b = [c for c in lb if c not in shared]
    dims = dict(zip(la, a.shape))
    dims.update(zip(lb, b.shape))
    for c in shared:
        if a.shape[la.index(c)] != b.shape[lb.index(c)]:
            raise DimensionError(f"index {c!r} has sizes {a.shape[la.index(c)]} and {b.shape[lb.index(c)]}")

    def prod(cs):
        return int(np.prod([dims[c] for c in cs], dtype=np.int64)) if cs else 1

    ma, kk, nb = prod(free_a), prod(contract), prod(free_b)
    out_letters = "".join(batch + free_a + free_b)
    out_shape = tuple(dims[c] for c in out_letters)

    def one(anum, bnum):
        # anum: (free_a..., contract..., phi) ; bnum: (contract..., free_b..., phi)
        a2 = anum.reshape(ma, kk * phi)
        if phi == 1:
            b2 = bnum.reshape(kk, nb)
        else:
            b3 = bnum.reshape(kk, nb, phi)
            bt = np.tensordot(b3, fld.mul_table, axes=([2], [1]))  # (k, n, p, r)
            b2 = np.ascontiguousarray(bt.transpose(0, 2, 1, 3)).reshape(kk * phi, nb * phi)
        return _kernels.matmul(a2, b2).reshape(ma, nb, phi)

    a_order = batch + free_a + contract
    b_order = batch + contract + free_b
    anum = a.num.transpose(tuple(la.index(c) for c in a_order) + (len(la),))
    bnum = b.num.transpose(tuple(lb.index(c) for c in b_order) + (len(lb),))
    if not batch:
        res = one(anum, bnum)
    else:
        nbat = len(batch)
        bshape = tuple(dims[c] for c in batch)
        res = _obj_zeros(bshape + (ma, nb, phi))
        for idx in itertools.product(*(range(s) for s in bshape)):
            res[idx] = one(anum[idx], bnum[idx])
    return FieldArray(fld, res.reshape(out_shape + (phi,)), a.den * b.den), out_letters


def einsum(subscripts: str, *operands: FieldArray) -> FieldArray:
    """Exact einsum over cyclotomic FieldArrays.

    Operands are contracted left to right.  Repeated letters inside one
    operand (diagonals) are not supported; the output must be explicit.
    """
    if not operands:
        raise ValueError("einsum needs at least one operand")
    ins, out = _parse_subscripts(subscripts, len(operands))
    fld = operands[0].field
    for op, s in zip(operands, ins):
        op._check(fld)
        if op.ndim != len(s):
            raise DimensionError(f"operand of rank {op.ndim} labelled {s!r}")
    cur, lc = operands[0], ins[0]
    for i in range(1, len(operands)):
        later = set(out).union(*ins[i + 1:])
        cur, lc = _pair(cur, lc, operands[i], ins[i], later)
    cur, lc = _sum_out(cur, lc, set(out))
    if set(lc) != set(out):
        missing = set(out) - set(lc)
        raise ValueError(f"output indices {sorted(missing)} do not occur in any operand")
    res = cur.reindex(f"{lc}->{out}") if lc != out else cur
    if res.den > 1:
        res = res.normalized()
    return res
