"""The free ternary algebra T^odd V, truncated at a maximal word length.

Words are tuples of generator indices; elements are finite linear
combinations of odd-length words.  The product is concatenation, which is
strongly associative on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .arrays import FieldArray, einsum
from .errors import DimensionError, PreconditionError, TruncationError
from .scalars import Cyc, ScalarField, as_scalar, field as _field
from .ternary import TernaryAlgebra, check_associativity

__all__ = ["FreeTernary", "FreeElement", "free_product", "lift_hom", "bracketings"]

Word = tuple


@dataclass(frozen=True)
class FreeTernary:
    """T^odd V on ``generators`` letters, words of odd length <= ``max_degree``."""

    generators: int
    max_degree: int = 7
    order: int = 1

    def __post_init__(self):
        if self.generators < 1:
            raise ValueError("need at least one generator")
        if self.max_degree < 1 or self.max_degree % 2 == 0:
            raise ValueError("max_degree must be an odd positive integer")

    @property
    def field(self) -> ScalarField:
        return _field(self.order)

    def letter(self, i: int) -> "FreeElement":
        if not 0 <= i < self.generators:
            raise IndexError(f"generator {i} out of range")
        return FreeElement(self, {(i,): self.field.one()})

    def word(self, letters) -> "FreeElement":
        w = tuple(int(x) for x in letters)
        self._check_word(w)
        return FreeElement(self, {w: self.field.one()})

    def zero(self) -> "FreeElement":
        return FreeElement(self, {})

    def _check_word(self, w):
        if len(w) % 2 == 0:
            raise ValueError(f"word {w} has even length")
        if len(w) > self.max_degree:
            raise TruncationError(f"word of length {len(w)} exceeds max_degree {self.max_degree}", (w,))
        if any(not 0 <= x < self.generators for x in w):
            raise IndexError(f"word {w} uses an unknown generator")

    def graded_dimension(self, degree: int) -> int:
        """Number of basis words of the given length (0 for even lengths)."""
        if degree % 2 == 0 or degree > self.max_degree or degree < 1:
            return 0
        return self.generators ** degree

    def words(self, degree: int):
        if self.graded_dimension(degree) == 0:
            return []
        return list(iproduct(range(self.generators), repeat=degree))


class FreeElement:
    """A linear combination of words; terms are kept in sorted word order."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeTernary, terms):
        fld = algebra.field
        clean = {}
        for w, c in dict(terms).items():
            c = as_scalar(c, fld)
            if c:
                clean[tuple(w)] = c
        for w in clean:
            algebra._check_word(w)
        self.algebra = algebra
        self.terms = dict(sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def _same(self, other):
        if not isinstance(other, FreeElement) or other.algebra != self.algebra:
            raise ValueError("elements of different free algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeElement(self.algebra, out)

    def __neg__(self):
        return FreeElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_scalar(s, self.algebra.field)
        return FreeElement(self.algebra, {w: c * s for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{''.join(f'x{i}' for i in w)}" for w, c in self.terms.items())


def free_product(u: FreeElement, v: FreeElement, w: FreeElement) -> FreeElement:
    """``[uvw] = u v w`` (concatenation, extended trilinearly)."""
    u._same(v)
    u._same(w)
    alg = u.algebra
    out = {}
    for (a, ca), (b, cb), (c, cc) in iproduct(u.terms.items(), v.terms.items(), w.terms.items()):
        word = a + b + c
        if len(word) > alg.max_degree:
            raise TruncationError(
                f"product word of length {len(word)} exceeds max_degree {alg.max_degree}", (a, b, c)
            )
        coeff = ca * cb * cc
        out[word] = out[word] + coeff if word in out else coeff
    return FreeElement(alg, out)


def _eval_word(images: FieldArray, rho: FieldArray, word, nest: str) -> FieldArray:
    vecs = [images[:, i] for i in word]
    if len(vecs) == 1:
        return vecs[0]
    if nest == "left":
        acc = vecs[0]
        for k in range(1, len(vecs), 2):
            acc = einsum("i,j,k,nijk->n", acc, vecs[k], vecs[k + 1], rho)
        return acc
    acc = vecs[-1]
    for k in range(len(vecs) - 2, 0, -2):
        acc = einsum("i,j,k,nijk->n", vecs[k - 1], vecs[k], acc, rho)
    return acc


def lift_hom(phi: FieldArray, alg: TernaryAlgebra, element: FreeElement, nest: str = "left",
             check: bool = True) -> FieldArray:
    """Evaluate the unique ternary homomorphism extending ``phi``.

    ``phi`` is a (dim A) x (generators) matrix whose column i is the image
    of the i-th generator.  Words are bracketed left-nested by default
    (``nest="right"`` gives the right-nested reading, used to compare).
    """
    if check and not alg.is_strong():
        raise PreconditionError("lift is only well defined into a strongly associative algebra",
                                check_associativity(alg, "strong"))
    if phi.shape != (alg.dim, element.algebra.generators):
        raise DimensionError(f"phi must be {alg.dim} x {element.algebra.generators}")
    if alg.antilinear_middle:
        raise PreconditionError("lift needs a multilinear target")
    out = FieldArray.zeros(alg.field, (alg.dim,))
    for word, c in element.terms.items():
        out = out + _eval_word(phi, alg.rho, word, nest).scale(c)
    return out


def bracketings(n: int):
    """All ways to fully bracket ``n`` consecutive letters with ternary
    products (``n`` odd), as nested tuples of positions."""
    if n % 2 == 0:
        raise ValueError("ternary bracketings need an odd number of letters")

    def build(lo, hi):
        if hi - lo == 1:
            return [lo]
        res = []
        # split [lo, hi) into three odd-length blocks
        for a in range(lo + 1, hi, 2):
            for b in range(a + 1, hi, 2):
                if (hi - b) % 2 == 0:
                    continue
                for x in build(lo, a):
                    for y in build(a, b):
                        for z in build(b, hi):
                            res.append((x, y, z))
        return res

    return build(0, n)


def evaluate_bracketing(tree, vecs, rho: FieldArray) -> FieldArray:
    if isinstance(tree, int):
        return vecs[tree]
    a, b, c = (evaluate_bracketing(t, vecs, rho) for t in tree)
    return einsum("i,j,k,nijk->n", a, b, c, rho)
