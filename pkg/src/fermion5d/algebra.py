"""Dense real Clifford algebra engine for low-dimensional signatures.

A blade is encoded as a bit mask over the generators: bit ``A`` set means the
generator ``eA`` is a factor, and factors are kept in canonical ascending
order.  A multivector is a dense float64 coefficient vector indexed by mask.
The product of two basis blades is the XOR of their masks times an exact
integer sign obtained by counting transpositions and applying the metric signs
of annihilated generator pairs, so all structural identities (anticommutation,
grade bookkeeping, centrality of the top blade in odd dimension) hold exactly.

The physics modules use ``CL32`` — three generators squaring to +1 (``e1, e2,
e3``) and two squaring to -1 (``e0`` the ordinary time axis and ``e4`` the
second, "extraordinary" time axis).  ``CL31`` and ``CL41`` exist for
cross-checks of metric-sensitive facts such as the square of the unit
pseudoscalar.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels

MAX_GENERATORS = 6


class SignatureMismatchError(ValueError):
    """Raised when operands from different algebras are combined."""


@dataclass(frozen=True)
class Signature:
    """Metric signature: ``signs[A]`` is the square of generator ``eA``."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.signs) <= MAX_GENERATORS:
            raise ValueError(
                f"supported generator counts are 1..{MAX_GENERATORS}, got {len(self.signs)}"
            )
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("generator squares must be +1 or -1")

    @property
    def dim(self) -> int:
        return len(self.signs)

    @property
    def n_blades(self) -> int:
        return 1 << len(self.signs)

    @property
    def plus_count(self) -> int:
        return sum(1 for s in self.signs if s == 1)

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    def blade_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "e" + "".join(str(a) for a in range(self.dim) if mask >> a & 1)

    def __str__(self) -> str:
        return f"Cl({self.plus_count},{self.minus_count})"


#: Cl(3,2): e0^2 = e4^2 = -1 (two time axes), e1^2 = e2^2 = e3^2 = +1.
CL32 = Signature((-1, 1, 1, 1, -1))
#: Cl(3,1): ordinary spacetime with e0^2 = -1.
CL31 = Signature((-1, 1, 1, 1))
#: Cl(4,1): contrast case whose unit pseudoscalar squares to -1.
CL41 = Signature((1, 1, 1, 1, -1))


def blade_product(mask_a: int, mask_b: int, signature: Signature) -> tuple[int, int]:
    """Product of two basis blades: ``(sign, result_mask)`` in exact integers.

    Factors of ``mask_b`` are merged one by one (ascending) into the sorted
    factor list of ``mask_a``; each merge counts the transpositions needed to
    reach canonical position and a repeated generator annihilates with its
    metric sign.
    """
    dim = signature.dim
    if not (0 <= mask_a < 1 << dim and 0 <= mask_b < 1 << dim):
        raise ValueError("blade mask out of range for signature")
    acc = [a for a in range(dim) if mask_a >> a & 1]
    sign = 1
    for b in range(dim):
        if not mask_b >> b & 1:
            continue
        swaps = sum(1 for a in acc if a > b)
        if swaps % 2:
            sign = -sign
        if b in acc:
            acc.remove(b)
            sign *= signature.signs[b]
        else:
            acc.append(b)
            acc.sort()
    mask = 0
    for a in acc:
        mask |= 1 << a
    return sign, mask


@dataclass(frozen=True)
class _Tables:
    """Precomputed per-signature structure tables."""

    sign: np.ndarray        # (D, D) int8: geometric-product signs
    wedge_sign: np.ndarray  # (D, D) int8: signs where grades add, else 0
    grades: np.ndarray      # (D,) int64 blade grades
    reverse_sign: np.ndarray  # (D,) float64: (-1)^(k(k-1)/2) per blade


@lru_cache(maxsize=None)
def _tables(signs: tuple[int, ...]) -> _Tables:
    sig = Signature(signs)
    n = sig.n_blades
    sign = np.zeros((n, n), dtype=np.int8)
    wedge_sign = np.zeros((n, n), dtype=np.int8)
    grades = np.array([bin(m).count("1") for m in range(n)], dtype=np.int64)
    for i in range(n):
        for j in range(n):
            s, mask = blade_product(i, j, sig)
            assert mask == i ^ j
            sign[i, j] = s
            if grades[mask] == grades[i] + grades[j]:
                wedge_sign[i, j] = s
    rev = np.array([(-1.0) ** (g * (g - 1) // 2) for g in grades])
    sign.setflags(write=False)
    wedge_sign.setflags(write=False)
    grades.setflags(write=False)
    rev.setflags(write=False)
    return _Tables(sign=sign, wedge_sign=wedge_sign, grades=grades, reverse_sign=rev)


def tables(signature: Signature) -> _Tables:
    return _tables(signature.signs)


class Multivector:
    """Immutable dense multivector over a fixed signature."""

    __slots__ = ("coeffs", "signature")

    def __init__(self, coeffs: Iterable[float], signature: Signature = CL32):
        arr = np.array(coeffs, dtype=np.float64)
        if arr.shape != (signature.n_blades,):
            raise ValueError(
                f"expected {signature.n_blades} coefficients for {signature}, got {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "signature", signature)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Multivector is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, signature: Signature = CL32) -> "Multivector":
        return cls(np.zeros(signature.n_blades), signature)

    @classmethod
    def scalar(cls, value: float, signature: Signature = CL32) -> "Multivector":
        coeffs = np.zeros(signature.n_blades)
        coeffs[0] = value
        return cls(coeffs, signature)

    @classmethod
    def blade(cls, mask: int, signature: Signature = CL32, coeff: float = 1.0) -> "Multivector":
        coeffs = np.zeros(signature.n_blades)
        coeffs[mask] = coeff
        return cls(coeffs, signature)

    # -- bookkeeping -------------------------------------------------------

    def _check(self, other: "Multivector") -> None:
        if self.signature != other.signature:
            raise SignatureMismatchError(
                f"cannot combine {self.signature} and {other.signature} multivectors"
            )

    @property
    def grades_present(self) -> tuple[int, ...]:
        g = tables(self.signature).grades
        return tuple(sorted({int(k) for k in g[self.coeffs != 0.0]}))

    @property
    def is_even(self) -> bool:
        g = tables(self.signature).grades
        return not np.any(self.coeffs[g % 2 == 1])

    def inf_norm(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.coeffs + other.coeffs, self.signature)
        if isinstance(other, (int, float)):
            return self + Multivector.scalar(other, self.signature)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.coeffs - other.coeffs, self.signature)
        if isinstance(other, (int, float)):
            return self - Multivector.scalar(other, self.signature)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector(-self.coeffs, self.signature)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            t = tables(self.signature)
            return Multivector(_kernels.gp(t.sign, self.coeffs, other.coeffs), self.signature)
        if isinstance(other, (int, float)):
            return Multivector(self.coeffs * float(other), self.signature)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.coeffs * float(other), self.signature)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.coeffs / float(other), self.signature)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            t = tables(self.signature)
            return Multivector(
                _kernels.gp(t.wedge_sign, self.coeffs, other.coeffs), self.signature
            )
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.signature == other.signature and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.signature, self.coeffs.tobytes()))

    # -- grade operations ---------------------------------------------------

    def grade(self, k: int) -> "Multivector":
        if not 0 <= k <= self.signature.dim:
            raise ValueError(f"grade must be in 0..{self.signature.dim}, got {k}")
        g = tables(self.signature).grades
        out = np.where(g == k, self.coeffs, 0.0)
        return Multivector(out, self.signature)

    def reverse(self) -> "Multivector":
        t = tables(self.signature)
        return Multivector(self.coeffs * t.reverse_sign, self.signature)

    def __invert__(self):
        return self.reverse()

    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def __repr__(self) -> str:
        terms = []
        for mask in np.nonzero(self.coeffs)[0]:
            c = self.coeffs[mask]
            name = self.signature.blade_name(int(mask))
            terms.append(f"{c:+g}" if name == "1" else f"{c:+g}*{name}")
        return " ".join(terms) if terms else "0"


# -- convenience constructors and free functions ----------------------------


def e(signature: Signature, *indices: int) -> Multivector:
    """Basis blade from generator indices, e.g. ``e(CL32, 0, 1)`` for e01.

    Indices may appear in any order; the canonical sign is applied.
    """
    out = Multivector.scalar(1.0, signature)
    for a in indices:
        if not 0 <= a < signature.dim:
            raise ValueError(f"generator index {a} out of range for {signature}")
        out = out * Multivector.blade(1 << a, signature)
    return out


def pseudoscalar(signature: Signature) -> Multivector:
    return Multivector.blade(signature.n_blades - 1, signature)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    return x * y


def wedge(x: Multivector, y: Multivector) -> Multivector:
    return x ^ y


def grade_part(x: Multivector, k: int) -> Multivector:
    return x.grade(k)


def reverse(x: Multivector) -> Multivector:
    return x.reverse()


# -- even subalgebra helpers -------------------------------------------------


@lru_cache(maxsize=None)
def even_masks(signature: Signature) -> tuple[int, ...]:
    """Masks of even-grade blades in ascending order (16 of them for dim 5)."""
    g = tables(signature).grades
    return tuple(int(m) for m in np.nonzero(g % 2 == 0)[0])


@lru_cache(maxsize=None)
def odd_masks(signature: Signature) -> tuple[int, ...]:
    g = tables(signature).grades
    return tuple(int(m) for m in np.nonzero(g % 2 == 1)[0])


def even_coeffs(x: Multivector) -> np.ndarray:
    """Coefficients restricted to the even basis; errors on odd content."""
    if not x.is_even:
        raise ValueError("multivector has odd-grade content")
    return x.coeffs[list(even_masks(x.signature))].copy()


def from_even_coeffs(vec: Sequence[float], signature: Signature = CL32) -> Multivector:
    masks = even_masks(signature)
    vec = np.asarray(vec, dtype=np.float64)
    if vec.shape != (len(masks),):
        raise ValueError(f"expected {len(masks)} even coefficients, got {vec.shape}")
    coeffs = np.zeros(signature.n_blades)
    coeffs[list(masks)] = vec
    return Multivector(coeffs, signature)


def linear_map_matrix(
    fn: Callable[[Multivector], Multivector],
    signature: Signature = CL32,
    input_masks: Sequence[int] | None = None,
) -> np.ndarray:
    """Matrix of a linear map in full-blade coordinates.

    Columns are ``fn`` applied to the basis blades listed in ``input_masks``
    (default: all blades); rows run over all blades of the signature.
    """
    if input_masks is None:
        input_masks = range(signature.n_blades)
    cols = []
    for mask in input_masks:
        out = fn(Multivector.blade(int(mask), signature))
        cols.append(out.coeffs)
    return np.column_stack(cols)


def nullspace(matrix: np.ndarray, rcond: float = 1e-10) -> np.ndarray:
    """Orthonormal null-space basis (columns) via SVD with relative cutoff."""
    u, s, vt = np.linalg.svd(matrix)
    if s.size == 0 or s[0] == 0.0:
        return np.eye(matrix.shape[1])
    keep = s <= rcond * s[0]
    # vt rows beyond len(s) correspond to exactly-null directions
    extra = vt.shape[0] - s.size
    null_rows = np.concatenate([np.nonzero(keep)[0], np.arange(s.size, s.size + extra)])
    return vt[null_rows].T.copy() if null_rows.size else np.zeros((matrix.shape[1], 0))


def random_multivector(
    rng: np.random.Generator,
    signature: Signature = CL32,
    even: bool = False,
    integer: bool = False,
) -> Multivector:
    """Random multivector with coefficients in [-1, 1] (or small integers)."""
    n = signature.n_blades
    if integer:
        coeffs = rng.integers(-3, 4, size=n).astype(np.float64)
    else:
        coeffs = rng.uniform(-1.0, 1.0, size=n)
    if even:
        g = tables(signature).grades
        coeffs = np.where(g % 2 == 0, coeffs, 0.0)
    return Multivector(coeffs, signature)


def kernel_backend() -> str:
    """Which product-kernel path is active ("numba" or "numpy")."""
    return _kernels.BACKEND
