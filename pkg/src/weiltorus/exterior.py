"""Exterior algebra of a rank-8 free module and exact linear algebra.

Basis k-subsets of {1..8} are encoded as 8-bit masks (index j <-> bit j-1),
ordered by increasing mask value.  The wedge sign is the parity of the
shuffle merging two masks, computed with popcounts.  Scalars are duck-typed:
anything from :mod:`weiltorus.scalars` works, as do plain Fractions.

Kernel computation comes in three flavours:

* :func:`kernel` -- nullspace over the entry field.  Over Q and Q(i) this is
  plain Gaussian elimination; over polynomial/function-field entries rows
  are cleared to polynomials and reduced by fraction-free Bareiss
  elimination before back-substitution, which keeps intermediate growth
  under control.
* :func:`rational_kernel` -- the Q-points of the nullspace of a matrix over
  Q(i) or a function field, obtained by splitting every entry into
  Q-linear constraints: one constraint per monomial (graded-lex order),
  real part before imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .errors import DegreeMismatch, DegreeOverflow
from .scalars import (
    GaussianRational,
    Polynomial,
    RationalFunction,
    _grlex_key,
    conj_scalar,
)

DIM = 8


def mask_of(indices) -> int:
    m = 0
    for j in indices:
        if not 1 <= j <= DIM:
            raise ValueError(f"index {j} out of range 1..{DIM}")
        if m & (1 << (j - 1)):
            raise ValueError("repeated index")
        m |= 1 << (j - 1)
    return m


def indices_of(mask: int) -> tuple:
    return tuple(j + 1 for j in range(DIM) if mask >> j & 1)


def subsets(k: int) -> List[int]:
    """All k-subset masks in the fixed basis order (increasing mask value)."""
    return sorted(
        sum(1 << (j - 1) for j in combo) for combo in combinations(range(1, DIM + 1), k)
    )


def merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation (a ascending, b ascending)."""
    sign = 1
    for j in range(DIM):
        if b >> j & 1:
            if (a >> (j + 1)).bit_count() & 1:
                sign = -sign
    return sign


class Multivector:
    """Element of degree k of the exterior algebra, sparse over its basis.

    The same container represents covectors (elements of the dual exterior
    algebra); the duality pairing on basis subsets is <e*_S, e_T> = delta.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Optional[dict] = None):
        if not 0 <= degree <= DIM:
            raise ValueError("degree out of range")
        clean = {}
        if coeffs:
            for m, c in coeffs.items():
                if m.bit_count() != degree:
                    raise ValueError(f"mask {m:#b} has wrong cardinality")
                if c:
                    clean[m] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def basis(cls, indices, coeff=1) -> "Multivector":
        m = mask_of(indices)
        return cls(m.bit_count(), {m: coeff if coeff != 1 else Fraction(1)})

    @classmethod
    def zero(cls, degree: int) -> "Multivector":
        return cls(degree, {})

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Multivector") -> "Multivector":
        if self.degree != other.degree:
            raise DegreeMismatch("sum of different degrees")
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = coeffs.get(m)
            s = c if s is None else s + c
            if s:
                coeffs[m] = s
            elif m in coeffs:
                del coeffs[m]
        return Multivector(self.degree, coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector(self.degree, {m: -c for m, c in self.coeffs.items()})

    def scale(self, c) -> "Multivector":
        if not c:
            return Multivector(self.degree, {})
        return Multivector(self.degree, {m: c * x for m, x in self.coeffs.items()})

    def map_coeffs(self, f) -> "Multivector":
        return Multivector(self.degree, {m: f(c) for m, c in self.coeffs.items()})

    def conj(self) -> "Multivector":
        """Coefficient-wise conjugation (the basis is rational)."""
        return self.map_coeffs(conj_scalar)

    def coeff(self, indices_or_mask):
        m = (
            indices_or_mask
            if isinstance(indices_or_mask, int)
            else mask_of(indices_or_mask)
        )
        return self.coeffs.get(m, 0)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.degree != other.degree:
            return False
        for m in set(self.coeffs) | set(other.coeffs):
            if self.coeffs.get(m, 0) != other.coeffs.get(m, 0):
                return False
        return True

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        parts = [f"{c!r}*e{indices_of(m)}" for m, c in sorted(self.coeffs.items())]
        return f"Multivector<{self.degree}>({' + '.join(parts) or '0'})"


def wedge(a: Multivector, b: Multivector) -> Multivector:
    if a.degree + b.degree > DIM:
        raise DegreeOverflow(
            f"wedge of degrees {a.degree}+{b.degree} exceeds {DIM}"
        )
    out: dict = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            if ma & mb:
                continue
            c = ca * cb
            if merge_sign(ma, mb) < 0:
                c = -c
            m = ma | mb
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return Multivector(a.degree + b.degree, out)


def wedge_all(factors: Sequence[Multivector]) -> Multivector:
    out = factors[0]
    for f in factors[1:]:
        out = wedge(out, f)
    return out


def contract(phi: Multivector, x: Multivector) -> Multivector:
    """Interior product of a degree-1 covector phi with x (an antiderivation)."""
    if phi.degree != 1:
        raise DegreeMismatch("contract expects a degree-1 covector")
    if x.degree < 1:
        raise DegreeMismatch("cannot contract a degree-0 multivector")
    out: dict = {}
    for m, c in x.coeffs.items():
        below = 0
        for j in range(DIM):
            bit = 1 << j
            if m & bit:
                cphi = phi.coeffs.get(bit)
                if cphi:
                    term = cphi * c
                    if below & 1:
                        term = -term
                    mm = m & ~bit
                    s = out.get(mm)
                    s = term if s is None else s + term
                    if s:
                        out[mm] = s
                    elif mm in out:
                        del out[mm]
                below += 1
    return Multivector(x.degree - 1, out)


def contract_vector(v_index: int, x: Multivector) -> Multivector:
    """Contraction of x (in dual coordinates) against the basis vector v_index."""
    return contract(Multivector.basis((v_index,)), x)


# ---------------------------------------------------------------------------
# Exact matrices
# ---------------------------------------------------------------------------


@dataclass
class LinearMap:
    """Matrix of scalars in fixed subset bases, acting on coordinate vectors."""

    entries: List[List]
    source_degree: Optional[int] = None
    target_degree: Optional[int] = None

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def apply(self, vec: Sequence) -> List:
        return [
            sum((row[j] * vec[j] for j in range(self.ncols) if vec[j]), 0)
            for row in self.entries
        ]

    def rank(self) -> int:
        rows, _ = rref([list(r) for r in self.entries])
        return len(rows)

    def kernel(self) -> List[List]:
        return kernel(self.entries, self.ncols)

    def rational_kernel(self) -> List[List[Fraction]]:
        return rational_kernel(self.entries, self.ncols)


def _is_polynomialish(entries) -> bool:
    for row in entries:
        for x in row:
            if isinstance(x, (Polynomial, RationalFunction)):
                return True
    return False


def rref(rows: List[List], augment: Optional[List[List]] = None):
    """Reduced row echelon form over a field; returns (rows, pivot columns).

    Mutates (a copy is the caller's job); rows of zeros are dropped.  When
    ``augment`` is given its rows receive the same operations (used for
    matrix inversion).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    piv_r = 0
    pivots = []
    for col in range(ncols):
        pivot = None
        for r in range(piv_r, nrows):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[piv_r], rows[pivot] = rows[pivot], rows[piv_r]
        if augment is not None:
            augment[piv_r], augment[pivot] = augment[pivot], augment[piv_r]
        inv = rows[piv_r][col]
        rows[piv_r] = [x / inv for x in rows[piv_r]]
        if augment is not None:
            augment[piv_r] = [x / inv for x in augment[piv_r]]
        for r in range(nrows):
            if r != piv_r and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv_r])]
                if augment is not None:
                    augment[r] = [
                        a - f * b for a, b in zip(augment[r], augment[piv_r])
                    ]
        pivots.append(col)
        piv_r += 1
        if piv_r == nrows:
            break
    del rows[piv_r:]
    if augment is not None:
        del augment[piv_r:]
    return rows, pivots


def bareiss_echelon(rows: List[List]) -> List[List]:
    """Fraction-free row echelon form for integral-domain entries.

    Classic Bareiss pivoting: every division is exact in the entry ring, so
    polynomial matrices stay polynomial. Returns the echelon rows (possibly
    fewer than the input).
    """

    def exact_div(a, b):
        if isinstance(a, Polynomial):
            q = a.exact_div(b)
            assert q is not None, "Bareiss division must be exact"
            return q
        return a / b

    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = None
    piv_r = 0
    for col in range(ncols):
        pivot = None
        for r in range(piv_r, nrows):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[piv_r], rows[pivot] = rows[pivot], rows[piv_r]
        p = rows[piv_r][col]
        for r in range(piv_r + 1, nrows):
            head = rows[r][col]
            new_row = []
            for c in range(ncols):
                val = p * rows[r][c] - head * rows[piv_r][c]
                if prev is not None:
                    val = exact_div(val, prev)
                new_row.append(val)
            rows[r] = new_row
        prev = p
        piv_r += 1
        if piv_r == nrows:
            break
    return [r for r in rows[:piv_r] if any(r)] + [
        r for r in rows[piv_r:] if any(r)
    ]


def _clear_row_denominators(row: List) -> List[Polynomial]:
    nvars = None
    for x in row:
        if isinstance(x, (Polynomial, RationalFunction)):
            nvars = x.nvars
            break
    assert nvars is not None
    rfs = []
    for x in row:
        if isinstance(x, RationalFunction):
            rfs.append(x)
        elif isinstance(x, Polynomial):
            rfs.append(RationalFunction(x))
        else:
            rfs.append(RationalFunction(Polynomial.const(nvars, x)))
    common = Polynomial.const(nvars, 1)
    for x in rfs:
        extra = x.den.exact_div(poly_gcd_cached(common, x.den))
        common = common * extra
    out = []
    for x in rfs:
        q = common.exact_div(x.den)
        assert q is not None
        out.append(x.num * q)
    return out


def poly_gcd_cached(a: Polynomial, b: Polynomial) -> Polynomial:
    from .scalars import poly_gcd

    return poly_gcd(a, b)


def kernel(entries: List[List], ncols: int) -> List[List]:
    """Basis of the right kernel, reduced-echelon normalized.

    Over Q/Q(i) entries: Gaussian elimination.  Over polynomial domains:
    denominators are cleared row-wise (the kernel is unchanged) and the
    echelon form is computed fraction-free before back-substituting in the
    fraction field.
    """
    if not entries:
        return [
            [Fraction(1) if i == j else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    if _is_polynomialish(entries):
        cleared = [_clear_row_denominators(row) for row in entries]
        ech = bareiss_echelon(cleared)
        rows = [[RationalFunction(x) for x in row] for row in ech]
    else:
        rows = [list(r) for r in entries]
    rows, pivots = rref(rows)
    return _kernel_from_rref(rows, pivots, ncols)


def _kernel_from_rref(rows, pivots, ncols) -> List[List]:
    one = rows[0][pivots[0]] if rows else Fraction(1)
    zero = one - one
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            v = rows[r][fc]
            vec[pc] = -v if v else zero
        basis.append(vec)
    return [_normalize_leading(v) for v in basis]


def _normalize_leading(vec: List) -> List:
    for x in vec:
        if x:
            return [y / x if y else y for y in vec]
    return vec


# -- rational kernel ---------------------------------------------------------


def _entry_to_q_constraints(x) -> Dict[tuple, Fraction]:
    """Split a scalar into {(monomial, part): Fraction}; part 0=re, 1=im."""
    out: Dict[tuple, Fraction] = {}
    if isinstance(x, (int, Fraction)):
        if x:
            out[((), 0)] = Fraction(x)
        return out
    if isinstance(x, GaussianRational):
        if x.re:
            out[((), 0)] = x.re
        if x.im:
            out[((), 1)] = x.im
        return out
    if isinstance(x, Polynomial):
        for mono, c in x.terms.items():
            if c.re:
                out[(mono, 0)] = c.re
            if c.im:
                out[(mono, 1)] = c.im
        return out
    raise TypeError(f"cannot split {x!r} into rational constraints")


def rational_kernel(entries: List[List], ncols: int) -> List[List[Fraction]]:
    """Q-basis of {v rational : Mv = 0} for M over Q(i) or a function field.

    Every matrix row is expanded into Q-linear constraints: rows with
    function-field entries are first cleared to polynomials, then one
    constraint is emitted per monomial (graded-lex order) and per real or
    imaginary part, real part first.  The stacked system is solved over Q
    and the kernel is reduced-echelon normalized, so bases are byte-stable.
    """
    q_rows: List[List[Fraction]] = []
    for row in entries:
        if any(isinstance(x, (Polynomial, RationalFunction)) for x in row):
            row = _clear_row_denominators(row)
        split = [_entry_to_q_constraints(x) for x in row]
        keys = sorted(
            {k for s in split for k in s},
            key=lambda k: (_grlex_key(k[0]) if k[0] else (0, ()), k[1]),
        )
        for key in keys:
            q_rows.append([s.get(key, Fraction(0)) for s in split])
    if not q_rows:
        return [
            [Fraction(1) if i == j else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    rows, pivots = rref(q_rows)
    basis = _kernel_from_rref(rows, pivots, ncols)
    return [[Fraction(x) for x in v] for v in basis]


# ---------------------------------------------------------------------------
# Compound (induced) matrices on exterior powers
# ---------------------------------------------------------------------------


class MinorTable:
    """Memoized minors det(mat[rows, cols]) of a square matrix, by bitmask."""

    def __init__(self, mat: List[List]):
        self.mat = mat
        self.cache: Dict[tuple, object] = {}

    def minor(self, rmask: int, cmask: int):
        if rmask.bit_count() != cmask.bit_count():
            raise ValueError("minor needs equal row/col cardinality")
        if rmask == 0:
            return 1
        key = (rmask, cmask)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        r = (rmask & -rmask).bit_length() - 1
        rest = rmask & ~(1 << r)
        total = 0
        sign = 1
        for c in range(len(self.mat)):
            if not (cmask >> c) & 1:
                continue
            a = self.mat[r][c]
            if a:
                sub = self.minor(rest, cmask & ~(1 << c))
                term = a * sub if sub else 0
                total = total + term if sign > 0 else total - term
            sign = -sign
        self.cache[key] = total
        return total


def compound_apply(mat: List[List], coeffs: Dict[int, object]) -> Dict[int, object]:
    """Push a degree-k coefficient dict through the induced map on /\\^k.

    ``mat`` expresses new basis vectors of old ones columnwise is NOT assumed;
    conventions: output[T] = sum_S det(mat[T, S]) * coeffs[S].
    """
    table = MinorTable(mat)
    out: Dict[int, object] = {}
    if not coeffs:
        return out
    k = next(iter(coeffs)).bit_count()
    for t in subsets(k):
        total = 0
        for s, x in coeffs.items():
            d = table.minor(t, s)
            if d:
                total = total + d * x
        if total:
            out[t] = total
    return out


def invert_matrix(mat: List[List], one) -> List[List]:
    """Exact inverse of a square matrix over a field (raises on singular)."""
    n = len(mat)
    rows = [list(r) for r in mat]
    aug = [[one if i == j else one - one for j in range(n)] for i in range(n)]
    rows, pivots = rref(rows, aug)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix is singular")
    return aug


def matmul(a: List[List], b: List[List]) -> List[List]:
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum((a[i][t] * b[t][j] for t in range(k) if a[i][t]), 0) for j in range(m)]
        for i in range(n)
    ]


# ---------------------------------------------------------------------------
# Q-subspace utilities (rows are coordinate vectors of Fractions)
# ---------------------------------------------------------------------------


def q_rref(vectors: List[List[Fraction]]) -> List[List[Fraction]]:
    if not vectors:
        return []
    rows, _ = rref([list(map(Fraction, v)) for v in vectors])
    return rows


def span_contains(rref_rows: List[List[Fraction]], v: List[Fraction]) -> bool:
    v = list(map(Fraction, v))
    for row in rref_rows:
        lead = next(j for j, x in enumerate(row) if x)
        if v[lead]:
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)

def span_equal(a: List[List[Fraction]], b: List[List[Fraction]]) -> bool:
    ra, rb = q_rref(a), q_rref(b)
    return ra == rb


def span_intersect(
    a: List[List[Fraction]], b: List[List[Fraction]]
) -> List[List[Fraction]]:
    """RREF basis of rowspace(a) ∩ rowspace(b)."""
    a = q_rref(a)
    b = q_rref(b)
    if not a or not b:
        return []
    n = len(a[0])
    stacked = [
        [a[r][c] for r in range(len(a))] + [-b[r][c] for r in range(len(b))]
        for c in range(n)
    ]
    combos = rational_kernel(stacked, len(a) + len(b))
    vectors = []
    for combo in combos:
        vec = [Fraction(0)] * n
        for r, lam in enumerate(combo[: len(a)]):
            if lam:
                vec = [x + lam * y for x, y in zip(vec, a[r])]
        if any(vec):
            vectors.append(vec)
    return q_rref(vectors)


def primitive_integer_vector(v: List[Fraction]) -> List[Fraction]:
    """Scale to a primitive integer vector with positive first nonzero entry."""
    from math import gcd, lcm

    dens = [x.denominator for x in v if x]
    if not dens:
        return list(v)
    m = lcm(*dens) if len(dens) > 1 else dens[0]
    ints = [x * m for x in v]
    g = 0
    for x in ints:
        g = gcd(g, int(x))
    ints = [x / g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return ints
