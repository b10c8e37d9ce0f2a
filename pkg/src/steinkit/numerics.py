"""Exact arithmetic kernel: extended rationals, Moebius maps, integer matrices.

Everything in this module is integer or rational arithmetic.  No floating
point is used anywhere; surgery coefficients and cusp counts do not forgive
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class NumericsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# extended rationals


@dataclass(frozen=True)
class ExtRational:
    """A rational number or the single point at infinity.

    Canonical form: den >= 0, gcd(num, den) == 1, and infinity is 1/0.
    Infinity is unsigned.  Interval tests decide on which side it lives
    (for slope intervals it plays the role of -infinity); see Interval.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        if not isinstance(self.num, int) or not isinstance(self.den, int):
            raise NumericsError(f"ExtRational needs ints, got {self.num!r}/{self.den!r}")
        num, den = self.num, self.den
        if den == 0:
            if num == 0:
                raise NumericsError("0/0 is not a point of the projective line")
            num = 1
        else:
            if den < 0:
                num, den = -num, -den
            g = gcd(num, den)
            if g > 1:
                num, den = num // g, den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    # -- predicates

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    # -- conversions

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise NumericsError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    @staticmethod
    def from_fraction(f: Fraction) -> "ExtRational":
        return ExtRational(f.numerator, f.denominator)

    # -- arithmetic (finite-only unless a rule below applies)

    def _coerce(self, other) -> "ExtRational":
        if isinstance(other, ExtRational):
            return other
        if isinstance(other, int):
            return ExtRational(other)
        if isinstance(other, Fraction):
            return ExtRational.from_fraction(other)
        raise NumericsError(f"cannot combine ExtRational with {other!r}")

    def __add__(self, other) -> "ExtRational":
        other = self._coerce(other)
        if self.is_infinite and other.is_infinite:
            raise NumericsError("inf + inf is undefined")
        if self.is_infinite or other.is_infinite:
            return INF
        return ExtRational.from_fraction(self.as_fraction() + other.as_fraction())

    __radd__ = __add__

    def __neg__(self) -> "ExtRational":
        if self.is_infinite:
            return INF
        return ExtRational(-self.num, self.den)

    def __sub__(self, other) -> "ExtRational":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExtRational":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "ExtRational":
        other = self._coerce(other)
        if self.is_infinite or other.is_infinite:
            if self == ZERO or other == ZERO:
                raise NumericsError("0 * inf is undefined")
            return INF
        return ExtRational.from_fraction(self.as_fraction() * other.as_fraction())

    __rmul__ = __mul__

    def reciprocal(self) -> "ExtRational":
        return ExtRational(self.den, self.num)

    def __truediv__(self, other) -> "ExtRational":
        other = self._coerce(other)
        if self.is_infinite and other.is_infinite:
            raise NumericsError("inf / inf is undefined")
        return self * other.reciprocal()

    # -- order (finite operands only; intervals handle infinity)

    def _cmp_key(self) -> Fraction:
        if self.is_infinite:
            raise NumericsError("infinity is not ordered; use Interval.contains")
        return self.as_fraction()

    def __lt__(self, other):
        return self._cmp_key() < self._coerce(other)._cmp_key()

    def __le__(self, other):
        return self._cmp_key() <= self._coerce(other)._cmp_key()

    def __gt__(self, other):
        return self._cmp_key() > self._coerce(other)._cmp_key()

    def __ge__(self, other):
        return self._cmp_key() >= self._coerce(other)._cmp_key()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ExtRational)):
            other = self._coerce(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"ExtRational({self})"


INF = ExtRational(1, 0)
ZERO = ExtRational(0)


def rat(num, den: int = 1) -> ExtRational:
    """Shorthand constructor accepting ints, Fractions or 'p/q' strings."""
    if isinstance(num, ExtRational):
        return num
    if isinstance(num, Fraction):
        return ExtRational(num.numerator * 1, num.denominator * den)
    if isinstance(num, str):
        return parse_rational(num)
    return ExtRational(num, den)


def parse_rational(text: str) -> ExtRational:
    text = text.strip()
    if text == "inf":
        return INF
    if "/" in text:
        a, b = text.split("/", 1)
        try:
            return ExtRational(int(a), int(b))
        except ValueError as exc:
            raise NumericsError(f"bad rational {text!r}") from exc
    try:
        return ExtRational(int(text))
    except ValueError as exc:
        raise NumericsError(f"bad rational {text!r}") from exc


def floor_frac(r: ExtRational) -> tuple[int, ExtRational]:
    """Split a finite r as r = floor(r) + f with f in [0, 1)."""
    if r.is_infinite:
        raise NumericsError("floor_frac needs a finite rational")
    fl = r.num // r.den
    return fl, r - fl


@dataclass(frozen=True)
class Interval:
    """One-dimensional rational interval with explicit infinity membership.

    lo=None / hi=None mean unbounded on that side.  with_infinity states
    whether the point at infinity belongs to the set; slope intervals that
    are written with a -infinity endpoint include it, intervals written
    with finite endpoints do not.
    """

    lo: ExtRational | None
    hi: ExtRational | None
    lo_closed: bool = True
    hi_closed: bool = False
    with_infinity: bool = False

    def contains(self, r: ExtRational) -> bool:
        if r.is_infinite:
            return self.with_infinity
        if self.lo is not None:
            if r < self.lo or (r == self.lo and not self.lo_closed):
                return False
        if self.hi is not None:
            if r > self.hi or (r == self.hi and not self.hi_closed):
                return False
        return True


# ---------------------------------------------------------------------------
# Moebius maps


@dataclass(frozen=True)
class MobiusMap:
    """Determinant-one fractional linear map r -> (c + d r) / (a + b r).

    The layout matches slope coordinates: rows (a, b) and (c, d), acting on
    the projective rational line with inf -> d/b.  Maps are canonicalised to
    a single sign representative, so equal maps compare equal.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NumericsError(
                f"MobiusMap needs determinant 1, got {self.a * self.d - self.b * self.c}"
            )
        for v in (self.a, self.b, self.c, self.d):
            if v != 0:
                if v < 0:
                    object.__setattr__(self, "a", -self.a)
                    object.__setattr__(self, "b", -self.b)
                    object.__setattr__(self, "c", -self.c)
                    object.__setattr__(self, "d", -self.d)
                break

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)

    def apply(self, r: ExtRational) -> ExtRational:
        if r.is_infinite:
            return ExtRational(self.d, self.b)
        # r = p/q with q > 0; image = (c q + d p) / (a q + b p)
        p, q = r.num, r.den
        return ExtRational(self.c * q + self.d * p, self.a * q + self.b * p)

    def __mul__(self, other: "MobiusMap") -> "MobiusMap":
        # (self * other).apply(r) == self.apply(other.apply(r))
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return MobiusMap(
            a=self.b * other.c + self.a * other.a,
            b=self.b * other.d + self.a * other.b,
            c=self.d * other.c + self.c * other.a,
            d=self.d * other.d + self.c * other.b,
        )

    def __str__(self) -> str:
        return f"[{self.a} {self.b}; {self.c} {self.d}]"


def mobius_apply(m: MobiusMap, r: ExtRational) -> ExtRational:
    return m.apply(r)


# ---------------------------------------------------------------------------
# continued fractions with all tail terms <= -2


@dataclass(frozen=True)
class ContinuedFraction:
    """Expansion r = a0 - 1/(a1 - 1/(... - 1/ak)) with a_j <= -2 for j >= 1.

    With that tail constraint the expansion of a rational is unique, which
    makes chain presentations canonical.
    """

    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise NumericsError("a continued fraction needs at least one term")
        for t in self.terms:
            if not isinstance(t, int):
                raise NumericsError(f"continued fraction terms must be ints, got {t!r}")
        for t in self.terms[1:]:
            if t > -2:
                raise NumericsError(f"tail term {t} violates the <= -2 normal form")

    def evaluate(self) -> ExtRational:
        value = rat(self.terms[-1])
        for term in reversed(self.terms[:-1]):
            value = rat(term) - value.reciprocal()
        return value

    def __len__(self) -> int:
        return len(self.terms)


def neg_continued_fraction(r: ExtRational) -> ContinuedFraction:
    """The unique expansion of a finite rational with tail terms <= -2."""
    if r.is_infinite:
        raise NumericsError("infinity has no continued fraction expansion")
    terms = []
    while True:
        fl, f = floor_frac(r)
        terms.append(fl)
        if f == ZERO:
            return ContinuedFraction(tuple(terms))
        # r = fl - 1/r' means r' = -1/(r - fl), which lands in (-inf, -1)
        r = -f.reciprocal()


# ---------------------------------------------------------------------------
# integer symmetric matrices


@dataclass(frozen=True)
class IntSymMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise NumericsError("IntSymMatrix must be square")
            for v in row:
                if not isinstance(v, int):
                    raise NumericsError(f"matrix entries must be ints, got {v!r}")
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise NumericsError(f"matrix not symmetric at ({i}, {j})")

    @staticmethod
    def from_lists(rows) -> "IntSymMatrix":
        return IntSymMatrix(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.dim))


# ---------------------------------------------------------------------------
# Smith normal form with unimodular witnesses

MAX_SNF_DIM = 64


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SmithForm:
    """D = left * M * right with left, right unimodular and D in Smith form."""

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def smith_normal_form(matrix) -> SmithForm:
    """Smith normal form of an integer matrix, with transformation witnesses.

    Returns diag(d1..dr, 0..) with nonnegative d_i and d_i | d_{i+1},
    together with the unimodular row and column operations that realise it.
    Deterministic: pivots are chosen by minimal absolute value, first in
    row-major order, and are moved into place by a column swap before a row
    swap.  That pivot discipline is what makes cokernel coordinates
    reproducible, so do not change it casually.
    """
    m = [[int(v) for v in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    for row in m:
        if len(row) != ncols:
            raise NumericsError("ragged matrix")
    if nrows > MAX_SNF_DIM or ncols > MAX_SNF_DIM:
        raise NumericsError(f"smith_normal_form caps dimensions at {MAX_SNF_DIM}")

    left = _identity(nrows)
    right = _identity(ncols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, k):
        for row in m:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    def scale_row(i, k):
        m[i] = [k * x for x in m[i]]
        left[i] = [k * x for x in left[i]]

    def find_pivot(s):
        best = None
        for i in range(s, nrows):
            for j in range(s, ncols):
                v = abs(m[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    s = 0
    while s < min(nrows, ncols):
        found = find_pivot(s)
        if found is None:
            break
        _, pi, pj = found
        if pj != s:
            swap_cols(pj, s)
        if pi != s:
            swap_rows(pi, s)

        dirty = False
        for i in range(s + 1, nrows):
            if m[i][s]:
                q = m[i][s] // m[s][s]
                add_row(i, s, -q)
                if m[i][s]:
                    dirty = True
        for j in range(s + 1, ncols):
            if m[s][j]:
                q = m[s][j] // m[s][s]
                add_col(j, s, -q)
                if m[s][j]:
                    dirty = True
        if dirty:
            continue  # remainders became new, smaller pivot candidates

        # enforce divisibility of the remaining block by the pivot
        p = m[s][s]
        offender = None
        for i in range(s + 1, nrows):
            for j in range(s + 1, ncols):
                if m[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(s, offender, 1)
            continue

        if p < 0:
            scale_row(s, -1)
        s += 1

    diag = tuple(m[i][i] for i in range(min(nrows, ncols)))
    return SmithForm(
        diagonal=diag,
        left=tuple(tuple(row) for row in left),
        right=tuple(tuple(row) for row in right),
    )


def mat_mul(a, b):
    """Product of two integer matrices given as sequences of rows."""
    bT = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bT] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


# ---------------------------------------------------------------------------
# exact signature of a rational symmetric matrix


def inertia(matrix) -> tuple[int, int, int]:
    """(positive, zero, negative) eigenvalue counts of a symmetric matrix.

    Computed by congruence diagonalisation over the rationals, which is
    exact.  Entries may be ints or Fractions.
    """
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    for row in m:
        if len(row) != n:
            raise NumericsError("inertia needs a square matrix")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise NumericsError("inertia needs a symmetric matrix")

    pos = neg = zero = 0
    s = 0
    while s < n:
        if m[s][s] == 0:
            swap = next((i for i in range(s + 1, n) if m[i][i] != 0), None)
            if swap is not None:
                m[s], m[swap] = m[swap], m[s]
                for row in m:
                    row[s], row[swap] = row[swap], row[s]
            else:
                # all-zero diagonal: pull a nonzero off-diagonal entry onto it
                pair = None
                for i in range(s, n):
                    for j in range(i + 1, n):
                        if m[i][j] != 0:
                            pair = (i, j)
                            break
                    if pair:
                        break
                if pair is None:
                    zero += n - s
                    break
                i, j = pair
                for row in m:
                    row[i] += row[j]
                m[i] = [x + y for x, y in zip(m[i], m[j])]
                if i != s:
                    m[s], m[i] = m[i], m[s]
                    for row in m:
                        row[s], row[i] = row[i], row[s]
        d = m[s][s]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(s + 1, n):
            if m[i][s] != 0:
                f = m[i][s] / d
                m[i] = [x - f * y for x, y in zip(m[i], m[s])]
                for row in m:
                    row[i] -= f * row[s]
        s += 1
    return pos, zero, neg


def signature(matrix) -> int:
    pos, _, neg = inertia(matrix)
    return pos - neg


# ---------------------------------------------------------------------------
# affine systems over GF(2)


@dataclass(frozen=True)
class Gf2Solution:
    particular: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]

    def count(self) -> int:
        return 1 << len(self.kernel_basis)

    def enumerate(self):
        """All solutions, as 0/1 tuples, in a deterministic order."""
        n = len(self.particular)
        for mask in range(self.count()):
            v = list(self.particular)
            for bit, basis in enumerate(self.kernel_basis):
                if (mask >> bit) & 1:
                    v = [a ^ b for a, b in zip(v, basis)]
            yield tuple(v)


def solve_gf2_affine(matrix, rhs) -> Gf2Solution | None:
    """Solve A x = b over GF(2); None when inconsistent.

    Rows are any integer sequences (reduced mod 2).  The particular solution
    sets all free variables to 0, and the kernel basis vectors are indexed
    by free columns in increasing order.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    rows = []
    for row, b in zip(matrix, rhs, strict=True):
        if len(row) != ncols:
            raise NumericsError("ragged GF(2) system")
        packed = 0
        for j, v in enumerate(row):
            if v & 1:
                packed |= 1 << j
        if b & 1:
            packed |= 1 << ncols
        rows.append(packed)

    pivots: dict[int, int] = {}
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, nrows) if (rows[i] >> col) & 1), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(nrows):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
        pivots[col] = r
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if (rows[i] >> ncols) & 1:
            return None

    particular = [0] * ncols
    for col, row in pivots.items():
        particular[col] = (rows[row] >> ncols) & 1

    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = 1
        for col, row in pivots.items():
            vec[col] = (rows[row] >> fc) & 1
        basis.append(tuple(vec))
    return Gf2Solution(particular=tuple(particular), kernel_basis=tuple(basis))
