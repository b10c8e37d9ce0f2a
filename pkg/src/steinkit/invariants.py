"""Plane-field invariants of the boundary of a handle presentation.

A presentation with 1-handles is measured through its surgered link:
the m attaching circles carry a symmetric framing/linking matrix while
every 1-handle stands in as a 0-framed unknot whose linking row lists
algebraic run counts.  Spin structures of the boundary appear as
characteristic sublinks of that link, and the homotopy invariants of
the induced plane field come out of rotation numbers, the Euler
characteristic and the signature, all computed exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .numerics import (
    ExtRational,
    mat_vec,
    rat,
    signature,
    smith_normal_form,
    solve_gf2_affine,
)
from .presentation import SurgeryPresentation, _solve_rational


class InvariantError(ValueError):
    pass


@dataclass
class SteinPresentation:
    """Integer handle data: framings, linkings, runs and rotations.

    q is the m x m symmetric matrix of the 2-handles (framing on the
    diagonal, linking number off it), runs[h][i] counts algebraic runs
    of attaching circle i over 1-handle h, and rot[i] is the rotation
    number of circle i.
    """

    q: list[list[int]]
    runs: list[list[int]]
    rot: list[int]

    def __post_init__(self):
        m = len(self.q)
        for i, row in enumerate(self.q):
            if len(row) != m:
                raise InvariantError(f"framing matrix row {i + 1} has length {len(row)}, want {m}")
        for i in range(m):
            for j in range(i):
                if self.q[i][j] != self.q[j][i]:
                    raise InvariantError(f"framing matrix is not symmetric at ({i + 1}, {j + 1})")
        for h, row in enumerate(self.runs):
            if len(row) != m:
                raise InvariantError(f"run row {h + 1} has length {len(row)}, want {m}")
        if len(self.rot) != m:
            raise InvariantError(f"got {len(self.rot)} rotation numbers for {m} circles")

    @property
    def m(self) -> int:
        return len(self.q)

    @property
    def n1(self) -> int:
        return len(self.runs)

    def q_star(self) -> list[list[int]]:
        """The full linking matrix over circles and surgered 1-handles."""
        m, n1 = self.m, self.n1
        size = m + n1
        out = [[0] * size for _ in range(size)]
        for i in range(m):
            for j in range(m):
                out[i][j] = self.q[i][j]
        for h in range(n1):
            for i in range(m):
                out[m + h][i] = out[i][m + h] = self.runs[h][i]
        return out

    @classmethod
    def from_presentation(cls, p: SurgeryPresentation) -> "SteinPresentation":
        """Read handle data off an integer surgery presentation.

        Components flagged as the 0-framed sublink play the 1-handles
        and must sit after all others; they may not link each other.
        Every other component needs an integer coefficient and a known
        rotation number.
        """
        p.validate()
        n1 = sum(1 for flag in p.l0 if flag)
        m = p.m - n1
        if any(p.l0[:m]) or not all(p.l0[m:]):
            raise InvariantError("0-framed sublink components must come after all others")
        for i in range(m, p.m):
            for j in range(m, p.m):
                if i != j and p.lk[i][j] != 0:
                    raise InvariantError(
                        f"0-framed sublink components {i + 1} and {j + 1} may not link each other"
                    )
        q = [[0] * m for _ in range(m)]
        rot = []
        for i in range(m):
            c = p.coeffs[i]
            if not c.is_integer:
                raise InvariantError(f"component {i + 1} has coefficient {c}, expand first")
            q[i][i] = c.num
            if p.rot[i] is None:
                raise InvariantError(f"component {i + 1} has no rotation number")
            rot.append(p.rot[i])
            for j in range(m):
                if i != j:
                    q[i][j] = p.lk[i][j]
        runs = [[p.lk[m + h][i] for i in range(m)] for h in range(n1)]
        return cls(q=q, runs=runs, rot=rot)


@dataclass(frozen=True)
class SpinStructure:
    """A characteristic sublink, as a 0/1 vector over the full link."""

    sublink: tuple[int, ...]

    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, bit in enumerate(self.sublink) if bit)


@dataclass(frozen=True)
class CokernelClass:
    """An element of coker(q_star) in canonical coordinates.

    orders lists the invariant factors (0 meaning infinite), and
    coords[i] is reduced mod orders[i] where that order is finite.
    Two classes are equal exactly when coords and orders agree; the
    integer representative is kept for inspection only.
    """

    coords: tuple[int, ...]
    orders: tuple[int, ...]
    representative: tuple[int, ...] = field(compare=False, default=())

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _cokernel_class(q_star, vec) -> CokernelClass:
    snf = smith_normal_form(q_star) if q_star else None
    if snf is None:
        return CokernelClass(coords=(), orders=(), representative=tuple(vec))
    coords = mat_vec([list(r) for r in snf.left], list(vec))
    orders = tuple(snf.diagonal)
    reduced = tuple(c % d if d else c for c, d in zip(coords, orders))
    return CokernelClass(coords=reduced, orders=orders, representative=tuple(vec))


def chern_cocycle(x: SteinPresentation) -> list[int]:
    """Rotation numbers over the circles, zero over the 1-handle slots."""
    return list(x.rot) + [0] * x.n1


def characteristic_sublinks(x: SteinPresentation) -> list[SpinStructure]:
    """All sublinks whose linking row matches every framing mod 2.

    These classify the spin structures of the boundary, so the list is
    never empty; it has 2^k entries where k is the mod-2 nullity of the
    full linking matrix.
    """
    qs = x.q_star()
    diag = [qs[i][i] for i in range(len(qs))]
    sol = solve_gf2_affine(qs, diag)
    # the diagonal of a symmetric matrix always lies in its column space mod 2
    assert sol is not None
    return [SpinStructure(sublink=v) for v in sorted(sol.enumerate())]


def gamma(x: SteinPresentation, s: SpinStructure) -> CokernelClass:
    """The half-Chern obstruction class attached to a spin structure.

    Over each link component the representative collects half of the
    rotation number plus the linking into the 0-framed sublink and into
    the characteristic sublink (framings counted for self-linking).
    The result is integral exactly when the presentation satisfies the
    rotation parity constraint, and is returned mod the column space of
    the full linking matrix.
    """
    qs = x.q_star()
    size = len(qs)
    if len(s.sublink) != size:
        raise InvariantError(f"spin structure has length {len(s.sublink)}, want {size}")
    for i in range(size):
        total = sum(qs[i][j] for j in range(size) if s.sublink[j])
        if (total - qs[i][i]) % 2:
            raise InvariantError(f"sublink {s.members()} is not characteristic")
    rot_full = chern_cocycle(x)
    rho = []
    for i in range(size):
        lk_l0 = sum(qs[i][j] for j in range(x.m, size))
        lk_sub = sum(qs[i][j] for j in range(size) if s.sublink[j])
        twice = rot_full[i] + lk_l0 + lk_sub
        if twice % 2:
            raise InvariantError(
                f"rotation parity violated on component {i + 1}: the class is half-integral"
            )
        rho.append(twice // 2)
    return _cokernel_class(qs, rho)


def _kernel_basis(rows, ncols) -> list[list[Fraction]]:
    """Basis of the rational kernel of an integer matrix, by elimination."""
    aug = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    basis = []
    for fc in range(ncols):
        if fc in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, col in enumerate(pivots):
            vec[col] = -aug[row][fc]
        basis.append(vec)
    return basis


def _restricted_signature(x: SteinPresentation) -> int:
    """Signature of the framing form on circles not running over handles."""
    basis = _kernel_basis(x.runs, x.m)
    if not basis:
        return 0
    form = [
        [
            sum(bi[a] * x.q[a][b] * bj[b] for a in range(x.m) for b in range(x.m))
            for bj in basis
        ]
        for bi in basis
    ]
    return signature(form)


def _euler_characteristic(x: SteinPresentation) -> int:
    return 1 - x.n1 + x.m


def theta(x: SteinPresentation) -> ExtRational:
    """Squared-Chern invariant of the boundary plane field.

    Defined only when the Chern cocycle is torsion in the cokernel of
    the full linking matrix; the value is the square of any rational
    preimage against the cocycle, corrected by Euler characteristic and
    signature.
    """
    qs = x.q_star()
    c = chern_cocycle(x)
    y = _solve_rational(qs, c) if qs else []
    if y is None:
        raise InvariantError("theta undefined: c1 has infinite order")
    square = sum(a * b for a, b in zip(y, c))
    val = Fraction(square) - 2 * _euler_characteristic(x) - 3 * _restricted_signature(x)
    return rat(val.numerator, val.denominator)


def theta_f0_and_d(x: SteinPresentation) -> tuple[int, int]:
    """Divisibility of the Chern class and the 0-framed theta residue.

    d is the divisibility of the Chern cocycle in the free part of the
    cokernel (0 when the class is torsion).  The second value is
    -2*chi - 3*sigma reduced into [0, 2d) when d > 0, and exact when
    d = 0.
    """
    qs = x.q_star()
    c = chern_cocycle(x)
    cls = _cokernel_class(qs, c)
    free = [v for v, order in zip(cls.coords, cls.orders) if order == 0]
    d = 0
    for v in free:
        d = gcd(d, abs(v))
    base = -2 * _euler_characteristic(x) - 3 * _restricted_signature(x)
    return d, (base % (2 * d) if d else base)
