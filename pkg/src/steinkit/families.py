"""Family-level realizability deciders for three surgery families.

Seifert fibered spaces are decided through the normalized coefficient
data and a certified lower-bound search for the pair function n, with
sphere-base inputs falling back to the quick closed-form tests first.
Brieskorn homology spheres are built from multiplicities by solving the
orientation constraint, and surgeries on the Borromean rings are
decided by exact membership in the three exceptional regions.  Every
decider answers YES or UNKNOWN, never NO: the underlying results are
one-directional.
"""

from dataclasses import dataclass
from math import gcd

from .numerics import INF, ExtRational, MobiusMap, floor_frac, rat
from .presentation import SurgeryPresentation


class FamilyError(ValueError):
    pass


ZERO = rat(0)
MINUS_ONE = rat(-1)


def _floor(r: ExtRational) -> int:
    return floor_frac(r)[0]


def _slope_less(x: ExtRational, bound: ExtRational) -> bool:
    """x < bound on the slope line, where infinity sits at the bottom.

    Coefficient normalization lands in [-inf, -1), whose infinite point
    is reached from below, so infinity compares below every rational.
    """
    if x.is_infinite:
        return not bound.is_infinite
    if bound.is_infinite:
        return False
    return x < bound


# ---------------------------------------------------------------------------
# Seifert fibered spaces


@dataclass
class SeifertData:
    """Diagram-coefficient form of a Seifert fibered space.

    The space is surgery on k fibers of the trivial circle bundle over
    the base, with nonzero coefficients r_i.  orientable bases need
    genus >= 0, nonorientable ones genus >= 1.
    """

    orientable: bool
    genus: int
    coefficients: list[ExtRational]

    def __post_init__(self):
        if self.orientable and self.genus < 0:
            raise FamilyError(f"orientable base needs genus >= 0, got {self.genus}")
        if not self.orientable and self.genus < 1:
            raise FamilyError(f"nonorientable base needs genus >= 1, got {self.genus}")
        for i, r in enumerate(self.coefficients):
            if r == ZERO:
                raise FamilyError(f"fiber coefficient {i + 1} is zero")

    @property
    def sphere_base(self) -> bool:
        return self.orientable and self.genus == 0


def seifert_from_invariants(genus: int, pairs) -> SeifertData:
    """Classical (multiplicity, q) invariants over an orientable base."""
    coeffs = [rat(p, q) for p, q in pairs]
    return SeifertData(orientable=True, genus=genus, coefficients=coeffs)


@dataclass(frozen=True)
class SeifertNormal:
    e: ExtRational
    e0: int
    rprime: tuple[ExtRational, ...]
    k0: int


def seifert_normalize(s: SeifertData) -> SeifertNormal:
    """Euler number, its integer part sum, and normalized coefficients.

    Each -1/r_i splits into an integer and a fraction in [0,1); the
    fractional parts are repackaged as coefficients r'_i in [-inf,-1),
    with -inf standing for fraction zero.  k0 counts the coefficients
    whose reciprocal is not an integer.
    """
    e = rat(0)
    e0 = 0
    rprime = []
    k0 = 0
    for r in s.coefficients:
        v = -r.reciprocal()
        fl, fr = floor_frac(v)
        e = e + v
        e0 += fl
        rprime.append(INF if fr == ZERO else -fr.reciprocal())
        if not r.reciprocal().is_integer:
            k0 += 1
    if not s.orientable:
        e = e - rat(2 * s.genus)
    return SeifertNormal(e=e, e0=e0, rprime=tuple(rprime), k0=k0)


@dataclass(frozen=True)
class NFunctionResult:
    """Outcome of the pair-function search.

    kind "sentinel" means realizable regardless of the remaining
    coefficients; kind "bound" carries the best certified lower bound
    (an integer, or infinite) together with its witness map, or no
    value at all when the search came up empty.
    """

    kind: str
    value: int | None = None
    infinite: bool = False
    witness: MobiusMap | None = None

    def exceeds(self, r: ExtRational) -> bool:
        """Does the certified bound lie strictly above the slope r?"""
        if self.kind == "sentinel":
            return True
        if self.infinite:
            return True
        if self.value is None:
            return False
        if r.is_infinite:
            return True
        return r < rat(self.value)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _hinge(r1p: ExtRational) -> ExtRational:
    # s in (-inf,-1] with 1/s = -1 - 1/r1p; the reciprocal never vanishes
    inv = ZERO if r1p.is_infinite else r1p.reciprocal()
    return (MINUS_ONE - inv).reciprocal()


def _check_slope(r: ExtRational, name: str):
    if not (r.is_infinite or r < MINUS_ONE):
        raise FamilyError(f"{name} must lie in [-inf, -1), got {r}")


def n_function(r1p: ExtRational, r2p: ExtRational, search_bound: int = 100) -> NFunctionResult:
    """Certified lower bound for the pair function of the sphere-base test.

    Enumerates determinant-one slope maps A with every entry bounded by
    search_bound, keeps those sending the hinge s into (-1,0] and r2p
    into [-inf,-1), and maximizes the resulting integer (ties keep the
    lexicographically first witness).  The sentinel short-circuit fires
    when s equals r2p.
    """
    _check_slope(r1p, "first coefficient")
    _check_slope(r2p, "second coefficient")
    if search_bound < 1:
        raise FamilyError(f"search bound must be positive, got {search_bound}")
    s = _hinge(r1p)
    if s == r2p:
        return NFunctionResult(kind="sentinel")

    best: tuple[int, int] | None = None  # (finite value) ordering helper
    best_infinite = False
    best_witness: MobiusMap | None = None
    best_key: tuple[int, int, int, int] | None = None

    for a in range(0, search_bound + 1):
        b_range = (1,) if a == 0 else range(-search_bound, search_bound + 1)
        for b in b_range:
            if gcd(a, b) != 1:
                continue
            g, x, y = _ext_gcd(a, b)
            # a*d0 - b*c0 = 1
            d0, c0 = x, -y
            base = MobiusMap(a, b, c0, d0)
            vs = base.apply(s)
            if vs.is_infinite:
                continue
            k = _floor(-vs)
            c, d = c0 + k * a, d0 + k * b
            if max(abs(a), abs(b), abs(c), abs(d)) > search_bound:
                continue
            cand = MobiusMap(a, b, c, d)
            v2 = cand.apply(r2p)
            if not (v2.is_infinite or v2 < MINUS_ONE):
                continue
            a0 = ExtRational(c, a)
            if a0.is_infinite or a0 >= ZERO:
                t = ZERO
            elif a0 >= MINUS_ONE:
                t = (vs + rat(k)).reciprocal()
            else:
                t = v2
            big = max(abs(a), abs(c))
            small = min(abs(a), abs(c))
            if t.is_infinite:
                infinite = small >= 1
                value = None if infinite else -big
            else:
                infinite = False
                value = -small * (_floor(t) + 1) - big
            key = (cand.a, cand.b, cand.c, cand.d)
            better = False
            if infinite and not best_infinite:
                better = True
            elif infinite == best_infinite:
                if not infinite:
                    if best is None or (value is not None and value > best[0]):
                        better = True
                    elif value is not None and value == best[0] and key < best_key:
                        better = True
                elif key < best_key:
                    better = True
            if better:
                best = None if value is None else (value, 0)
                best_infinite = infinite
                best_witness = cand
                best_key = key
    if best_witness is None:
        return NFunctionResult(kind="bound")
    out = NFunctionResult(
        kind="bound",
        value=None if best_infinite else best[0],
        infinite=best_infinite,
        witness=best_witness,
    )
    _check_witness(out, s, r2p)
    return out


def _check_witness(res: NFunctionResult, s: ExtRational, r2p: ExtRational):
    # guards the search invariants: the witness must still satisfy the
    # interval constraints and reproduce the reported bound
    w = res.witness
    ws = w.apply(s)
    assert not ws.is_infinite and MINUS_ONE < ws <= ZERO
    w2 = w.apply(r2p)
    assert w2.is_infinite or w2 < MINUS_ONE
    a0 = ExtRational(w.c, w.a)
    if a0.is_infinite or a0 >= ZERO:
        t = ZERO
    elif a0 >= MINUS_ONE:
        t = ws.reciprocal()
    else:
        t = w2
    big, small = max(abs(w.a), abs(w.c)), min(abs(w.a), abs(w.c))
    if t.is_infinite:
        assert res.infinite == (small >= 1)
        assert res.infinite or res.value == -big
    else:
        assert not res.infinite
        assert res.value == -small * (_floor(t) + 1) - big


@dataclass(frozen=True)
class SeifertDecision:
    verdict: str
    reason: str | None = None
    detail: str = ""
    pair: tuple[int, int] | None = None
    n_result: NFunctionResult | None = None


def _closed_form_level(r1p: ExtRational) -> int:
    # largest integer below the hinge of r1p
    s = _hinge(r1p)
    return -_floor(-s) - 1


def decide_seifert(s: SeifertData, search_bound: int = 100) -> SeifertDecision:
    """One-directional realizability test for a Seifert fibered space.

    YES means the space bounds the required structure; UNKNOWN means no
    sufficient condition applied within the search bound.
    """
    norm = seifert_normalize(s)
    if not s.sphere_base:
        return SeifertDecision(verdict="YES", reason="a", detail="base is not a sphere")
    if norm.e0 != -1:
        return SeifertDecision(verdict="YES", reason="b", detail=f"e0 = {norm.e0} differs from -1")
    rp = norm.rprime
    k = len(rp)
    if k <= 2:
        return SeifertDecision(
            verdict="YES", reason="c", detail=f"only {k} normalized coefficients"
        )
    if all(_slope_less(r, rat(-2)) for r in rp):
        return SeifertDecision(
            verdict="YES", reason="c", detail="all normalized coefficients below -2"
        )
    for i in range(k):
        level = _closed_form_level(rp[i])
        if all(_slope_less(rp[j], rat(level)) for j in range(k) if j != i):
            return SeifertDecision(
                verdict="YES",
                reason="c",
                detail=f"coefficient {i + 1} gives integer level {level}",
            )
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            res = n_function(rp[i], rp[j], search_bound)
            if res.kind == "sentinel":
                return SeifertDecision(
                    verdict="YES",
                    reason="c",
                    detail=f"pair ({i + 1}, {j + 1}) hits the sentinel",
                    pair=(i + 1, j + 1),
                    n_result=res,
                )
            others = [rp[t] for t in range(k) if t not in (i, j)]
            if res.witness is not None and all(res.exceeds(r) for r in others):
                return SeifertDecision(
                    verdict="YES",
                    reason="c",
                    detail=f"pair ({i + 1}, {j + 1}) bounds the rest",
                    pair=(i + 1, j + 1),
                    n_result=res,
                )
    return SeifertDecision(verdict="UNKNOWN", detail="no sufficient condition applied")


def brieskorn(p1: int, p2: int, p3: int, orientation: int = 1) -> SeifertData:
    """Sphere-base Seifert data of a Brieskorn homology sphere.

    The denominators solve q1*p2*p3 + p1*q2*p3 + p1*p2*q3 = orientation
    (+1 or -1), canonicalized so the first two lie in (-p_i, 0).
    """
    if orientation not in (1, -1):
        raise FamilyError(f"orientation must be +1 or -1, got {orientation}")
    ps = (p1, p2, p3)
    for p in ps:
        if p < 2:
            raise FamilyError(f"multiplicities must be at least 2, got {p}")
    for u in range(3):
        for v in range(u + 1, 3):
            if gcd(ps[u], ps[v]) != 1:
                raise FamilyError(
                    f"multiplicities must be pairwise coprime, got {ps[u]} and {ps[v]}"
                )
    g, x, _ = _ext_gcd(p2 * p3 % p1, p1)
    q1 = orientation * x % p1 - p1
    g, x, _ = _ext_gcd(p1 * p3 % p2, p2)
    q2 = orientation * x % p2 - p2
    q3, rem = divmod(orientation - q1 * p2 * p3 - p1 * q2 * p3, p1 * p2)
    assert rem == 0
    return SeifertData(
        orientable=True,
        genus=0,
        coefficients=[rat(p1, q1), rat(p2, q2), rat(p3, q3)],
    )


# ---------------------------------------------------------------------------
# surgeries on the Borromean rings


@dataclass(frozen=True)
class BorromeanCoeffs:
    r1: ExtRational
    r2: ExtRational
    r3: ExtRational

    def as_tuple(self) -> tuple[ExtRational, ExtRational, ExtRational]:
        return (self.r1, self.r2, self.r3)


_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def borromean_membership(c: BorromeanCoeffs) -> tuple[bool, bool, bool]:
    """Exact membership in the three exceptional coefficient regions."""
    rs = c.as_tuple()
    for r in rs:
        if r.is_infinite:
            raise FamilyError("membership needs finite coefficients, got infinity")
    one, four = rat(1), rat(4)
    in_a0 = all(one <= r < four for r in rs)

    third = rat(-1, 3)
    six = rat(-6)
    in_a2 = False
    for p in _PERMS:
        first, second, last = rs[p[0]], rs[p[1]], rs[p[2]]
        if first < ZERO or not (third <= second < ZERO):
            continue
        low = rat(-2 * _floor(-second.reciprocal()) - 1)
        if low <= last < six:
            in_a2 = True
            break

    in_a3 = all(r < ZERO for r in rs)
    if in_a3:
        for k in range(3):
            i, j = [t for t in range(3) if t != k]
            low = -2 * (_floor(-rs[i].reciprocal()) + _floor(-rs[j].reciprocal()) + 1)
            if not rat(low) <= rs[k] < ZERO:
                in_a3 = False
                break
    if in_a3:
        minus_one = rat(-1)
        if all(six <= r < ZERO for r in rs):
            small = sum(1 for r in rs if minus_one <= r < ZERO)
            if small >= 2:
                in_a3 = False
    return in_a0, in_a2, in_a3


@dataclass(frozen=True)
class BorromeanDecision:
    verdict: str
    in_a0: bool = False
    in_a2: bool = False
    in_a3: bool = False
    detail: str = ""


def decide_borromean(c: BorromeanCoeffs) -> BorromeanDecision:
    """YES unless the coefficients land in an exceptional region.

    An infinite coefficient reduces the space to a connected sum of
    lens spaces, which is always realizable.
    """
    if any(r.is_infinite for r in c.as_tuple()):
        return BorromeanDecision(verdict="YES", detail="infinite coefficient")
    in_a0, in_a2, in_a3 = borromean_membership(c)
    if in_a0 or in_a2 or in_a3:
        return BorromeanDecision(
            verdict="UNKNOWN", in_a0=in_a0, in_a2=in_a2, in_a3=in_a3,
            detail="coefficients lie in an exceptional region",
        )
    return BorromeanDecision(verdict="YES", detail="outside all exceptional regions")


def borromean_presentation(c: BorromeanCoeffs) -> SurgeryPresentation:
    """Surgery presentation fit for homology: three unknots, zero linking."""
    return SurgeryPresentation(
        coeffs=list(c.as_tuple()),
        lk=[[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        unknot=[True, True, True],
    )


def twist_knot_surgery(l: int, m: int, r: ExtRational) -> tuple[BorromeanCoeffs, BorromeanDecision]:
    """r-surgery on the doubly twisted knot with parameters l and m."""
    coeffs = BorromeanCoeffs(rat(-1, l), rat(-1, m), r)
    return coeffs, decide_borromean(coeffs)


def two_component_surgery(
    m: int, r1: ExtRational, r2: ExtRational
) -> tuple[BorromeanCoeffs, BorromeanDecision]:
    """(r1, r2)-surgery on the symmetric two-component link with clasp m."""
    coeffs = BorromeanCoeffs(rat(-1, m), r1, r2)
    return coeffs, decide_borromean(coeffs)
