"""Auxiliary lattice constructions and two elementary arithmetic facts.

build_auxiliary packages the reduction step that trades an arbitrary
primitive Mukai vector for one with coprime top part on a rank-1 surface
lattice.  Inputs are integers (l, r, s, a), thought of as
v = l(r + xi) + a omega with s = (xi^2)/2 on the original surface.  The
construction picks

  * the smallest r1 with a r1 = 1 (mod l), gcd(r1, r) = 1 and r1 - l r >= 2,
  * d', d1 solving d' r1 - d1 r = 1 (minimal positive d'),
  * q with a r1 + q l = 1,
  * k = r1 (q r + r1 s) - r^2 > 0, the half-square of the new polarization,

and assembles on the rank-1 lattice with Gram [2k]:

  v' = (l r, [l d'], a'),  a' = l((1 + d' r1) d1 s + d'^2 q r1 - r d'^2) + a,
  v1 = (r1, [d1], a1),     a1 = r1(-d'^2 + d1^2 s) + d1^2 r q + 2 d'.

Exact invariants certified before returning: <v1^2> = -2, <v1, v'> = -1,
<v'^2> = 2l(ls - ra), a' = a (mod l), and k > 0.  The reflected target
w = -dual(v' + <v', v1> v1) = (r1 - lr, [-(d1 - l d')], a1 - a') then has
coprime rank and degree (its top gcd is 1).

triangle_interior_count checks, by exact bounding-box enumeration with
barycentric sign tests, that the triangle (0,0), (r1 - lr, d1 - ld),
(r1, d1) with d r1 - r d1 = 1 and lr < r1 has no interior lattice point;
Pick's theorem serves as the second oracle in the tests.  farey_gap_holds
checks the mediant-style gap x2 >= x1 + x3 for slopes y1/x1 > y2/x2 > y3/x3
with y1 x3 - x1 y3 = 1.

The exceptional bundle realizing v1, and the birational map itself, are
sheaf-level content and out of scope; only the lattice data is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import ConsistencyError, InputError
from .isometry import apply_reflect
from .lattice import EvenLattice, MukaiVector, dual, ell, mukai_pairing, square


@dataclass(frozen=True)
class AuxConstruction:
    l: int
    r: int
    s: int
    a: int
    r1: int
    d1: int
    dprime: int
    q: int
    k: int
    lattice: EvenLattice        # rank 1, Gram [2k]
    vprime: MukaiVector
    v1: MukaiVector
    w: MukaiVector

    def to_json(self) -> dict:
        return {
            "l": self.l, "r": self.r, "s": self.s, "a": self.a,
            "r1": self.r1, "d1": self.d1, "dprime": self.dprime,
            "q": self.q, "k": self.k,
            "lattice": self.lattice.to_json(),
            "vprime": self.vprime.to_json(),
            "v1": self.v1.to_json(),
            "w": self.w.to_json(),
        }


def build_auxiliary(l: int, r: int, s: int, a: int,
                    search_bound: int = 500) -> AuxConstruction:
    """Construct the full auxiliary data for inputs (l, r, s, a).

    Requires l, r >= 1, gcd(l, a) = 1 (primitivity of the source vector) and
    2l(ls - ra) >= 0 (nonnegative square).  The smallest admissible r1 is
    taken, so the output is deterministic.
    """
    if l < 1 or r < 1:
        raise InputError("l and r must be positive")
    if gcd(l, a) != 1:
        raise InputError("gcd(l, a) must be 1")
    if 2 * l * (l * s - r * a) < 0:
        raise InputError("the square 2l(ls - ra) must be nonnegative")

    r1 = None
    for cand in range(l * r + 2, search_bound + 1):
        if (a * cand - 1) % l == 0 and gcd(cand, r) == 1:
            r1 = cand
            break
    if r1 is None:
        raise InputError(f"no admissible r1 up to search bound {search_bound}")

    q = (1 - a * r1) // l
    # minimal positive d' with d' r1 = 1 (mod r)
    dprime = pow(r1, -1, r) if r > 1 else 1
    d1 = (dprime * r1 - 1) // r
    k = r1 * (q * r + r1 * s) - r * r
    if k <= 0:
        raise ConsistencyError("polarization square k must be positive")
    lat = EvenLattice(((2 * k,),))

    aprime = l * ((1 + dprime * r1) * d1 * s + dprime * dprime * q * r1
                  - r * dprime * dprime) + a
    a1 = r1 * (-dprime * dprime + d1 * d1 * s) + d1 * d1 * r * q + 2 * dprime
    vprime = MukaiVector(l * r, (l * dprime,), aprime)
    v1 = MukaiVector(r1, (d1,), a1)

    checks = [
        ((a * r1 - 1) % l == 0, "a r1 = 1 (mod l)"),
        (gcd(r1, r) == 1, "gcd(r1, r) = 1"),
        (r1 - l * r >= 2, "r1 - l r >= 2"),
        (dprime * r1 - d1 * r == 1, "d' r1 - d1 r = 1"),
        (a * r1 + q * l == 1, "a r1 + q l = 1"),
        (square(v1, lat) == -2, "<v1^2> = -2"),
        (square(vprime, lat) == 2 * l * (l * s - r * a), "<v'^2> = 2l(ls - ra)"),
        (mukai_pairing(v1, vprime, lat) == -1, "<v1, v'> = -1"),
        ((aprime - a) % l == 0, "a' = a (mod l)"),
    ]
    for ok, label in checks:
        if not ok:
            raise ConsistencyError(f"auxiliary construction invariant failed: {label}")

    w = _reflected(v1, vprime, lat, l, r, r1, d1, dprime)
    return AuxConstruction(l, r, s, a, r1, d1, dprime, q, k, lat, vprime, v1, w)


def _reflected(v1: MukaiVector, vprime: MukaiVector, lat: EvenLattice,
               l: int, r: int, r1: int, d1: int, dprime: int) -> MukaiVector:
    w = -dual(apply_reflect(v1, vprime, lat))
    expected = MukaiVector(r1 - l * r, (-(d1 - l * dprime),), v1.a - vprime.a)
    if w != expected:
        raise ConsistencyError("reflected target disagrees with its closed form")
    if ell(w) != 1:
        raise ConsistencyError("reflected target must have coprime rank and degree")
    if square(w, lat) != square(vprime, lat):
        raise ConsistencyError("reflection must preserve the square")
    return w


def reflected_target(aux: AuxConstruction) -> MukaiVector:
    """w = -dual(reflection of v' by v1); verified to have coprime top part."""
    return _reflected(aux.v1, aux.vprime, aux.lattice,
                      aux.l, aux.r, aux.r1, aux.d1, aux.dprime)


def triangle_interior_count(r1: int, d1: int, r: int, d: int, l: int) -> int:
    """Number of lattice points strictly inside (0,0), (r1-lr, d1-ld), (r1, d1).

    Preconditions: r1, r > 0, l r < r1 and d r1 - r d1 = 1 (unimodularity);
    the count is expected to vanish for every valid tuple.
    """
    if r1 <= 0 or r <= 0:
        raise InputError("r1 and r must be positive")
    if l * r >= r1:
        raise InputError("need l r < r1")
    if d * r1 - r * d1 != 1:
        raise InputError("determinant d r1 - r d1 must equal 1")

    ax, ay = 0, 0
    bx, by = r1 - l * r, d1 - l * d
    cx, cy = r1, d1
    xs = np.arange(min(ax, bx, cx) + 1, max(ax, bx, cx))
    ys = np.arange(min(ay, by, cy) + 1, max(ay, by, cy))
    if xs.size == 0 or ys.size == 0:
        return 0
    px, py = np.meshgrid(xs, ys, indexing="ij")
    # orientation of the triangle; nonzero since its doubled area is l
    orient = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    sgn = 1 if orient > 0 else -1
    s1 = sgn * ((bx - ax) * (py - ay) - (by - ay) * (px - ax))
    s2 = sgn * ((cx - bx) * (py - by) - (cy - by) * (px - bx))
    s3 = sgn * ((ax - cx) * (py - cy) - (ay - cy) * (px - cx))
    inside = (s1 > 0) & (s2 > 0) & (s3 > 0)
    return int(np.count_nonzero(inside))


@dataclass(frozen=True)
class FareyCheck:
    holds: bool
    vacuous: bool

    def __bool__(self) -> bool:
        return self.holds


def farey_gap_holds(x1: int, y1: int, x2: int, y2: int,
                    x3: int, y3: int) -> FareyCheck:
    """Check x2 >= x1 + x3 for y1/x1 > y2/x2 > y3/x3 with y1 x3 - x1 y3 = 1.

    When the preconditions fail the statement is vacuous: the check returns
    holds=True with the vacuous flag set.
    """
    preconditions = (
        x1 > 0 and x2 > 0 and x3 > 0
        and y1 * x3 - x1 * y3 == 1
        and y1 * x2 > y2 * x1
        and y2 * x3 > y3 * x2
    )
    if not preconditions:
        return FareyCheck(True, True)
    return FareyCheck(x2 >= x1 + x3, False)


def sweep_triangles(max_r1: int) -> tuple[int, list]:
    """Exhaust all valid (r1, d1, r, d, l) with r1 <= max_r1, |d1| <= max_r1.

    Returns (number of tuples checked, list of counterexample tuples).
    """
    checked = 0
    bad = []
    for r1 in range(2, max_r1 + 1):    # r1 = 1 admits no l with l r < r1
        for d1 in range(-max_r1, max_r1 + 1):
            if gcd(r1, d1) != 1:
                continue
            # unique r in (0, r1) with d r1 - r d1 = 1 for some integral d
            r = (-pow(d1, -1, r1)) % r1
            d = (1 + r * d1) // r1
            if d * r1 - r * d1 != 1:
                raise ConsistencyError("triangle sweep produced a bad determinant")
            for l in range(1, (r1 - 1) // r + 1):
                checked += 1
                if triangle_interior_count(r1, d1, r, d, l) != 0:
                    bad.append((r1, d1, r, d, l))
    return checked, bad


def sweep_farey(max_x: int) -> tuple[int, list]:
    """Exhaust the gap inequality over all tuples with x_i <= max_x.

    The data is invariant under the shear y_i -> y_i + t x_i, so y3 is
    normalized to [0, x3); every valid tuple is a shear of an enumerated one.
    Returns (number of tuples checked, list of counterexamples).
    """
    checked = 0
    bad = []
    for x3 in range(1, max_x + 1):
        for y3 in range(x3):
            for x1 in range(1, max_x + 1):
                num = 1 + x1 * y3
                if num % x3:
                    continue
                y1 = num // x3
                for x2 in range(1, max_x + 1):
                    # integers y2 with y3/x3 < y2/x2 < y1/x1
                    lo = y3 * x2 // x3 + 1
                    hi = -((-y1 * x2) // x1) - 1    # floor/ceil tricks, exact
                    for y2 in range(lo, hi + 1):
                        res = farey_gap_holds(x1, y1, x2, y2, x3, y3)
                        if res.vacuous:
                            continue
                        checked += 1
                        if not res.holds:
                            bad.append((x1, y1, x2, y2, x3, y3))
    return checked, bad
