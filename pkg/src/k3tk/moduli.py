"""Moduli-space invariants of a Mukai vector, as decidable predicates.

All predicates assume a polarization that is general for the vector (away
from every wall), so no ample divisor is taken as input; rank-0 vectors are
rejected everywhere.

Per deformation invariance, the Betti/Hodge data of the moduli space match
those of the Hilbert scheme of <v^2>/2 + 1 points; only the Euler
characteristic is computed here.

Case split for v = l(r + xi) + a omega with l = gcd(rank, c1):
case B when there is a (-2)-vector of the shape r + xi + b omega, i.e. when
2r divides (xi^2) + 2; case A otherwise.  The mu-stability criterion is
<v^2> >= 0 in case A and <v^2> >= 2 l^2 in case B.  The case-B bound is
applied verbatim even at the corner l = 1, <v^2> = -2, where rigid mu-stable
bundles (the structure sheaf) sit on the boundary; mu_stable_boundary_flag
marks that corner.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .lattice import (EvenLattice, MukaiVector, content, ell, primitive,
                      square)
from .qseries import hilb_euler

RANK_ONE = "rank_one"
REFL_POINT = "refl_point"
UNIV_EXT = "univ_ext"
HAS_LOCALLY_FREE = "has_locally_free"


def _require_positive_rank(v: MukaiVector) -> None:
    if v.r <= 0:
        raise InputError("rank must be positive (rank-0 theory is out of scope)")


def _require_primitive(v: MukaiVector, lat: EvenLattice) -> None:
    if not primitive(v, lat):
        raise InputError("Mukai vector must be primitive")


def exists_stable_primitive(v: MukaiVector, lat: EvenLattice) -> bool:
    """Non-emptiness of the stable moduli space: <v^2> >= -2."""
    _require_positive_rank(v)
    _require_primitive(v, lat)
    return square(v, lat) >= -2


def exists_semistable(v: MukaiVector, lat: EvenLattice) -> bool:
    """Non-emptiness of the semistable moduli space for arbitrary v.

    True iff v = n w for some integer n >= 1 with <w^2> >= -2; implemented
    as a divisor scan over the content of v.
    """
    _require_positive_rank(v)
    c = content(v)
    return any(square(v.divided(n), lat) >= -2
               for n in range(1, c + 1) if c % n == 0)


def moduli_dim(v: MukaiVector, lat: EvenLattice) -> int:
    """dim M(v) = <v^2> + 2 for primitive v with <v^2> >= -2."""
    if not exists_stable_primitive(v, lat):
        raise InputError("moduli space is empty: <v^2> < -2")
    return square(v, lat) + 2


@dataclass(frozen=True)
class CaseInfo:
    case: str                      # "A" or "B"
    v0: MukaiVector | None         # the (-2)-witness r + xi + b omega, case B only


def _primitive_top(v: MukaiVector) -> tuple[int, int, tuple[int, ...]]:
    """(l, r, xi) with v = l(r + xi) + a omega and r + xi primitive."""
    l = ell(v)
    return l, v.r // l, tuple(x // l for x in v.c1)


def classify_case(v: MukaiVector, lat: EvenLattice) -> CaseInfo:
    _require_positive_rank(v)
    lat.check_vector(v.c1)
    l, r, xi = _primitive_top(v)
    xi_sq = lat.quad(xi)
    if (xi_sq + 2) % (2 * r) == 0:
        b = (xi_sq + 2) // (2 * r)
        return CaseInfo("B", MukaiVector(r, xi, b))
    return CaseInfo("A", None)


def exists_mu_stable(v: MukaiVector, lat: EvenLattice) -> bool:
    """Existence of mu-stable members: <v^2> >= 0 (case A) or >= 2 l^2 (case B)."""
    if not exists_stable_primitive(v, lat):
        raise InputError("moduli space is empty: <v^2> < -2")
    sq = square(v, lat)
    if classify_case(v, lat).case == "A":
        return sq >= 0
    return sq >= 2 * ell(v) ** 2


def mu_stable_boundary_flag(v: MukaiVector, lat: EvenLattice) -> bool:
    """Flags the case-B corner l = 1, <v^2> = -2 (rigid bundles on the boundary)."""
    _require_positive_rank(v)
    return (classify_case(v, lat).case == "B" and ell(v) == 1
            and square(v, lat) == -2)


@dataclass(frozen=True)
class NonLocallyFree:
    kind: str
    model: str | None


def classify_non_locally_free(v: MukaiVector, lat: EvenLattice) -> NonLocallyFree:
    """Detect the vectors whose moduli consist of non-locally-free sheaves.

    The three patterns, with v0 the case-B witness: (i) rank 1;
    (ii) v = (rk v0) v0 - omega, moduli a copy of the surface; (iii) rk v0 = 1
    and v = l v0 - (l+1) omega, moduli the Hilbert scheme of l+1 points.
    Everything else contains locally free members.
    """
    if not exists_stable_primitive(v, lat):
        raise InputError("moduli space is empty: <v^2> < -2")
    if v.r == 1:
        return NonLocallyFree(RANK_ONE, f"Hilb^{hilb_index(v, lat)}")
    info = classify_case(v, lat)
    if info.case == "B":
        v0 = info.v0
        l = ell(v)
        if l == v0.r and v.a == v0.r * v0.a - 1:
            return NonLocallyFree(REFL_POINT, "X")
        if v0.r == 1 and v.a == l * v0.a - (l + 1):
            return NonLocallyFree(UNIV_EXT, f"Hilb^{l + 1}")
    return NonLocallyFree(HAS_LOCALLY_FREE, None)


def hilb_index(v: MukaiVector, lat: EvenLattice) -> int:
    """<v^2>/2 + 1, the number of points of the reference Hilbert scheme."""
    if not exists_stable_primitive(v, lat):
        raise InputError("moduli space is empty: <v^2> < -2")
    return square(v, lat) // 2 + 1


def euler_characteristic(v: MukaiVector, lat: EvenLattice) -> int:
    """chi of the moduli space: the Goettsche coefficient at <v^2>/2 + 1."""
    return hilb_euler(hilb_index(v, lat))
