"""Generators of the Mukai-lattice isometry group, applied as words.

Three generator families act on Mukai vectors:

  * Translate(N), N in the surface lattice:  x -> ch(N) x, the cup product
    with 1 + N + (N^2)/2 omega;
  * NSAuto(M), M an automorphism of the surface lattice (M^T G M = G),
    acting on the c1 component only;
  * Reflect(u), u a (-2)-vector:  x -> x + <x, u> u.

Negate (x -> -x) and Dual (r, c1, a) -> (r, -c1, a) complete the toolbox.
Isometries are kept as generator words, never matrices, so composition is
free and every application is exact integer arithmetic.  Words apply
right-to-left; the empty word is the identity.  No word reduction or
canonical form is attempted, and no orbit enumeration is provided.

Validation that Reflect carries a genuine (-2)-vector and that NSAuto is a
genuine lattice automorphism needs the lattice, so it happens eagerly in the
factory helpers (reflect, ns_auto) and again on application.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InputError
from .lattice import EvenLattice, MukaiVector, dual, mukai_pairing


@dataclass(frozen=True)
class Translate:
    shift: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shift", tuple(int(x) for x in self.shift))

    def validate(self, lat: EvenLattice) -> None:
        lat.check_vector(self.shift)

    def apply(self, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
        return apply_translate(self.shift, v, lat)

    def to_json(self) -> dict:
        return {"type": "translate", "N": list(self.shift)}


@dataclass(frozen=True)
class Reflect:
    u: MukaiVector

    def validate(self, lat: EvenLattice) -> None:
        if mukai_pairing(self.u, self.u, lat) != -2:
            raise InputError("reflection vector must have square -2")

    def apply(self, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
        return apply_reflect(self.u, v, lat)

    def to_json(self) -> dict:
        return {"type": "reflect", "u": self.u.to_json()}


@dataclass(frozen=True)
class NSAuto:
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))

    def validate(self, lat: EvenLattice) -> None:
        n = lat.rank
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise InputError("automorphism matrix does not match lattice rank")
        m = self.matrix
        g = lat.gram
        for i in range(n):
            for j in range(n):
                mgm = sum(m[k][i] * g[k][t] * m[t][j] for k in range(n) for t in range(n))
                if mgm != g[i][j]:
                    raise InputError("matrix is not an automorphism of the lattice")

    def apply(self, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
        self.validate(lat)
        n = lat.rank
        new_c1 = tuple(sum(self.matrix[i][j] * v.c1[j] for j in range(n))
                       for i in range(n))
        return MukaiVector(v.r, new_c1, v.a)

    def to_json(self) -> dict:
        return {"type": "nsauto", "M": [list(row) for row in self.matrix]}


@dataclass(frozen=True)
class Negate:
    def validate(self, lat: EvenLattice) -> None:
        pass

    def apply(self, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
        return -v

    def to_json(self) -> dict:
        return {"type": "negate"}


@dataclass(frozen=True)
class Dual:
    def validate(self, lat: EvenLattice) -> None:
        pass

    def apply(self, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
        return dual(v)

    def to_json(self) -> dict:
        return {"type": "dual"}


IsometryElem = Union[Translate, Reflect, NSAuto, Negate, Dual]


def translate(shift) -> Translate:
    return Translate(tuple(shift))


def reflect(u: MukaiVector, lat: EvenLattice) -> Reflect:
    elem = Reflect(u)
    elem.validate(lat)
    return elem


def ns_auto(matrix, lat: EvenLattice) -> NSAuto:
    elem = NSAuto(tuple(tuple(row) for row in matrix))
    elem.validate(lat)
    return elem


@dataclass(frozen=True)
class IsometryWord:
    """Ordered list of generators; applies right-to-left."""

    elems: tuple[IsometryElem, ...]

    def apply(self, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
        return apply_word(self, v, lat)

    def to_json(self) -> list:
        return [e.to_json() for e in self.elems]

    @classmethod
    def from_json(cls, doc: list, lat: EvenLattice) -> "IsometryWord":
        elems = []
        for item in doc:
            try:
                kind = item["type"]
            except (TypeError, KeyError) as exc:
                raise InputError("isometry element must carry a 'type'") from exc
            if kind == "translate":
                elem = translate(item["N"])
            elif kind == "reflect":
                elem = reflect(MukaiVector.from_json(item["u"]), lat)
            elif kind == "nsauto":
                elem = ns_auto(item["M"], lat)
            elif kind == "negate":
                elem = Negate()
            elif kind == "dual":
                elem = Dual()
            else:
                raise InputError(f"unknown isometry element type {kind!r}")
            elem.validate(lat)
            elems.append(elem)
        return cls(tuple(elems))


def apply_translate(shift, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
    """ch(N) x = (r, c1 + r N, a + (N.c1) + r (N^2)/2).

    (N^2) is even on an even lattice, so the result is integral.
    """
    shift = tuple(int(x) for x in shift)
    lat.check_vector(shift)
    lat.check_vector(v.c1)
    nn = lat.quad(shift)
    new_c1 = tuple(x + v.r * n for x, n in zip(v.c1, shift))
    new_a = v.a + lat.bilinear(shift, v.c1) + v.r * (nn // 2)
    return MukaiVector(v.r, new_c1, new_a)


def apply_reflect(u: MukaiVector, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
    """x -> x + <x, u> u for a (-2)-vector u."""
    if mukai_pairing(u, u, lat) != -2:
        raise InputError("reflection vector must have square -2")
    return v + mukai_pairing(v, u, lat) * u


def apply_word(word: IsometryWord, v: MukaiVector, lat: EvenLattice) -> MukaiVector:
    for elem in reversed(word.elems):
        elem.validate(lat)
        v = elem.apply(v, lat)
    return v


def reflection_target(v: MukaiVector, v1: MukaiVector,
                      lat: EvenLattice) -> tuple[MukaiVector, MukaiVector]:
    """Target vectors of the reflection construction for a (-2)-vector v1.

    Returns (w_plain, w_dual) with w_plain = -(v + <v, v1> v1) and
    w_dual = dual(w_plain); both have the same square as v.
    """
    if mukai_pairing(v1, v1, lat) != -2:
        raise InputError("reflection vector must have square -2")
    w_plain = -apply_reflect(v1, v, lat)
    return w_plain, dual(w_plain)
