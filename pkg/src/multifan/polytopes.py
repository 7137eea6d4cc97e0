"""Multi-polytopes and exact lattice point counting.

A complete simplicial multi-fan plus one rational support number per
ray determines a multi-polytope: an arrangement of affine walls
F_i = {u : <u, v_i> = d_i} with a distinguished covector u_I on every
top cone.  For an honest convex polytope this is the usual normal-fan
picture; in general the characteristic function is replaced by a
signed Duistermaat-Heckman function.

Lattice point counts are computed by two independent routes, brute
enumeration of a half-shifted arrangement and a character sum over
the vertex covectors, and face counts additionally by a series-level
push-forward of Todd-type factors.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .cyclotomic import (
    CyclotomicNumber,
    LaurentSeries,
    exp_series,
    root_of_unity,
    todd_factor_series,
)
from .errors import (
    FaceNotInFan,
    InvalidFan,
    NonGenericVector,
    PointOnWall,
    PoleResidueNonzero,
    RankMismatch,
)
from .facering import SupportClass, face_class, p_star
from .fans import MultiFan, is_complete, sample_generic_vector
from .lattices import dot


class MultiPolytope:
    """Support numbers over a complete multi-fan, cut down to a face.

    With face K the object models the slice of the wall arrangement
    inside the affine subspace A_K = {u : <u, v_j> = d_j for j in K};
    the default K = () is the full polytope.  Vertices are indexed by
    the top cones containing K.
    """

    __slots__ = ("fan", "support", "face")

    def __init__(self, fan: MultiFan, support, face=()):
        if not isinstance(support, SupportClass):
            support = SupportClass(support)
        if len(support.values) != fan.n_rays:
            raise RankMismatch("one support value per ray required")
        face = tuple(sorted(int(i) for i in face))
        if not fan.is_face(face):
            raise FaceNotInFan(f"{face} is not a face of the fan")
        if not is_complete(fan):
            raise InvalidFan("multi-polytopes require a complete multi-fan")
        self.fan = fan
        self.support = support
        self.face = face

    def top_cones(self) -> list[tuple[int, ...]]:
        return self.fan.cones_containing(self.face)

    @property
    def vertices(self) -> dict:
        """Covectors u_I with <u_I, v_i> = d_i for all i in I."""
        return {
            I: self.support.restrict(self.fan, I) for I in self.top_cones()
        }

    def __repr__(self):
        ds = ",".join(str(d) for d in self.support.values)
        return f"MultiPolytope(d=[{ds}], face={self.face})"


def dh_evaluate(P: MultiPolytope, u, v=None) -> int:
    """Duistermaat-Heckman value at a point off all walls.

    Sum over the top cones I containing the face of (-1)^I w(I) phi_I,
    where phi_I(u) = 1 exactly when u - u_I has positive coordinates
    in the basis u_i^I flipped towards a generic direction v, and the
    sign counts the flips.  The result does not depend on v.
    """
    fan = P.fan
    u = tuple(Fraction(x) for x in u)
    if len(u) != fan.rank:
        raise RankMismatch("point rank mismatch")
    d = P.support.values
    for j in P.face:
        if dot(u, fan.edge(j)) != d[j]:
            raise ValueError(f"point off the face subspace (wall {j})")
    in_face = set(P.face)
    for i in range(fan.n_rays):
        if i not in in_face and dot(u, fan.edge(i)) == d[i]:
            raise PointOnWall(f"point lies on wall {i}")
    if v is None:
        v = sample_generic_vector(fan, random.Random(0xD11))
    total = 0
    for I in P.top_cones():
        duals = fan.dual_basis_of(I)
        flips = 0
        inside = True
        for pos, i in enumerate(I):
            if i in in_face:
                continue
            s = dot(duals[pos], v)
            if s == 0:
                raise NonGenericVector(f"{v} pairs to zero with a covector of {I}")
            lam = dot(u, fan.edge(i)) - d[i]
            if s > 0:
                flips += 1
            else:
                lam = -lam
            if lam < 0:
                inside = False
        if inside:
            total += (-1) ** flips * fan.weight(I)
    return total


def count_bruteforce(P: MultiPolytope) -> int:
    """Lattice point count by direct enumeration.

    Every wall not through the face is pushed out by one half, so no
    lattice point can sit on a shifted wall, and the DH values of the
    shifted arrangement are summed over the integer points of the
    bounding box of the shifted vertices inflated by one.  The count
    is guarded by checking that the outermost shell of the box only
    carries zero values.
    """
    fan = P.fan
    if any(x.denominator != 1 for x in P.support.values):
        raise ValueError("brute-force count needs integer support numbers")
    in_face = set(P.face)
    shifted = SupportClass(
        [
            x if i in in_face else x + Fraction(1, 2)
            for i, x in enumerate(P.support.values)
        ]
    )
    Q = MultiPolytope(fan, shifted, P.face)
    verts = list(Q.vertices.values())
    lo = [math.ceil(min(vt[c] for vt in verts) - 1) for c in range(fan.rank)]
    hi = [math.floor(max(vt[c] for vt in verts) + 1) for c in range(fan.rank)]
    v = sample_generic_vector(fan, random.Random(0xB0C5))
    total = 0
    for point in itertools.product(
        *(range(a, b + 1) for a, b in zip(lo, hi))
    ):
        if any(dot(point, fan.edge(j)) != P.support.values[j] for j in P.face):
            continue
        value = dh_evaluate(Q, point, v)
        if any(x == a or x == b for x, a, b in zip(point, lo, hi)):
            assert value == 0, (point, value)
        total += value
    return total


def _vertex_character_sum(P: MultiPolytope, v) -> CyclotomicNumber:
    """The (I, h) sum whose rational value is the lattice point count.

    Each top cone I containing the face contributes, for every element
    h of its quotient group, the phase at the vertex covector times
    the constant Laurent coefficient of

        exp(t<u_I, v>) prod_{i in I, i not in face} 1/(1 - chi_i(h) e^(-<u_i^I, v> t)).
    """
    fan = P.fan
    in_face = set(P.face)
    terms = fan.rank + 3
    total = CyclotomicNumber.coerce(0)
    for I in P.top_cones():
        duals = fan.dual_basis_of(I)
        pairings = [dot(x, v) for x in duals]
        if any(p == 0 for p in pairings):
            raise NonGenericVector(f"{v} pairs to zero with a covector of {I}")
        d = [P.support.values[i] for i in I]
        a = sum(x * p for x, p in zip(d, pairings))
        group = fan.group_of(I)
        scale = Fraction(fan.weight(I), group.order)
        for _, coords in group:
            phase = root_of_unity(sum(x * c for x, c in zip(d, coords)))
            prod = exp_series(a, terms)
            for pos, i in enumerate(I):
                if i not in in_face:
                    chi = root_of_unity(coords[pos])
                    prod = prod * todd_factor_series(pairings[pos], chi, terms)
            total = total + phase * prod.coefficient(0) * scale
    return total


def count_formula(P: MultiPolytope, v=None) -> int:
    """Lattice point count as a character sum over the vertices.

    Requires integer support numbers but not integrality of the vertex
    covectors themselves: non-integral covectors contribute a nontrivial
    root-of-unity phase per group element.  The grand total is asserted
    to be a rational integer.
    """
    fan = P.fan
    if any(x.denominator != 1 for x in P.support.values):
        raise ValueError("character-sum count needs integer support numbers")
    if v is None:
        v = sample_generic_vector(fan, random.Random(0xC0DE))
    value = _vertex_character_sum(P, v).rational()
    assert value.denominator == 1, value
    return int(value)


def _face_todd_pushforward(P: MultiPolytope, K, v) -> LaurentSeries:
    """Push-forward series of e^xi x_K times the Todd-type factors.

    Per top cone I containing K and group element h the integrand is

        exp(t<u_I, v>) * t^|K| prod_{i in K} c_i
            * prod_{i in I minus K} c_i t / (1 - chi_i(h) e^(-c_i t))
            / (t^n prod_{i in I} c_i),       c_i = <u_i^I, v>.

    Returned on the window [-n, 0]; all negative powers cancel over a
    complete multi-fan and the constant term is the face count.
    """
    fan = P.fan
    n = fan.rank
    in_K = set(K)
    terms = n + 3
    total = LaurentSeries.zero(-n, 0)
    for I in fan.cones_containing(K):
        duals = fan.dual_basis_of(I)
        pairings = [dot(x, v) for x in duals]
        if any(p == 0 for p in pairings):
            raise NonGenericVector(f"{v} pairs to zero with a covector of {I}")
        a = sum(P.support.values[i] * p for i, p in zip(I, pairings))
        group = fan.group_of(I)
        scale = Fraction(fan.weight(I), group.order)
        for pos, i in enumerate(I):
            if i in in_K:
                scale *= pairings[pos]
            scale /= pairings[pos]
        for _, coords in group:
            prod = exp_series(a, terms)
            for pos, i in enumerate(I):
                if i in in_K:
                    continue
                fac = todd_factor_series(pairings[pos], root_of_unity(coords[pos]), terms)
                fac = LaurentSeries(
                    fac.low + 1, [pairings[pos] * c for c in fac.coeffs]
                )
                prod = prod * fac
            shifted = LaurentSeries(prod.low + len(K) - n, prod.coeffs)
            total = total + shifted.scale(scale)
    return total


def _count_face_pushforward(P: MultiPolytope, K) -> int:
    """Face count through the push-forward route, sampled twice."""
    fan = P.fan
    rng = random.Random(0xFACE)
    v1 = sample_generic_vector(fan, rng)
    v2 = sample_generic_vector(fan, rng)
    while v2 == v1:
        v2 = sample_generic_vector(fan, rng)
    values = []
    for v in (v1, v2):
        series = _face_todd_pushforward(P, K, v)
        for m in range(-fan.rank, 0):
            if series.coefficient(m) != 0:
                raise PoleResidueNonzero(f"negative power t^{m} survives along {v}")
        values.append(series.coefficient(0).rational())
    assert values[0] == values[1], (values, v1, v2)
    assert values[0].denominator == 1, values[0]
    return int(values[0])


def count_face(P: MultiPolytope, K) -> int:
    """Number of lattice points on the face of the polytope cut by K.

    Computed as the vertex character sum of the face polytope; for
    integral (T-Cartier) supports the same number is recomputed as the
    constant push-forward coefficient of the face class times the
    Todd-type factor series and the two routes are cross-checked.
    """
    fan = P.fan
    if P.face:
        raise FaceNotInFan("face counts start from the full polytope")
    K = tuple(sorted(int(i) for i in K))
    if not fan.is_face(K):
        raise FaceNotInFan(f"{K} is not a face of the fan")
    count = count_formula(MultiPolytope(fan, P.support, K))
    if P.support.is_T_Cartier(fan):
        check = _count_face_pushforward(P, K)
        assert check == count, (check, count)
    return count


def volume(P: MultiPolytope, K=()) -> Fraction:
    """Volume of the face polytope, normalized to its affine lattice.

    Equals the order of the quotient group of the face times the
    constant push-forward coefficient of e^xi x_K.  For K = () this is
    the Duistermaat-Heckman integral of the full polytope; it scales
    with homogeneity degree n - |K| under dilation of the supports.
    """
    fan = P.fan
    if P.face:
        raise FaceNotInFan("volumes are taken from the full polytope")
    K = tuple(sorted(int(i) for i in K))
    if not fan.is_face(K):
        raise FaceNotInFan(f"{K} is not a face of the fan")
    order = fan.group_of(K).order
    return order * p_star(fan, face_class(fan, K), support=P.support)
