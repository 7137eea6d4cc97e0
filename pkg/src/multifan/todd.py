"""Todd series push-forwards and cone decompositions of classes.

Three groups of tools live here.  First, the push-forward of the
orbifold Todd series of a complete multi-fan, which is rigid: after
the one-variable substitution all nonconstant Laurent coefficients
cancel and the constant is the degree of the fan.  Expanding the same
sum against a dilated support class gives the polynomial coefficients
of the lattice point count.

Second, the decomposition machinery: every cohomology class of degree
2k decomposes over the k-dimensional cones with rational coefficients
mu(x, J) that depend on a generic middle-dimensional plane E.  The
coefficient is a ratio of wedge pairings against the Pluecker vector
of E, and equally a ratio of values on the line where E meets the
cone; both readings are computed and compared on every call.

Third, Todd series of single cones and their additivity under star
subdivisions, checked coefficient by coefficient on a Laurent window.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import (
    CyclotomicNumber,
    LaurentSeries,
    root_of_unity,
    todd_factor_series,
)
from .errors import (
    InvalidFan,
    NonGenericPlane,
    NonGenericVector,
    NotTCartier,
    RankMismatch,
    RigidityViolation,
)
from .facering import (
    CohomologyQuotient,
    EquivariantClass,
    SupportClass,
    embed_weight,
    face_class,
    p_star,
    restrict_eval,
)
from .fans import MultiFan, is_complete, sample_generic_vector
from .lattices import (
    Vec,
    annihilator_basis,
    determinant,
    dot,
    dual_basis,
    plane_line_intersection,
    quotient_group,
    rank,
)

# ---------------------------------------------------------------------------
# wedge algebra: exterior powers of the covector space, Pluecker style


def ascending_subsets(n: int, m: int) -> list[tuple[int, ...]]:
    """Index order shared by all wedge coordinate vectors."""
    return list(itertools.combinations(range(n), m))


def wedge_coordinates(rows, n: int) -> tuple[Fraction, ...]:
    """Coordinates of row_1 ^ ... ^ row_m: the maximal minors in
    ascending column order.  The empty wedge is the scalar (1,)."""
    rows = [tuple(r) for r in rows]
    m = len(rows)
    out = []
    for S in ascending_subsets(n, m):
        out.append(determinant([[Fraction(r[c]) for c in S] for r in rows]))
    return tuple(out)


def wedge_pair(a, b) -> Fraction:
    """Pairing of a covector wedge with a vector wedge.

    Both sides are coordinate vectors over the ascending subsets; the
    pairing of pure wedges is det(<u_i, w_j>), which expands to the sum
    of products of matching minors.
    """
    if len(a) != len(b):
        raise RankMismatch("wedge degree mismatch")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class GenericPlane:
    """A rational (n-k+1)-plane E in generic position for a fan.

    `basis` spans E; `wedge` is the Pluecker coordinate vector of the
    basis; `certificates` names the genericity checks the plane passed
    when it was sampled, and `rejected` counts the candidates discarded
    before this one was found.
    """

    k: int
    basis: tuple[Vec, ...]
    wedge: tuple[Fraction, ...]
    certificates: tuple[str, ...] = ()
    rejected: int = 0


def face_wedge(fan: MultiFan, J, i: int, omega_sign: int = 1):
    """Wedge of the restricted ray covector x_i with the face wedge of J.

    Computed as u_i^I ^ omega_J from every top cone I containing J and
    asserted independent of I.  The result is zero unless i lies in J:
    for i outside J the covector u_i^I annihilates the whole span of J
    and is swallowed by omega_J.  With omega_sign = -1 the orientation
    of omega_J is reversed (a global sign on all coordinates).
    """
    J = tuple(sorted(J))
    n = fan.rank
    m = n - len(J) + 1
    if J:
        omega = [list(r) for r in annihilator_basis([fan.edge(j) for j in J]).vectors]
    else:
        raise RankMismatch("face wedges need a nonempty face")
    if omega_sign < 0 and omega:
        omega[0] = [-x for x in omega[0]]
    coords = None
    for I in fan.cones_containing(J):
        if i in I:
            u = fan.dual_basis_of(I)[I.index(i)]
            w = wedge_coordinates([u] + omega, n)
        else:
            w = tuple([Fraction(0)] * math.comb(n, m))
        assert coords is None or coords == w, (J, i, I)
        coords = w
    return coords


# ---------------------------------------------------------------------------
# generic plane sampling with explicit certificates


def _plane_certificates(fan: MultiFan, k: int, basis, wedge):
    """Run all genericity checks; return their names, or None on failure."""
    for J in fan.faces_of_card(k):
        edges = [fan.edge(j) for j in J]
        line = plane_line_intersection(basis, edges)
        I0 = fan.cones_containing(J)[0]
        duals = fan.dual_basis_of(I0)
        for pos, i in enumerate(I0):
            if i in J and dot(duals[pos], line) == 0:
                return None
        for j in J:
            if wedge_pair(face_wedge(fan, J, j), wedge) == 0:
                return None
    # the face covector spaces must still surject onto the dual of E
    for card in range(k):
        for K in fan.faces_of_card(card):
            if K:
                rows = annihilator_basis([fan.edge(j) for j in K]).vectors
            else:
                rows = [tuple(1 if c == b else 0 for c in range(fan.rank)) for b in range(fan.rank)]
            mat = [[dot(r, w) for w in basis] for r in rows]
            if rank(mat) < len(basis):
                return None
    return (
        "rank-one-face-intersections",
        "nonzero-line-pairings",
        "nonzero-wedge-pairings",
        "face-covector-surjectivity",
    )


def sample_generic_plane(
    fan: MultiFan, k: int, rng: random.Random | None = None, bound: int = 20
) -> GenericPlane:
    """Rejection-sample an integer basis of a generic (n-k+1)-plane.

    Genericity fails only on finitely many hypersurfaces, so sampling
    integer vectors in [-bound, bound] terminates quickly.  The plane
    records which certificates were established.
    """
    if not 1 <= k <= fan.rank:
        raise RankMismatch("plane parameter k must be between 1 and the rank")
    rng = rng or random.Random(0x9E0)
    n = fan.rank
    m = n - k + 1
    rejected = 0
    while True:
        basis = tuple(
            tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(m)
        )
        if rank(basis) < m:
            rejected += 1
            continue
        wedge = wedge_coordinates(basis, n)
        try:
            certs = _plane_certificates(fan, k, basis, wedge)
        except NonGenericPlane:
            rejected += 1
            continue
        if certs is None:
            rejected += 1
            continue
        return GenericPlane(k, basis, wedge, certs, rejected)


# ---------------------------------------------------------------------------
# the decomposition coefficients


def morelli_coefficient(
    fan: MultiFan,
    cls: EquivariantClass,
    J,
    plane: GenericPlane,
    omega_sign: int = 1,
    line_sign: int = 1,
) -> Fraction:
    """Coefficient mu(x, J) of the face J in the decomposition of x.

    Two readings are computed and must agree exactly.  The wedge path
    pairs f^J(x_i) = u_i^I ^ omega_J against the Pluecker vector of the
    plane and forms prod <f^J(x_i), w_E>^a_i / prod_j <f^J_j, w_E>.
    The line path evaluates the restriction of x on the generator of
    E meet span(J) and divides by the product of the covector values
    on that generator.  Flipping the orientation of omega_J or the
    sign of the generator changes numerator and denominator by the
    same factor, so the ratio is unchanged.
    """
    J = tuple(sorted(int(j) for j in J))
    k = len(J)
    if cls.homogeneous_degree() != k or k == 0:
        raise RankMismatch("class degree must match the nonzero face size")
    rays = sorted(
        {i for expo in cls.terms for i, e in enumerate(expo) if e} | set(J)
    )
    pairs = {
        i: wedge_pair(face_wedge(fan, J, i, omega_sign), plane.wedge)
        for i in rays
    }
    den_a = Fraction(1)
    for j in J:
        den_a *= pairs[j]
    if den_a == 0:
        raise NonGenericPlane(f"plane pairs to zero on the face {J}")
    num_a = Fraction(0)
    for expo, coeff in cls.terms.items():
        val = coeff
        for i, e in enumerate(expo):
            if e:
                val *= pairs[i] ** e
        num_a += val
    value = num_a / den_a

    line = plane_line_intersection(plane.basis, [fan.edge(j) for j in J])
    if line_sign < 0:
        line = tuple(-x for x in line)
    num_b = None
    den_b = None
    for I in fan.cones_containing(J):
        duals = fan.dual_basis_of(I)
        d = Fraction(1)
        for pos, i in enumerate(I):
            if i in J:
                d *= dot(duals[pos], line)
        val = restrict_eval(fan, cls, I, line)[k]
        assert num_b is None or (num_b, den_b) == (val, d), (J, I)
        num_b, den_b = val, d
    if den_b == 0:
        raise NonGenericPlane(f"intersection line is orthogonal to a covector of {J}")
    assert value == num_b / den_b, (value, num_b / den_b, J)
    return value


def todd_face_coefficient(fan: MultiFan, J, plane: GenericPlane | None = None) -> Fraction:
    """Todd weight mu_k(J) of a face against a generic plane.

    The constant Laurent coefficient of the product over j in J of
    1/(1 - chi(u_j^J, h) e^(-c_j t)), averaged over the quotient group
    of the face.  The scalars c_j can be read from either side of the
    wedge/line correspondence; both give the same value because the
    extracted coefficient has homogeneity degree zero.  The empty face
    has weight 1 and needs no plane.
    """
    J = tuple(sorted(int(j) for j in J))
    if not fan.is_face(J):
        raise RankMismatch(f"{J} is not a face of the fan")
    if not J:
        return Fraction(1)
    if plane is None:
        raise NonGenericPlane("nonempty faces need a generic plane")
    cs_wedge = [wedge_pair(face_wedge(fan, J, j), plane.wedge) for j in J]
    line = plane_line_intersection(plane.basis, [fan.edge(j) for j in J])
    I0 = fan.cones_containing(J)[0]
    duals = dict(zip(I0, fan.dual_basis_of(I0)))
    cs_line = [dot(duals[j], line) for j in J]
    values = []
    for cs in (cs_wedge, cs_line):
        if any(c == 0 for c in cs):
            raise NonGenericPlane(f"plane degenerates on the face {J}")
        values.append(_face_todd_constant(fan, J, cs))
    assert values[0] == values[1], (J, values)
    return values[0]


def _face_todd_constant(fan: MultiFan, J, cs) -> Fraction:
    terms = fan.rank + 3
    group = fan.group_of(J)
    total = CyclotomicNumber.coerce(0)
    for _, coords in group:
        prod = LaurentSeries.constant(1, terms - 1)
        for pos in range(len(J)):
            prod = prod * todd_factor_series(cs[pos], root_of_unity(coords[pos]), terms)
        total = total + prod.coefficient(0)
    return (total * Fraction(1, group.order)).rational()


# ---------------------------------------------------------------------------
# push-forward of the Todd series; rigidity; lattice point coefficients


def todd_pushforward(fan: MultiFan, v, high: int | None = None) -> LaurentSeries:
    """Push-forward of the orbifold Todd series along a generic vector.

    The sum over top cones I and group elements h of
    w(I)/|H_I| prod_{i in I} 1/(1 - chi_I(u_i^I, h) e^(-<u_i^I, v> t)),
    expanded on the window [-n, high].  For a complete multi-fan every
    nonconstant coefficient in the window must cancel; a survivor
    raises RigidityViolation.  The constant term is the degree.
    """
    n = fan.rank
    if high is None:
        high = n
    terms = high + n + 1
    total = LaurentSeries.zero(-n, high)
    for I, w in zip(fan.cones, fan.weights):
        duals = fan.dual_basis_of(I)
        pairings = [dot(u, v) for u in duals]
        if any(p == 0 for p in pairings):
            raise NonGenericVector(f"{v} pairs to zero with a covector of {I}")
        group = fan.group_of(I)
        scale = Fraction(w, group.order)
        for _, coords in group:
            prod = LaurentSeries.constant(1, terms - 1)
            for pos in range(len(I)):
                prod = prod * todd_factor_series(
                    pairings[pos], root_of_unity(coords[pos]), terms
                )
            total = total + prod.scale(scale)
    for m in range(-n, high + 1):
        if m != 0 and total.coefficient(m) != 0:
            value = total.coefficient(m)
            shown = value.rational() if value.is_rational() else value
            raise RigidityViolation(f"nonzero coefficient {shown} at t^{m}")
    return total


def todd_genus(fan: MultiFan, rng: random.Random | None = None) -> Fraction:
    """Constant term of the Todd push-forward (the degree of the fan)."""
    rng = rng or random.Random(0x7D4)
    v = sample_generic_vector(fan, rng)
    return todd_pushforward(fan, v).coefficient(0).rational()


def ehrhart_coefficients(fan: MultiFan, support) -> tuple[Fraction, ...]:
    """Coefficients a_0 .. a_n with #P(nu * xi) = sum_k a_k nu^(n-k).

    Expands the push-forward of e^(nu xi) times the Todd factors: the
    constant Laurent coefficient per (I, h) is a polynomial in nu whose
    nu^j term is a_I^j / j! times the t^(-j) coefficient of the Todd
    factor product.  Requires an integral support class; a restriction
    with a fractional vertex would produce dilation-dependent phases
    and the count would not be a polynomial.
    """
    if not isinstance(support, SupportClass):
        support = SupportClass(support)
    if not is_complete(fan):
        raise InvalidFan("lattice point polynomials need a complete multi-fan")
    if not support.is_T_Cartier(fan):
        raise NotTCartier("support class has a fractional vertex covector")
    n = fan.rank
    terms = n + 3
    v = sample_generic_vector(fan, random.Random(0xEA7))
    poly = [CyclotomicNumber.coerce(0) for _ in range(n + 1)]
    for I, w in zip(fan.cones, fan.weights):
        duals = fan.dual_basis_of(I)
        pairings = [dot(u, v) for u in duals]
        if any(p == 0 for p in pairings):
            raise NonGenericVector(f"{v} pairs to zero with a covector of {I}")
        a = dot(support.restrict(fan, I), v)
        group = fan.group_of(I)
        scale = Fraction(w, group.order)
        for _, coords in group:
            prod = LaurentSeries.constant(1, terms - 1)
            for pos in range(len(I)):
                prod = prod * todd_factor_series(
                    pairings[pos], root_of_unity(coords[pos]), terms
                )
            pw = Fraction(1)
            for j in range(n + 1):
                poly[j] = poly[j] + prod.coefficient(-j) * (scale * pw)
                pw = pw * a / (j + 1)
    return tuple(poly[n - k].rational() for k in range(n + 1))


# ---------------------------------------------------------------------------
# residuals of the decomposition statements


def face_decomposition_residual(
    fan: MultiFan, cls: EquivariantClass, support, plane: GenericPlane
) -> Fraction:
    """p_*(e^xi x) minus its decomposition over the faces of size k.

    Exactly zero for every complete multi-fan, homogeneous class and
    generic plane.
    """
    k = cls.homogeneous_degree()
    if not k or not 1 <= k <= fan.rank:
        raise RankMismatch("class must be homogeneous of degree 1..rank")
    if not isinstance(support, SupportClass):
        support = SupportClass(support)
    lhs = p_star(fan, cls, support=support)
    rhs = Fraction(0)
    for J in fan.faces_of_card(k):
        mu = morelli_coefficient(fan, cls, J, plane)
        if mu:
            rhs += mu * p_star(fan, face_class(fan, J), support=support)
    return lhs - rhs


def cohomology_decomposition_residual(
    fan: MultiFan, cls: EquivariantClass, plane: GenericPlane
) -> tuple[Fraction, ...]:
    """Coordinates of x - sum_J mu(x, J) x_J in the cohomology quotient.

    Zero for fans of varieties whose rational cohomology is generated
    in degree two (for example smooth projective toric surfaces).
    """
    k = cls.homogeneous_degree()
    if not k or not 1 <= k <= fan.rank:
        raise RankMismatch("class must be homogeneous of degree 1..rank")
    quotient = CohomologyQuotient(fan, k)
    residual = list(quotient.reduce(cls))
    for J in fan.faces_of_card(k):
        mu = morelli_coefficient(fan, cls, J, plane)
        if mu:
            reduced = quotient.reduce(face_class(fan, J))
            residual = [r - mu * x for r, x in zip(residual, reduced)]
    return tuple(residual)


def spanning_classes(fan: MultiFan, k: int) -> list[EquivariantClass]:
    """Products of k1 lattice weights with a face class of size k - k1.

    Ranging over 0 <= k1 < k, all faces of that size and all monomials
    in the standard basis covectors, these span the degree-2k part of
    the face ring.
    """
    n = fan.rank
    out = []
    for k1 in range(k):
        basis_weights = [
            embed_weight(fan, tuple(1 if c == b else 0 for c in range(n)))
            for b in range(n)
        ]
        for J in fan.faces_of_card(k - k1):
            for combo in itertools.combinations_with_replacement(range(n), k1):
                cls = face_class(fan, J)
                for b in combo:
                    cls = cls * basis_weights[b]
                out.append(cls)
    return out


# ---------------------------------------------------------------------------
# single cones and additivity under subdivision


def cone_todd_series(rays, v, high: int | None = None) -> LaurentSeries:
    """Todd series of the single cone spanned by n independent edges.

    (1/|H|) sum_h prod_i 1/(1 - chi(u_i, h) e^(-<u_i, v> t)) on the
    window [-n, high], where H is the quotient of the saturated span
    by the integer span of the edges.
    """
    rays = [tuple(int(x) for x in r) for r in rays]
    n = len(rays)
    if high is None:
        high = n
    duals = dual_basis(rays)
    pairings = [dot(u, v) for u in duals]
    if any(p == 0 for p in pairings):
        raise NonGenericVector(f"{v} pairs to zero with a covector of the cone")
    group = quotient_group(rays)
    terms = high + n + 1
    total = LaurentSeries.zero(-n, high)
    for _, coords in group:
        prod = LaurentSeries.constant(1, terms - 1)
        for pos in range(n):
            prod = prod * todd_factor_series(
                pairings[pos], root_of_unity(coords[pos]), terms
            )
        total = total + prod.scale(Fraction(1, group.order))
    return total


def check_subdivision_cover(parent_rays, child_cones) -> None:
    """Necessary checks that the child cones tile the parent cone.

    Every child edge must lie inside the parent cone, and the volumes of
    the cross-section simplices cut out by a covector that is 1 on a
    transversal hyperplane must add up to the parent's cross-section
    volume.  Both conditions are necessary for an exact cover; raises
    InvalidFan on failure.
    """
    parent = [tuple(r) for r in parent_rays]
    duals = dual_basis(parent)
    level = [sum(col) for col in zip(*duals)]

    def section(cone):
        rows = []
        for r in cone:
            h = dot(level, r)
            if h <= 0:
                raise InvalidFan(f"edge {r} misses the cross-section of the parent")
            rows.append(tuple(Fraction(x, 1) / h for x in r))
        return abs(determinant(rows))

    total = Fraction(0)
    for child in child_cones:
        child = [tuple(r) for r in child]
        if len(child) != len(parent):
            raise InvalidFan("child cone has the wrong number of edges")
        if determinant(child) == 0:
            raise InvalidFan(f"child cone {child} is degenerate")
        for r in child:
            if any(dot(u, r) < 0 for u in duals):
                raise InvalidFan(f"edge {r} lies outside the parent cone")
        total += section(child)
    if total != section(parent):
        raise InvalidFan("child cross-sections do not add up to the parent's")


def subdivision_residual(parent_rays, child_cones, v, high: int | None = None) -> LaurentSeries:
    """Todd series of a subdivision minus the series of the parent cone.

    The Todd series is additive under simplicial subdivisions, so each
    coefficient of the residual on [-n, high] must vanish; callers
    check `is_zero_on`.  The trivial subdivision residual is zero by
    construction.
    """
    n = len(parent_rays)
    if high is None:
        high = n
    total = cone_todd_series(parent_rays, v, high).scale(-1)
    for child in child_cones:
        total = total + cone_todd_series(child, v, high)
    return total
