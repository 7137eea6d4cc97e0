"""Equivariant classes on a multi-fan and their push-forward.

Classes live in the face ring: polynomials in one generator x_i per
ray, modulo the relations x_S = 0 whenever the index set S is not a
face.  Restriction to a top cone I sends x_i to the dual covector
u_i^I for i in I and to zero otherwise; the push-forward to a point is
computed by the fixed-point sum after substituting u -> t<u, v> for a
generic vector v.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import LaurentSeries, exp_series
from .errors import NonGenericVector, PoleResidueNonzero, RankMismatch
from .fans import MultiFan, sample_generic_vector
from .lattices import QVec, dot, rref


class EquivariantClass:
    """Polynomial in the ray classes with rational coefficients.

    Monomials are keyed by exponent tuples (one slot per ray); any
    monomial whose support is not a face of the fan is dropped.
    """

    __slots__ = ("fan", "terms")

    def __init__(self, fan: MultiFan, terms):
        self.fan = fan
        clean: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != fan.n_rays or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent tuple {expo}")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            support = frozenset(i for i, e in enumerate(expo) if e)
            if support not in fan.faces:
                continue
            clean[expo] = clean.get(expo, Fraction(0)) + coeff
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, fan):
        return cls(fan, {})

    @classmethod
    def constant(cls, fan, value):
        return cls(fan, {(0,) * fan.n_rays: Fraction(value)})

    def _coerce(self, other):
        if isinstance(other, EquivariantClass):
            if other.fan is not self.fan:
                raise ValueError("classes live on different fans")
            return other
        return EquivariantClass.constant(self.fan, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return EquivariantClass(self.fan, out)

    __radd__ = __add__

    def __neg__(self):
        return EquivariantClass(self.fan, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if not isinstance(other, EquivariantClass):
            return EquivariantClass(
                self.fan, {e: c * Fraction(other) for e, c in self.terms.items()}
            )
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return EquivariantClass(self.fan, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EquivariantClass):
            return NotImplemented
        return self.fan is other.fan and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_degree(self) -> int | None:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self):
        if not self.terms:
            return "EquivariantClass(0)"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}"
                for i, k in enumerate(e)
                if k
            )
            bits.append(f"{c}*{mono}" if mono else f"{c}")
        return "EquivariantClass(" + " + ".join(bits) + ")"


def ray_class(fan: MultiFan, i: int) -> EquivariantClass:
    """The degree-one class attached to ray i."""
    expo = tuple(1 if j == i else 0 for j in range(fan.n_rays))
    return EquivariantClass(fan, {expo: Fraction(1)})


def face_class(fan: MultiFan, J) -> EquivariantClass:
    """Product of the ray classes over the face J."""
    J = set(J)
    expo = tuple(1 if j in J else 0 for j in range(fan.n_rays))
    return EquivariantClass(fan, {expo: Fraction(1)})


def embed_weight(fan: MultiFan, u) -> EquivariantClass:
    """Image of a lattice weight u: the sum of <u, v_i> x_i.

    Restricting to any top cone returns u itself, so these classes span
    the image of the polynomial ring of the ambient torus.
    """
    if len(u) != fan.rank:
        raise RankMismatch("weight rank mismatch")
    terms = {}
    for i in range(fan.n_rays):
        c = dot(u, fan.edge(i))
        if c:
            expo = tuple(1 if j == i else 0 for j in range(fan.n_rays))
            terms[expo] = c
    return EquivariantClass(fan, terms)


@dataclass(frozen=True)
class SupportClass:
    """Support parameters: one rational number per ray.

    The pair (fan, support) plays the role of a polytope with a facet
    at lattice distance d_i along each edge; the attached degree-one
    class is the sum of d_i x_i.
    """

    values: tuple[Fraction, ...]

    def __init__(self, values):
        object.__setattr__(
            self, "values", tuple(Fraction(x) for x in values)
        )

    def to_class(self, fan: MultiFan) -> EquivariantClass:
        if len(self.values) != fan.n_rays:
            raise RankMismatch("one support value per ray required")
        terms = {}
        for i, d in enumerate(self.values):
            if d:
                expo = tuple(1 if j == i else 0 for j in range(fan.n_rays))
                terms[expo] = d
        return EquivariantClass(fan, terms)

    def restrict(self, fan: MultiFan, I) -> QVec:
        """Covector u_I with <u_I, v_i> = d_i for every i in I."""
        I = tuple(sorted(I))
        duals = fan.dual_basis_of(I)
        n = fan.rank
        return tuple(
            sum(self.values[i] * duals[pos][c] for pos, i in enumerate(I))
            for c in range(n)
        )

    def is_T_Cartier(self, fan: MultiFan) -> bool:
        """True when every restriction is an integral weight."""
        for I in fan.cones:
            if any(x.denominator != 1 for x in self.restrict(fan, I)):
                return False
        return True

    def scale(self, factor) -> "SupportClass":
        return SupportClass([Fraction(factor) * d for d in self.values])


def restrict_eval(fan: MultiFan, cls: EquivariantClass, I, v) -> list[Fraction]:
    """Graded values of the restriction of cls to I at the vector v.

    Entry k is the coefficient of t^k after substituting u -> t<u, v>.
    """
    I = tuple(sorted(I))
    duals = dict(zip(I, fan.dual_basis_of(I)))
    top = max((sum(e) for e in cls.terms), default=0)
    out = [Fraction(0)] * (top + 1)
    for expo, coeff in cls.terms.items():
        val = coeff
        ok = True
        for i, e in enumerate(expo):
            if not e:
                continue
            if i not in duals:
                ok = False
                break
            val *= dot(duals[i], v) ** e
        if ok:
            out[sum(expo)] += val
    return out


def pushforward_eval(
    fan: MultiFan,
    cls: EquivariantClass,
    v,
    support: SupportClass | None = None,
    high: int = 0,
) -> LaurentSeries:
    """Push-forward of e^(support class) * cls evaluated along v.

    Returns the Laurent expansion in t on the window [-rank, high].
    The vector v must be generic; each fixed-point term contributes

        w(I)/|H_I| * exp(t<u_I, v>) * cls|_I(tv) / (t^n * prod <u_i^I, v>).
    """
    n = fan.rank
    terms = high + n + 1
    total = LaurentSeries(-n, [Fraction(0)] * (high + n + 1))
    for I, w in zip(fan.cones, fan.weights):
        duals = fan.dual_basis_of(I)
        pairings = [dot(u, v) for u in duals]
        if any(p == 0 for p in pairings):
            raise NonGenericVector(f"{v} lies on the span of a facet of {I}")
        denom = Fraction(w, fan.group_of(I).order)
        for p in pairings:
            denom /= p
        if support is not None:
            a = dot(support.restrict(fan, I), v)
        else:
            a = Fraction(0)
        expf = exp_series(a, terms)
        poly = restrict_eval(fan, cls, I, v)
        padded = LaurentSeries(
            0, [poly[k] if k < len(poly) else Fraction(0) for k in range(terms)]
        )
        prod = expf * padded
        shifted = LaurentSeries(prod.low - n, prod.coeffs)
        total = total + shifted.scale(denom)
    return total


def p_star(
    fan: MultiFan,
    cls: EquivariantClass,
    support: SupportClass | None = None,
    rng: random.Random | None = None,
) -> Fraction:
    """Degree-zero part of the push-forward of e^(support) * cls.

    Evaluated along two independently sampled generic vectors; the two
    values must agree, and all negative powers of t must vanish (they
    do exactly when the multi-fan is complete).
    """
    rng = rng or random.Random(0xF1E1D)
    v1 = sample_generic_vector(fan, rng)
    v2 = sample_generic_vector(fan, rng)
    while v2 == v1:
        v2 = sample_generic_vector(fan, rng)
    values = []
    for v in (v1, v2):
        series = pushforward_eval(fan, cls, v, support=support, high=0)
        for k in range(-fan.rank, 0):
            if series.coefficient(k) != 0:
                raise PoleResidueNonzero(
                    f"negative power t^{k} survives along {v}"
                )
        values.append(series.rational_coefficient(0))
    assert values[0] == values[1], (values, v1, v2)
    return values[0]


# ---------------------------------------------------------------------------
# the cohomology quotient in a fixed degree


def graded_monomials(fan: MultiFan, k: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree k whose support is a face."""
    if k == 0:
        return [(0,) * fan.n_rays]
    out = []
    for J in sorted(tuple(sorted(f)) for f in fan.faces if 0 < len(f) <= k):
        for split in itertools.combinations(range(k - 1), len(J) - 1):
            parts = []
            prev = -1
            for s in list(split) + [k - 1]:
                parts.append(s - prev)
                prev = s
            expo = [0] * fan.n_rays
            for idx, e in zip(J, parts):
                expo[idx] = e
            out.append(tuple(expo))
    return sorted(set(out))


class CohomologyQuotient:
    """Degree-k part of the face ring modulo the ambient weight ideal.

    The quotient is the ordinary degree-2k cohomology for complete
    simplicial fans; reduce() maps a class to canonical coset
    coordinates over the non-pivot monomials.
    """

    def __init__(self, fan: MultiFan, k: int):
        self.fan = fan
        self.k = k
        self.monomials = graded_monomials(fan, k)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        rows = []
        if k > 0:
            basis = [
                tuple(1 if j == b else 0 for j in range(fan.rank))
                for b in range(fan.rank)
            ]
            for b in basis:
                theta = embed_weight(fan, b)
                for m in graded_monomials(fan, k - 1):
                    rel = theta * EquivariantClass(fan, {m: Fraction(1)})
                    rows.append(self._vector(rel))
        reduced, pivots = rref(rows) if rows else ((), ())
        self.rows = [r for r in reduced if any(x != 0 for x in r)]
        self.pivots = list(pivots)
        self.free = [
            i for i in range(len(self.monomials)) if i not in set(self.pivots)
        ]

    def _vector(self, cls: EquivariantClass):
        vec = [Fraction(0)] * len(self.monomials)
        for e, c in cls.terms.items():
            if sum(e) != self.k:
                raise ValueError("class is not homogeneous of the right degree")
            vec[self.index[e]] += c
        return vec

    @property
    def dimension(self) -> int:
        return len(self.free)

    def basis_classes(self) -> list[EquivariantClass]:
        return [
            EquivariantClass(self.fan, {self.monomials[i]: Fraction(1)})
            for i in self.free
        ]

    def reduce(self, cls: EquivariantClass) -> tuple[Fraction, ...]:
        """Coset coordinates of cls over the non-pivot monomials."""
        vec = self._vector(cls)
        for row, p in zip(self.rows, self.pivots):
            if vec[p]:
                f = vec[p] / row[p]
                vec = [a - f * b for a, b in zip(vec, row)]
        for p in self.pivots:
            assert vec[p] == 0
        return tuple(vec[i] for i in self.free)
