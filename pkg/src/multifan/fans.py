"""Simplicial multi-fans: weighted collections of simplicial cones.

A multi-fan is a simplicial complex of ray index sets together with a
nonzero integer weight on each top-dimensional cone.  Cones may overlap
and ray vectors may repeat, so the data is strictly more general than a
fan.  Each ray i carries a primitive vector and a positive edge
multiplier k_i; the prescribed edge vector is v_i = k_i * (primitive
ray).
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DependentRays,
    EmptyFan,
    FaceNotInFan,
    InvalidFan,
    NonGenericVector,
    RankMismatch,
    RayNotInterior,
)
from .lattices import (
    FiniteAbelianGroup,
    Vec,
    determinant,
    dot,
    dual_basis,
    primitive_vector,
    quotient_group,
    scale_to_integer,
    smith_normal_form,
    solve_in_span,
)


class MultiFan:
    """Immutable simplicial multi-fan of full-dimensional cones."""

    def __init__(self, rank, rays, cones, weights=None, multipliers=None):
        rank = int(rank)
        if rank < 1:
            raise RankMismatch("rank must be at least 1")
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        for r in rays:
            if len(r) != rank:
                raise RankMismatch(f"ray {r} does not have rank {rank}")
            if all(x == 0 for x in r):
                raise InvalidFan("zero ray")
            if primitive_vector(r) != r:
                raise InvalidFan(f"ray {r} is not primitive")
        if multipliers is None:
            multipliers = (1,) * len(rays)
        multipliers = tuple(int(m) for m in multipliers)
        if len(multipliers) != len(rays) or any(m < 1 for m in multipliers):
            raise InvalidFan("edge multipliers must be positive, one per ray")
        cones = [tuple(sorted(int(i) for i in c)) for c in cones]
        if not cones:
            raise EmptyFan("a multi-fan needs at least one top cone")
        if weights is None:
            weights = (1,) * len(cones)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(cones):
            raise InvalidFan("one weight per cone required")
        if any(w == 0 for w in weights):
            raise InvalidFan("weights must be nonzero")
        seen = set()
        for c in cones:
            if len(c) != rank or len(set(c)) != rank:
                raise InvalidFan(f"cone {c} must have {rank} distinct rays")
            if any(i < 0 or i >= len(rays) for i in c):
                raise InvalidFan(f"cone {c} uses an unknown ray index")
            if c in seen:
                raise InvalidFan(f"cone {c} listed twice")
            seen.add(c)
        order = sorted(range(len(cones)), key=lambda i: cones[i])
        self.rank = rank
        self.rays = rays
        self.multipliers = multipliers
        self.cones = tuple(cones[i] for i in order)
        self.weights = tuple(weights[i] for i in order)
        used = {i for c in self.cones for i in c}
        if used != set(range(len(rays))):
            raise InvalidFan("every ray must appear in at least one top cone")
        for c in self.cones:
            if determinant([self.edge(i) for i in c]) == 0:
                raise DependentRays(f"cone {c} spans less than the full rank")
        self._cache: dict = {}

    # -- basic structure ----------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def edge(self, i: int) -> Vec:
        return tuple(self.multipliers[i] * x for x in self.rays[i])

    def weight(self, cone) -> int:
        key = tuple(sorted(cone))
        try:
            return self.weights[self.cones.index(key)]
        except ValueError:
            raise FaceNotInFan(f"{key} is not a top cone") from None

    @property
    def faces(self) -> frozenset:
        if "faces" not in self._cache:
            fs = {frozenset()}
            for c in self.cones:
                for k in range(1, self.rank + 1):
                    fs.update(map(frozenset, itertools.combinations(c, k)))
            self._cache["faces"] = frozenset(fs)
        return self._cache["faces"]

    def faces_of_card(self, k: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == k)

    def is_face(self, J) -> bool:
        return frozenset(J) in self.faces

    def cones_containing(self, K) -> list[tuple[int, ...]]:
        K = set(K)
        return [c for c in self.cones if K.issubset(c)]

    def dual_basis_of(self, I) -> tuple:
        """Covectors u_i^I dual to the prescribed edges of a top cone."""
        key = tuple(sorted(I))
        cache = self._cache.setdefault("dual", {})
        if key not in cache:
            if key not in self.cones:
                raise FaceNotInFan(f"{key} is not a top cone")
            cache[key] = dual_basis([self.edge(i) for i in key])
        return cache[key]

    def group_of(self, J) -> FiniteAbelianGroup:
        """Quotient H_{J,V} of the face J (trivial group for J = ())."""
        key = tuple(sorted(J))
        cache = self._cache.setdefault("group", {})
        if key not in cache:
            if not self.is_face(key):
                raise FaceNotInFan(f"{key} is not a face")
            cache[key] = quotient_group([self.edge(i) for i in key])
        return cache[key]

    def face_coordinates(self, J, x) -> tuple[Fraction, ...]:
        """Coordinates of x in the edge basis of face J (x must lie in the span)."""
        return solve_in_span([self.edge(j) for j in sorted(J)], x)

    def with_multipliers(self, multipliers) -> "MultiFan":
        return MultiFan(self.rank, self.rays, self.cones, self.weights, multipliers)

    def __repr__(self):
        return (
            f"MultiFan(rank={self.rank}, rays={len(self.rays)}, "
            f"cones={len(self.cones)})"
        )


# ---------------------------------------------------------------------------
# genericity and degree


def is_generic(fan: MultiFan, v) -> bool:
    """True when v avoids the span of every cone of positive codimension."""
    if len(v) != fan.rank:
        raise RankMismatch("vector rank mismatch")
    for I in fan.cones:
        for u in fan.dual_basis_of(I):
            if dot(u, v) == 0:
                return False
    return True


def degree(fan: MultiFan, v) -> int:
    """Weighted number of cones containing the generic vector v."""
    if not is_generic(fan, v):
        raise NonGenericVector(f"{v} lies on a cone span")
    total = 0
    for I, w in zip(fan.cones, fan.weights):
        if all(dot(u, v) > 0 for u in fan.dual_basis_of(I)):
            total += w
    return total


def sample_generic_vector(fan: MultiFan, rng: random.Random) -> Vec:
    """Deterministic rejection sampling of a generic integer vector."""
    bound = 1
    for I in fan.cones:
        for u in fan.dual_basis_of(I):
            for x in u:
                bound = max(bound, abs(x.numerator))
    bound *= 10
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(fan.rank))
        if any(v) and is_generic(fan, v):
            return v


# ---------------------------------------------------------------------------
# exact chamber enumeration (rank <= 3) for pre-completeness


def _facet_normals(fan: MultiFan) -> list[Vec]:
    n = fan.rank
    normals = set()
    if n == 1:
        return [(1,)]
    for I in fan.cones:
        for sub in itertools.combinations(I, n - 1):
            rows = [fan.rays[i] for i in sub]
            if n == 2:
                (a, b) = rows[0]
                normal = (-b, a)
            else:
                (a1, a2, a3), (b1, b2, b3) = rows
                normal = (
                    a2 * b3 - a3 * b2,
                    a3 * b1 - a1 * b3,
                    a1 * b2 - a2 * b1,
                )
            normal = primitive_vector(normal)
            if normal < tuple(-x for x in normal):
                normal = tuple(-x for x in normal)
            normals.add(normal)
    return sorted(normals)


def _line_chamber_points(points: list[Fraction]) -> list[Fraction]:
    if not points:
        return [Fraction(0)]
    pts = sorted(set(points))
    samples = [pts[0] - 1, pts[-1] + 1]
    for a, b in zip(pts, pts[1:]):
        samples.append((a + b) / 2)
    return samples


def _sort_directions(dirs):
    """Sort plane directions counterclockwise starting from (1, 0)."""

    def half(d):
        x, y = d
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def compare(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = a[0] * b[1] - a[1] * b[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(dirs, key=functools.cmp_to_key(compare))


def _affine_chamber_points(lines) -> list[tuple[Fraction, Fraction]]:
    """Sample one interior point per chamber of a 2D line arrangement.

    Lines are (a, b, c) triples meaning a*y + b*z = c with (a, b) != 0.
    Exactness: every chamber of the arrangement receives at least one
    sample; no sample lies on any line.
    """
    cleaned = set()
    for (a, b, c) in lines:
        g = math.gcd(abs(a), abs(b), abs(c))
        if g:
            a, b, c = a // g, b // g, c // g
        if (a, b, c) < (-a, -b, -c):
            a, b, c = -a, -b, -c
        cleaned.add((a, b, c))
    lines = sorted(cleaned)
    if not lines:
        return [(Fraction(0), Fraction(0))]
    all_parallel = all(
        lines[0][0] * b - lines[0][1] * a == 0 for (a, b, _) in lines
    )
    if all_parallel:
        a0, b0 = lines[0][0], lines[0][1]
        norm = Fraction(a0 * a0 + b0 * b0)
        offsets = []
        for (a, b, c) in lines:
            lam = Fraction(a, a0) if a0 else Fraction(b, b0)
            offsets.append(Fraction(c) / lam)
        pts = []
        for t in _line_chamber_points(offsets):
            pts.append((t * a0 / norm, t * b0 / norm))
        return pts
    samples = []
    nlines = len(lines)
    verts: dict[tuple[Fraction, Fraction], None] = {}
    for i in range(nlines):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, nlines):
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            y = Fraction(c1 * b2 - c2 * b1, det)
            z = Fraction(a1 * c2 - a2 * c1, det)
            verts[(y, z)] = None
    for q in verts:
        through = [
            (a, b, c) for (a, b, c) in lines if a * q[0] + b * q[1] == c
        ]
        dirs = set()
        for (a, b, _) in through:
            d = primitive_vector((-b, a))
            dirs.add(d)
            dirs.add((-d[0], -d[1]))
        ordered = _sort_directions(dirs)
        m = len(ordered)
        for idx in range(m):
            d1 = ordered[idx]
            d2 = ordered[(idx + 1) % m]
            step = (Fraction(d1[0] + d2[0]), Fraction(d1[1] + d2[1]))
            if step == (0, 0):
                continue
            delta = Fraction(1)
            for (a, b, c) in lines:
                if a * q[0] + b * q[1] == c:
                    continue
                den = a * step[0] + b * step[1]
                if den == 0:
                    continue
                tcross = (Fraction(c) - (a * q[0] + b * q[1])) / den
                if tcross > 0:
                    delta = min(delta, tcross / 2)
            samples.append((q[0] + delta * step[0], q[1] + delta * step[1]))
    return samples


def chamber_vectors(fan: MultiFan) -> list[Vec]:
    """One generic integer vector per chamber of the facet arrangement.

    Exact for rank <= 3; raises RankMismatch beyond that.
    """
    n = fan.rank
    if n == 1:
        return [(1,), (-1,)]
    if n > 3:
        raise RankMismatch("exact chamber enumeration implemented for rank <= 3")
    normals = _facet_normals(fan)
    out = []
    for s in (1, -1):
        if n == 2:
            points = [
                Fraction(-s * u[0], u[1]) for u in normals if u[1] != 0
            ]
            for y in _line_chamber_points(points):
                out.append(scale_to_integer((Fraction(s), y)))
        else:
            lines = []
            for u in normals:
                if u[1] == 0 and u[2] == 0:
                    continue
                lines.append((u[1], u[2], -s * u[0]))
            for (y, z) in _affine_chamber_points(lines):
                out.append(scale_to_integer((Fraction(s), y, z)))
    # the arrangement contains every facet span, so samples are generic
    for v in out:
        assert is_generic(fan, v), v
    return out


def precompleteness(fan: MultiFan) -> tuple[bool, int | None, str]:
    """(is_precomplete, degree if constant, method used)."""
    if fan.rank <= 3:
        vs = chamber_vectors(fan)
        method = "exact-chambers"
    else:
        rng = random.Random(0x5EED)
        vs = [sample_generic_vector(fan, rng) for _ in range(200)]
        method = "random-200"
    degs = {degree(fan, v) for v in vs}
    if len(degs) == 1:
        return True, degs.pop(), method
    return False, None, method


def is_precomplete(fan: MultiFan) -> bool:
    return precompleteness(fan)[0]


# ---------------------------------------------------------------------------
# projections


@dataclass(frozen=True)
class ProjectedMultiFan:
    """Multi-fan induced on the quotient lattice N / N_K."""

    base: MultiFan
    K: tuple[int, ...]
    fan: MultiFan
    projection: tuple[Vec, ...]  # rows of the projection matrix N -> N^K
    ray_map: dict  # base link ray index -> projected fan ray index

    def project_vector(self, v) -> tuple:
        return tuple(dot(row, v) for row in self.projection)


def project(fan: MultiFan, K) -> ProjectedMultiFan:
    """Projected multi-fan on the link of the face K."""
    K = tuple(sorted(set(int(i) for i in K)))
    if not fan.is_face(K):
        raise FaceNotInFan(f"{K} is not a face")
    n = fan.rank
    k = len(K)
    if k == 0:
        ident = tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        )
        return ProjectedMultiFan(
            fan, K, fan, ident, {i: i for i in range(fan.n_rays)}
        )
    if k == n:
        raise RankMismatch("projection along a top cone has rank 0")
    rows = [fan.rays[i] for i in K]
    _, _, Q = smith_normal_form(rows)
    proj = tuple(
        tuple(Q[i][c] for i in range(n)) for c in range(k, n)
    )
    link = sorted(
        i
        for i in range(fan.n_rays)
        if i not in K and fan.is_face(K + (i,))
    )
    ray_map = {}
    new_rays = []
    new_mults = []
    for i in link:
        image = tuple(dot(row, fan.edge(i)) for row in proj)
        image = tuple(int(x) for x in image)
        prim = primitive_vector(image)
        g = next(x // p for x, p in zip(image, prim) if p != 0)
        ray_map[i] = len(new_rays)
        new_rays.append(prim)
        new_mults.append(g)
    new_cones = []
    new_weights = []
    for I, w in zip(fan.cones, fan.weights):
        if set(K).issubset(I):
            new_cones.append(tuple(ray_map[i] for i in I if i not in K))
            new_weights.append(w)
    quotient = MultiFan(n - k, new_rays, new_cones, new_weights, new_mults)
    return ProjectedMultiFan(fan, K, quotient, proj, ray_map)


def _rank1_balanced(fan: MultiFan) -> bool:
    plus = sum(
        w for I, w in zip(fan.cones, fan.weights) if fan.rays[I[0]][0] > 0
    )
    minus = sum(
        w for I, w in zip(fan.cones, fan.weights) if fan.rays[I[0]][0] < 0
    )
    return plus == minus


def is_complete(fan: MultiFan) -> bool:
    """Completeness via pre-completeness of every codimension-1 projection.

    For rank-1 projections pre-completeness is the exact balance of
    weights on the two sides, so this check is exact in every rank.
    The verdict is cached on the fan.
    """
    if "complete" in fan._cache:
        return fan._cache["complete"]
    if fan.rank == 1:
        out = _rank1_balanced(fan)
    else:
        out = all(
            _rank1_balanced(project(fan, J).fan)
            for J in fan.faces_of_card(fan.rank - 1)
        )
    fan._cache["complete"] = out
    return out


def fan_degree(fan: MultiFan, rng: random.Random | None = None) -> int:
    """Degree of a complete multi-fan at a sampled generic vector."""
    rng = rng or random.Random(0xD0C)
    return degree(fan, sample_generic_vector(fan, rng))


# ---------------------------------------------------------------------------
# surgery


def star_subdivide(fan: MultiFan, I, r) -> MultiFan:
    """Replace the top cone I by the n cones (I \\ {i}) + {r}.

    The new ray r must be primitive and strictly inside C(I).  Weights
    are inherited; all other cones are untouched.
    """
    I = tuple(sorted(int(i) for i in I))
    if I not in fan.cones:
        raise FaceNotInFan(f"{I} is not a top cone")
    r = tuple(int(x) for x in r)
    if primitive_vector(r) != r:
        raise InvalidFan("subdivision ray must be primitive")
    coords = [dot(u, r) for u in fan.dual_basis_of(I)]
    if any(c <= 0 for c in coords):
        raise RayNotInterior(f"{r} is not strictly inside {I}")
    w = fan.weight(I)
    new_index = fan.n_rays
    rays = fan.rays + (r,)
    mults = fan.multipliers + (1,)
    cones = [c for c in fan.cones if c != I]
    weights = [fan.weight(c) for c in cones]
    for drop in I:
        cones.append(tuple(sorted([i for i in I if i != drop] + [new_index])))
        weights.append(w)
    return MultiFan(fan.rank, rays, cones, weights, mults)


def projective_space_fan(n: int) -> MultiFan:
    """Complete fan of projective n-space: e_1..e_n and -(e_1+..+e_n)."""
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(itertools.combinations(range(n + 1), n))
    return MultiFan(n, rays, cones)


def random_complete_fan(seed: int, dim: int, steps: int) -> MultiFan:
    """Seeded random complete fan: star subdivisions of projective space.

    Each step picks a top cone and a primitive ray strictly inside it,
    so the result stays a genuine complete fan; in rank 2 each step adds
    one cone, in rank n it adds n-1.
    """
    rng = random.Random(seed)
    fan = projective_space_fan(dim)
    for _ in range(steps):
        I = fan.cones[rng.randrange(len(fan.cones))]
        coeffs = [rng.randint(1, 3) for _ in I]
        r = primitive_vector(
            tuple(
                sum(a * fan.rays[i][j] for a, i in zip(coeffs, I))
                for j in range(dim)
            )
        )
        fan = star_subdivide(fan, I, r)
    return fan
