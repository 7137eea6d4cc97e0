"""Build a few multi-fans and inspect completeness and degree.

A multi-fan assigns a nonzero integer weight to each top cone; the
degree counts cones containing a generic direction with weights and
signs.  Pre-completeness means that count is the same in every chamber,
and completeness asks the same of all projected fans.
"""

from multifan import (
    MultiFan,
    fan_degree,
    is_complete,
    load_document,
    precompleteness,
    random_complete_fan,
    star_subdivide,
)
from multifan.catalog import cross_fan, weighted_p112_fan


def describe(name, fan):
    pre, deg, method = precompleteness(fan)
    print(f"{name}: rank {fan.rank}, {fan.n_rays} rays, {len(fan.cones)} top cones")
    print(f"  pre-complete: {pre} ({method}), complete: {is_complete(fan)}")
    if pre:
        print(f"  degree: {deg}")


describe("square fan", cross_fan())
describe("weighted projective plane fan", weighted_p112_fan())

half = MultiFan(1, [(1,)], [(0,)])
describe("half line", half)

doubled = MultiFan(
    2,
    [(1, 0), (0, 1), (-1, 0), (0, -1)],
    [(0, 1), (1, 2), (2, 3), (0, 3)],
    weights=[2, 2, 2, 2],
)
describe("square fan with all weights 2", doubled)

subdivided = star_subdivide(cross_fan(), (0, 1), (1, 2))
describe("square fan, one cone star-subdivided at (1,2)", subdivided)

rnd = random_complete_fan(seed=5, dim=3, steps=3)
describe("random subdivided 3-space fan", rnd)
print(f"  degree at a fresh sample: {fan_degree(rnd)}")

doc = load_document("demos/fans/projective-plane.json")
describe("projective plane fan from its document", doc.fan())
