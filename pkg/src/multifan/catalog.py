"""Small named multi-fans used throughout the tests and demos."""

from __future__ import annotations

from .fans import MultiFan, projective_space_fan

__all__ = [
    "line_fan",
    "projective_plane_fan",
    "cross_fan",
    "weighted_p112_fan",
    "hirzebruch_fan",
    "projective_space_fan",
    "with_doubled_multipliers",
]


def line_fan(weight: int = 1, multiplier: int = 1) -> MultiFan:
    """Rank-1 complete fan with rays +1 and -1, optional edge multiplier."""
    return MultiFan(
        1,
        [(1,), (-1,)],
        [(0,), (1,)],
        [weight, weight],
        [multiplier, multiplier],
    )


def projective_plane_fan() -> MultiFan:
    """Complete fan with rays e1, e2, -e1-e2."""
    return projective_space_fan(2)


def cross_fan() -> MultiFan:
    """Product-of-two-lines fan: the four quadrants of the plane."""
    return MultiFan(
        2,
        [(1, 0), (0, 1), (-1, 0), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (0, 3)],
    )


def weighted_p112_fan() -> MultiFan:
    """Complete singular fan with rays e1, e2, -e1-2*e2.

    The cone on rays e1 and -e1-2*e2 has index two, so the fan carries a
    nontrivial two-element quotient group on that cone.
    """
    return MultiFan(
        2,
        [(1, 0), (0, 1), (-1, -2)],
        [(0, 1), (1, 2), (0, 2)],
    )


def hirzebruch_fan(a: int = 1) -> MultiFan:
    """Complete smooth fan with rays e1, e2, -e1+a*e2, -e2."""
    return MultiFan(
        2,
        [(1, 0), (0, 1), (-1, a), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (0, 3)],
    )


def with_doubled_multipliers(fan: MultiFan) -> MultiFan:
    """Same underlying fan with every edge multiplier doubled."""
    return fan.with_multipliers([2 * m for m in fan.multipliers])
