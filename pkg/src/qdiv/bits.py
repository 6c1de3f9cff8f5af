"""Small integer helpers shared by the builders and the cost formulas."""

from __future__ import annotations


def omega(k: int) -> int:
    """Number of ones in the binary expansion of ``k``."""
    return bin(k).count("1")


def flog2(x: float) -> int:
    """floor(log2(x)) for x >= 1, clamped to 0 below that."""
    if x < 1:
        return 0
    if isinstance(x, int):
        return x.bit_length() - 1
    n = int(x)
    return n.bit_length() - 1


def flog2_third(k: int) -> int:
    """floor(log2(k/3)), clamped to 0 when k < 3."""
    # floor(log2(k/3)) = largest t with 3 * 2^t <= k
    if k < 3:
        return 0
    return (k // 3).bit_length() - 1
