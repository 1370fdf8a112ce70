"""Highest weights of End T*(Gr_{n,k}) restricted to the Levi factor, and dominance.

Weights of ``gl_n`` are integer vectors in the basis ``mu_1, ..., mu_n``.
"""

from __future__ import annotations

from .errors import DimensionError

__all__ = ["Weight", "simple_roots", "is_dominant", "highest_weights", "dominant_filter"]

Weight = tuple


def _mu(n: int, i: int) -> list[int]:
    v = [0] * n
    v[i - 1] = 1
    return v


def _diff(n: int, i: int, j: int) -> list[int]:
    """``mu_i - mu_j`` (1-based)."""
    v = _mu(n, i)
    v[j - 1] -= 1
    return v


def simple_roots(n: int) -> list[Weight]:
    return [tuple(_diff(n, i, i + 1)) for i in range(1, n)]


def pairing(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def is_dominant(gamma, n: int | None = None) -> bool:
    n = len(gamma) if n is None else n
    return all(pairing(gamma, a) >= 0 for a in simple_roots(n))


def _check(n: int, k: int):
    if not (0 < k < n):
        raise DimensionError(f"need 0 < k < n, got n={n}, k={k}")


def highest_weights(n: int, k: int) -> list[Weight]:
    """Highest weights of ``1 + ad_1 + ad_2 + ad_1 (x) ad_2`` with the trivial
    pieces dropped (``ad`` of ``GL_1`` contributes only the zero weight)."""
    _check(n, k)
    zero = [0] * n
    out = [zero]
    first = _diff(n, 1, k) if k > 1 else None
    second = _diff(n, k + 1, n) if n - k > 1 else None
    if first:
        out.append(first)
    if second:
        out.append(second)
    if first and second:
        out.append([a + b for a, b in zip(first, second)])
    return [tuple(w) for w in out]


def dominant_filter(n: int, k: int) -> list[Weight]:
    """The dominant weights among :func:`highest_weights`."""
    return [w for w in highest_weights(n, k) if is_dominant(w, n)]
