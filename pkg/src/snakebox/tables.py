"""Reference snake and coil lengths for small hypercubes.

Snake entries count edges of the longest induced path in Q_n, coil entries
count vertices (equivalently edges) of the longest induced cycle. Every row
embedded here is proven optimal; the proven flag is kept per row so larger,
merely best-known values could be added without changing consumers.
"""

from .errors import ValidationError

# n -> (snake_edges, coil_vertices, proven)
BEST_KNOWN = {
    1: (1, 0, True),
    2: (2, 4, True),
    3: (4, 6, True),
    4: (7, 8, True),
    5: (13, 14, True),
    6: (26, 26, True),
    7: (50, 48, True),
}

MAX_TABLE_N = max(BEST_KNOWN)


def best_known(n):
    """(snake_edges, coil_vertices, proven) for dimension n."""
    try:
        return BEST_KNOWN[n]
    except KeyError:
        raise ValidationError(
            "no reference entry for n=%r (have 1..%d)" % (n, MAX_TABLE_N)) from None
