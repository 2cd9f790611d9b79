"""Reference expansions and frieze tables used as frozen expected values."""

from cfl.laurent import LaurentPoly


def poly(rank, terms):
    return LaurentPoly(rank, terms)


# Laurent expansions of all cluster variables in the initial cluster (x1, x2),
# for the three rank-2 types.
A2_EXPANSIONS = [
    poly(2, {(1, 0): 1}),
    poly(2, {(0, 1): 1}),
    poly(2, {(-1, 1): 1, (-1, 0): 1}),                 # (x2+1)/x1
    poly(2, {(0, -1): 1, (-1, 0): 1, (-1, -1): 1}),    # (x1+x2+1)/(x1*x2)
    poly(2, {(1, -1): 1, (0, -1): 1}),                 # (x1+1)/x2
]

B2_EXPANSIONS = [
    poly(2, {(1, 0): 1}),
    poly(2, {(0, 1): 1}),
    poly(2, {(-1, 2): 1, (-1, 0): 1}),                          # (x2^2+1)/x1
    poly(2, {(0, -1): 1, (-1, 1): 1, (-1, -1): 1}),             # (x1+x2^2+1)/(x1*x2)
    poly(2, {(1, -2): 1, (-1, 0): 1, (0, -2): 2, (-1, -2): 1}),  # (x1^2+x2^2+2x1+1)/(x1*x2^2)
    poly(2, {(1, -1): 1, (0, -1): 1}),                          # (x1+1)/x2
]

G2_EXPANSIONS = [
    poly(2, {(1, 0): 1}),
    poly(2, {(0, 1): 1}),
    poly(2, {(-1, 3): 1, (-1, 0): 1}),
    poly(2, {(0, -1): 1, (-1, 2): 1, (-1, -1): 1}),
    poly(2, {(-2, 3): 1, (-1, 0): 3, (-2, 0): 2, (1, -3): 1,
             (0, -3): 3, (-1, -3): 3, (-2, -3): 1}),
    poly(2, {(-1, 1): 1, (1, -2): 1, (0, -2): 2, (-1, -2): 1}),
    poly(2, {(2, -3): 1, (-1, 0): 1, (1, -3): 3, (0, -3): 3, (-1, -3): 1}),
    poly(2, {(1, -1): 1, (0, -1): 1}),
]

# The nine cluster variables of the rank-3 algebra whose initial seed is the
# cyclic triangle 1 -> 2 -> 3 -> 1, expanded in that initial cluster.
A3_CYCLIC_EXPANSIONS = [
    poly(3, {(1, 0, 0): 1}),
    poly(3, {(0, 1, 0): 1}),
    poly(3, {(0, 0, 1): 1}),
    poly(3, {(-1, 1, 0): 1, (-1, 0, 1): 1}),                    # (x2+x3)/x1
    poly(3, {(1, -1, 0): 1, (0, -1, 1): 1}),                    # (x1+x3)/x2
    poly(3, {(1, 0, -1): 1, (0, 1, -1): 1}),                    # (x1+x2)/x3
    poly(3, {(0, -1, 0): 1, (-1, 0, 0): 1, (-1, -1, 1): 1}),    # (x1+x2+x3)/(x1*x2)
    poly(3, {(1, -1, -1): 1, (0, 0, -1): 1, (0, -1, 0): 1}),    # (x1+x2+x3)/(x2*x3)
    poly(3, {(0, 0, -1): 1, (-1, 1, -1): 1, (-1, 0, 0): 1}),    # (x1+x2+x3)/(x1*x3)
]

# Integral friezes displayed as one column per translation step, rows in the
# canonical vertex order of the type's default quiver.
B4_FRIEZE_COLUMNS = [
    (3, 2, 11, 4),
    (1, 2, 3, 1),
    (3, 2, 1, 2),
    (1, 5, 9, 5),
    (6, 17, 14, 3),
]

D5_FRIEZE_COLUMNS = [
    (1, 3, 5, 1, 3),
    (4, 3, 2, 3, 1),
    (1, 2, 5, 2, 6),
    (3, 8, 5, 3, 1),
    (3, 2, 5, 2, 6),
]

G2_FRIEZE_TOP = [(1, 1), (2, 3), (14, 5), (9, 2)]       # period 4
G2_FRIEZE_MIDDLE = [(1, 2), (9, 5), (14, 3), (2, 1)]    # period 4
G2_FRIEZE_BOTTOM = [(3, 2)]                             # constant

G2_FRIEZE_POINTS = {
    (1, 1), (1, 2), (9, 2), (14, 3), (14, 5), (9, 5), (2, 3), (2, 1), (3, 2),
}

# The rank-8 frieze with no 1s: columns on the quiver with arrows
# 1->2, 3->2, 3->4, 5->4, 5->6, 5->7, 8->7.
E8_FRIEZE_COLUMNS = [
    (2, 5, 7, 18, 41, 6, 11, 4),
    (3, 8, 13, 21, 29, 5, 8, 3),
    (3, 5, 13, 18, 29, 6, 11, 3),
    (2, 3, 7, 16, 41, 7, 15, 4),
]

E8_FRIEZE_ARROWS = [(1, 2), (3, 2), (3, 4), (5, 4), (5, 6), (5, 7), (8, 7)]
