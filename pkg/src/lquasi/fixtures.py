"""Small named tables shared across the test suites (0-based)."""

from .core import LeftQuasigroup

# 4-element table whose center-and-stabilizer relation relates 0,1 but is not
# a congruence: 0*2 = 2 and 1*2 = 3 end up unrelated.
P4 = LeftQuasigroup([
    [1, 0, 2, 3],
    [0, 1, 3, 2],
    [1, 0, 3, 2],
    [2, 3, 1, 0],
])

# dihedral quandle on 3 points: a*b = 2a - b mod 3
R3 = LeftQuasigroup([
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
])

# cyclic shift: a*b = b + 1 mod 3 (a permutation left quasigroup)
C3 = LeftQuasigroup([
    [1, 2, 0],
    [1, 2, 0],
    [1, 2, 0],
])

# the 2-element group
Z2 = LeftQuasigroup([
    [0, 1],
    [1, 0],
])

# 2-element projection: a*b = b
PROJ2 = LeftQuasigroup([
    [0, 1],
    [0, 1],
])

TRIVIAL = LeftQuasigroup([[0]])

ALL_FIXTURES = {
    "P4": P4,
    "R3": R3,
    "C3": C3,
    "Z2": Z2,
    "Proj2": PROJ2,
    "trivial": TRIVIAL,
}
