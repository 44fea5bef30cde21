"""Integer codes shared by both kernel backends."""

# number of Caratheodory coefficients carried through the kernels (enough for a6)
NC = 5

HERGLOTZ = 0
LIBERA_ZLOTKIEWICZ = 1

ABS_A2 = 0
ABS_A3 = 1
ABS_A4 = 2
ABS_A5 = 3
FS_INVERSE = 4
HANKEL2_INVERSE = 5
ABS_AN = 6
FS_DIRECT = 7
HANKEL2_DIRECT = 8
A2A3_MINUS_A4 = 9
H3_DIRECT = 10
