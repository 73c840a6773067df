"""Frozen reference data used by the verification suites.

The sigma lists below partition the first 400 primes p = +-1 mod 7 by the
number k of inner regular type-{3,7} maps over PSL(2,p), split by the sign of
p mod 7.  They reproduce the published census of these primes with four
corrections, each independently re-verified here by two computation routes
(character of the s-values, and linear factors of f1(x^2) mod p):

  * 138 (not prime) -> 139 in SIGMA2_MINUS
  * 2709 = 3^2 * 7 * 43 (not prime) -> 3709 in SIGMA3_MINUS
  * 7481 (= 5 mod 7, wrong residue class) -> 7841 in SIGMA3_PLUS
  * 8693 = -1 mod 7, so it is filed under SIGMA1_MINUS, not SIGMA1_PLUS

The last correction moves one prime across the +/- split, so the split sizes
are (22, 26, 78, 76, 78, 73, 24, 23); the printed tabulation had (..., 79,
75, ...) for k = 1.  The aggregate sizes (48, 154, 151, 47) are unaffected.
"""

from __future__ import annotations

SIGMA0_PLUS = (
    239, 379, 491, 547, 1051, 1583, 2143, 3319, 3823, 3907, 4159, 4271,
    4523, 4663, 5503, 5867, 5923, 6427, 6959, 7043, 8443, 9227,
)

SIGMA0_MINUS = (
    167, 251, 1399, 1511, 1931, 1987, 2351, 3023, 3331, 3359, 4003, 4283,
    4339, 4759, 4871, 5179, 5683, 6803, 7307, 8623, 8707, 9043, 9127,
    9239, 9491, 9631,
)

SIGMA1_PLUS = (
    29, 113, 197, 281, 337, 421, 449, 617, 673, 757, 953, 1009, 1429,
    1597, 1709, 1877, 1933, 2017, 2129, 2213, 2269, 2297, 2381, 2437,
    2633, 2801, 2857, 2969, 3109, 3137, 3221, 3361, 3389, 3529, 3613,
    3697, 4201, 4229, 4621, 4649, 4733, 4817, 4957, 5153, 5209, 5237,
    5573, 5657, 5741, 5881, 6133, 6217, 6301, 6329, 6469, 6553, 6581,
    6637, 7001, 7057, 7309, 7393, 7561, 7589, 8093, 8233, 8317, 8429,
    8597, 8681, 8821, 9157, 9241, 9437, 9521, 9661, 9689, 9829,
)

SIGMA1_MINUS = (
    13, 41, 97, 349, 433, 461, 601, 769, 797, 853, 1021, 1049, 1217, 1301,
    1609, 1637, 1693, 1721, 1777, 1861, 1889, 1973, 2029, 2113, 2141,
    2309, 2477, 2617, 2729, 2897, 2953, 3121, 3541, 3821, 3989, 4073,
    4129, 4157, 4409, 4493, 4549, 4801, 4969, 5081, 5333, 5417, 5557,
    5641, 5669, 6089, 6173, 6229, 6397, 6733, 6761, 7013, 7069, 7321,
    7349, 7433, 7489, 7517, 7573, 7853, 7993, 8161, 8273, 8329, 8693,
    8861, 9001, 9029, 9281, 9337, 9421, 9533,
)

SIGMA2_PLUS = (
    43, 71, 127, 211, 463, 631, 659, 743, 827, 883, 911, 967, 1163, 1303,
    1471, 1499, 1667, 1723, 2003, 2087, 2311, 2339, 2423, 2591, 2647,
    2731, 2843, 2927, 3011, 3067, 3347, 3571, 3739, 3767, 3851, 4019,
    4243, 4327, 4691, 4831, 4943, 4999, 5167, 5279, 5419, 5531, 5783,
    5839, 6007, 6091, 6203, 6287, 6343, 6679, 6763, 6791, 7127, 7211,
    7351, 7547, 7603, 7687, 7883, 8191, 8219, 8387, 8527, 8779, 8807,
    8863, 9059, 9199, 9283, 9311, 9479, 9619, 9787, 9871,
)

SIGMA2_MINUS = (
    83, 139, 223, 307, 419, 503, 587, 643, 727, 811, 839, 1063, 1091,
    1231, 1259, 1427, 1483, 1567, 1847, 2099, 2239, 2267, 2659, 2687,
    2939, 3079, 3163, 3191, 3499, 3527, 3583, 3779, 3863, 3919, 3947,
    4423, 4451, 4507, 4591, 4703, 4787, 5011, 5039, 5347, 5431, 5711,
    5851, 5879, 6047, 6131, 6271, 6299, 6551, 6607, 6691, 6719, 6971,
    7027, 7559, 7643, 7699, 7727, 7867, 7951, 8147, 8231, 8287, 8539,
    8819, 9323, 9463, 9547, 9743,
)

SIGMA3_PLUS = (
    701, 1093, 1289, 1373, 2521, 2549, 2689, 3557, 4397, 4481, 4789, 6833,
    6917, 7253, 7477, 7673, 7757, 7841, 8009, 8513, 8737, 8849, 8933, 9857,
)

SIGMA3_MINUS = (
    181, 293, 881, 937, 1553, 2281, 2393, 3037, 3373, 3457, 3709, 3793,
    3877, 4241, 4297, 5501, 6257, 6481, 7237, 7741, 7937, 8581, 8609,
)

SIGMA_LISTS = {
    (0, "+"): SIGMA0_PLUS, (0, "-"): SIGMA0_MINUS,
    (1, "+"): SIGMA1_PLUS, (1, "-"): SIGMA1_MINUS,
    (2, "+"): SIGMA2_PLUS, (2, "-"): SIGMA2_MINUS,
    (3, "+"): SIGMA3_PLUS, (3, "-"): SIGMA3_MINUS,
}

# corrections applied to the printed tabulation, for traceability
PRINTED_TYPO_CORRECTIONS = (
    ((2, "-"), 138, 139),
    ((3, "-"), 2709, 3709),
    ((3, "+"), 7481, 7841),
)
PRINTED_MISFILED = ((1, "+"), (1, "-"), 8693)  # listed under +, belongs under -

SPLIT_COUNTS = (22, 26, 78, 76, 78, 73, 24, 23)
PRINTED_SPLIT_COUNTS = (22, 26, 79, 75, 78, 73, 24, 23)
AGGREGATE_COUNTS = (48, 154, 151, 47)

# Psi_n(1) for n = 7..19
PSI_AT_ONE_TABLE = {
    7: -1, 8: -1, 9: -1, 10: -1, 11: -1, 12: -2, 13: 1,
    14: -1, 15: 1, 16: -1, 17: 1, 18: -3, 19: -1,
}

# worked examples: (m, n, p) -> expectations for the census record
# keys: q, genus, classes, k, s_values (set of s as integers, prime fields only)
WORKED_EXAMPLES = (
    dict(m=3, n=7, p=13, k=1, classes=3, s_values=(4, 6, 7)),
    dict(m=3, n=7, p=43, k=2, classes=3, s_values=(25, 29, 36)),
    dict(m=3, n=7, p=2, q=8, classes=1, k=1, genus=7),
    dict(m=3, n=9, p=17, k=1, classes=3),
    dict(m=3, n=9, p=19, k=2, classes=3, outer_s=(13,)),
    dict(m=3, n=9, p=37, k=1, classes=3),
    dict(m=3, n=11, p=2, q=32, classes=1, k=1, genus=1241),
    dict(m=3, n=13, p=5, q=25, classes=3, k=1, genus=351),
    dict(m=3, n=13, p=3, q=27, classes=2, k=0),
    dict(m=3, n=15, p=2, q=16, classes=1, k=1, genus=205),
    dict(m=3, n=15, p=31, classes=4, k=2),
    dict(m=3, n=17, p=2, q=16, classes=2, k=2, genus=221),
    dict(m=3, n=19, p=37, classes=9, k=5, genus=1444),
    dict(m=3, n=8, p=17, k=0, classes=2),
    dict(m=3, n=8, p=31, k=1, classes=2, s_values=(9, 24)),
    dict(m=3, n=10, p=19, k=1, classes=2, genus=115),
    dict(m=3, n=10, p=41, k=0, classes=2),
    dict(m=3, n=12, p=23, k=1, classes=2),
    dict(m=3, n=12, p=5, q=25, classes=1, k=0, genus=326),
    dict(m=3, n=14, p=29, k=1, classes=3, genus=581),
    dict(m=3, n=14, p=3, q=27, classes=1, k=0),
    dict(m=4, n=5, p=31, k=1, classes=2, s_values=(13, 19), genus=373),
    dict(m=4, n=5, p=41, k=0, classes=2),
    dict(m=4, n=5, p=89, k=2, classes=2),
    dict(m=4, n=5, p=7, q=49, classes=1, k=0),
    dict(m=4, n=5, p=17, q=289, classes=1, k=1),
)
