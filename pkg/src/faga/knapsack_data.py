"""Built-in single-knapsack instances f1 through f20.

Each entry: (listed item count, capacity, weights, profits, reported optimum).
Several listings are internally inconsistent (item counts that do not match
the stated size, or reported optima that exact dynamic programming cannot
reproduce); those ids appear in INCONSISTENT and the authoritative optimum is
whatever dp_solve returns on the data as transcribed.
"""

RAW = {
 "f1": (10, 269,
   [95, 4, 60, 32, 23, 72, 80, 62, 65, 46],
   [55, 10, 47, 5, 4, 50, 8, 61, 85, 87], 295),
 "f2": (20, 878,
   [92, 4, 83, 43, 88, 64, 98, 82, 6, 44, 32, 18, 56, 23, 85, 96, 70, 48, 14, 58],
   [44, 46, 90, 72, 91, 40, 75, 35, 8, 54, 78, 40, 77, 15, 61, 17, 75, 29, 75, 63],
   1024),
 "f3": (4, 20, [6, 5, 9, 7], [9, 11, 13, 15], 35),
 "f4": (4, 11, [2, 4, 6, 7], [6, 10, 12, 13], 23),
 "f5": (15, 375,
   [56.358531, 80.874050, 47.987304, 89.596240, 74.660482, 85.894345, 51.353496,
    1.4989459, 36.445204, 16.5898624, 44.569231, 0.466933, 37.788018, 57.118442,
    60.716575],
   [0.125126, 19.330424, 58.500931, 35.029145, 82.284005, 17.410810, 71.050142,
    30.399487, 9.140294, 14.731285, 98.852504, 11.908322, 0.891140, 53.166295,
    60.716397],
   481.0694),
 "f6": (10, 60, [30, 25, 20, 18, 17, 11, 5, 2, 1, 1],
   [20, 18, 17, 15, 15, 10, 5, 3, 1, 1], 52),
 "f7": (7, 50, [31, 10, 20, 19, 4, 3, 6], [70, 20, 39, 37, 7, 5, 10], 107),
 "f8": (23, 10000,
   [983, 982, 981, 980, 979, 978, 488, 976, 972, 486, 486, 972, 485, 969, 966,
    483, 964, 963, 961, 958, 959],
   [981, 980, 979, 978, 977, 976, 487, 974, 970, 485, 485, 970, 484, 484, 976,
    974, 962, 961, 959, 958, 857],
   9767),
 "f9": (5, 80, [15, 20, 17, 8, 31], [33, 24, 36, 37, 12], 130),
 "f10": (20, 879,
   [84, 83, 43, 4, 44, 6, 82, 92, 23, 58, 16, 58, 14, 48, 70, 96, 32, 68, 92],
   [91, 72, 90, 46, 55, 8, 35, 75, 61, 75, 17, 78, 40, 44, 77, 63, 75, 29, 75, 63],
   1025),
 "f11": (30, 577,
   [46, 17, 35, 1, 26, 17, 17, 48, 38, 17, 32, 21, 29, 48, 31, 8, 42, 37, 6, 9,
    15, 22, 27, 14, 42, 40, 14, 31, 6, 34],
   [57, 64, 50, 6, 52, 6, 85, 60, 70, 65, 63, 96, 18, 48, 85, 50, 77, 18, 70, 92,
    17, 43, 5, 23, 67, 88, 35, 3, 91, 48], 1437),
 "f12": (35, 655,
   [7, 4, 46, 47, 6, 33, 8, 35, 32, 3, 40, 50, 22, 18, 3, 12, 30, 31, 13, 33,
    4, 48, 5, 17, 33, 26, 27, 19, 39, 15, 33, 47, 17, 41, 40],
   [35, 67, 30, 69, 40, 40, 21, 73, 82, 93, 52, 20, 61, 20, 42, 86, 43, 93, 38, 70,
    59, 11, 42, 93, 6, 39, 25, 23, 36, 93, 51, 81, 36, 46, 96], 1689),
 "f13": (40, 819,
   [28, 23, 35, 38, 30, 29, 11, 48, 26, 14, 12, 48, 35, 36, 33, 39, 30, 46, 22, 21,
    10, 15, 46, 43, 19, 32, 2, 47, 24, 26, 39, 17, 32, 17, 16, 33, 22, 6, 12],
   [13, 16, 42, 69, 66, 68, 1, 13, 77, 85, 75, 95, 92, 23, 51, 79, 53, 62, 56, 74,
    7, 50, 23, 34, 56, 75, 42, 51, 13, 22, 30, 45, 25, 27, 90, 59, 94, 62, 26, 11],
   1821),
 "f14": (45, 907,
   [18, 12, 38, 12, 23, 13, 18, 46, 1, 7, 40, 23, 11, 47, 49, 19, 50, 19, 7, 33,
    4, 31, 35, 41, 42, 2, 33, 14, 48, 40, 12, 35, 17, 38, 50, 14, 47, 35, 5, 41,
    24, 45, 39, 1],
   [70, 78, 6, 33, 2, 58, 4, 27, 40, 45, 77, 63, 32, 30, 8, 18, 73, 92, 43, 38,
    50, 78, 16, 38, 0, 40, 43, 43, 22, 50, 4, 57, 5, 88, 87, 34, 98, 96, 99, 16,
    1, 25], 2033),
 "f15": (50, 882,
   [15, 40, 22, 28, 50, 35, 49, 5, 45, 3, 7, 32, 19, 16, 40, 16, 31, 24, 15, 42,
    29, 4, 14, 9, 29, 11, 25, 37, 48, 39, 5, 47, 49, 31, 48, 17, 46, 1, 25, 8,
    16, 9, 30, 33, 18, 3, 3, 4, 1],
   [78, 69, 87, 59, 63, 12, 22, 4, 45, 33, 29, 50, 19, 94, 95, 60, 1, 91, 69, 8,
    100, 32, 81, 47, 59, 48, 56, 18, 59, 16, 45, 54, 47, 84, 100, 98, 75, 20, 4, 19,
    58, 63, 37, 64, 90, 26, 29, 13, 53, 83], 2440),
 "f16": (55, 1050,
   [27, 15, 46, 5, 40, 9, 36, 12, 11, 11, 49, 20, 32, 3, 12, 44, 24, 1, 24, 42,
    44, 16, 12, 42, 22, 60, 10, 8, 46, 50, 20, 42, 48, 45, 43, 35, 9, 12, 22, 2,
    14, 50, 16, 29, 31, 40, 35, 11, 4, 32, 35, 15, 29, 16],
   [98, 74, 76, 4, 12, 27, 90, 98, 100, 30, 93, 19, 75, 72, 66, 83, 79, 78, 79, 44,
    35, 6, 82, 11, 1, 28, 95, 68, 39, 86, 68, 61, 44, 97, 83, 2, 15, 49, 59, 30,
    44, 40, 14, 96, 37, 84, 5, 43, 8, 32, 95, 86, 18], 2651),
 "f17": (60, 1006,
   [7, 13, 47, 33, 38, 41, 3, 21, 37, 7, 32, 13, 42, 42, 23, 49, 1, 20, 25, 31,
    4, 8, 33, 11, 6, 3, 9, 26, 44, 39, 7, 4, 34, 25, 25, 16, 47, 46, 23, 38,
    10, 5, 11, 28, 34, 47, 3, 9, 22, 24, 41, 45, 10, 29, 1, 33, 16, 14],
   [81, 37, 70, 64, 97, 21, 60, 9, 55, 85, 5, 33, 71, 87, 51, 100, 43, 27, 48, 17,
    26, 17, 76, 61, 97, 78, 58, 46, 29, 76, 10, 11, 74, 56, 39, 50, 72, 37,
    72, 100, 9, 47, 10, 73, 92, 9, 52, 56, 69, 30, 61, 26, 70, 46, 14, 27, 9, 3],
   2917),
 "f18": (65, 1319,
   [4, 23, 48, 14, 35, 33, 11, 10, 40, 32, 23, 45, 9, 41, 47, 3, 26, 38, 2, 17,
    19, 14, 32, 48, 34, 17, 50, 32, 38, 35, 18, 43, 19, 1, 24, 46, 9, 47, 38, 43,
    23, 12, 30, 47, 17, 50, 43, 11, 3, 10, 7, 6, 30, 13, 48, 16, 47, 9, 24, 33,
    36, 15, 47, 7, 14, 39],
   [84, 65, 44, 61, 2, 48, 30, 64, 73, 80, 32, 47, 93, 15, 77, 69, 98, 14, 70, 18,
    28, 97, 65, 77, 1, 85, 27, 95, 21, 14, 64, 60, 67, 42, 85, 85, 47, 19, 28, 4,
    28, 50, 29, 70, 71, 94, 49, 44, 3, 8, 82, 97, 35, 43, 24, 37, 78, 71, 26, 66,
    82, 93, 47, 92, 89], 2818),
 "f19": (70, 1426,
   [4, 16, 16, 2, 9, 44, 33, 43, 14, 45, 11, 49, 21, 12, 41, 19, 26, 38, 42, 20,
    5, 14, 40, 47, 29, 47, 30, 50, 39, 10, 26, 34, 44, 31, 50, 7, 15, 24, 7, 12,
    10, 34, 17, 40, 28, 12, 35, 3, 29, 20, 19, 9, 44, 14, 43, 41, 10, 49, 39, 31,
    25, 46, 6, 7, 43],
   [66, 76, 71, 61, 7, 30, 34, 65, 22, 8, 99, 21, 99, 62, 25, 72, 26, 12, 55, 22,
    32, 98, 31, 95, 42, 12, 16, 100, 66, 45, 27, 19, 11, 83, 43, 93, 53, 88, 36, 41,
    60, 92, 16, 14, 40, 92, 30, 58, 79, 33, 70, 35, 41, 84, 21, 30, 54, 63, 28, 61,
    85, 71, 40, 58, 25, 73, 35], 3223),
 "f20": (75, 1433,
   [24, 45, 15, 40, 9, 37, 13, 5, 43, 35, 48, 50, 27, 46, 24, 45, 2, 7, 38, 40,
    27, 15, 20, 5, 47, 21, 22, 33, 11, 45, 24, 37, 31, 46, 12, 12, 14, 41, 36, 44,
    36, 34, 22, 29, 50, 18, 21, 28, 4, 20, 44, 45, 25, 11, 35, 24, 9, 40, 45, 8,
    47, 12, 2, 1, 12, 36, 35, 14, 17, 5],
   [2, 73, 82, 12, 49, 35, 78, 29, 83, 18, 87, 93, 20, 6, 55, 1, 83, 91, 47, 35,
    51, 59, 94, 90, 81, 80, 84, 7, 51, 3, 17, 18, 38, 75, 73, 29, 24, 14, 29, 44,
    41, 100, 37, 67, 82, 30, 39, 30, 91, 50, 21, 3, 18, 31, 97, 79, 68, 85, 43, 71,
    49, 83, 44, 46, 1, 100, 28, 4, 16], 3614),
}

# ids whose listing reproduces the reported optimum under exact solving
CONSISTENT = frozenset(["f1", "f3", "f4", "f6", "f7", "f9", "f11", "f12"])
INCONSISTENT = frozenset(RAW) - CONSISTENT
