"""Published threshold tables, transcribed for comparison with computed ones.

TABLE1: family -> (2h-2, a) as functions of the rank (or constants).
TABLE2: label -> cells in column order; each cell is (value, dagger).
Columns: G_(2), G_(3), G_(4), G_(5) (smallest prime), then the smallest n
for p = 2 and, for the second block only, p = 3 and p = 5.
"""

TABLE1 = {
    "A_odd": (lambda l: 4 * l + 2, lambda l: (l + 1) ** 2),   # A_{2l+1}
    "A_even": (lambda l: 4 * l, lambda l: l * (l + 1)),       # A_{2l}
    "B": (lambda n: 4 * n - 2, lambda n: n * n),
    "C": (lambda n: 4 * n - 2, lambda n: (n - 1) * (n + 2)),
    "D": (lambda n: 4 * n - 6, lambda n: (n + 1) * (n - 2)),
    "E6": (22, 42),
    "E7": (34, 96),
    "E8": (58, 270),
    "F4": (22, 42),
    "G2": (10, 10),
}

TABLE1_ROWS = (
    [f"A{r}" for r in range(1, 9)] + [f"B{r}" for r in range(2, 9)]
    + [f"C{r}" for r in range(3, 9)] + [f"D{r}" for r in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


def table1_entry(label: str) -> tuple[int, int]:
    """(2h-2, a) read off the published closed forms."""
    kind, rank = label[0], int(label[1:])
    if label in TABLE1:
        return TABLE1[label]
    if kind == "A":
        key, arg = ("A_odd", (rank - 1) // 2) if rank % 2 else ("A_even", rank // 2)
    else:
        key, arg = kind, rank
    two_h, a = TABLE1[key]
    return two_h(arg), a(arg)


TABLE2 = {
    "A1": ((3, False), (2, True), (2, True), (2, True), (3, True)),
    "A2": ((7, False), (3, True), (2, False), (2, False), (4, False)),
    "B2": ((17, False), (5, False), (3, False), (2, True), (5, True)),
    "G2": ((41, False), (7, False), (3, False), (3, False), (6, False)),
    "A3": ((17, False), (5, False), (3, False), (2, True), (5, True)),
    "B3": ((37, False), (7, False), (3, False), (3, False), (6, True)),
    "C3": ((41, False), (7, False), (3, False), (3, False), (6, True)),
    "A4": ((23, False), (5, True), (3, False), (2, False), (5, False)),
    "B4": ((67, False), (11, False), (5, False), (3, False), (7, True)),
    "C4": ((71, False), (11, False), (5, False), (3, False), (7, True)),
    "D4": ((41, False), (7, False), (3, False), (3, False), (6, False)),
    "A5": ((37, False), (7, False), (3, True), (3, True), (6, False)),
    "B5": ((101, False), (11, False), (5, False), (3, False), (7, True)),
    "C5": ((113, False), (11, False), (5, False), (3, False), (7, True)),
    "D5": ((71, False), (11, False), (5, False), (3, False), (7, False)),
    "F4": ((167, False), (13, False), (7, False), (5, False), (8, False), (6, False), (5, False)),
    "A6": ((47, False), (7, True), (5, False), (3, False), (6, False), (5, False), (4, False)),
    "B6": ((149, False), (13, False), (5, False), (5, False), (8, True), (6, False), (4, False)),
    "C6": ((161, False), (13, False), (7, False), (5, False), (8, True), (6, False), (5, False)),
    "D6": ((113, False), (11, False), (5, False), (3, False), (7, False), (5, False), (4, False)),
    "E6": ((167, False), (13, False), (7, False), (5, False), (8, False), (6, True), (5, False)),
    "A7": ((67, False), (11, False), (5, False), (3, False), (7, True), (5, False), (4, False)),
    "B7": ((193, False), (17, False), (7, False), (5, False), (8, True), (6, False), (5, False)),
    "C7": ((221, False), (17, False), (7, False), (5, False), (8, True), (6, False), (5, False)),
    "D7": ((161, False), (13, False), (7, False), (5, False), (8, False), (6, False), (5, False)),
    "E7": ((383, False), (23, False), (7, False), (5, False), (9, True), (7, False), (5, False)),
    "A8": ((79, False), (11, False), (5, False), (3, False), (7, False), (5, True), (4, False)),
    "B8": ((257, False), (17, False), (7, False), (5, False), (9, True), (6, False), (5, False)),
    "C8": ((281, False), (17, False), (7, False), (5, False), (9, True), (6, False), (5, False)),
    "D8": ((221, False), (17, False), (7, False), (5, False), (8, False), (6, False), (5, False)),
    "E8": ((1087, False), (37, False), (11, False), (7, False), (11, False), (7, False), (6, False)),
}

TABLE2_ROWS = tuple(TABLE2)
