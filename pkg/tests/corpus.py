"""Named groups shared by the group, classifier and bounds tests."""

SMALL = [  # order <= 24: brute-force subgroup oracles are affordable
    "C 1",
    "C 2",
    "C 6",
    "C 12",
    "C 2 x C 2",
    "C 4 x C 2",
    "C 2 x C 2 x C 2",
    "C 3 x C 3",
    "Q8",
    "Sym 3",
    "C 4 : C 2 @ 3",
    "C 5 : C 2 @ 4",
    "C 3 : C 4 @ 2",
    "C 7 : C 3 @ 2",
    "C 5 : C 4 @ 2",
    "Alt 4",
    "Sym 3 x C 3",
    "Sym 4",
    "Alt 4 x C 2",
    "Q8 x C 3",
    "C 9 : C 3 @ 4",
    "C 13 : C 3 @ 3",
]

LARGE = [
    "GL2 3",
    "Alt 5",
    "MAT 5 : C 3",
    "C 11 : C 5 @ 3",
    "C 5 x C 5",
    "Fermat 4",
    "Sym 5",
]

CORPUS = SMALL + LARGE
