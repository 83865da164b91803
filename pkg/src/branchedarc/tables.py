"""Reference tables for the genus-2 branched arc algebra and H_2, transcribed by hand.

Names: ``fij_k`` is the k-th basic morphism of Mor(i, j); a homology class is
named by its representing cycle, e.g. ``"f12_1+f12_3"``.  Each product table
maps row -> {column: value}; missing cells are zero.
"""

H2_BLOCK_DIMS = (4, 6, 2, 4)
H2_HOMOLOGY_DIMS = (4, 2, 2, 4)

BASIS = (["f11_%d" % i for i in range(1, 5)] + ["f12_%d" % i for i in range(1, 7)]
         + ["f21_%d" % i for i in range(1, 3)] + ["f22_%d" % i for i in range(1, 5)])

# the only nonzero differentials in h_2 (all inside Mor(1,2))
DIFFERENTIAL = {"f12_1": "f12_2", "f12_3": "f12_2", "f12_4": "f12_5", "f12_6": "f12_5"}

PRODUCT = {
    "f11_1": {c: c for c in BASIS[:10]},
    "f11_2": {"f11_1": "f11_2", "f11_3": "f11_4", "f12_1": "f12_4", "f12_2": "f12_5", "f12_3": "f12_6"},
    "f11_3": {"f11_1": "f11_3", "f11_2": "f11_4", "f12_3": "f12_2", "f12_6": "f12_5"},
    "f11_4": {"f11_1": "f11_4", "f12_3": "f12_5"},
    "f12_1": {"f21_1": "f11_3", "f21_2": "f11_4", "f22_1": "f12_1", "f22_2": "f12_4",
              "f22_3": "f12_2", "f22_4": "f12_5"},
    "f12_2": {"f22_1": "f12_2", "f22_2": "f12_5"},
    "f12_3": {"f22_1": "f12_3", "f22_2": "f12_6"},
    "f12_4": {"f21_1": "f11_4", "f22_1": "f12_4", "f22_3": "f12_5"},
    "f12_5": {"f22_1": "f12_5"},
    "f12_6": {"f22_1": "f12_6"},
    "f21_1": {"f11_1": "f21_1", "f11_2": "f21_2", "f12_3": "f22_3", "f12_6": "f22_4"},
    "f21_2": {"f11_1": "f21_2", "f12_3": "f22_4"},
    "f22_1": {c: c for c in BASIS[10:]},
    "f22_2": {"f21_1": "f21_2", "f22_1": "f22_2", "f22_3": "f22_4"},
    "f22_3": {"f22_1": "f22_3", "f22_2": "f22_4"},
    "f22_4": {"f22_1": "f22_4"},
}

A = "f12_1+f12_3"
B = "f12_4+f12_6"
CLASSES = ["f11_1", "f11_2", "f11_3", "f11_4", A, B,
           "f21_1", "f21_2", "f22_1", "f22_2", "f22_3", "f22_4"]

# pinned retract: iota of each class is its named cycle, h only on two elements
RETRACT_H = {"f12_2": "f12_3", "f12_5": "f12_6"}

HOMOLOGY_PRODUCT = {
    "f11_1": {c: c for c in CLASSES[:6]},
    "f11_2": {"f11_1": "f11_2", "f11_3": "f11_4", A: B},
    "f11_3": {"f11_1": "f11_3", "f11_2": "f11_4"},
    "f11_4": {"f11_1": "f11_4"},
    A: {"f21_1": "f11_3", "f21_2": "f11_4", "f22_1": A, "f22_2": B},
    B: {"f21_1": "f11_4", "f22_1": B},
    "f21_1": {"f11_1": "f21_1", "f11_2": "f21_2", A: "f22_3", B: "f22_4"},
    "f21_2": {"f11_1": "f21_2", A: "f22_4"},
    "f22_1": {c: c for c in CLASSES[6:]},
    "f22_2": {"f21_1": "f21_2", "f22_1": "f22_2", "f22_3": "f22_4"},
    "f22_3": {"f22_1": "f22_3", "f22_2": "f22_4"},
    "f22_4": {"f22_1": "f22_4"},
}

# nontrivial m_3 on H_* h_2 for the pinned retract
M3 = {
    ("f21_1", "f11_3", A): "f22_3",
    ("f21_2", "f11_3", A): "f22_4",
    ("f21_1", "f11_3", B): "f22_4",
    ("f21_1", "f11_4", A): "f22_4",
    ("f21_1", A, "f22_3"): "f22_3",
    ("f21_2", A, "f22_3"): "f22_4",
    ("f21_1", B, "f22_3"): "f22_4",
    ("f21_1", A, "f22_4"): "f22_4",
}

# H_2 in the nonstandard basis, rows parallel to CLASSES.  Labels list circle
# values ordered by smallest endpoint; "aa-1x+aa-x1" is a single basis element.
H2_BASIS = ["aa-11", "aa-x1", "aa-1x+aa-x1", "aa-xx", "ab-1", "ab-x",
            "ba-1", "ba-x", "bb-11", "bb-x1", "bb-1x+bb-x1", "bb-xx"]

H2_PRODUCT = {
    "aa-11": {c: c for c in H2_BASIS[:6]},
    "aa-x1": {"aa-11": "aa-x1", "aa-1x+aa-x1": "aa-xx", "ab-1": "ab-x"},
    # printed as "aa-1x" in the aa-11 column; the unit forces aa-1x+aa-x1
    "aa-1x+aa-x1": {"aa-11": "aa-1x+aa-x1", "aa-x1": "aa-xx"},
    "aa-xx": {"aa-11": "aa-xx"},
    "ab-1": {"ba-1": "aa-1x+aa-x1", "ba-x": "aa-xx", "bb-11": "ab-1", "bb-x1": "ab-x"},
    "ab-x": {"ba-1": "aa-xx", "bb-11": "ab-x"},
    "ba-1": {"aa-11": "ba-1", "aa-x1": "ba-x", "ab-1": "bb-1x+bb-x1", "ab-x": "bb-xx"},
    "ba-x": {"aa-11": "ba-x", "ab-1": "bb-xx"},
    "bb-11": {c: c for c in H2_BASIS[6:]},
    "bb-x1": {"ba-1": "ba-x", "bb-11": "bb-x1", "bb-1x+bb-x1": "bb-xx"},
    "bb-1x+bb-x1": {"bb-11": "bb-1x+bb-x1", "bb-x1": "bb-xx"},
    "bb-xx": {"bb-11": "bb-xx"},
}

PSI = dict(zip(CLASSES, H2_BASIS))
