"""Reference results for the K_{3,3} atlas and its homomorphism order.

These are the published counts, the level-1-to-level-2 cover pattern,
and the non-precedence facts with the necessary condition that refutes
each, stated in terms of the class labels produced by the labeling
anchors.  The verification suite checks the computed structures against
them.
"""

from __future__ import annotations

K33_CLASS_COUNT = 19
K6_CLASS_COUNT = 15

# classes per crossing number
K33_CROSSING_HISTOGRAM = {1: 1, 3: 7, 5: 8, 7: 2, 9: 1}

# sizes of the rank levels 0..4 under rank = cr // 2
RANK_LEVEL_SIZES = (1, 7, 8, 2, 1)

# which 5-crossing classes each 3-crossing class precedes
LEVEL12_COVER_PATTERN: dict[str, frozenset[str]] = {
    "3.1": frozenset({"5.1", "5.2"}),
    "3.2": frozenset({"5.1", "5.2", "5.3", "5.4", "5.5", "5.6"}),
    "3.3": frozenset({"5.1", "5.2", "5.3", "5.4", "5.5", "5.6"}),
    "3.4": frozenset({"5.2", "5.3", "5.4", "5.5", "5.6", "5.7"}),
    "3.5": frozenset({"5.3", "5.4", "5.5", "5.7", "5.8"}),
    "3.6": frozenset({"5.3", "5.4", "5.5", "5.6", "5.7", "5.8"}),
    "3.7": frozenset({"5.7", "5.8"}),
}

LEVEL3_LABELS = tuple(sorted(LEVEL12_COVER_PATTERN))
LEVEL5_LABELS = ("5.1", "5.2", "5.3", "5.4", "5.5", "5.6", "5.7", "5.8")

# pairs with no vertex-injective homomorphism, with the necessary
# condition whose failure certifies each group
_COND1 = "cond1_uncrossed_embeds"
_COND2 = "cond2_ex_hom_exists"
_COND3 = "cond3_lex_hom_exists"

NON_PRECEDENCE_FACTS: tuple[tuple[str, str, str], ...] = (
    # uncrossed-subgraph pullback fails
    ("3.1", "5.3", _COND1),
    ("3.1", "5.4", _COND1),
    ("3.1", "5.5", _COND1),
    ("3.1", "5.6", _COND1),
    ("3.1", "5.7", _COND1),
    ("3.1", "5.8", _COND1),
    ("3.2", "5.7", _COND1),
    ("3.2", "5.8", _COND1),
    ("3.3", "5.7", _COND1),
    ("3.3", "5.8", _COND1),
    ("5.1", "7.2", _COND1),
    ("5.2", "7.2", _COND1),
    ("5.3", "7.2", _COND1),
    # crossing-graph embedding fails
    ("3.5", "5.1", _COND2),
    ("3.5", "5.2", _COND2),
    ("3.5", "5.6", _COND2),
    ("3.7", "5.1", _COND2),
    ("3.7", "5.2", _COND2),
    ("3.7", "5.3", _COND2),
    ("3.7", "5.4", _COND2),
    ("3.7", "5.5", _COND2),
    ("3.7", "5.6", _COND2),
    ("5.6", "7.1", _COND2),
    ("5.7", "7.1", _COND2),
    ("5.8", "7.1", _COND2),
    # line-graph-automorphism condition fails
    ("3.4", "5.1", _COND3),
    ("3.4", "5.8", _COND3),
    ("3.6", "5.1", _COND3),
    ("3.6", "5.2", _COND3),
)

# classes that must not precede 7.1 resp. 7.2
BLOCKED_BELOW_71 = ("5.6", "5.7", "5.8")
BLOCKED_BELOW_72 = ("5.1", "5.2", "5.3")

# the non-lattice witness: these two classes have two minimal upper bounds
LATTICE_WITNESS_PAIR = ("3.1", "3.2")
LATTICE_WITNESS_BOUNDS = frozenset({"5.1", "5.2"})
