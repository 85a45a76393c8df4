import json

from geohom.poset import (
    check_graded,
    check_lattice,
    hasse_to_dot,
    maximal_lower_bounds,
    minimal_upper_bounds,
    poset_from_leq,
    poset_to_json,
    transitive_reduction,
    unique_maximum,
    validate_poset,
)


def leq_from_pairs(n, pairs):
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        leq[i][j] = True
    # transitive closure
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if leq[i][k] and leq[k][j]:
                    leq[i][j] = True
    return leq


def test_chain_is_graded_lattice():
    p = poset_from_leq(leq_from_pairs(3, [(0, 1), (1, 2)]), ranks=[0, 1, 2])
    assert validate_poset(p) == []
    graded, violations = check_graded(p)
    assert graded and not violations
    is_lattice, witness = check_lattice(p)
    assert is_lattice and witness is None
    assert unique_maximum(p) == 2


def test_equal_rank_cover_breaks_grading():
    p = poset_from_leq(leq_from_pairs(2, [(0, 1)]), ranks=[0, 0])
    graded, violations = check_graded(p)
    assert not graded
    assert violations == [(0, 1)]


def test_diamond_is_a_lattice():
    # bottom 0, incomparable middles 1 and 2, top 3: sups and infs unique
    p = poset_from_leq(
        leq_from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]), ranks=[0, 1, 1, 2]
    )
    is_lattice, witness = check_lattice(p)
    assert is_lattice and witness is None
    assert minimal_upper_bounds(p, 1, 2) == {3}
    assert maximal_lower_bounds(p, 1, 2) == {0}


def test_crown_breaks_lattice():
    # two bottoms 0, 1 under two tops 2, 3: two minimal upper bounds
    p = poset_from_leq(
        leq_from_pairs(4, [(0, 2), (0, 3), (1, 2), (1, 3)]), ranks=[0, 0, 1, 1]
    )
    is_lattice, witness = check_lattice(p)
    assert not is_lattice
    assert witness["pair"] == (0, 1)
    assert witness["kind"] == "upper"
    assert witness["bounds"] == [2, 3]
    assert minimal_upper_bounds(p, 0, 1) == {2, 3}


def test_mub_of_element_with_itself():
    p = poset_from_leq(leq_from_pairs(3, [(0, 1), (1, 2)]), ranks=[0, 1, 2])
    for i in range(3):
        assert minimal_upper_bounds(p, i, i) == {i}


def test_transitive_reduction():
    leq = leq_from_pairs(3, [(0, 1), (1, 2)])
    assert transitive_reduction(leq) == {(0, 1), (1, 2)}


def test_validate_poset_catches_corruption():
    p = poset_from_leq(leq_from_pairs(3, [(0, 1), (1, 2)]), ranks=[0, 1, 2])
    p.hasse_edges = {(0, 1), (0, 2), (1, 2)}  # not a reduction
    assert validate_poset(p)
    broken = poset_from_leq(leq_from_pairs(3, [(0, 1), (1, 2)]), ranks=[0, 1, 2])
    broken.leq[0][2] = False  # transitivity broken
    assert any("transitivity" in msg for msg in validate_poset(broken))


# ---------------------------------------------------------------------------
# the real order on the 19 classes (session fixtures)
# ---------------------------------------------------------------------------

def test_real_poset_axioms(hom_poset):
    assert validate_poset(hom_poset) == []


def test_real_poset_monotone_in_crossings(hom_poset):
    cr = [c.signature.cr for c in hom_poset.classes]
    for i in range(hom_poset.n):
        for j in range(hom_poset.n):
            if hom_poset.leq[i][j]:
                assert cr[i] <= cr[j]


def test_real_poset_rank_levels(hom_poset):
    sizes = [sum(1 for r in hom_poset.rank if r == level) for level in range(5)]
    assert sizes == [1, 7, 8, 2, 1]
    for i, cls in enumerate(hom_poset.classes):
        assert hom_poset.rank[i] == cls.signature.cr // 2


def test_real_poset_bottom_below_everything(hom_poset, label_index):
    bottom = label_index["1.1"]
    assert all(hom_poset.leq[bottom][j] for j in range(hom_poset.n))


def test_real_poset_mub_of_top_levels(hom_poset, label_index):
    mubs = minimal_upper_bounds(
        hom_poset, label_index["7.1"], label_index["7.2"]
    )
    assert {hom_poset.label(k) for k in mubs} == {"9.1"}


def test_real_poset_within_level_incomparable(hom_poset):
    cr = [c.signature.cr for c in hom_poset.classes]
    for i in range(hom_poset.n):
        for j in range(hom_poset.n):
            if i != j and cr[i] == cr[j]:
                assert not hom_poset.leq[i][j]


def test_poset_json_export(hom_poset):
    payload = json.loads(poset_to_json(hom_poset))
    assert payload["labels"][0] == "1.1"
    assert payload["labels"][-1] == "9.1"
    assert len(payload["leq"]) == 19
    assert payload["rank"] == [c.signature.cr // 2 for c in hom_poset.classes]
    closure_edges = {tuple(e) for e in payload["hasse_edges"]}
    assert closure_edges == hom_poset.hasse_edges


def test_hasse_dot_export(hom_poset):
    dot = hasse_to_dot(hom_poset)
    assert dot.startswith("digraph hasse {")
    assert '"1.1" -> ' in dot
    assert "rank=same" in dot
    # thickness-3 classes get a double periphery
    marked = [
        c.label
        for c in hom_poset.classes
        if c.signature.thickness >= 3
    ]
    for label in marked:
        assert f'"{label}" [peripheries=2];' in dot
