from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treedoc.errors import (
    CannotDeleteRoot,
    CycleWouldForm,
    EmptyTitle,
    InvalidFragment,
    PositionOutOfRange,
    UnknownNode,
)
from treedoc.tree import DocumentTree

import randgen


class TestCreate:
    def test_minimal_document(self):
        tree = DocumentTree.create("Doc")
        assert len(tree.nodes) == 1
        root = tree.nodes[tree.root]
        assert root.title == "Doc"
        assert root.content == ""
        assert root.is_leaf

    def test_empty_title_rejected(self):
        with pytest.raises(EmptyTitle):
            DocumentTree.create("")
        with pytest.raises(EmptyTitle):
            DocumentTree.create("   ")

    def test_fresh_root_is_a_leaf(self):
        tree = DocumentTree.create("Review Paper")
        assert tree.nodes[tree.root].is_leaf


class TestAddChild:
    def test_append(self):
        tree = DocumentTree.create("Doc")
        child = tree.add_child(tree.root, "first")
        assert tree.nodes[tree.root].children == [child]
        assert tree.parent_id(child) == tree.root

    def test_ordered_insert_at_front(self):
        tree = DocumentTree.create("Doc")
        a = tree.add_child(tree.root, "A")
        b = tree.add_child(tree.root, "B")
        new = tree.add_child(tree.root, "new", position=0)
        assert tree.nodes[tree.root].children == [new, a, b]

    def test_export_block_not_last_rejected(self):
        tree = DocumentTree.create("Doc")
        with pytest.raises(InvalidFragment):
            tree.add_child(tree.root, "bad",
                           '<p>x</p><div class="export"><p>y</p></div><p>z</p>')

    def test_position_bounds(self):
        tree = DocumentTree.create("Doc")
        tree.add_child(tree.root, "A")
        with pytest.raises(PositionOutOfRange):
            tree.add_child(tree.root, "B", position=2)
        with pytest.raises(PositionOutOfRange):
            tree.add_child(tree.root, "B", position=-1)

    def test_unknown_parent(self):
        tree = DocumentTree.create("Doc")
        with pytest.raises(UnknownNode):
            tree.add_child("nope", "x")

    def test_ids_never_reused_after_delete(self):
        tree = DocumentTree.create("Doc")
        child = tree.add_child(tree.root, "x")
        tree.delete_node(child)
        fresh = {tree.add_child(tree.root, "y") for _ in range(50)}
        assert child not in fresh


class TestDelete:
    def test_leaf(self, t1_tree):
        assert t1_tree.delete_node("A") == 1
        assert not t1_tree.exists("A")
        assert t1_tree.nodes["R"].children == ["B"]

    def test_subtree_count(self, t1_tree):
        assert t1_tree.delete_node("B") == 3
        assert not t1_tree.exists("B1")

    def test_root_protected(self, t1_tree):
        with pytest.raises(CannotDeleteRoot):
            t1_tree.delete_node("R")

    def test_count_matches_independent_walk(self):
        rng = random.Random(7)
        doc = randgen.random_document(rng)
        tree = doc.tree
        candidates = [n for n in tree.preorder() if n != tree.root]
        if not candidates:
            return

        def walk(node_id):
            return 1 + sum(walk(c) for c in tree.nodes[node_id].children)

        victim = rng.choice(candidates)
        expected = walk(victim)
        assert tree.delete_node(victim) == expected
        tree.audit()


class TestMove:
    def test_sibling_reorder(self, t1_tree):
        t1_tree.move_node("B", "R", 0)
        assert t1_tree.nodes["R"].children == ["B", "A"]

    def test_reparent_subtree(self, t1_tree):
        t1_tree.move_node("A", "B", 0)
        assert t1_tree.nodes["B"].children == ["A", "B1", "B2"]
        assert t1_tree.parent_id("A") == "B"
        t1_tree.audit()

    def test_cycle_guard(self, t1_tree):
        with pytest.raises(CycleWouldForm):
            t1_tree.move_node("B", "B1", 0)
        with pytest.raises(CycleWouldForm):
            t1_tree.move_node("B", "B", 0)
        with pytest.raises(CycleWouldForm):
            t1_tree.move_node("R", "A", 0)

    def test_position_bound_same_parent(self, t1_tree):
        # [A, B] minus the moving node leaves one slot at index 1
        t1_tree.move_node("A", "R", 1)
        assert t1_tree.nodes["R"].children == ["B", "A"]
        with pytest.raises(PositionOutOfRange):
            t1_tree.move_node("A", "R", 2)

    def test_move_is_a_permutation(self):
        rng = random.Random(11)
        doc = randgen.random_document(rng)
        tree = doc.tree
        before = set(tree.nodes)
        ids = list(tree.preorder())
        for _ in range(30):
            node = rng.choice(ids)
            target = rng.choice(ids)
            position = rng.randint(0, len(tree.nodes[target].children))
            try:
                tree.move_node(node, target, position)
            except (CycleWouldForm, PositionOutOfRange):
                continue
        assert set(tree.nodes) == before
        tree.audit()


class TestSetters:
    def test_content_round_trip(self, t1_tree):
        t1_tree.set_content("A", "<p>hi</p>")
        assert t1_tree.nodes["A"].content == "<p>hi</p>"

    def test_script_rejected(self, t1_tree):
        with pytest.raises(InvalidFragment):
            t1_tree.set_content("A", "<script>x</script>")

    def test_paper_outline_shape_accepted(self, t1_tree):
        t1_tree.set_content("A", "<ul><li><b>key</b> point</li></ul>")
        assert t1_tree.nodes["A"].content == "<ul><li><b>key</b> point</li></ul>"

    def test_set_title(self, t1_tree):
        t1_tree.set_title("A", "New Alpha")
        assert t1_tree.nodes["A"].title == "New Alpha"

    def test_modified_timestamp_updates(self):
        ticks = iter(range(100, 200))
        tree = DocumentTree.create("Doc", clock=lambda: next(ticks))
        before = tree.modified_ms
        tree.add_child(tree.root, "x")
        assert tree.modified_ms > before


class TestAudit:
    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_random_edit_sequences_keep_invariants(self, seed):
        rng = random.Random(seed)
        doc = randgen.random_document(rng, max_nodes=25)
        tree = doc.tree
        for _ in range(40):
            ids = list(tree.preorder())
            action = rng.random()
            try:
                if action < 0.35:
                    tree.add_child(rng.choice(ids), randgen.words(rng, 1, 3),
                                   randgen.fragment(rng),
                                   position=rng.randint(0, 3))
                elif action < 0.6:
                    tree.move_node(rng.choice(ids), rng.choice(ids),
                                   rng.randint(0, 3))
                elif action < 0.85 and len(ids) > 1:
                    tree.delete_node(rng.choice(ids))
                else:
                    tree.set_content(rng.choice(ids), randgen.fragment(rng))
            except (CycleWouldForm, PositionOutOfRange, CannotDeleteRoot,
                    UnknownNode):
                pass
            tree.audit()

    def test_preorder_serialization_order(self, t1_tree):
        assert list(t1_tree.nodes_payload()) == ["R", "A", "B", "B1", "B2"]
