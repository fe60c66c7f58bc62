"""Plane trees, forests, and the lattice-path codecs.

A plane tree is stored canonically as its lexicographic (depth-first,
children left-to-right) degree sequence; the depth-first walk is the
partial-sum path of those degrees minus one and is a first-passage bridge.
Marked trees biject with lattice bridges through the rotation lemma, and
marked cyclic forests biject with coding walks by cutting at passage times.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .degseq import DegreeSequence, degree_vector, validate
from .errors import MalformedBridge, TooLarge
from .lattice_paths import (
    CodingWalk,
    FirstPassageBridge,
    LatticeBridge,
    concat_segments,
    cyclic_shift,
    rotation_index,
    split_at_passage_times,
    walk_from_degrees,
)


@dataclass(frozen=True)
class PlaneTree:
    """Ordered rooted tree; ``lex`` lists node degrees in depth-first order."""

    lex: tuple[int, ...]

    def __post_init__(self):
        lex = tuple(int(d) for d in self.lex)
        object.__setattr__(self, "lex", lex)
        bal = 0
        for i, d in enumerate(lex):
            bal += d - 1
            if bal < 0 and i < len(lex) - 1:
                raise MalformedBridge("lex sequence closes the tree early")
        if bal != -1:
            raise MalformedBridge("lex sequence does not close the tree")

    @property
    def size(self) -> int:
        return len(self.lex)

    def children_lists(self) -> list[list[int]]:
        """children_lists()[i] = 0-based lex positions of node i's children."""
        children: list[list[int]] = [[] for _ in self.lex]
        stack: list[tuple[int, int]] = []  # (node, children still expected)
        for i, d in enumerate(self.lex):
            if stack:
                parent, left = stack.pop()
                children[parent].append(i)
                if left > 1:
                    stack.append((parent, left - 1))
            if d > 0:
                stack.append((i, d))
        return children

    def parents(self) -> list[int]:
        """Parent lex position per node; -1 for the root."""
        par = [-1] * self.size
        for v, kids in enumerate(self.children_lists()):
            for u in kids:
                par[u] = v
        return par


@dataclass(frozen=True)
class PlaneForest:
    """Nonempty sequence of plane trees."""

    trees: tuple[PlaneTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        if not self.trees:
            raise MalformedBridge("forest must contain at least one tree")

    @property
    def size(self) -> int:
        return sum(t.size for t in self.trees)

    def degree_sequence(self) -> DegreeSequence:
        counts: dict[int, int] = {}
        for t in self.trees:
            for d in t.lex:
                counts[d] = counts.get(d, 0) + 1
        return validate(counts)

    def to_json(self, mark: tuple[int, int] | None = None) -> str:
        obj: dict = {"trees": [list(t.lex) for t in self.trees]}
        if mark is not None:
            obj["mark"] = list(mark)
        return json.dumps(obj)

    @staticmethod
    def from_json(text: str) -> "PlaneForest":
        obj = json.loads(text)
        return PlaneForest(tuple(PlaneTree(tuple(t)) for t in obj["trees"]))


@dataclass(frozen=True)
class MarkedCyclicForest:
    """Plane forest with a marked node in its last tree.

    ``mark`` is (tree index, lex position), both 0-based for the tree index
    and 1-based for the position within the tree.
    """

    forest: PlaneForest
    mark: tuple[int, int]

    def __post_init__(self):
        ti, pos = self.mark
        trees = self.forest.trees
        if ti != len(trees) - 1:
            raise MalformedBridge("mark must lie in the last tree")
        if not 1 <= pos <= trees[ti].size:
            raise MalformedBridge("mark position outside the marked tree")

    def to_json(self) -> str:
        return self.forest.to_json(mark=self.mark)


def lex_degrees(t: PlaneTree) -> tuple[int, ...]:
    """Node degrees in lexicographic order (the canonical storage)."""
    return t.lex


def dfw_encode(t: PlaneTree) -> FirstPassageBridge:
    """Depth-first walk of the tree: partial sums of lex degrees minus one."""
    return FirstPassageBridge(walk_from_degrees(t.lex).values)


def dfw_decode(b: FirstPassageBridge) -> PlaneTree:
    """Unique plane tree whose depth-first walk is b."""
    if not isinstance(b, FirstPassageBridge):
        b = FirstPassageBridge(tuple(b))
    return PlaneTree(tuple(x + 1 for x in b.increments()))


def marked_tree_from_bridge(b: LatticeBridge) -> tuple[PlaneTree, int]:
    """Decode a lattice bridge as a marked tree.

    Rotates at the first-minimum index r, decodes the resulting
    first-passage bridge, and marks the node at lex position |T| - r + 1
    (1-based).
    """
    r = rotation_index(b)
    fpb = cyclic_shift(b, r)
    tree = dfw_decode(FirstPassageBridge(fpb.values))
    return tree, tree.size - r + 1


def bridge_from_marked_tree(t: PlaneTree, mark: int) -> LatticeBridge:
    """Exact inverse of :func:`marked_tree_from_bridge`."""
    n = t.size
    if not 1 <= mark <= n:
        raise ValueError(f"mark {mark} outside [1, {n}]")
    r = n - mark + 1
    fpb = dfw_encode(t)
    # Shifting by r sent the original bridge to fpb; undo with n - r.
    k_back = n - r
    if k_back == 0:
        return LatticeBridge(fpb.values)
    return cyclic_shift(fpb, k_back)


def mcf_from_walk(w: CodingWalk) -> MarkedCyclicForest:
    """Decode a coding walk of depth k as k-1 trees plus one marked tree."""
    segments = split_at_passage_times(w)
    trees = [dfw_decode(FirstPassageBridge(seg.values)) for seg in segments[:-1]]
    last, pos = marked_tree_from_bridge(segments[-1])
    trees.append(last)
    forest = PlaneForest(tuple(trees))
    return MarkedCyclicForest(forest, (len(trees) - 1, pos))


def walk_from_mcf(m: MarkedCyclicForest) -> CodingWalk:
    """Exact inverse of :func:`mcf_from_walk`."""
    trees = m.forest.trees
    segments: list[LatticeBridge] = [dfw_encode(t) for t in trees[:-1]]
    segments.append(bridge_from_marked_tree(trees[-1], m.mark[1]))
    return concat_segments(segments)


def _locate_node(f: PlaneForest, node: int) -> tuple[int, int]:
    """Global 1-based lex index across trees -> (tree index, 1-based pos)."""
    if not 1 <= node <= f.size:
        raise ValueError(f"node {node} outside [1, {f.size}]")
    acc = 0
    for ti, t in enumerate(f.trees):
        if node <= acc + t.size:
            return ti, node - acc
        acc += t.size
    raise AssertionError("unreachable")


def forest_to_mcf(f: PlaneForest, marked_node: int) -> MarkedCyclicForest:
    """Rotate the trees so the marked node's tree comes last."""
    ti, pos = _locate_node(f, marked_node)
    trees = f.trees[ti + 1 :] + f.trees[: ti + 1]
    return MarkedCyclicForest(PlaneForest(trees), (len(trees) - 1, pos))


def mcf_preimages(m: MarkedCyclicForest) -> list[tuple[PlaneForest, int]]:
    """All (forest, global mark) pairs mapping to m; exactly c of them."""
    trees = m.forest.trees
    c = len(trees)
    pos = m.mark[1]
    out = []
    for k in range(c):
        rotated = trees[k:] + trees[:k]
        # The marked tree sits at position c - 1 - k in the rotated forest.
        before = sum(t.size for t in rotated[: c - 1 - k])
        out.append((PlaneForest(rotated), before + pos))
    return out


def count_mcf(s: DegreeSequence) -> int:
    """n! / prod(counts[i]!), the number of marked cyclic forests."""
    out = math.factorial(s.n)
    for k in s.counts.values():
        out //= math.factorial(k)
    return out


def count_forests(s: DegreeSequence) -> int:
    """(c/n) * count_mcf(s); always an integer by the cycle lemma."""
    total = s.c * count_mcf(s)
    assert total % s.n == 0
    return total // s.n


def _multiset_permutations(items: Sequence[int]) -> Iterator[list[int]]:
    """Distinct permutations of a multiset, in lexicographic order."""
    counts = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    n = len(items)
    current: list[int] = []

    def rec():
        if len(current) == n:
            yield list(current)
            return
        for k in keys:
            if counts[k] > 0:
                counts[k] -= 1
                current.append(k)
                yield from rec()
                current.pop()
                counts[k] += 1

    yield from rec()


def enumerate_walks(s: DegreeSequence) -> Iterator[CodingWalk]:
    """Coding walks of all distinct permutations of d(s); one per MCF."""
    for perm in _multiset_permutations(list(degree_vector(s))):
        yield walk_from_degrees(perm)


def enumerate_mcfs(s: DegreeSequence, cap: int = 10) -> Iterator[MarkedCyclicForest]:
    if s.n > cap:
        raise TooLarge(f"n={s.n} exceeds enumeration cap {cap}")
    for w in enumerate_walks(s):
        yield mcf_from_walk(w)


def enumerate_forests(s: DegreeSequence, cap: int = 10) -> Iterator[PlaneForest]:
    """Every plane forest with degree sequence s, exactly once.

    A permutation of d(s) codes a forest iff its walk first reaches -c at
    the last step, i.e. all c tree segments are first-passage bridges.
    """
    if s.n > cap:
        raise TooLarge(f"n={s.n} exceeds enumeration cap {cap}")
    c = s.c
    for perm in _multiset_permutations(list(degree_vector(s))):
        bal = 0
        ok = True
        for i, d in enumerate(perm):
            bal += d - 1
            if bal <= -c and i < len(perm) - 1:
                ok = False
                break
        if not ok:
            continue
        w = walk_from_degrees(perm)
        segments = split_at_passage_times(w)
        yield PlaneForest(tuple(dfw_decode(FirstPassageBridge(seg.values)) for seg in segments))
