"""Exact Littlestone dimension over a finite domain, with witness trees.

The dimension of a member set V is computed by the standard recursion:
0 when no domain point splits V into two non-empty parts, otherwise

    max over splitting points x of  1 + min(Ldim(V | x->0), Ldim(V | x->1)).

Member sets are bitmasks, memoized per computation. The recursion is pruned
with the log2 cardinality ceiling, which never changes the result because no
set of size s admits a shattered tree deeper than floor(log2 s).

Witness trees are stored in heap order: node 1 is the root and the children
of node i are 2i (label 0 branch) and 2i+1 (label 1 branch), so the node
visited at level t along labels (y_1, ..., y_{t-1}) has index
2^(t-1) + sum_j y_j 2^(t-1-j).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import EmptyVersionSpace
from .hypotheses import FiniteHypothesisClass, VersionSpace

WITNESS_D_CAP = 20


@dataclass(frozen=True)
class ShatteredTree:
    """Complete binary instance tree of the given depth, nodes in heap order."""

    depth: int
    nodes: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("tree depth must be non-negative")
        if len(self.nodes) != (1 << self.depth) - 1:
            raise ValueError(
                f"a depth-{self.depth} tree needs {(1 << self.depth) - 1} nodes, "
                f"got {len(self.nodes)}"
            )


@dataclass(frozen=True)
class LdimResult:
    value: int
    witness: ShatteredTree | None = None


class LdimComputer:
    """Memoized Littlestone-dimension evaluator for one hypothesis class.

    The memo cache is keyed on the member bitmask and lives for this
    instance only; independent callers own independent caches.
    """

    def __init__(self, cls: FiniteHypothesisClass):
        self.cls = cls
        self._memo: dict[int, int] = {}

    def value(self, mask: int) -> int:
        cached = self._memo.get(mask)
        if cached is not None:
            return cached
        size = mask.bit_count()
        if size <= 1:
            self._memo[mask] = 0
            return 0
        cap = size.bit_length() - 1  # floor(log2 size)
        best = 0
        for j in range(self.cls.n):
            ones = self.cls.ones_mask(j)
            m1 = mask & ones
            m0 = mask & ~ones
            if m1 and m0:
                candidate = 1 + min(self.value(m0), self.value(m1))
                if candidate > best:
                    best = candidate
                    if best >= cap:
                        break
        self._memo[mask] = best
        return best

    def space_value(self, space: VersionSpace) -> int:
        if not space:
            raise EmptyVersionSpace("Ldim of an empty member set is undefined")
        return self.value(space.mask)

    def witness(self, mask: int, depth: int) -> tuple[int, ...]:
        """Nodes of a depth-`depth` tree shattered by the members of `mask`.

        Requires value(mask) >= depth. Splitting points are chosen as the
        lowest-indexed domain point whose two restriction sides both still
        support depth - 1, which makes the witness deterministic.
        """
        if depth == 0:
            return ()
        for j in range(self.cls.n):
            ones = self.cls.ones_mask(j)
            m1 = mask & ones
            m0 = mask & ~ones
            if m1 and m0 and min(self.value(m0), self.value(m1)) >= depth - 1:
                left = self.witness(m0, depth - 1)
                right = self.witness(m1, depth - 1)
                return _graft(self.cls.domain[j], left, right, depth)
        raise AssertionError(f"no splitting point supports depth {depth}")


def _graft(
    root: int, left: tuple[int, ...], right: tuple[int, ...], depth: int
) -> tuple[int, ...]:
    """Assemble heap-ordered nodes from a root and two depth-(d-1) subtrees."""
    nodes = [root]
    # level k of the subtrees (k = 0 .. depth-2) becomes level k+1 of the tree
    for level in range(depth - 1):
        start, width = (1 << level) - 1, 1 << level
        nodes += list(left[start : start + width]) + list(right[start : start + width])
    return tuple(nodes)


def ldim(
    cls: FiniteHypothesisClass,
    members: VersionSpace | None = None,
    want_witness: bool = False,
    witness_cap: int = WITNESS_D_CAP,
) -> LdimResult:
    """Littlestone dimension of the member set (default: the whole class)."""
    space = members if members is not None else cls.full_space()
    computer = LdimComputer(cls)
    value = computer.space_value(space)
    witness = None
    if want_witness:
        if len(space) > witness_cap:
            raise ValueError(
                f"witness extraction is capped at {witness_cap} members, got {len(space)}"
            )
        witness = ShatteredTree(value, computer.witness(space.mask, value))
    return LdimResult(value, witness)


def ldim_witness_check(
    cls: FiniteHypothesisClass, members: VersionSpace, tree: ShatteredTree
) -> bool:
    """True iff every root-to-leaf labeling of the tree is realized by a member.

    Walks each of the 2^depth labelings through the heap-ordered nodes and
    asks for a surviving hypothesis consistent with the whole path.
    """
    for labels in product((0, 1), repeat=tree.depth):
        alive = members.mask
        i = 1
        for y in labels:
            j = cls.column_index(tree.nodes[i - 1])
            ones = cls.ones_mask(j)
            alive &= ones if y == 1 else ~ones
            i = 2 * i + y
        if not alive:
            return False
    return True
