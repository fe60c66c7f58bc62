"""Walk through the lattice-path codecs on small, fully enumerable examples.

Run with:  python3 demos/codec_walkthrough.py
"""

import planeforest as pf

# --- the rotation lemma on a concrete bridge --------------------------------
# A lattice bridge ends at -1 with downsteps of size at most 1.  Exactly one
# cyclic shift turns it into a first-passage bridge, namely the shift at the
# first global minimum.

bridge = pf.LatticeBridge((0, -1, -1, -2, -1, 1, 0, -1))
r = pf.rotation_index(bridge)
shifted = pf.cyclic_shift(bridge, r)
print("bridge:          ", bridge.values)
print("first argmin at: ", r)
print("shifted (FPB):   ", shifted.values, "->", pf.is_first_passage(shifted))

# --- bridge <-> marked tree --------------------------------------------------
# Decoding the shifted bridge as a depth-first walk gives a plane tree; the
# shift amount is remembered as a marked node, so nothing is lost.

tree, mark = pf.marked_tree_from_bridge(bridge)
print("\ndecoded tree (lex degrees):", tree.lex)
print("marked node:               u_%d" % mark)
print("round trip:                ", pf.bridge_from_marked_tree(tree, mark).values)

# --- coding walks and forests ------------------------------------------------
# A shuffled degree vector gives a walk ending at -c; cutting at the first
# passage times of -1, ..., -(c-1) yields c trees, the last one marked.

walk = pf.walk_from_degrees((2, 0, 0, 2, 0, 0))
mcf = pf.mcf_from_walk(walk)
print("\nwalk:", walk.values, " depth:", walk.k)
print("trees:", [t.lex for t in mcf.forest.trees], " mark:", mcf.mark)

# --- exact counts ------------------------------------------------------------
# s = {0:4, 2:2} has 6!/(4!2!) = 15 marked cyclic forests and
# 15 * c/n = 15 * 2/6 = 5 plane forests.

s = pf.validate({0: 4, 2: 2})
print("\ndegree sequence:", dict(s.counts), " n =", s.n, " c =", s.c)
print("marked cyclic forests:", pf.count_mcf(s))
print("plane forests:        ", pf.count_forests(s))
for i, f in enumerate(pf.enumerate_forests(s)):
    print(f"  forest {i}:", [t.lex for t in f.trees])
