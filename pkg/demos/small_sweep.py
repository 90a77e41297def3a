"""Run the exact checks over every pomonoid of order <= 2 and S-poset of size <= 3,
then look for a split epi whose fibers are all complete but which still fails
the bounded slice test.

    python demos/small_sweep.py
"""
import time

from posact.harness import EXACT_SUITE, Universe, counterexample_search, verify

U = Universe(max_order=2, max_size=3)
t = time.time()
for tid in EXACT_SUITE:
    rep = verify(tid, U)
    print("%-6s %-12s %6d instances" % (tid, rep.status, rep.instances))
print("sweep took %.1fs" % (time.time() - t))

w = counterexample_search("split-epi-fiber-complete-not-slice-injective", Universe(max_order=2, max_size=4))
if w is None:
    print("no split epi with complete fibers fails within these bounds")
else:
    print("found over a pomonoid of order %d: f=%s" % (w["S"].size, w["f"].table))
