"""The diamond over S2 mapped onto a two-element chain.

f splits, yet its fiber over 0 is the three-element V shape {bot, a, b},
which has no join of a and b.  That alone stops f from being injective
in the slice over B, and the bounded square search agrees.

    python demos/diamond_map.py
"""
from posact import fixtures as F
from posact.slice import all_sections, fibers, incomplete_fiber, is_slice_emb_injective_bounded

f = F.f()
X, B = f.dom, f.cod

print("f:", ", ".join("%s->%s" % (X.label(a), B.label(b)) for a, b in enumerate(f.table)))
for g in all_sections(f):
    print("section:", ", ".join("%s->%s" % (B.label(b), X.label(a)) for b, a in enumerate(g.table)))

for b, els, _ in fibers(f):
    print("fiber over %s: {%s}" % (B.label(b), ",".join(X.label(a) for a in els)))
b, els = incomplete_fiber(f)
print("not a complete lattice: fiber over", B.label(b))

for k in (1, 2, 3):
    v = is_slice_emb_injective_bounded(f, k, refuters=False)
    w = v.witness
    if v.value:
        print("k=%d: every square fills" % k)
    else:
        print("k=%d: square with |V|=%d and no filler, v=%s" % (k, w.V.size, w.v))
