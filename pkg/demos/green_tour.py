"""Green's relations of the shipped pomonoids, and which eS come out free.

    python demos/green_tour.py
"""
from posact import fixtures as F
from posact.cli import green_summary
from posact.constructions import idempotent_sub
from posact.decide import is_free, is_generator
from posact.green import green_related, idempotents

for name in ("S2", "S2c", "Z2", "RZ3", "N3"):
    S = F.get(name)
    print("==", name)
    for line in green_summary(S):
        print("  " + line)
    for e in idempotents(S):
        eS = idempotent_sub(S, e)
        print("  e=%s: |eS|=%d generator=%s free=%s e D 1=%s" % (
            S.label(e), eS.size, is_generator(eS).value, is_free(eS).value,
            green_related(S, "D", e, S.identity)))
