import numpy as np
import pytest

from posact import fixtures as F
from posact import harness as H
from posact.constructions import (
    end_pomonoid,
    hom_left_sposet,
    hom_right_sposet,
    product,
    regular_representation,
)
from posact.core import validate_map
from posact.decide import is_cyclic_projective, is_generator
from posact.search import iter_tables

SMALL = H.Universe(max_order=2, max_size=3, bound=2)


def _retract_instances(U, step=3):
    for S in U.pomonoids():
        for A in U.sposets(S)[::step]:
            for f, g, B in H.retract_classes(A):
                yield S, A, B, f, g


@pytest.mark.parametrize("tid", sorted(H.REGISTRY))
def test_every_check_clean_on_small_universe(tid):
    rep = H.verify(tid, SMALL)
    assert not rep.violations
    assert rep.instances == rep.verified + rep.inconclusive
    text = rep.text()
    assert text.startswith("theorem=%s mode=%s universe=" % (tid, H.REGISTRY[tid].mode))
    assert ("instances=%d verified=%d" % (rep.instances, rep.verified)) in text
    assert text.rstrip().endswith("status=%s" % rep.status)


def test_alias_and_unknown():
    assert H.get_check("P2.9").id == "T2.10"
    with pytest.raises(H.UnknownTheoremId):
        H.verify("X9.9", SMALL)
    with pytest.raises(H.UnknownClaimId):
        H.counterexample_search("nonsense", SMALL)


def test_retract_homs_direct():
    n = 0
    for S, A, B, f, g in _retract_instances(H.Universe(3, 3, 2), step=2):
        hBA, hAB = H.retract_homs(A, f, g)
        assert hBA.maps == tuple(iter_tables(B, A))
        assert hAB.maps == tuple(iter_tables(A, B))
        n += 1
    assert n > 100


def test_retract_classes_one_per_iso_class():
    from posact.constructions import endomorphism_retracts
    from posact.enumeration import canonical_sposet_key

    for S in H.Universe(3, 3, 2).pomonoids()[::3]:
        for A in H.Universe(3, 3, 2).sposets(S):
            got = H.retract_classes(A)
            want = {canonical_sposet_key(f.cod) for f, g in endomorphism_retracts(A)}
            assert sorted(canonical_sposet_key(B) for _, _, B in got) == sorted(want)
            for f, g, B in got:
                validate_map(A, B, f.table)
                validate_map(B, A, g.table)
                assert all(f.table[g.table[b]] == b for b in range(B.size))


def test_unvalidated_constructions_agree():
    for S, A, B, f, g in _retract_instances(H.Universe(3, 3, 2), step=5):
        assert end_pomonoid(A, validate=False) == end_pomonoid(A)
        eA, eB = end_pomonoid(A), end_pomonoid(B)
        assert hom_right_sposet(B, A, eB, validate=False) == hom_right_sposet(B, A, eB)
        assert hom_left_sposet(B, A, eA, validate=False) == hom_left_sposet(B, A, eA)
        assert product(A, B, validate=False).obj == product(A, B).obj


def test_certificates_are_sound():
    """A certified epi or retraction is a genuine one."""
    checked = 0
    for S, A, B, f, g in _retract_instances(H.Universe(3, 3, 2), step=2):
        eA, eB = end_pomonoid(A), end_pomonoid(B)
        hBA, hAB = H.retract_homs(A, f, g)
        Hs = H._Hom("left", A, B, eB, hAB)
        cand = eB.mapset.positions(hAB.array[:, list(g.table)])
        if H._epi_certified(Hs, cand):
            obj = Hs.sposet()
            assert obj == hom_left_sposet(A, B, eB, hAB.maps)
            validate_map(obj, regular_representation(obj.over), cand.tolist())
            assert is_generator(obj).value
            checked += 1
        Hl = H._Hom("left", B, A, eA, hBA)
        TA = np.asarray(eA.maps)
        gamma = eA.mapset.positions(hBA.array[:, list(f.table)])
        pi = hBA.positions(TA[:, list(g.table)])
        if H._retract_certified(Hl, gamma, pi):
            obj = Hl.sposet()
            R = regular_representation(obj.over)
            validate_map(obj, R, gamma.tolist())
            validate_map(R, obj, pi.tolist())
            assert is_cyclic_projective(obj).value
            checked += 1
    assert checked > 100


def test_certificate_rejects_non_maps():
    A, B, f, g = F.X(), F.B(), F.f(), F.g()
    eB = end_pomonoid(B)
    hAB = H.retract_homs(A, f, g)[1]
    Hs = H._Hom("left", A, B, eB, hAB)
    good = list(eB.mapset.positions(hAB.array[:, list(g.table)]))
    assert H._epi_certified(Hs, good)
    # constant onto nothing, and a scrambled table
    assert not H._epi_certified(Hs, [0] * len(hAB))
    assert len(hAB) == len(Hs.sposet().act)
    bad = list(good)
    bad[0], bad[-1] = bad[-1], bad[0]
    if bad != good:
        assert H._epi_certified(Hs, bad) == (validate_ok(Hs.sposet(), bad))


def validate_ok(obj, table):
    from posact.core import ValidationError

    try:
        validate_map(obj, regular_representation(obj.over), table)
        return True
    except ValidationError:
        return False


def test_witness_round_trip(tmp_path):
    S = F.S2()
    payload = {"S": S, "A": F.X(), "B": F.B(), "f": F.f(), "g": F.g()}
    H.write_witness(tmp_path / "w", "T3.12", payload, "example")
    tid, back = H.load_witness(tmp_path / "w")
    assert tid == "T3.12"
    assert back["A"] == F.X() and back["f"].table == F.f().table
    assert H.replay(tmp_path / "w", SMALL) == H.get_check("T3.12").check(payload, SMALL)


def test_violations_are_reported_and_replayable(tmp_path, monkeypatch):
    real = H.REGISTRY["P2.1"]
    fake = H.TheoremCheck("P2.1", real.claim, "exact", real.instances,
                          lambda p, U: (H.VIOLATION, "forced") if p["A"].size == 1 else (H.VERIFIED, ""))
    monkeypatch.setitem(H.REGISTRY, "P2.1", fake)
    rep = H.verify("P2.1", SMALL, witness_dir=str(tmp_path))
    assert rep.status == H.VIOLATION
    assert len(rep.violations) == len(SMALL.pomonoids())
    assert len(rep.witness_files) == len(rep.violations)
    assert "# violation: forced" in rep.text()
    assert H.replay(rep.witness_files[0], SMALL)[0] == H.VIOLATION


def test_jobs_do_not_change_reports():
    for tid in ("P2.1", "T3.12", "P3.13i"):
        one = H.verify(tid, SMALL, jobs=1).text()
        two = H.verify(tid, SMALL, jobs=2).text()
        assert one == two


def test_counterexample_search():
    U = H.Universe(max_order=2, max_size=4, bound=3)
    w = H.counterexample_search("split-epi-not-slice-injective", U, [F.S2()])
    assert w is not None and w["A"].size <= F.X().size
    w = H.counterexample_search("projective-not-generator", H.Universe(3, 3, 2))
    assert w is not None
    assert not is_generator(w["A"])


def test_diamond_check():
    rep = H.verify("R3.11")
    assert rep.status == H.VERIFIED and rep.universe == "fixture"
