import math
from fractions import Fraction

import pytest

antipode = pytest.importorskip("antipode")


def test_hypercube_report(report_validator):
    r = antipode.analyze_family("hypercube", d=6)
    report_validator.validate(r)
    assert antipode.exact(r["bounds"]["average"]) == 3
    assert r["bounds"]["lower_tight"]
    assert r["antipodality"]["tier"] == "STRICTLY_ANTIPODAL"
    assert r["antipodality"]["antipodal_map"][0] == 63
    masses = [antipode.exact(e["mass"]) for e in r["distribution"]]
    assert masses == [Fraction(math.comb(6, j), 64) for j in range(7)]


def test_petersen_and_fast_path(report_validator):
    full = antipode.analyze_family("petersen")
    fast = antipode.analyze_family("petersen", fast_path=True)
    report_validator.validate(fast)
    assert full["bounds"]["average"]["exact"] == "3/2"
    assert full["antipodality"]["tier"] == "ANTIPODAL"
    assert fast["method"] == "fast-path"
    assert fast["invariants_sha256"] == full["invariants_sha256"]


def test_cayley_abelian():
    r = antipode.analyze_family("cayley-abelian", moduli=[4, 4], connection=[(1, 0), (3, 0), (0, 1), (0, 3)])
    assert r["points"] == 16
    assert r["antipodality"]["tier"] == "STRICTLY_ANTIPODAL"
    assert r["transitivity"]["status"] == "certificate"


def test_edges_path_refuted():
    r = antipode.analyze_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert r["transitivity"]["status"] == "refutation"
    # A < D/2 on a path, but the hypotheses do not hold
    assert [v["check"] for v in r["violations"]] == ["lower_bound"]
    assert not any(v["theorem_applies"] for v in r["violations"])


def test_no_aut_requires_evidence():
    r = antipode.analyze_family("cycle", n=8, no_aut=True)
    assert r["antipodality"]["tier"] is None
    assert r["antipodality"]["evidence_required"]


def test_matrix_text_and_errors():
    r = antipode.analyze_text("2\n0 3/2\n3/2 0\n")
    assert r["method"] == "matrix"
    assert r["antipodality"]["tier"] == "STRICTLY_ANTIPODAL"
    with pytest.raises(antipode.AntipodeError) as err:
        antipode.analyze_text("3\n0 5 10\n5 0 1\n10 1 0\n")
    assert err.value.code == "TriangleViolation"
    assert err.value.witness == (0, 2, 1)
    with pytest.raises(antipode.AntipodeError) as err:
        antipode.analyze_edges(4, [(0, 1), (2, 3)])
    assert err.value.code == "Disconnected"


def test_padic_closed_form():
    for p in (2, 3, 5):
        for k in range(1, 5):
            got = antipode.exact(antipode.padic_average(p, k)["average"])
            assert got == Fraction(p, p + 1) * (1 - Fraction(1, p ** (2 * k)))


def test_sampling_deterministic(sample_validator):
    before = antipode.threads()
    a = antipode.sample_sphere(3, 20000, 11)
    antipode.set_threads(3)
    b = antipode.sample_sphere(3, 20000, 11)
    antipode.set_threads(before)
    sample_validator.validate(a)
    assert a == b
    assert abs(a["estimate"]["mean"] - math.pi / 2) < 4 * a["estimate"]["stderr"]
    t = antipode.sample_torus(20000, 11)
    sample_validator.validate(t)
    assert math.sqrt(2) / 4 < t["estimate"]["mean"] < math.sqrt(2) / 2
