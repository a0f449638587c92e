"""Smoke test for the `ped` extension module.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o target/wheels
    pip install --force-reinstall target/wheels/ped-*.whl

then run `python3 python/smoke_test.py`.
"""

import json

import ped


def check_partitions():
    p = ped.Partition([1, 3, 2])
    assert p.parts == [3, 2, 1] and p.weight == 6 and len(p) == 3
    assert p == ped.Partition([3, 2, 1]) and hash(p) == hash(ped.Partition([2, 1, 3]))
    assert p.is_member("de1") and not ped.Partition([4, 3]).is_member("de1")
    assert ped.Partition([]).is_member("ped")
    assert [q.parts for q in ped.enumerate_class(5, "de1")] == [[5], [3, 2], [3, 1, 1], [1, 1, 1, 1, 1]]
    assert len(ped.enumerate_all(10)) == 42
    assert ped.count_class(5, "ped") == 6
    for bad in ([2, 0], [-1]):
        try:
            ped.Partition(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"accepted {bad}")


def check_maps():
    m = ped.phi3([4, 3, 1])
    assert (m.image, m.case, m.target_weight) == ([5, 4, 1], "P3_CASE2I", 10)
    back = ped.psi3(m.image, 8)
    assert back.image == [4, 3, 1] and back.case == "PSI3_CASE2"

    m = ped.phi1([4, 3])
    assert (m.image, m.case, m.target_weight) == ([3, 3], "P1_CASE2", 6)
    assert ped.psi1([3, 3], 7).image == [4, 3]

    for call in (lambda: ped.phi1([2, 2, 1]), lambda: ped.psi3([5, 2], 9)):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("precondition not enforced")

    for n in range(1, 11):
        for which in ("phi1", "phi3"):
            assert ped.verify_bijection_layer(n, which).passed


def check_series():
    assert ped.series("ped", 5) == [1, 1, 2, 3, 4, 6]
    assert ped.series("4regular", 5) == ped.series("ped", 5)
    assert ped.series("de2", 1) == [0, 0]
    assert ped.pochhammer(1, 1, 1, None, 7) == [1, -1, -1, 0, 0, 1, 0, 1]
    assert ped.pochhammer(-1, 2, 2, 2, 6) == [1, 0, 1, 0, 1, 0, 1]
    for which in ("T1", "T2", "T3"):
        lhs, rhs = ped.theorem_sides(which, 120)
        assert lhs == rhs, which
    big = ped.series("ped", 200)[200]
    assert big == 122730022082 and isinstance(big, int)


def check_verifier():
    reports = ped.verify_all(12, 60)
    assert len(reports) == 14 and all(r.passed for r in reports)
    doc = json.loads(reports[0].to_json())
    assert sorted(doc) == ["identity", "method", "range", "verdict", "witness"]

    r = ped.verify_identity("T1", 40, "SERIES")
    assert r.passed and r.range == (0, 40) and r.witness is None

    faulty = ped.verify_all(12, 60, faults=["coeff:de3:9"])
    failing = sorted((r.identity, r.method) for r in faulty if not r.passed)
    assert failing == [("GF_DE3", "CROSS"), ("T3", "SERIES")], failing
    assert all(r.witness.startswith("n=9") for r in faulty if not r.passed)

    faulty = ped.verify_all(12, 60, faults=["case:P1_CASE1"])
    failing = [(r.identity, r.method) for r in faulty if not r.passed]
    assert failing == [("LEMMA_2_1", "BIJECTION")], failing


def main():
    check_partitions()
    check_maps()
    check_series()
    check_verifier()
    print("python smoke test passed")


if __name__ == "__main__":
    main()
