"""Quick end-to-end check of the Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import json

import stratachow


def main() -> None:
    r = stratachow.Ring([("x", 1), ("y", 1), ("z", 2)])
    x, y, z = r.parse("x"), r.parse("y"), r.parse("z")
    assert ((x + y) ** 2 - x * x - r.parse("2*x*y") - y * y).is_zero()

    ideal = stratachow.Ideal(r, [x * x - z, x * y])
    gb = ideal.groebner_basis()
    assert len(gb) >= 2
    report = ideal.member(x * x * y - y * z)
    assert report.member_over_q and report.smooth_over_z16
    assert report.cofactors is not None and len(report.cofactors) == 2
    assert not ideal.member(y ** 2).member_over_q
    assert ideal.member_linear(x * x * y - y * z)

    a2 = stratachow.catalog_ideal("m3bar.relations").generators()[0]
    assert a2.degree() == 2

    c9 = stratachow.compute_c9()
    assert c9 == stratachow.catalog_class("hyperelliptic.c9")
    assert len(c9) == 30

    p012 = stratachow.catalog_ideal("open.p012")
    assert not p012.member(stratachow.catalog_class("open.z2")).member_over_q

    audit = stratachow.run_scenario("relation-audit")
    assert audit.passed, audit.text
    assert json.loads(audit.json)["name"] == "relation-audit"

    print("smoke test passed")


if __name__ == "__main__":
    main()
