"""Smoke test for the ordalg Python extension."""

import json

import ordalg_py as oa


def main():
    c2 = oa.Poset.chain(2)
    assert len(c2) == 2 and c2.le("0", "1") and not c2.le("1", "0")
    assert len(c2.monotone_maps(c2)) == 3
    assert c2.product(oa.Poset.antichain(1)).is_isomorphic(c2)
    assert oa.Poset(["a", "b", "c"], [["a", "b"]]).components() == [["a", "b"], ["c"]]

    q, proj = oa.posetal_reflection_of(["a", "b"], [["a", "b"], ["b", "a"]])
    assert len(q) == 1 and proj["a"] == proj["b"]

    one = {"elements": ["*"]}
    chain = json.loads(c2.to_json())
    bot = oa.Map.from_json(json.dumps({"dom": one, "cod": chain, "table": {"*": "0"}}))
    top = oa.Map.from_json(json.dumps({"dom": one, "cod": chain, "table": {"*": "1"}}))
    obj, arrow = oa.coinserter(top, bot)
    assert len(obj) == 1 and arrow.is_surjective()

    collapse = oa.Map.from_json(json.dumps({"dom": chain, "cod": one, "table": {"0": "*", "1": "*"}}))
    assert sorted(oa.subkernel(collapse)) == [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]
    mid, epi, mono = oa.factorize(collapse)
    assert epi.is_surjective() and mono.is_embedding() and len(mid) == 1
    pb, to_a, to_b = oa.pullback(collapse, collapse)
    assert len(pb) == 4 and to_b.is_surjective()

    anti = {"elements": ["a", "b"]}
    rel = json.dumps({"target": anti, "pairs": [["a", "a"], ["b", "b"], ["a", "b"]]})
    flags = oa.classify_relation(rel)
    assert flags["is_subcongruence"] and not flags["is_congruence"]
    quo, _ = oa.quotient(rel)
    assert len(quo) == 2

    proj_alg = oa.Algebra.from_json(json.dumps({
        "signature": [{"name": "m", "arity": 2}],
        "poset": anti,
        "ops": {"m": [[["a", "a"], "a"], [["a", "b"], "a"], [["b", "a"], "b"], [["b", "b"], "b"]]},
    }))
    holds, witness = proj_alg.satisfies(["x", "y"], "m(x,y)", "m(y,x)")
    assert not holds and witness == [("x", "a"), ("y", "b")]

    try:
        oa.Poset(["a", "b"], [["a", "b"], ["b", "a"]])
    except ValueError:
        pass
    else:
        raise AssertionError("cyclic order accepted")

    assert len(oa.suites()) == 12
    report = oa.verify("effectivity", size=3)
    assert report["failed"] == 0 and report["checked"] > 0 and report["config"]["seed"] == 0
    print("smoke test passed")


if __name__ == "__main__":
    main()
