"""Smoke test for the cohera Python extension."""

import json
import os
import tempfile

import cohera

MODEL = {
    "omega": ["a", "b", "c"],
    "partitions": {"px": [0, 0, 1], "py": [0, 1, 1]},
    "sets": {
        "D": {"kind": "assertions", "gambles": ["1,-1,0"]},
        "E": {"kind": "event", "event": "S"},
        "F": {"kind": "event", "worlds": ["b", "c"]},
        "M": {"kind": "lex-atom", "order": ["b", "a", "c"]},
    },
    "events": {"S": ["a", "b"]},
}


def main():
    assert cohera.coherent(["1,-1,0"])
    assert not cohera.coherent(["-1,0,0"])
    assert cohera.natural_extension_contains(["1,-1"], "2,-1")
    assert not cohera.natural_extension_contains(["1,-1"], "-1,1")

    m = cohera.Model.from_json(json.dumps(MODEL))
    assert m.worlds == ["a", "b", "c"]
    assert m.closure_additions == ["a|b|c"], m.closure_additions
    assert m.member("D", "1,-1,1")
    assert not m.member("D", "-1,1,0")
    assert m.combine(["E", "F"]) == {"kind": "event", "worlds": ["b"]}
    assert m.extract("E", "px") == {"kind": "event", "worlds": ["a", "b"]}
    assert m.extract("D", "px") == {"kind": "unit"}
    assert m.support("F") == ("py", True)
    assert m.saturate(["a"], "py") == ["a"]
    assert not m.independent(["px", "py"])
    assert m.cond_independent(["px", "py"], "a|b|c")
    assert m.lift(["a", "c"]) == {"kind": "event", "worlds": ["a", "c"]}
    assert len(m.atoms()[0]) == 6
    assert len(m.atoms("py")) == 2
    assert m.at_of("F") == [["b", "a", "c"], ["b", "c", "a"], ["c", "a", "b"], ["c", "b", "a"]]

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "model.json")
        with open(path, "w") as fh:
            fh.write(m.to_json())
        again = cohera.Model.load(path)
        assert again.digest == m.digest

    try:
        m.extract("D", "nope")
    except cohera.CoheraError as e:
        assert "nope" in str(e)
    else:
        raise AssertionError("unknown question accepted")

    try:
        cohera.verify(size_limit=6)
    except cohera.LimitExceededError:
        pass
    else:
        raise AssertionError("size limit not enforced")

    report = cohera.verify("separoid,saturation,atom-separoid", size_limit=3, seed=7)
    assert report["asserted_failures"] == 0
    assert report["exit_status"] == 0
    assert report["suites"][2]["exploratory"]["join-reverse"]["counterexamples"] > 0
    print("smoke test passed")


if __name__ == "__main__":
    main()
