"""Smoke tests for the python bindings (run with PYTHONPATH at the built module)."""

import json
import sys

import _ni2 as ni2


def test_parse_roundtrip():
    assert ni2.parse_formula("forall X. X -> X") == "forall X. X -> X"
    assert ni2.parse_term("\\n: P. hyp n") == "\\n: P. hyp n"


def test_check():
    assert ni2.check("\\n: A. hyp n") == "A -> A"
    assert ni2.check("hyp f hyp p", assume=[("f", "P -> Q"), ("p", "P")]) == "Q"
    try:
        ni2.check("hyp n")
    except ni2.NiCheckError:
        pass
    else:
        raise AssertionError("unbound label must raise")


def test_rp():
    assert ni2.rp_formula("P \\/ Q") == "forall X. (P -> X) -> (Q -> X) -> X"
    star = ni2.rp_term("inl [Q] hyp p", assume=[("p", "P")])
    assert "/\\" in star


def test_normalize():
    term, terminated, trace = ni2.normalize("(\\n: P. hyp n) hyp p", assume=[("p", "P")])
    assert term == "hyp p"
    assert terminated == "NormalForm"
    steps = json.loads(trace)["steps"]
    assert steps and steps[0]["rule"] == "beta-imp"


def test_equiv():
    zero = ni2.church_numeral(0)
    one = ni2.church_numeral(1)
    assert ni2.equiv(zero, one, "betaetaeps") != "Equal"
    assert ni2.equiv(zero, zero, "beta") == "Equal"


def test_suite():
    report = json.loads(ni2.suite(3, 2))
    assert any(f["family"] == "betapres" for f in report)
    assert all(f["failures"] == 0 for f in report)


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
    print("python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
