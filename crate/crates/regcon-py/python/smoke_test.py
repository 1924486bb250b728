"""Smoke test for the Python bindings: python python/smoke_test.py"""

import json

import regcon_py


def main():
    labels, basis = regcon_py.relation_basis("S 3")
    assert labels == ["1", "C2", "C3", "G"], labels
    assert len(basis) == 1
    assert len(regcon_py.relation_basis("D 12")[1]) == 4
    assert regcon_py.relation_basis("C 12")[1] == []

    exact, cls = regcon_py.regconst_perm("D 6", "2*[G] + [1] - 2*[C2] - [C3]", "G")
    assert cls == "3", (exact, cls)

    assert all(regcon_py.verify_table(t, s) for t in ["D12", "D8", "D6", "C6xC2"] for s in [False, True])

    try:
        regcon_py.relation_basis("D 7x")
    except ValueError as e:
        assert "UnknownGroup" in str(e)
    else:
        raise AssertionError("expected ValueError")

    setup = {"group": "CxC 2 2", "inertia": "C2a", "l": 5, "q": 5}
    case = {"setup": setup, "reduction": {"kind": "nonsplit_mult", "n": 2}, "case": {"case": "2NS"}}
    code, out, err = regcon_py.cli(["local", "--format", "json"], json.dumps(case))
    assert code == 0, err
    assert json.loads(out)["report"]["holds"] is True
    code, _, err = regcon_py.cli(["relations", "S 3", "--format", "xml"])
    assert code == 1 and err
    print("python smoke test passed")


if __name__ == "__main__":
    main()
