"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json
import sys

import bispectral as b


def main() -> int:
    p = b.Params("2", "0", "1/3")
    lt = b.jacobi_l_tilde(p)
    assert lt.involution(p) == lt
    assert b.jacobi_l(p).support() == (-1, 1)

    # L - 1 = D_{+} D_{-} through the shifted parameters
    q = b.Params("1", "0", "1/3")
    lhs = b.contiguous_d("alpha_up", q) @ b.contiguous_d("alpha_down", p)
    assert lhs == b.jacobi_l(p) - b.DiffOp.identity()

    spec = b.DarbouxSpec(p, 2, 0, a=["1", "0"], b=["2", "5/7"])
    assert spec.is_admissible()
    bundle = b.DarbouxBundle(spec)
    assert bundle.check_identities()
    assert bundle.P.support() == (-2, 0)
    assert bundle.L.is_regular()
    assert json.loads(bundle.to_json())["P"]["support"] == [-2, 0]

    op = b.DiffOp.from_json(bundle.L.to_json())
    assert op == bundle.L

    dec = b.decompose_left(lt, p)
    assert dec.evaluate(p) == lt and dec.word == "(1) M"

    mixed = b.DarbouxSpec(b.Params("1", "1", "2/7"), 1, 1, a=["1"], b=["3/2"], c=["1"], d=["-2/5"])
    cert = b.build_dual(b.DarbouxBundle(mixed), order=24, window=(-3, 3))
    assert cert.verified_order == 24 and cert.ino and cert.shift == 1
    print(f"dual of (1,1,1,1): order {cert.b_order}, eigenvalue degree {len(json.loads(cert.to_json())['eigen']) - 1}")

    try:
        b.Params("1", "0", "1")
    except b.ConditionError as e:
        print(f"rejected: {e}")
    else:
        raise AssertionError("integer eps accepted")

    try:
        b.build_dual(b.DarbouxBundle(b.DarbouxSpec(p, 3, 0, a=["1", "0", "0"], b=["1", "0", "0"])))
    except b.ScopeError as e:
        print(f"k = 3: {e}")
    else:
        raise AssertionError("k > alpha accepted")

    rep = json.loads(b.reproduce_example(order=20, window=(-2, 2)))
    print("printed forms:", {c["name"]: c["ok"] for c in rep["printed"]})
    assert all(c["ok"] for c in rep["derived"])
    print("ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
