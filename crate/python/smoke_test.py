"""Smoke test for the wordmap_py extension.

Build and install it first, e.g. `pip install ./crates/python`
(or `maturin develop -m crates/python/Cargo.toml`). Run with
`python3 python/smoke_test.py`.
"""

import wordmap_py as wm


def main():
    f = wm.Field(4)
    assert f.modulus == 0x13 and f.size == 16
    assert f.mul(f.inv(7), 7) == 1
    for b in range(16):
        root = f.solve_artin_schreier(b)
        if f.trace(b) == 0:
            assert root is not None and f.mul(root, root) ^ root == b
        else:
            assert root is None
    assert f.f_iterate(5, 1) == f.mul(5, 5) ^ 5

    assert wm.trace_polynomial("[x,y]") == "-s*t*u + s^2 + t^2 + u^2 - 2"
    w = wm.Word("[[x,y],x]")
    assert sorted(w.generators()) == ["x", "y"]
    assert wm.Word("y x^-1").verify_lemma_trace()

    m = wm.Sl2Matrix.companion(16, 2)
    assert m.order() == 17 and m.trace == 2
    assert (m ** 17).entries == [1, 0, 0, 1]
    assert (m * m.inverse()).class_id() == "id"
    y = wm.Sl2Matrix(16, 1, 1, 0, 1)
    v = w.evaluate({"x": m, "y": y})
    c = m.inverse() * y.inverse() * m * y
    assert v == c.inverse() * m.inverse() * c * m

    recipes = wm.recipes()
    assert len(recipes) == 18 and recipes[0].index == 1
    lines, ok = wm.verify_alt(1)
    assert ok and all("verdict=PASS" in l for l in lines), lines

    lines, ok = wm.verify_sl2(16)
    assert ok, lines
    print("\n".join(lines))

    img = wm.image(wm.Word("x^2"), "alt:4")
    assert [c for c, _ in img] == ["e", "3/0", "3/1"], img
    print("smoke test passed")


if __name__ == "__main__":
    main()
