"""Smoke test for the hankel_py extension module."""

import math

import hankel_py as h


def ex1(a, q):
    return a / (a * a + q * q) ** 1.5


def main():
    seed = h.Seed("exp", a=1.0)
    assert seed.radius == 1.0
    assert seed.derivative(3) == -1.0

    r = h.transform(0, seed, 2.0)
    assert r.mode_used == "Convergent"
    assert math.isclose(r.value, ex1(1.0, 2.0), rel_tol=1e-12), r

    forms = [h.h0_form(f, seed, 2.0).value for f in (1, 2, 3)]
    assert max(forms) - min(forms) <= 1e-13 * abs(forms[0])

    assert h.transform(-1, seed, 3.0).value == -h.transform(1, seed, 3.0).value

    barred = h.barred_transform(h.Seed("inv-exp", a=1.0), 2.0)
    assert math.isclose(barred.value, 1 / math.sqrt(5.0), rel_tol=1e-12)

    quad = h.quadrature(0, seed, 2.0, target_abs_err=1e-12)
    assert abs(quad.value - ex1(1.0, 2.0)) < 1e-10, quad

    asym = h.transform(0, h.Seed("pole", a=1.0), 20.0)
    assert asym.mode_used == "AsymptoticTruncated"
    assert abs(asym.value - h.reference("Ex4", 20.0)) <= asym.error_estimate

    assert h.coefficient(0, 4)[0] == 0

    report = h.compare_case("Ex3", 6.0)
    assert report["status"] == "pass", report

    try:
        h.transform(0, seed, 0.5, mode="convergent")
    except h.HankelError as e:
        assert "OutsideConvergenceDomain" in str(e)
    else:
        raise AssertionError("expected HankelError")

    try:
        h.transform(0, seed, 1.01, mode="convergent", max_terms=5)
    except h.ConvergenceError:
        pass
    else:
        raise AssertionError("expected ConvergenceError")

    summary = h.verify_corpus()
    assert summary["all_pass"], [c["case"] for c in summary["cases"] if c["status"] != "pass"]
    print(f"smoke test passed: {len(summary['cases'])} corpus cases verified")


if __name__ == "__main__":
    main()
