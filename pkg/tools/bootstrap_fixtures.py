"""Regenerate tests/fixtures/golden.json.

Golden values are produced by the engine itself and then locked; each one is
also cross-checked here against an independent route before it is written.
Run from the repository root:

    python3 tools/bootstrap_fixtures.py
"""

import json
import pathlib
from fractions import Fraction

from fricke import families, modfunc

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden.json"


def frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def main():
    disc = families.discriminant_check_weak(2, 15)
    cube = families.discriminant_unit_cross_check(2, 15)
    assert disc.constant**3 == cube, "discriminant constant disagrees with the Siegel-unit product"

    j = modfunc.j_invariant(8)
    alt = modfunc.j_from_e6(8)
    assert j == alt

    g14 = modfunc.g14_product(20)
    assert g14 == modfunc.g14_ratio(20)

    van = families.vandermonde_trace_check(8, 10)
    assert van.passed
    lead = {c["check"]: c for c in van.checks}["leading-coefficient"]

    target = modfunc.fricke_f((Fraction(1, 8), Fraction(0)), 25)
    spec = families.express_in_generators(target, 8, 6)
    assert families.phi_N(spec, 25) == target

    golden = {
        "discriminant_weak_N2": {
            "order": 15,
            "d": disc.d,
            "exponents": list(disc.exponents),
            "constant": frac(disc.constant),
            "constant_cubed_from_units": frac(cube),
        },
        "j_coefficients": {str(e): frac(c.rational_value()) for e, c in j.items()},
        "g14_coefficients": {str(e): frac(c.rational_value()) for e, c in g14.items()},
        "vandermonde_N8": {
            "vectors": van.vectors,
            "valuation": lead["valuation"],
            "leading": lead["value"],
        },
        "fricke_1_8_recipe": spec.to_json(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(golden, sort_keys=True, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
