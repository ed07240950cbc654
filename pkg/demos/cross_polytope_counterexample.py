"""A rational cross-polytope whose equivariant H* is a polynomial but not effective.

Run: python3 demos/cross_polytope_counterexample.py
"""
from eqehrhart import ehrhart
from eqehrhart.equivariant import hstar_series, validate_setup
from eqehrhart.families import build_family


def show(dilate):
    P, G, T = build_family({"family": "cross", "k": 1, "d": 2, "group": "sigma-d",
                            "dilate": dilate})
    E = ehrhart(P)
    R = hstar_series(validate_setup(P, G, T))
    verts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in sorted(P.vertices))
    print(f"{dilate} * P(1,2): vertices {verts}")
    print(f"  denominator {E.N}, period {E.min_period}, series {E.series}")
    for j, v in enumerate(R.multiplicities):
        print(f"  H*_{j} = {v}")
    print(f"  polynomial: {R.is_polynomial}, effective: {R.is_effective}\n")


if __name__ == "__main__":
    show(1)
    show(2)
