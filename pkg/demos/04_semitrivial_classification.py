"""Variational character of the one-component couples.

Probes each couple with directed rescaled paths and random perturbations,
reproducing the exponent-driven classification: the couple whose foreign
exponent exceeds 2 is a local minimum for small coupling, the one with a
sub-2 foreign exponent is a saddle, and at exponent exactly 2 the label
flips as the coupling strength grows.
"""

from hsvar import (ProbeOptions, ProblemParams, build_grid,
                   classification_flip, semitrivial_probe)

grid = build_grid(3, 1e-6, 1e6, 2048)
opts = ProbeOptions(seed=0)


def show(which, alpha, beta, nu):
    pr = ProblemParams(3, 0.5, 0.12, 0.1, alpha, beta, nu)
    rep = semitrivial_probe(pr, which, grid, opts)
    signs = [e["sign"] for e in rep.extra["evidence"]]
    print(f"  {which:6s} couple, alpha={alpha}, beta={beta}, nu={nu:g}: "
          f"{rep.classification}  (probe signs {signs})")


print("classification matrix:")
show("first", 1.5, 3.0, 1e-3)    # foreign exponent beta=3  -> local minimum
show("second", 3.0, 1.5, 1e-3)   # foreign exponent alpha=3 -> local minimum
show("second", 1.5, 3.0, 1e-2)   # foreign exponent alpha=1.5 -> saddle
show("first", 3.0, 1.5, 1e-2)    # foreign exponent beta=1.5 -> saddle

print("\nexponent exactly 2: label flips as the coupling strength grows")
for nu in (1e-3, 0.3, 1.0, 3.0, 30.0):
    show("second", 2.0, 2.2, nu)


def params_at(nu):
    return ProblemParams(3, 0.5, 0.12, 0.1, 2.0, 2.2, nu)


res = classification_flip(params_at, 1e-3, 100.0, "second", grid, opts)
lo, hi = res["bracket"]
print(f"\nbisection brackets the flip at nu in [{lo:.4f}, {hi:.4f}]")
