"""Variable-alpha interval alpha = (-it, +it): the eigenvalues t^2 and (pi/2)^2 meet at t = pi/2.

The FD scheme keeps the exact crossing of the continuum problem, so along t
the gap closes linearly.  Perturbing one endpoint at the crossing splits the
pair like sqrt(eps), which is the signature of the Jordan block.

Run: python demos/defective_pair.py
"""
from robinspec import defective_pair_demo


def main():
    rep = defective_pair_demo()
    print(f"discrete crossing t* = {rep.t_crossing:.8f}")
    print("offset      gap")
    for o, g in zip(rep.offsets, rep.gaps):
        print(f"{o:9.2e}  {g:9.3e}")
    print(f"gap exponent along t: {rep.exponent:.3f}")
    print("eps         split")
    for e, g in zip(rep.eps, rep.perturbed_gaps):
        print(f"{e:9.2e}  {g:9.3e}")
    print(f"split exponent under endpoint perturbation: {rep.perturbation_exponent:.3f}")
    print("eigenvector overlap at t*:", {k: round(v, 6) for k, v in rep.overlaps.items()})


if __name__ == "__main__":
    main()
