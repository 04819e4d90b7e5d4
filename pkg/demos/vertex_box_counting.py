"""Box configurations over a partition and their vertex constant terms.

Each configuration is a chain of Young diagrams below a fixed profile.
The equivariant vertex series H(t1, t2, t3) of a chain reduces to an
honest Laurent polynomial; specializing t1 = t, t2 = 1/t, t3 = u and
taking the constant term always lands at a nonpositive integer that a
closed diagonal-profile formula predicts exactly.
"""

from __future__ import annotations

from k3series.vertex import (
    constant_term_specialized,
    enumerate_configs,
    profile_formula_value,
    vertex_H,
)

MU = (2, 1)
EXCESS = 2


def main():
    print(f"profile mu = {MU}, extra box budget = {EXCESS}\n")
    for cfg in enumerate_configs(MU, EXCESS):
        direct = constant_term_specialized(vertex_H(cfg))
        formula = profile_formula_value(cfg)
        chain = " > ".join("(" + ",".join(map(str, nu)) + ")" for nu in cfg.nus)
        flag = "" if direct == formula else "   <-- MISMATCH"
        print(f"size {cfg.size}: constant term {direct!s:>4} "
              f"(formula {formula!s:>4})  {chain}{flag}")


if __name__ == "__main__":
    main()
