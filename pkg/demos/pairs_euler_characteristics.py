"""Euler characteristics of stable-pairs moduli and their signed repackaging.

The table e(P_n(S, h)) comes from an ascending expansion of the refined
discriminant.  Attaching the sign (-1)^(n+1) turns each h-row into the
numerator of a rational function y N_h(y) / (1 + y)^2 with palindromic
N_h, which is recomputed here directly from the series and compared.
"""

from __future__ import annotations

from k3series.kkv import (
    format_rational,
    ky_euler_table,
    pairs_signed_Z,
    signed_euler_table,
)

N_MAX = 8
H_MAX = 4


def main():
    euler = ky_euler_table(N_MAX, H_MAX)
    print(f"e(P_n(S, h)) for n <= {N_MAX}, h <= {H_MAX}:\n")
    hs = range(H_MAX + 1)
    print("n".rjust(4) + "".join(f"h={h}".rjust(10) for h in hs))
    ns = sorted({n for (n, h) in euler.entries})
    for n in ns:
        cells = []
        for h in hs:
            v = euler.entries.get((n, h))
            cells.append(("" if v is None else format_rational(v)).rjust(10))
        print(str(n).rjust(4) + "".join(cells))

    print("\nSigned rows as symmetric numerators over (1 + y)^2:")
    signed = signed_euler_table(euler)
    for h in range(H_MAX + 1):
        numerator, report = pairs_signed_Z(h, N_MAX)
        sym = "symmetric" if report["symmetric"] else "NOT symmetric"
        match = "matches" if report["matches_signed_euler"] else "MISMATCH"
        print(f"  h={h}: numerator {sym}, {match} the sign-decorated table")
    # one sample value each way
    print(f"\n  e(P_1(S,1)) = {format_rational(euler.value(1, 1))}, "
          f"signed = {format_rational(signed.value(1, 1))}")


if __name__ == "__main__":
    main()
