#!/usr/bin/env python3
"""Regenerate the class-group truth tables with PARI/GP (via cypari2).

Usage: generate_truth.py P LIMIT OUT.csv [--with-rank-f]

Each row is (N, p, rk_p Cl(L)) for L = Q(zeta_p, N^(1/p)), optionally with
rk_p Cl(F) for F = Q(N^(1/p)). Class groups come from bnfinit(..., 1), which
assumes GRH; the results are not certified with bnfcertify.
"""
import sys
import cypari2


def p_rank(cyc, p):
    return sum(1 for c in cyc if int(c) % p == 0)


def main():
    p, limit, out = int(sys.argv[1]), int(sys.argv[2]), sys.argv[3]
    with_f = "--with-rank-f" in sys.argv
    pari = cypari2.Pari()
    pari.allocatemem(4 * 10**9)
    primes = [int(n) for n in pari(f"primes([2, {limit}])") if int(n) % p == 1]
    with open(out, "w", newline="\n") as fh:
        fh.write(f"# rk_{p} Cl(Q(zeta_{p}, N^(1/{p}))) from PARI/GP {pari.version()} "
                 f"bnfinit(polredbest(polcompositum(polcyclo({p}), x^{p}-N)[1]), 1)\n")
        fh.write("# GRH-conditional (no bnfcertify); regenerate with tests/fixtures/generate_truth.py\n")
        fh.write("N,p,rank,rank_f\n" if with_f else "N,p,rank\n")
        for n in primes:
            pol = pari(f"polredbest(polcompositum(polcyclo({p}), x^{p}-{n})[1])")
            rank = p_rank(pari.bnfinit(pol, 1).bnf_get_cyc(), p)
            if with_f:
                rank_f = p_rank(pari.bnfinit(pari(f"x^{p}-{n}"), 1).bnf_get_cyc(), p)
                fh.write(f"{n},{p},{rank},{rank_f}\n")
            else:
                fh.write(f"{n},{p},{rank}\n")
            fh.flush()


if __name__ == "__main__":
    main()
