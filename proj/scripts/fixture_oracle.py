#!/usr/bin/env python3
"""High-precision reference values for the frozen test fixtures.

Evaluates every fixture straight from the defining sums with mpmath at
50 digits. Nothing here imports or mirrors the C++ library.
"""
import itertools
import json
import sys

from mpmath import mp, mpf, log, sqrt, exp

mp.dps = 50


def renyi_bi(alpha, p, q):
    return log(sum(pi ** alpha * qi ** (1 - alpha) for pi, qi in zip(p, q))) / (alpha - 1)


def kl(p, q):
    return sum(pi * log(pi / qi) for pi, qi in zip(p, q) if pi > 0)


def renyi_multi(alphas, pmfs, pivot):
    s = mpf(0)
    for x in range(len(pmfs[0])):
        term = mpf(1)
        for a, pk in zip(alphas, pmfs):
            term *= pk[x] ** a if pk[x] > 0 or a != 0 else mpf(1)
        s += term
    return log(s) / (alphas[pivot] - 1)


def renyi_cond(alphas, beta, conds, pg, pivot):
    outer = mpf(0)
    for g, w in enumerate(pg):
        inner = mpf(0)
        for x in range(len(conds[0])):
            term = mpf(1)
            for a, ck in zip(alphas, conds):
                v = ck[x][g]
                term *= v ** a if v > 0 else (mpf(1) if a == 0 else mpf(0))
            inner += term
        outer += w * inner ** (1 / beta)
    return beta / (alphas[pivot] - 1) * log(outer)


def main():
    h = mpf(1) / 2
    q = mpf(3) / 4
    out = {}
    out["renyi2_p75_uniform"] = renyi_bi(mpf(2), [q, 1 - q], [h, h])
    out["kl_p75_uniform"] = kl([q, 1 - q], [h, h])
    out["multi_050_025_025"] = renyi_multi(
        [h, mpf(1) / 4, mpf(1) / 4], [[q, 1 - q], [h, h], [h, h]], 0)
    cond0 = [[mpf(2) / 3, mpf(0)], [mpf(1) / 3, mpf(1)]]
    cond1 = [[h, h], [h, h]]
    out["qubit_conditional"] = renyi_cond([h, h], h, [cond0, cond1], [q, 1 - q], 0)
    out["qubit_advantage_ratio"] = exp(out["qubit_conditional"])
    out["tropical_p75_uniform"] = log(q / h)
    # Single-lottery game, R = 2, fair odds (2,2): optimal bets are p0^(1/2) normalized.
    z = sqrt(q) + sqrt(1 - q)
    out["kelly_r2_bet0"] = sqrt(q) / z
    b = [mpf("0.634"), mpf("0.366")]
    out["ice_r2_b634"] = 1 / (q / (2 * b[0]) + (1 - q) / (2 * b[1]))
    out["optimal_log_ice_r2"] = out["multi_050_025_025"]
    # Apply the 2x2 kernel from the prob_core fixtures.
    t = [[mpf("0.9"), mpf("0.2")], [mpf("0.1"), mpf("0.8")]]
    qy = [t[0][0] * h + t[0][1] * h, t[1][0] * h + t[1][1] * h]
    out["kernel_image_0"] = qy[0]
    out["pseudo_inverse_x0_given_y0"] = h * t[0][0] / qy[0]
    # Joint [[0.3,0.2],[0.1,0.4]] with R = 2 and fair odds (2,2): conditional optimum.
    j = [[mpf("0.3"), mpf("0.2")], [mpf("0.1"), mpf("0.4")]]
    pg = [j[0][0] + j[1][0], j[0][1] + j[1][1]]
    cond = [[j[x][g] / pg[g] for g in range(2)] for x in range(2)]
    out["joint_r2_conditional_optimum"] = renyi_cond([h, h], h, [cond, cond1], pg, 0)
    px = [j[0][0] + j[0][1], j[1][0] + j[1][1]]
    out["joint_r2_unconditional_optimum"] = renyi_multi([h, h], [px, [h, h]], 0)
    json.dump({k: float(v) for k, v in out.items()}, sys.stdout, indent=2)
    print()
    for k, v in out.items():
        print(f"{k} = {mp.nstr(v, 20)}", file=sys.stderr)


if __name__ == "__main__":
    main()
