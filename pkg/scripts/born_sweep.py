"""Worst gap between <u_i|s>^2, tr[P_{u_i} rho(ΣS)] and p_i/Pr(S), by space size."""

import argparse
import math

import numpy as np

from bornrule import Event, OutcomeSpace, amplitude_vector, born_probability, prob_trace, rho_superposition


def worst_gap(rng, n, reps):
    worst = 0.0
    for _ in range(reps):
        w = rng.random(n) + 1e-3
        space = OutcomeSpace(tuple(f"u{i}" for i in range(n)), tuple(w / w.sum()))
        members = frozenset(int(i) for i in np.flatnonzero(rng.random(n) < 0.5)) or frozenset({0})
        S = Event(space, members)
        s, rho = amplitude_vector(space, S), rho_superposition(space, S)
        total = math.fsum(space.probs[i] for i in members)
        for i in range(n):
            exact = space.probs[i] / total if i in members else 0.0
            a, b = born_probability(s, i), prob_trace(rho, space.singleton(i))
            worst = max(worst, abs(a - exact), abs(b - exact))
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=32)
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print("n,worst_gap")
    for n in range(1, args.max_n + 1):
        print(f"{n},{worst_gap(rng, n, args.reps):.3e}")


if __name__ == "__main__":
    main()
