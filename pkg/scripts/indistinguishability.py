"""Frequencies of rho(S) and rho(ΣS) measurements as the trial count grows."""

import argparse

from bornrule import TrialConfig, indistinguishability_report
from bornrule.specfile import load_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("spec", nargs="?", default="spaces/card.json")
    ap.add_argument("--event", default="B1")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args()
    spec = load_spec(args.spec)
    S = spec.event(args.event)
    print("trials,discrete_dev,superposition_dev,bound,max_freq_diff,verdict")
    for k in range(2, args.max_exp + 1):
        rep = indistinguishability_report(spec.space, S, TrialConfig(args.seed, 10**k))
        diff = max(abs(a - b) for a, b in zip(rep.discrete.frequencies, rep.superposition.frequencies))
        print(
            f"{10**k},{rep.discrete.max_abs_deviation:.3e},{rep.superposition.max_abs_deviation:.3e},"
            f"{rep.deviation_bound:.3e},{diff:.3e},{rep.verdict}"
        )


if __name__ == "__main__":
    main()
