"""Print the density matrices of the card and coin spaces and their readouts."""

import numpy as np

from bornrule import (
    OutcomeSpace,
    is_pure,
    new_partition,
    prob_trace,
    rho_discrete,
    rho_partition,
    rho_superposition,
    spectrum_of,
    uniform_space,
)


def show(title, rho):
    print(f"{title}  pure={is_pure(rho)}  spectrum={spectrum_of(rho).eigenvalues.round(12).tolist()}")
    print(np.array2string(rho.matrix, precision=4, suppress_small=True))
    print()


def main():
    card = uniform_space(["♣", "♦", "♥", "♠"])
    B1 = card.event(["♦", "♥"])
    show("card rho(B1)", rho_discrete(card, B1))
    show("card rho(ΣB1)", rho_superposition(card, B1))
    show("card rho(pi)", rho_partition(card, new_partition(card, [[1, 2], [0, 3]])))

    coin = OutcomeSpace(("H", "T"), (0.5, 0.5))
    for name, rho in (("rho(U)", rho_discrete(coin, coin.full())), ("rho(ΣU)", rho_superposition(coin, coin.full()))):
        show(f"coin {name}", rho)
        print(f"  Pr(H) = {prob_trace(rho, coin.singleton(0))}\n")


if __name__ == "__main__":
    main()
