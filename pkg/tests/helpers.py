"""Random inputs shared by the test modules."""

import random

from psg.exact_linear import scalar
from psg.grassmann import gn_structure_constants
from psg.modules import gn_beta, random_even_matrix, split_null_extension
from psg.superalgebra import SuperAlgebra, suite_passes, transport


def random_rational(rng: random.Random, lo=-5, hi=5):
    return scalar(rng.randint(lo, hi)) / rng.randint(1, 4)


def random_contact_bracket(rng: random.Random, max_n: int = 3) -> SuperAlgebra:
    """A valid contact bracket: G_n or E(G_n, G_n(beta)) in a random homogeneous basis."""
    n = rng.randint(1, max_n)
    if rng.random() < 0.25:
        base = gn_structure_constants(n)
    else:
        base = split_null_extension(gn_structure_constants(n), gn_beta(n, random_rational(rng)))
    return transport(base, random_even_matrix(base.parity, rng, bound=1))


def small_poisson_3(rng: random.Random) -> SuperAlgebra:
    """Random unital Poisson superalgebra on 1, x (even), xi (odd), validated by the suite.

    x^2 = a x, x xi = b xi with b in {0, a}, xi^2 = 0,
    {x, xi} = c xi, {xi, xi} = d 1 + e x.
    """
    while True:
        a = scalar(rng.randint(-2, 2))
        b = rng.choice([scalar(0), a])
        c, d, e = (scalar(rng.randint(-2, 2)) for _ in range(3))
        dot = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
        if a:
            dot[1, 1] = {1: a}
        if b:
            dot[1, 2] = {2: b}
            dot[2, 1] = {2: b}
        br = {}
        if c:
            br[1, 2] = {2: c}
            br[2, 1] = {2: -c}
        xx = {k: v for k, v in ((0, d), (1, e)) if v}
        if xx:
            br[2, 2] = xx
        alg = SuperAlgebra(parity=[0, 0, 1], dot=dot, bracket=br, unit={0: 1})
        if (c or d or e) and suite_passes(alg, "poisson"):
            return alg


def random_commutative(rng: random.Random, dim: int) -> SuperAlgebra:
    """Supercommutative algebra with random parity-consistent structure constants."""
    parity = [rng.randint(0, 1) for _ in range(dim)]
    dot = {}
    for i in range(dim):
        for j in range(i, dim):
            if i == j and parity[i]:
                continue  # odd squares vanish
            targets = [k for k in range(dim) if parity[k] == parity[i] ^ parity[j]]
            if not targets or rng.random() < 0.5:
                continue
            vec = {k: scalar(rng.randint(-1, 1)) for k in rng.sample(targets, 1)}
            vec = {k: v for k, v in vec.items() if v}
            if not vec:
                continue
            dot[i, j] = vec
            s = -1 if parity[i] and parity[j] else 1
            dot[j, i] = {k: s * v for k, v in vec.items()}
    return SuperAlgebra(parity=parity, dot=dot)
