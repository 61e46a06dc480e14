"""Shared test utilities: the randomized ideal corpus and independent oracles.

The homology oracle rebuilds every multigraded component from the raw
differential data and takes ranks with sympy's exact rational elimination,
so it shares no linear algebra with the package.
"""
import random
from collections import Counter
from math import comb

from monpoincare.core import box_multidegrees, minimalize, total_degree
from monpoincare.complexes import scarf_faces

CORPUS_SEED = 20240817
CORPUS_SIZE = 200

# caps: <= 4 variables, <= 4 generators, exponents <= 3 (per the acceptance
# corpus), generators of total degree >= 2, and deg m_I <= 6 to keep the
# suite fast (polarizations live in 2^deg-cell boxes)
MAX_TOP_DEGREE = 6


def random_corpus(count=CORPUS_SIZE, seed=CORPUS_SEED):
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        n = rng.choice([1, 2, 2, 3, 3, 3, 4, 4])
        gens = set()
        for _ in range(rng.randint(1, 4)):
            g = [0] * n
            for _ in range(rng.choice([2, 2, 2, 3, 3, 4])):
                i = rng.randrange(n)
                if g[i] < 3:
                    g[i] += 1
            if sum(g) >= 2:
                gens.add(tuple(g))
        if not gens:
            continue
        ideal = minimalize(gens, n)
        if total_degree(ideal.top_lcm()) > MAX_TOP_DEGREE:
            continue
        key = (n, ideal.generators)
        if key not in seen:
            seen.add(key)
            out.append(ideal)
    return out


def oracle_homology(C, bound):
    """Brute-force per-multidegree homology: dense sympy matrices over Q.

    Independent reconstruction: alive bases are derived from generator degrees
    and the relation set, matrix entries read off the stored scalars, ranks
    taken by sympy.  Returns the same {i: {mdeg: dim}} shape as
    monpoincare.complexes.homology with zeros omitted.
    """
    from sympy import Matrix

    rels = C.ring.relations
    top = C.top_degree

    def dead(mu):
        return any(all(r[k] <= mu[k] for k in range(len(mu))) for r in rels)

    result = {i: {} for i in range(top + 1)}
    for j in box_multidegrees(bound):
        alive = []
        for module in C.modules:
            basis = []
            for g, deg in enumerate(module):
                mu = tuple(a - b for a, b in zip(j, deg))
                if all(x >= 0 for x in mu) and not dead(mu):
                    basis.append(g)
            alive.append(basis)
        ranks = [0] * (top + 2)
        for i in range(1, top + 1):
            rows, cols = alive[i - 1], alive[i]
            if rows and cols:
                M = Matrix([[C.diffs[i].get((r, c), 0) for c in cols] for r in rows])
                ranks[i] = M.rank()
        for i in range(top + 1):
            h = len(alive[i]) - ranks[i] - ranks[i + 1]
            if h:
                result[i][j] = h
    return result


def standard_monomial_table(ideal, bound):
    """Multidegrees <= bound of monomials outside the ideal (basis of S/I)."""
    return {j: 1 for j in box_multidegrees(bound)
            if not ideal.contains_monomial(j)}


def eagon_rank_formula(ideal, imax):
    """Ranks of the Eagon modules from the direct-sum description: tensor words
    in the Scarf modules times exterior powers of the variables."""
    sizes = Counter(len(f) for f in scarf_faces(ideal) if f)
    words = {0: 1}
    for w in range(1, imax + 1):
        words[w] = sum(cnt * words.get(w - (t + 1), 0) for t, cnt in sizes.items())
    n = ideal.num_vars
    return [sum(comb(n, k) * words.get(i - k, 0) for k in range(min(i, n) + 1))
            for i in range(imax + 1)]
