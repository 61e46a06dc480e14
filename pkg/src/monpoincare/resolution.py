"""Minimal free resolution of the residue field over R = S/I, the Koszul
homology algebra of R, Golod certificates, and the Eagon-style resolution
for generic ideals.

The resolution is built degree by degree: in each multidegree of a fixed box
the kernel of the previous differential is an exact k-linear computation, and
the next free module covers a minimal generating set of that kernel (kernel
vectors reduced against monomial shifts of the generators already chosen).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core import (
    InputError,
    InternalInconsistencyError,
    MonomialIdeal,
    Multidegree,
    box_multidegrees,
    divides,
    is_generic,
    lcm_of_subset,
    mdeg_add,
    mdeg_sub,
    total_degree,
    unit_mdeg,
    zero_mdeg,
)
from .complexes import (
    FreeComplex,
    Ring,
    _entry,
    alive_basis,
    component_matrix,
    homology,
    koszul_complex,
    scarf_faces,
)
from .linalg import EchelonSpace, kernel_basis, solve_in_span
from .series import BigradedSeries, series_from_terms, series_inverse, variables_product


@dataclass
class ResidueFieldResolution:
    """Minimal multigraded free resolution of k over R, within (tmax, bound)."""

    ideal: MonomialIdeal
    tmax: int
    bound: Multidegree
    complex: FreeComplex

    def betti(self) -> dict:
        """dim Tor_i^R(k,k)_j as {(i, j): dimension}."""
        table = {}
        for i, module in enumerate(self.complex.modules):
            for deg in module:
                table[(i, deg)] = table.get((i, deg), 0) + 1
        return table

    def poincare_series(self) -> BigradedSeries:
        return series_from_terms(self.ideal.num_vars, self.tmax, self.bound,
                                 [(i, j, c) for (i, j), c in self.betti().items()])


def resolve_residue_field(ideal: MonomialIdeal, tmax: int, bound: Multidegree | None = None,
                          char: int = 0) -> ResidueFieldResolution:
    """Resolve k over R = S/I up to homological degree tmax in multidegrees <= bound.

    The box must contain m_I, otherwise later denominator extraction would be
    unsound.  Ranks of the result are exactly dim Tor_i^R(k,k)_j for j in the
    box; generators outside the box are not tracked.
    """
    n = ideal.num_vars
    top = ideal.top_lcm()
    if bound is None:
        bound = mdeg_add(top, (1,) * n)
    bound = tuple(bound)
    if not divides(top, bound):
        raise InputError(f"multidegree bound {bound} must dominate m_I = {top}")
    if tmax < 0:
        raise InputError("tmax must be non-negative")
    ring = Ring.quotient(ideal)
    cells = box_multidegrees(bound)
    standard = {j: not ring.kills(j) for j in cells}

    modules = [[zero_mdeg(n)]]
    diffs = [{}]
    if tmax >= 1:
        # units outside the box belong to variables no generator uses; their
        # (split-off polynomial) contribution cancels against the numerator
        gens1 = [u for u in (unit_mdeg(n, i) for i in range(n))
                 if divides(u, bound) and standard[u]]
        modules.append(gens1)
        diffs.append({(0, c): 1 for c in range(len(gens1))})

    for step in range(2, tmax + 1):
        prev, prevprev = modules[step - 1], modules[step - 2]
        diff = diffs[step - 1]
        col_entries = {}
        for (r, c), s in diff.items():
            col_entries.setdefault(c, []).append((r, s))
        min_total = min((total_degree(d) for d in prev), default=None)
        chosen = []  # (multidegree, {prev generator index: scalar})
        for j in cells:
            if min_total is None or sum(j) < min_total:
                continue
            cols = [c for c, deg in enumerate(prev)
                    if divides(deg, j) and standard[mdeg_sub(j, deg)]]
            if not cols:
                continue
            rows = [r for r, deg in enumerate(prevprev)
                    if divides(deg, j) and standard[mdeg_sub(j, deg)]]
            rows_pos = {r: ri for ri, r in enumerate(rows)}
            M = [[0] * len(cols) for _ in rows]
            for ci, c in enumerate(cols):
                for r, s in col_entries.get(c, ()):
                    ri = rows_pos.get(r)
                    if ri is not None:
                        M[ri][ci] = s
            kernel = kernel_basis(M, len(cols), char)
            if not kernel:
                continue
            span = EchelonSpace(len(cols), char)
            for wdeg, wvec in chosen:
                if wdeg != j and divides(wdeg, j):
                    span.add([wvec.get(c, 0) for c in cols])
            for v in kernel:
                if span.add(v):
                    chosen.append((j, {c: x for c, x in zip(cols, v) if x}))
        modules.append([deg for deg, _ in chosen])
        diffs.append({(r, ci): s for ci, (_, vec) in enumerate(chosen)
                      for r, s in vec.items()})

    cpx = FreeComplex(ring, modules, diffs, None, char)
    return ResidueFieldResolution(ideal, tmax, bound, cpx)


def _class_representatives(K: FreeComplex, i: int, j: Multidegree, char: int):
    """Representative cycles of a basis of H_i(K)_j, reduced mod boundaries."""
    cols = alive_basis(K, i, j)
    if not cols:
        return [], cols
    rows = alive_basis(K, i - 1, j)
    M = component_matrix(K, i, j, rows, cols) if i >= 1 else []
    cycles = kernel_basis(M, len(cols), char)
    span = EchelonSpace(len(cols), char)
    nxt = alive_basis(K, i + 1, j)
    if nxt:
        upper = K.diffs[i + 1]
        for c in nxt:
            span.add([upper.get((r, c), 0) for r in cols])
    reps = []
    for v in cycles:
        if span.add(v):
            reps.append(span.rows[-1])
    return reps, cols


@dataclass
class KoszulClass:
    index: int
    degree: int  # homological degree in the Koszul complex
    multidegree: Multidegree
    cycle: dict  # wedge tuple -> int coefficient; monomial x^(j - 1_S) implied


@dataclass
class KoszulHomologyAlgebra:
    """Koszul homology of R with representative cycles and their products.

    ``products[(a, b)]`` expresses class_a * class_b in the classes at the
    product's (degree, multidegree); an empty dict means the product is zero
    in homology.  Only positive-degree classes are multiplied.
    """

    ideal: MonomialIdeal
    bound: Multidegree
    char: int
    dims: dict  # (i, j) -> dim, including H_0
    classes: list
    products: dict

    def positive_products_vanish(self) -> bool:
        return all(not expansion for expansion in self.products.values())


def _merge_sign(left, right) -> int:
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


def _wedge(c1: dict, j1: Multidegree, c2: dict, j2: Multidegree, ring: Ring) -> dict:
    """Exterior product of two Koszul component vectors, reduced over the ring."""
    out = {}
    target = mdeg_add(j1, j2)
    for s1, a in c1.items():
        for s2, b in c2.items():
            if set(s1) & set(s2):
                continue
            union = tuple(sorted(s1 + s2))
            mono = mdeg_sub(target, tuple(1 if v in union else 0 for v in range(ring.num_vars)))
            if ring.kills(mono):
                continue
            new = out.get(union, 0) + a * b * _merge_sign(s1, s2)
            if new:
                out[union] = new
            else:
                del out[union]
    return out


def koszul_homology_algebra(ideal: MonomialIdeal, bound: Multidegree | None = None,
                            char: int = 0) -> KoszulHomologyAlgebra:
    """Homology of the Koszul complex over R with cycle representatives and the
    full multiplication table of the positive-degree classes."""
    if bound is None:
        bound = ideal.top_lcm()
    bound = tuple(bound)
    ring = Ring.quotient(ideal)
    K = koszul_complex(ring)
    dims = {}
    classes = []
    for j in box_multidegrees(bound):
        for i in range(K.top_degree + 1):
            reps, cols = _class_representatives(K, i, j, char)
            if reps:
                dims[(i, j)] = len(reps)
            if i == 0:
                continue
            labels = K.labels[i]
            for vec in reps:
                cycle = {labels[c]: x for c, x in zip(cols, vec) if x}
                classes.append(KoszulClass(len(classes), i, j, cycle))
    products = {}
    for a in classes:
        for b in classes:
            products[(a.index, b.index)] = _express_product(K, ideal, classes, a, b,
                                                            bound, char)
    return KoszulHomologyAlgebra(ideal, bound, char, dims, classes, products)


def _express_product(K, ideal, classes, a, b, bound, char):
    wedge = _wedge(a.cycle, a.multidegree, b.cycle, b.multidegree, K.ring)
    i = a.degree + b.degree
    j = mdeg_add(a.multidegree, b.multidegree)
    if not wedge:
        return {}
    cols = alive_basis(K, i, j)
    pos = {K.labels[i][c]: ci for ci, c in enumerate(cols)}
    target = [0] * len(cols)
    for s, coeff in wedge.items():
        target[pos[s]] = coeff
    boundary = []
    upper = K.diffs[i + 1] if i + 1 <= K.top_degree else {}
    for c in alive_basis(K, i + 1, j):
        boundary.append([upper.get((r, c), 0) for r in cols])
    local = [cl for cl in classes if cl.degree == i and cl.multidegree == j]
    reps = []
    for cl in local:
        reps.append([cl.cycle.get(K.labels[i][c], 0) for c in cols])
    coeffs = solve_in_span(boundary + reps, target, len(cols), char)
    if coeffs is None:
        raise InternalInconsistencyError(
            "Koszul cycle product is neither a boundary nor a class combination")
    out = {}
    for cl, coeff in zip(local, coeffs[len(boundary):]):
        if coeff:
            out[cl.index] = coeff
    return out


def koszul_homology_dims(ideal: MonomialIdeal, bound: Multidegree | None = None,
                         char: int = 0) -> dict:
    """dim H_i(Koszul over R)_j for j <= bound, as {(i, j): dim}."""
    if bound is None:
        bound = ideal.top_lcm()
    ring = Ring.quotient(ideal)
    table = homology(koszul_complex(ring), tuple(bound), char)
    return {(i, j): d for i, dims in table.items() for j, d in dims.items()}


def golod_denominator(ideal: MonomialIdeal, bound: Multidegree | None = None,
                      char: int = 0) -> BigradedSeries:
    """1 - sum over i >= 1 of dim H_i(K)_j y^j t^(i+1); the denominator of the
    Poincare series when R is Golod."""
    if bound is None:
        bound = ideal.top_lcm()
    bound = tuple(bound)
    dims = koszul_homology_dims(ideal, bound, char)
    tmax = total_degree(bound)
    terms = [(0, zero_mdeg(ideal.num_vars), 1)]
    for (i, j), d in dims.items():
        if i >= 1:
            terms.append((i + 1, j, -d))
    return series_from_terms(ideal.num_vars, tmax, bound, terms)


def golod_series_match(P: BigradedSeries, ideal: MonomialIdeal, char: int = 0) -> bool:
    """Does a computed Poincare series equal prod(1+t*y_i)/golod_denominator
    within its own truncation box?"""
    Qg = golod_denominator(ideal, char=char)
    Qg = series_from_terms(ideal.num_vars, P.tmax, P.ybound,
                           [(t, j, c) for (t, j), c in Qg.coeffs.items()])
    rhs = variables_product(ideal.num_vars, P.tmax, P.ybound) * series_inverse(Qg)
    return rhs == P


def is_golod_truncated(ideal: MonomialIdeal, tmax: int, char: int = 0) -> bool:
    """Certify Golodness up to t-degree tmax: the resolution's Poincare series
    must agree with prod(1+t*y_i)/golod_denominator through t^tmax."""
    if tmax < 2:
        raise InputError("a Golod certificate needs tmax >= 2")
    bound = mdeg_add(ideal.top_lcm(), (1,) * ideal.num_vars)
    P = resolve_residue_field(ideal, tmax, bound, char).poincare_series()
    return golod_series_match(P, ideal, char)


def is_golod_generic(ideal: MonomialIdeal) -> bool:
    """Golod test for generic ideals: no Scarf face may split into two parts
    with coprime lcms (equivalently m_A * m_B = m_{A u B})."""
    if not is_generic(ideal):
        raise InputError("criterion only applies to generic ideals")
    for face in scarf_faces(ideal):
        if len(face) < 2:
            continue
        first, rest = face[0], face[1:]
        for size in range(len(face)):
            for part in combinations(rest, size):
                A = (first,) + part
                B = tuple(x for x in face if x not in A)
                if B and all(min(u, v) == 0 for u, v in
                             zip(lcm_of_subset(ideal, A), lcm_of_subset(ideal, B))):
                    return False
    return True


def _perm_sign(seq) -> int:
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq))
                     if seq[a] > seq[b])
    return -1 if inversions % 2 else 1


def _scarf_cycle_reps(ideal: MonomialIdeal, K: FreeComplex, faces, char: int) -> dict:
    """One representative cycle per nonempty Scarf face J, spanning the
    one-dimensional H_{|J|}(K)_{m_J}.

    Each generator of a Scarf face strictly attains the face lcm in at least
    one variable (otherwise dropping it would leave the lcm unchanged), and a
    variable is strictly attained by at most one generator.  A representative
    is (m_J / x_T) e_T for such a set T of attainment variables, signed by the
    permutation sorting them into generator order.  The differential formulas
    force the chain-level identities

        z_A ^ z_B = merge_sign(A, B) * (m_A m_B / m_{A u B}) * z_{A u B}

    for disjoint faces with Scarf union, and z_A ^ z_B = 0 otherwise; a greedy
    choice of attainment variables can violate them, so the (small) space of
    choices is searched with all product identities checked explicitly.
    """
    gens = ideal.generators
    ring = K.ring
    n = ideal.num_vars
    m_face = {f: lcm_of_subset(ideal, f) for f in faces}
    face_set = set(faces)

    candidates = {}
    for face in faces:
        m = m_face[face]
        attain = []
        for g_idx in face:
            g = gens[g_idx]
            s = [v for v in range(n)
                 if g[v] == m[v] > 0
                 and all(gens[h][v] < g[v] for h in face if h != g_idx)]
            if not s:
                raise InternalInconsistencyError(
                    f"generator {g} never strictly attains {m}; face {face} is not Scarf")
            attain.append(s)
        options = []
        seen = set()
        for combo in product(*attain):
            wedge = tuple(sorted(combo))
            if wedge not in seen:
                seen.add(wedge)
                options.append({wedge: _perm_sign(combo)})
        candidates[face] = options

    order = sorted(faces, key=lambda f: (len(f), f))
    assigned = {}

    def pair_identity_holds(A, B):
        lhs = _wedge(assigned[A], m_face[A], assigned[B], m_face[B], ring)
        target = {}
        if not set(A) & set(B):
            union = tuple(sorted(A + B))
            if union in face_set:
                if union not in assigned:
                    return True  # rechecked when the union is assigned
                j = mdeg_add(m_face[A], m_face[B])
                ms = _merge_sign(A, B)
                for w, c in assigned[union].items():
                    mono = mdeg_sub(j, tuple(1 if v in w else 0 for v in range(n)))
                    if not ring.kills(mono):
                        target[w] = ms * c
        return lhs == target

    def backtrack(k):
        if k == len(order):
            return True
        face = order[k]
        lower = [(A, tuple(x for x in face if x not in A))
                 for size in range(1, len(face))
                 for A in combinations(face, size)
                 if face[0] in A]  # each unordered bipartition once
        for cand in candidates[face]:
            assigned[face] = cand
            ok = all(pair_identity_holds(A, B) for A, B in lower)
            if ok:
                ok = all(pair_identity_holds(face, g) for g in order[:k])
            if ok and backtrack(k + 1):
                return True
            del assigned[face]
        return False

    if not backtrack(0):
        raise InternalInconsistencyError(
            "no coherent system of Scarf cycle representatives exists")
    for face, cycle in assigned.items():
        _verify_class_rep(K, len(face), m_face[face], cycle, char)
    return assigned


def _verify_class_rep(K: FreeComplex, i: int, j: Multidegree, cycle: dict, char: int):
    """Check a proposed cycle is alive, closed, and spans the 1-dim H_i(K)_j."""
    reps, cols = _class_representatives(K, i, j, char)
    if len(reps) != 1:
        raise InternalInconsistencyError(
            f"H_{i}(K)_{j} has dimension {len(reps)}, expected 1 for a Scarf face")
    labels = K.labels[i]
    pos = {labels[c]: ci for ci, c in enumerate(cols)}
    vec = [0] * len(cols)
    for wedge, coeff in cycle.items():
        if wedge not in pos:
            raise InternalInconsistencyError(f"representative at {j} is zero over the ring")
        vec[pos[wedge]] = coeff
    rows = alive_basis(K, i - 1, j)
    M = component_matrix(K, i, j, rows, cols)
    for row in M:
        s = sum(a * b for a, b in zip(row, vec))
        if s % char if char else s:
            raise InternalInconsistencyError(f"representative at {j} is not a cycle")
    span = EchelonSpace(len(cols), char)
    nxt = alive_basis(K, i + 1, j)
    upper = K.diffs[i + 1] if nxt else {}
    for c in nxt:
        span.add([upper.get((r, c), 0) for r in cols])
    if span.contains(vec):
        raise InternalInconsistencyError(f"representative at {j} is a boundary")


def eagon_resolution(ideal: MonomialIdeal, imax: int, char: int = 0) -> FreeComplex:
    """Free resolution of k over R for generic I, built from the Koszul complex
    and tensor words in the nonempty Scarf faces.

    Generators in degree i are pairs (S, (L_1..L_l)) with S a wedge of
    variables and L_k nonempty Scarf faces, |S| + sum(|L_k|+1) = i.  The
    differential combines the Koszul differential, a chosen cycle z_{L_1}
    multiplying into the wedge factor, and merges of adjacent faces weighted
    by m_{L_{k}} m_{L_{k+1}} / m_{L_k u L_{k+1}} when the union is again a
    Scarf face.
    """
    if imax < 0:
        raise InputError("imax must be non-negative")
    if not is_generic(ideal):
        raise InputError("the Eagon construction here requires a generic ideal")
    n = ideal.num_vars
    ring = Ring.quotient(ideal)
    K = koszul_complex(ring)
    faces = [f for f in scarf_faces(ideal) if f]
    face_set = set(faces)
    m_face = {f: lcm_of_subset(ideal, f) for f in faces}
    z = _scarf_cycle_reps(ideal, K, faces, char)

    chains_by_weight = {0: [()]}
    for w in range(1, imax + 1):
        chains = []
        for f in faces:
            wf = len(f) + 1
            if wf <= w:
                chains.extend((f,) + tail for tail in chains_by_weight[w - wf])
        chains_by_weight[w] = chains

    def chain_mdeg(chain):
        out = zero_mdeg(n)
        for f in chain:
            out = mdeg_add(out, m_face[f])
        return out

    modules, labels = [], []
    index = []
    for i in range(imax + 1):
        gens = []
        for ksize in range(min(i, n) + 1):
            for chain in chains_by_weight.get(i - ksize, []):
                for S in combinations(range(n), ksize):
                    gens.append((S, chain))
        wedge_part = {g: tuple(1 if v in g[0] else 0 for v in range(n)) for g in gens}
        modules.append([mdeg_add(wedge_part[g], chain_mdeg(g[1])) for g in gens])
        labels.append(gens)
        index.append({g: k for k, g in enumerate(gens)})

    diffs = [{}]
    for i in range(1, imax + 1):
        diff = {}
        for col, (S, chain) in enumerate(labels[i]):
            col_mdeg = modules[i][col]
            # Koszul differential on the wedge factor
            for a, v in enumerate(S, start=1):
                target = (tuple(x for x in S if x != v), chain)
                row = index[i - 1][target]
                _entry(ring, diff, row, col, (-1) ** (a + 1),
                       mdeg_sub(col_mdeg, modules[i - 1][row]))
            if not chain:
                continue
            sgn_S = (-1) ** len(S)
            # z-term: the first face becomes a Koszul cycle wedged into S
            first = chain[0]
            for T, coeff in z[first].items():
                if set(S) & set(T):
                    continue
                target = (tuple(sorted(S + T)), chain[1:])
                row = index[i - 1][target]
                _entry(ring, diff, row, col, sgn_S * _merge_sign(S, T) * coeff,
                       mdeg_sub(col_mdeg, modules[i - 1][row]))
            # merges of adjacent faces; the sign exponent is the summed
            # homological weight of the factors up to and including the first
            # merged one
            weight = len(chain[0]) + 1
            for q in range(1, len(chain)):
                A, B = chain[q - 1], chain[q]
                if not set(A) & set(B):
                    union = tuple(sorted(A + B))
                    if union in face_set:
                        target = (S, chain[:q - 1] + (union,) + chain[q + 1:])
                        row = index[i - 1][target]
                        _entry(ring, diff, row, col,
                               sgn_S * ((-1) ** weight) * _merge_sign(A, B),
                               mdeg_sub(col_mdeg, modules[i - 1][row]))
                weight += len(B) + 1
        diffs.append(diff)
    return FreeComplex(ring, modules, diffs, labels, char)
