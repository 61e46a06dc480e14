"""Multigraded free chain complexes over S or R = S/I.

Because every differential is multidegree-homogeneous, an entry from a column
generator of multidegree c to a row generator of multidegree r is a single
term: scalar times the monomial x^(c - r).  Only the scalar is stored; the
monomial is implied by the generator degrees.  Over R, entries whose implied
monomial lies in the defining ideal are dropped at construction time.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import (
    InternalInconsistencyError,
    MonomialIdeal,
    Multidegree,
    box_multidegrees,
    divides,
    lcm_of_subset,
    mdeg_sub,
    monomial_str,
    zero_mdeg,
)
from .linalg import rank_of


@dataclass(frozen=True)
class Ring:
    """k[x_1..x_n] modulo a (possibly empty) set of minimal monomial relations."""

    num_vars: int
    var_names: tuple
    relations: tuple = ()

    @classmethod
    def ambient(cls, ideal: MonomialIdeal) -> "Ring":
        """The free polynomial ring S an ideal lives in."""
        return cls(ideal.num_vars, ideal.var_names, ())

    @classmethod
    def quotient(cls, ideal: MonomialIdeal) -> "Ring":
        return cls(ideal.num_vars, ideal.var_names, ideal.generators)

    @property
    def is_free(self) -> bool:
        return not self.relations

    def kills(self, m: Multidegree) -> bool:
        return any(divides(r, m) for r in self.relations)

    def __str__(self):
        base = "k[" + ",".join(self.var_names) + "]"
        if self.is_free:
            return base
        return base + "/(" + ", ".join(monomial_str(r, self.var_names) for r in self.relations) + ")"


@dataclass
class FreeComplex:
    """Chain complex of multigraded free modules.

    ``modules[i]`` lists the generator multidegrees in homological degree i;
    ``diffs[i]`` maps (row, col) -> scalar for the differential
    modules[i] -> modules[i-1], with diffs[0] always empty.  ``labels`` may
    carry a parallel structure naming the generators (subsets, wedge sets...).
    """

    ring: Ring
    modules: list
    diffs: list
    labels: list | None = None
    char: int = 0

    @property
    def top_degree(self) -> int:
        return len(self.modules) - 1

    def rank(self, i: int) -> int:
        return len(self.modules[i]) if 0 <= i <= self.top_degree else 0

    def ranks(self):
        return [len(m) for m in self.modules]

    def entry_monomial(self, i: int, row: int, col: int) -> Multidegree:
        return mdeg_sub(self.modules[i][col], self.modules[i - 1][row])

    def validate(self):
        """Check homogeneity of every entry; raise on violation."""
        if len(self.diffs) != len(self.modules):
            raise InternalInconsistencyError("modules/diffs length mismatch")
        for i in range(1, len(self.modules)):
            for (r, c), s in self.diffs[i].items():
                if s == 0:
                    raise InternalInconsistencyError(f"stored zero entry at degree {i} ({r},{c})")
                mono = self.entry_monomial(i, r, c)
                if any(e < 0 for e in mono):
                    raise InternalInconsistencyError(
                        f"inhomogeneous entry at degree {i} ({r},{c}): monomial {mono}")
                if self.ring.kills(mono):
                    raise InternalInconsistencyError(
                        f"entry at degree {i} ({r},{c}) should have been reduced to zero")

    def d_squared_violations(self):
        """All (i, row, col) where (d_{i-1} o d_i) is nonzero over the ring."""
        bad = []
        for i in range(2, len(self.modules)):
            by_col = {}
            for (r, c), s in self.diffs[i].items():
                by_col.setdefault(c, []).append((r, s))
            lower = self.diffs[i - 1]
            for c, terms in by_col.items():
                acc = {}
                for mid, s in terms:
                    for (r, m), t in lower.items():
                        if m == mid:
                            acc[r] = acc.get(r, 0) + s * t
                for r, total in acc.items():
                    if self.char:
                        total %= self.char
                    if total == 0:
                        continue
                    mono = mdeg_sub(self.modules[i][c], self.modules[i - 2][r])
                    if not self.ring.kills(mono):
                        bad.append((i, r, c))
        return bad

    def is_complex(self) -> bool:
        return not self.d_squared_violations()


def _entry(ring: Ring, diff: dict, row: int, col: int, scalar: int, mono: Multidegree):
    if scalar and not ring.kills(mono):
        key = (row, col)
        new = diff.get(key, 0) + scalar
        if new:
            diff[key] = new
        else:
            diff.pop(key, None)


def _subset_complex(ideal: MonomialIdeal, faces_by_size) -> FreeComplex:
    """Simplicial-style complex on generator subsets with lcm multidegrees.

    d(T_J) = sum over j in J at 1-based position a of (-1)^a (m_J/m_{J\\j}) T_{J\\j}.
    """
    ring = Ring.ambient(ideal)
    modules, labels, diffs = [], [], [{}]
    index = []
    for size, faces in enumerate(faces_by_size):
        modules.append([lcm_of_subset(ideal, f) for f in faces])
        labels.append(list(faces))
        index.append({f: k for k, f in enumerate(faces)})
        if size == 0:
            continue
        diff = {}
        for col, face in enumerate(faces):
            for a, j in enumerate(face, start=1):
                sub = tuple(x for x in face if x != j)
                row = index[size - 1].get(sub)
                if row is None:
                    raise InternalInconsistencyError(
                        f"face {sub} missing below {face}; subset complex not closed")
                mono = mdeg_sub(modules[size][col], modules[size - 1][row])
                _entry(ring, diff, row, col, (-1) ** a, mono)
        diffs.append(diff)
    return FreeComplex(ring, modules, diffs, labels)


def taylor_complex(ideal: MonomialIdeal) -> FreeComplex:
    """Taylor complex of S/I on the minimal generators, over S."""
    r = ideal.num_generators
    faces = [list(combinations(range(r), size)) for size in range(r + 1)]
    return _subset_complex(ideal, faces)


def scarf_faces(ideal: MonomialIdeal):
    """Subsets of the generators whose lcm differs from every other subset's."""
    r = ideal.num_generators
    by_lcm = {}
    for size in range(r + 1):
        for face in combinations(range(r), size):
            by_lcm.setdefault(lcm_of_subset(ideal, face), []).append(face)
    faces = [fs[0] for fs in by_lcm.values() if len(fs) == 1]
    faces.sort(key=lambda f: (len(f), f))
    return faces


def scarf_complex(ideal: MonomialIdeal) -> FreeComplex:
    """Subcomplex of the Taylor complex on the Scarf faces."""
    faces = scarf_faces(ideal)
    top = max((len(f) for f in faces), default=0)
    by_size = [[f for f in faces if len(f) == size] for size in range(top + 1)]
    return _subset_complex(ideal, by_size)


def is_taylor_minimal(ideal: MonomialIdeal) -> bool:
    """True iff all subset lcms are distinct, i.e. the Taylor resolution is minimal."""
    r = ideal.num_generators
    lcms = {lcm_of_subset(ideal, f) for size in range(r + 1) for f in combinations(range(r), size)}
    return len(lcms) == 2 ** r


def koszul_complex(ring: Ring) -> FreeComplex:
    """Exterior-algebra Koszul complex on the variables of the ring.

    d(e_{i_1} ^ .. ^ e_{i_k}) = sum_a (-1)^(a+1) x_{i_a} (wedge omitting i_a),
    indices strictly increasing.
    """
    n = ring.num_vars
    modules, labels, diffs = [], [], [{}]
    index = []
    for size in range(n + 1):
        wedges = list(combinations(range(n), size))
        modules.append([tuple(1 if v in w else 0 for v in range(n)) for w in wedges])
        labels.append(wedges)
        index.append({w: k for k, w in enumerate(wedges)})
        if size == 0:
            continue
        diff = {}
        for col, wedge in enumerate(wedges):
            for a, v in enumerate(wedge, start=1):
                sub = tuple(x for x in wedge if x != v)
                row = index[size - 1][sub]
                mono = tuple(1 if k == v else 0 for k in range(n))
                _entry(ring, diff, row, col, (-1) ** (a + 1), mono)
        diffs.append(diff)
    return FreeComplex(ring, modules, diffs, labels)


def alive_basis(C: FreeComplex, i: int, j: Multidegree):
    """Generator indices of modules[i] contributing to the component at j."""
    if not 0 <= i <= C.top_degree:
        return []
    ring = C.ring
    return [c for c, deg in enumerate(C.modules[i])
            if divides(deg, j) and not ring.kills(mdeg_sub(j, deg))]


def component_matrix(C: FreeComplex, i: int, j: Multidegree, rows=None, cols=None):
    """k-linear matrix of d_i in multidegree j over the alive bases."""
    if rows is None:
        rows = alive_basis(C, i - 1, j)
    if cols is None:
        cols = alive_basis(C, i, j)
    diff = C.diffs[i] if 0 < i <= C.top_degree else {}
    return [[diff.get((r, c), 0) for c in cols] for r in rows]


def _homology_at(C: FreeComplex, j: Multidegree, char: int):
    alive = [alive_basis(C, i, j) for i in range(C.top_degree + 1)]
    ranks = [0] * (C.top_degree + 2)
    for i in range(1, C.top_degree + 1):
        if alive[i] and alive[i - 1]:
            M = component_matrix(C, i, j, alive[i - 1], alive[i])
            ranks[i] = rank_of(M, len(alive[i]), char)
    return {i: len(alive[i]) - ranks[i] - ranks[i + 1]
            for i in range(C.top_degree + 1)
            if len(alive[i]) - ranks[i] - ranks[i + 1]}


def _homology_chunk(args):
    C, cells, char = args
    return [(j, _homology_at(C, j, char)) for j in cells]


def homology(C: FreeComplex, bound: Multidegree, char: int | None = None, jobs: int = 1):
    """Dimensions of H_i(C) in every multidegree <= bound.

    Returns {i: {multidegree: dim}} with zero dimensions omitted.  Components
    in distinct multidegrees are independent; ``jobs > 1`` computes them in
    worker processes.
    """
    if char is None:
        char = C.char
    cells = box_multidegrees(bound)
    result = {i: {} for i in range(C.top_degree + 1)}
    if jobs > 1 and len(cells) > 1:
        chunks = [cells[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_homology_chunk, [(C, chunk, char) for chunk in chunks])
        items = [pair for part in parts for pair in part]
    else:
        items = [(j, _homology_at(C, j, char)) for j in cells]
    for j, dims in items:
        for i, d in dims.items():
            result[i][j] = d
    return result


def _unit_entries(C: FreeComplex):
    for i in range(1, len(C.modules)):
        for (r, c), s in sorted(C.diffs[i].items()):
            if s and C.modules[i][c] == C.modules[i - 1][r]:
                yield i, r, c, s


def minimize(C: FreeComplex) -> FreeComplex:
    """Cancel unit entries (scalar entries between equal multidegrees) until none
    remain; the result is homotopy equivalent with ranks the graded Betti numbers."""
    modules = [list(m) for m in C.modules]
    diffs = [dict(d) for d in C.diffs]
    char = C.char
    while True:
        hit = next(_unit_entries(FreeComplex(C.ring, modules, diffs, None, char)), None)
        if hit is None:
            break
        i, r, c, u = hit
        d = diffs[i]
        col_of = {rr: s for (rr, cc), s in d.items() if cc == c and rr != r}
        row_of = {cc: s for (rr, cc), s in d.items() if rr == r and cc != c}
        for (rr, cc) in [k for k in d]:
            if rr == r or cc == c:
                del d[(rr, cc)]
        for rr, a in col_of.items():
            for cc, b in row_of.items():
                if char:
                    val = (d.get((rr, cc), 0) - a * b * pow(u, -1, char)) % char
                else:
                    val = d.get((rr, cc), 0) - Fraction(a * b, u)
                    if val.denominator == 1:
                        val = int(val)
                if val:
                    d[(rr, cc)] = val
                else:
                    d.pop((rr, cc), None)
        # drop generator c in degree i and r in degree i-1, reindexing neighbours
        def dropped(mapping, dead_row, dead_col):
            out = {}
            for (rr, cc), s in mapping.items():
                if rr == dead_row or cc == dead_col:
                    continue
                out[(rr - (dead_row is not None and rr > dead_row),
                     cc - (dead_col is not None and cc > dead_col))] = s
            return out

        diffs[i] = dropped(d, r, c)
        if i + 1 < len(diffs):
            diffs[i + 1] = dropped(diffs[i + 1], c, None)
        if i >= 2:
            diffs[i - 1] = dropped(diffs[i - 1], None, r)
        del modules[i][c]
        del modules[i - 1][r]
    while len(modules) > 1 and not modules[-1]:
        modules.pop()
        diffs.pop()
    return FreeComplex(C.ring, modules, diffs, None, char)
