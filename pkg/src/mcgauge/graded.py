"""Finite based graded vector spaces, chain complexes and contractions.

Grading is homological throughout this package: the differential lowers
degree by one.  Cohomologically graded input is negated at the I/O
boundary.  A contraction (i, p, h) of a complex A onto its homology H
satisfies, exactly:

    i p - id_A = d h + h d,   p i = id_H,   h h = 0,   p h = 0,   h i = 0.
"""

from __future__ import annotations

from .linalg import Matrix, _eliminate, rank as _rank, solve_affine


class GradedError(ValueError):
    pass


class GradedSpace:
    """Ordered finite basis with integer degrees, an optional unit flag in

    degree 0, and a square-zero degree -1 differential given per basis
    element as a sparse coefficient column.
    """

    def __init__(self, field, names, degrees, differential=None, unit=None):
        if len(names) != len(degrees):
            raise GradedError("names/degrees length mismatch")
        if len(set(names)) != len(names):
            raise GradedError("duplicate basis names")
        self.field = field
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        self.index = {n: i for i, n in enumerate(names)}
        self.unit = None
        if unit is not None:
            u = self.index.get(unit)
            if u is None:
                raise GradedError("unit %r not a basis element" % (unit,))
            if self.degrees[u] != 0:
                raise GradedError("unit must sit in degree 0")
            self.unit = u
        # differential: {src index: {dst index: scalar}}
        d = {}
        for src, col in (differential or {}).items():
            s = src if isinstance(src, int) else self.index[src]
            clean = {}
            for dst, c in col.items():
                t = dst if isinstance(dst, int) else self.index[dst]
                c = field.of(c)
                if c:
                    clean[t] = c
            if clean:
                d[s] = clean
        self.differential = d
        self._check()

    def _check(self):
        for s, col in self.differential.items():
            for t in col:
                if self.degrees[t] != self.degrees[s] - 1:
                    raise GradedError(
                        "differential of %s does not lower degree by 1" % self.names[s])
        for s in range(self.dim):
            acc = {}
            for t, c in self.differential.get(s, {}).items():
                for u, c2 in self.differential.get(t, {}).items():
                    acc[u] = acc.get(u, self.field.zero) + c * c2
            if any(v for v in acc.values()):
                raise GradedError("differential does not square to zero at %s" % self.names[s])
        if self.unit is not None and self.unit in self.differential:
            raise GradedError("unit is not closed")

    @property
    def dim(self):
        return len(self.names)

    def degree(self, i):
        return self.degrees[i]

    def sdeg(self, i):
        """Degree on the shifted copy sA (suspension adds one)."""
        return self.degrees[i] + 1

    def indices_of_degree(self, n):
        return [i for i, d in enumerate(self.degrees) if d == n]

    def degree_range(self):
        if not self.degrees:
            return (0, -1)
        return (min(self.degrees), max(self.degrees))

    def d_vector(self, v):
        """Apply the differential to a sparse vector {index: scalar}."""
        out = {}
        for i, c in v.items():
            if not c:
                continue
            for t, c2 in self.differential.get(i, {}).items():
                out[t] = out.get(t, self.field.zero) + c * c2
        return {k: v2 for k, v2 in out.items() if v2}

    def d_matrix(self, n):
        """Matrix of d: degree n -> degree n-1 in the chosen bases."""
        src = self.indices_of_degree(n)
        dst = self.indices_of_degree(n - 1)
        pos = {i: r for r, i in enumerate(dst)}
        m = Matrix.zero(self.field, len(dst), len(src))
        for c, i in enumerate(src):
            for t, coeff in self.differential.get(i, {}).items():
                m[pos[t], c] = coeff
        return m

    def __repr__(self):
        return "GradedSpace(dim=%d, degrees=%s..%s)" % (
            self.dim, min(self.degrees or [0]), max(self.degrees or [0]))


def check_complex(space):
    """True iff the stored differential drops degree by one and squares to

    zero; construction already enforces this, so this re-audits a space
    that may have been built by hand.
    """
    try:
        space._check()
    except GradedError:
        return False
    return True


class LinearMap:
    """Graded linear map stored as sparse columns over the source basis."""

    def __init__(self, source, target, degree, cols=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.cols = {int(k): {int(t): c for t, c in col.items() if c}
                     for k, col in (cols or {}).items()}
        self.cols = {k: col for k, col in self.cols.items() if col}

    def apply_basis(self, i):
        return dict(self.cols.get(i, {}))

    def apply(self, v):
        field = self.target.field
        out = {}
        for i, c in v.items():
            if not c:
                continue
            for t, c2 in self.cols.get(i, {}).items():
                out[t] = out.get(t, field.zero) + c * c2
        return {k: x for k, x in out.items() if x}

    def entry(self, i, t):
        return self.cols.get(i, {}).get(t, self.target.field.zero)

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and self.cols == other.cols
                and self.degree == other.degree)


def _maps_equal(f, g):
    keys = set(f.cols) | set(g.cols)
    for k in keys:
        if f.cols.get(k, {}) != g.cols.get(k, {}):
            return False
    return True


class Contraction:
    """Data (A, H, i, p, h) with the five side conditions checked exactly."""

    def __init__(self, big, small, incl, proj, homotopy):
        self.big = big
        self.small = small
        self.incl = incl
        self.proj = proj
        self.homotopy = homotopy

    def field(self):
        return self.big.field


def check_contraction(con):
    """Return the list of violated side conditions (empty when valid)."""
    big, small = con.big, con.small
    field = big.field
    i, p, h = con.incl, con.proj, con.homotopy
    bad = []
    if small.differential:
        bad.append("small space has a nonzero differential")
    # i and p are chain maps onto/from a zero-differential space
    for k in range(small.dim):
        if big.d_vector(i.apply_basis(k)):
            bad.append("d i != 0 on %s" % small.names[k])
            break
    for k in range(big.dim):
        if p.apply(big.d_vector({k: field.one})):
            bad.append("p d != 0 on %s" % big.names[k])
            break
    # p i = id_H
    for k in range(small.dim):
        v = p.apply(i.apply_basis(k))
        if v != {k: field.one}:
            bad.append("p i != id on %s" % small.names[k])
            break
    # homotopy relation  i p - id = d h + h d
    for k in range(big.dim):
        lhs = i.apply(p.apply_basis(k))
        lhs[k] = lhs.get(k, field.zero) - field.one
        rhs = big.d_vector(h.apply_basis(k))
        for t, c in h.apply(big.d_vector({k: field.one})).items():
            rhs[t] = rhs.get(t, field.zero) + c
        lhs = {a: b for a, b in lhs.items() if b}
        rhs = {a: b for a, b in rhs.items() if b}
        if lhs != rhs:
            bad.append("i p - id != d h + h d on %s" % big.names[k])
            break
    for name, cond in [("h h", lambda k: h.apply(h.apply_basis(k))),
                       ("p h", lambda k: p.apply(h.apply_basis(k))),
                       ("h i", None)]:
        if name == "h i":
            for k in range(small.dim):
                if h.apply(i.apply_basis(k)):
                    bad.append("h i != 0 on %s" % small.names[k])
                    break
        else:
            for k in range(big.dim):
                if cond(k):
                    bad.append("%s != 0 on %s" % (name, big.names[k]))
                    break
    return bad


def homology_dimensions(space):
    """dim H_n = dim ker(d_n) - rank(d_{n+1}), computed independently."""
    lo, hi = space.degree_range()
    dims = {}
    for n in range(lo, hi + 1):
        dn = space.d_matrix(n)
        dn1 = space.d_matrix(n + 1)
        dims[n] = dn.cols - _rank(space.field, dn) - _rank(space.field, dn1)
    return {n: d for n, d in dims.items() if d}


def make_contraction(space):
    """Deterministic contraction of a complex onto its homology.

    Per degree n the basis splits as V_n = B_n + H_n + C_n where B_n is a
    chosen image basis of d, C_n is spanned by the pivot columns of d_n
    (so d maps C_n isomorphically onto B_{n-1}) and H_n is a complement of
    B_n inside ker d_n, extended greedily in basis order.  A declared unit
    is taken as the first homology representative of its degree; a unit
    whose class vanishes is an error.
    """
    field = space.field
    lo, hi = space.degree_range()
    # per degree: pivot columns (C), image basis of d from one degree up (B)
    pivcols = {}
    imgs = {}
    kernels = {}
    for n in range(lo, hi + 2):
        src = space.indices_of_degree(n)
        if not src:
            pivcols[n] = []
            kernels[n] = []
            continue
        m = space.d_matrix(n)
        data = [m.row(r) for r in range(m.rows)]
        pivots = _eliminate(field, data)
        piv = [src[c] for _, c in pivots]
        pivcols[n] = piv
        pivot_col_set = {c for _, c in pivots}
        kern = []
        pivot_lookup = {c: r for r, c in pivots}
        for c in range(m.cols):
            if c in pivot_col_set:
                continue
            v = {src[c]: field.one}
            for pc, pr in pivot_lookup.items():
                coef = -data[pr][c]
                if coef:
                    v[src[pc]] = coef
            kern.append(v)
        kernels[n] = kern
        # image of d_n inside degree n-1, one vector per pivot column
        imgs[n - 1] = [space.d_vector({j: field.one}) for j in piv]

    small_names = []
    small_degrees = []
    small_unit = None
    reps = []  # representative vector in A per homology class
    proj_cols = {}
    h_cols = {}
    incl_cols = {}

    for n in range(lo, hi + 1):
        idxs = space.indices_of_degree(n)
        if not idxs:
            continue
        pos = {i: r for r, i in enumerate(idxs)}
        b_vecs = imgs.get(n, [])
        cand = list(kernels[n])
        if space.unit is not None and space.degrees[space.unit] == n:
            # put the unit cycle first so the complement contains it
            unit_vec = {space.unit: field.one}
            cand = [unit_vec] + cand
        # greedily extend the image basis to a basis of the kernel
        rows_so_far = []
        chosen = []

        def dense(v):
            out = [field.zero] * len(idxs)
            for i, c in v.items():
                out[pos[i]] = c
            return out

        def try_add(vec_dense):
            rows_so_far.append(list(vec_dense))
            work = [list(r) for r in rows_so_far]
            rk = len(_eliminate(field, work))
            if rk == len(rows_so_far):
                return True
            rows_so_far.pop()
            return False

        for v in b_vecs:
            ok = try_add(dense(v))
            if not ok:
                raise GradedError("image vectors dependent; differential audit failed")
        for v in cand:
            if try_add(dense(v)):
                chosen.append(v)
        if space.unit is not None and space.degrees[space.unit] == n:
            unit_chosen = chosen and chosen[0].get(space.unit) == field.one and len(chosen[0]) == 1
            if not unit_chosen:
                raise GradedError("unit class is exact; cannot build unit-adapted contraction")
        # record homology classes
        class_ids = []
        for v in chosen:
            lead = min(v.keys())
            name = "[%s]" % space.names[lead]
            if name in small_names:
                k = 2
                while "%s~%d" % (name, k) in small_names:
                    k += 1
                name = "%s~%d" % (name, k)
            small_names.append(name)
            small_degrees.append(n)
            class_ids.append(len(small_names) - 1)
            reps.append(v)
            if space.unit is not None and v == {space.unit: field.one}:
                small_unit = name
        # solve the decomposition [B | H | C] coords for each basis vector
        c_list = pivcols[n]
        cols_matrix = []
        for v in b_vecs:
            cols_matrix.append(dense(v))
        for v in chosen:
            cols_matrix.append(dense(v))
        for j in c_list:
            cols_matrix.append(dense({j: field.one}))
        nb, nh = len(b_vecs), len(chosen)
        m = Matrix.from_rows([[cols_matrix[c][r] for c in range(len(cols_matrix))]
                              for r in range(len(idxs))]) if cols_matrix else None
        # preimage data: b_vecs[t] = d(pivcols[n+1][t])
        up_piv = pivcols.get(n + 1, [])
        for i in idxs:
            if m is None:
                continue
            target = [field.zero] * len(idxs)
            target[pos[i]] = field.one
            sol = solve_affine(field, m, target)
            if sol is None:
                raise GradedError("basis decomposition failed in degree %d" % n)
            coords = sol.x
            pcol = {}
            for t in range(nh):
                c = coords[nb + t]
                if c:
                    pcol[class_ids[t]] = c
            if pcol:
                proj_cols[i] = pcol
            hcol = {}
            for t in range(nb):
                c = coords[t]
                if c:
                    # b-part preimage lives on the pivot columns one degree up
                    j = up_piv[t]
                    hcol[j] = hcol.get(j, field.zero) - c
            hcol = {k2: c for k2, c in hcol.items() if c}
            if hcol:
                h_cols[i] = hcol

    small = GradedSpace(field, small_names, small_degrees, unit=small_unit)
    for k, v in enumerate(reps):
        incl_cols[k] = v
    incl = LinearMap(small, space, 0, incl_cols)
    proj = LinearMap(space, small, 0, proj_cols)
    hom = LinearMap(space, space, 1, h_cols)
    con = Contraction(space, small, incl, proj, hom)
    bad = check_contraction(con)
    if bad:
        raise GradedError("contraction side conditions failed: %s" % "; ".join(bad))
    return con
