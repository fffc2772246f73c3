"""Exact linear algebra over Q and over prime fields F_p.

Everything downstream (homology, obstruction classes, witness gauges)
reduces to affine solves over one of these two fields, so this module is
deliberately small and deterministic: dense Gaussian elimination, leftmost
pivot column, topmost pivot row, no magnitude-based pivoting.
"""

from __future__ import annotations

from fractions import Fraction


class LinalgError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    """Residue in [0, p).  Arithmetic stays in native ints (p < 2**31)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise LinalgError("mixed moduli %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v == 0:
            raise ZeroDivisionError("division by zero residue mod %d" % self.p)
        return FpElement(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d#%d" % (self.v, self.p)


class Rationals:
    """The field Q; every nonzero integer is a unit."""

    name = "Q"
    characteristic = 0

    def smallest_non_unit(self):
        # the paper-side bound is infinite over Q
        return None

    def is_unit(self, n):
        if n < 1:
            raise LinalgError("unit_check requires n >= 1, got %r" % (n,))
        return True

    def of(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise LinalgError("cannot coerce %r into Q" % (x,))

    def parse(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise LinalgError("bad rational literal %r: %s" % (s, exc))

    def format(self, x):
        return str(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field F_p for a prime p < 2**31."""

    characteristic = None  # set per instance

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise LinalgError("modulus %r is not prime" % (p,))
        if p >= 2 ** 31:
            raise LinalgError("modulus %d too large (< 2**31 required)" % p)
        self.p = p
        self.name = "F%d" % p
        self.characteristic = p

    def smallest_non_unit(self):
        return self.p

    def is_unit(self, n):
        if n < 1:
            raise LinalgError("unit_check requires n >= 1, got %r" % (n,))
        return n % self.p != 0

    def of(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise LinalgError("residue mod %d used in F%d" % (x.p, self.p))
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise LinalgError("denominator of %s not invertible mod %d" % (x, self.p))
            return FpElement(x.numerator, self.p) / FpElement(x.denominator, self.p)
        raise LinalgError("cannot coerce %r into F%d" % (x, self.p))

    def parse(self, s):
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise LinalgError("bad scalar literal %r: %s" % (s, exc))
        return self.of(q)

    def format(self, x):
        return str(x.v)

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


QQ = Rationals()


def field_from_name(name):
    """Parse "Q" or "Fp:<p>" into a field object."""
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise LinalgError("bad field name %r" % name)
        return PrimeField(p)
    raise LinalgError("unknown field %r (expected 'Q' or 'Fp:<p>')" % name)


def unit_check(field, n):
    """True iff the integer n >= 1 is invertible in the field."""
    return field.is_unit(n)


class Matrix:
    """Dense row-major matrix of exact scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if len(entries) != rows * cols:
            raise LinalgError("entry count %d != %d x %d" % (len(entries), rows, cols))
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    @classmethod
    def from_rows(cls, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        flat = []
        for r in row_lists:
            if len(r) != cols:
                raise LinalgError("ragged rows")
            flat.extend(r)
        return cls(rows, cols, flat)

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        m = cls.zero(field, n, n)
        for i in range(n):
            m[i, i] = field.one
        return m

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def __setitem__(self, rc, val):
        r, c = rc
        self.entries[r * self.cols + c] = val

    def row(self, r):
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def times_vec(self, v):
        if len(v) != self.cols:
            raise LinalgError("vector length %d != cols %d" % (len(v), self.cols))
        out = []
        for r in range(self.rows):
            base = r * self.cols
            s = None
            for c, x in enumerate(v):
                if not x:
                    continue
                t = self.entries[base + c] * x
                s = t if s is None else s + t
            if s is None:
                # row of an empty sum; synthesize a zero of the right kind
                s = self.entries[base] * 0 if self.cols else 0
            out.append(s)
        return out

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.rows == self.rows
                and other.cols == self.cols and other.entries == self.entries)

    def __repr__(self):
        return "Matrix(%d x %d)" % (self.rows, self.cols)


class AffineSolution:
    """Particular solution plus a basis of the kernel of M."""

    __slots__ = ("x", "kernel")

    def __init__(self, x, kernel):
        self.x = x
        self.kernel = kernel


class NoSolutionCertificate:
    """Row functional y with y*M = 0 and y*b != 0, certifying inconsistency."""

    __slots__ = ("functional",)

    def __init__(self, functional):
        self.functional = functional


def _eliminate(field, rows_data, track_rows=None):
    """In-place forward elimination to RREF with fixed pivot order.

    rows_data is a list of row lists.  track_rows, when given, receives the
    same row operations (used to carry the transformation matrix).
    Returns the list of (row, col) pivot positions.
    """
    nrows = len(rows_data)
    ncols = len(rows_data[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, nrows):
            if rows_data[rr][c]:
                pr = rr
                break
        if pr is None:
            continue
        if pr != r:
            rows_data[r], rows_data[pr] = rows_data[pr], rows_data[r]
            if track_rows is not None:
                track_rows[r], track_rows[pr] = track_rows[pr], track_rows[r]
        inv = field.one / rows_data[r][c]
        if rows_data[r][c] != field.one:
            rows_data[r] = [x * inv for x in rows_data[r]]
            if track_rows is not None:
                track_rows[r] = [x * inv for x in track_rows[r]]
        for rr in range(nrows):
            if rr == r:
                continue
            f = rows_data[rr][c]
            if not f:
                continue
            rows_data[rr] = [a - f * b for a, b in zip(rows_data[rr], rows_data[r])]
            if track_rows is not None:
                track_rows[rr] = [a - f * b for a, b in zip(track_rows[rr], track_rows[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return pivots


def rank(field, m):
    data = [m.row(r) for r in range(m.rows)]
    return len(_eliminate(field, data))


def kernel_basis(field, m):
    """Deterministic basis of {v : M v = 0} (one vector per free column)."""
    data = [m.row(r) for r in range(m.rows)]
    pivots = _eliminate(field, data)
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for c in range(m.cols):
        if c in pivot_cols:
            continue
        v = [field.zero] * m.cols
        v[c] = field.one
        for pc, pr in pivot_cols.items():
            v[pc] = -data[pr][c]
        basis.append(v)
    return basis


def solve_affine(field, m, b, certificate=False):
    """Solve M x = b exactly.

    Returns an AffineSolution (particular solution with free variables set
    to zero, plus kernel basis), or None when inconsistent.  With
    certificate=True an inconsistent system instead returns a
    NoSolutionCertificate carrying the cokernel functional.
    """
    if len(b) != m.rows:
        raise LinalgError("rhs length %d != rows %d" % (len(b), m.rows))
    data = [m.row(r) + [b[r]] for r in range(m.rows)]
    track = [[field.one if i == j else field.zero for j in range(m.rows)]
             for i in range(m.rows)] if certificate else None
    pivots = _eliminate(field, data, track)
    # a pivot in the last (augmented) column means inconsistency
    for idx, (r, c) in enumerate(pivots):
        if c == m.cols:
            if certificate:
                return NoSolutionCertificate(track[r])
            return None
    x = [field.zero] * m.cols
    for r, c in pivots:
        x[c] = data[r][m.cols]
    pivot_cols = {c: r for r, c in pivots}
    kernel = []
    for c in range(m.cols):
        if c in pivot_cols:
            continue
        v = [field.zero] * m.cols
        v[c] = field.one
        for pc, pr in pivot_cols.items():
            v[pc] = -data[pr][c]
        kernel.append(v)
    return AffineSolution(x, kernel)
