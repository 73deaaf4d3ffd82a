"""Exact linear algebra over the rationals and prime fields.

Tensor-product basis convention (used by every module in the package):
the basis vector ``e_i (x) e_j`` of ``V (x) W`` has index ``i * dim(W) + j``,
i.e. lexicographic with the left-most factor most significant.  This is the
ordering produced by :func:`kronecker` and decoded by :func:`multi_index`.

Matrices are stored sparsely (row -> {col: value}) but behave as dense
``rows x cols`` grids; ``LinearMap.entries`` materialises the grid.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class DimensionError(ValueError):
    """Raised when shapes of linear maps do not fit together."""


class FieldMismatchError(ValueError):
    pass


# --------------------------------------------------------------------------
# fields


class Rationals:
    """The field Q.  Elements are ``int`` or ``fractions.Fraction``."""

    name = "rational"
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x) -> int | Fraction:
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot interpret {x!r} as a rational")
        return self.normalize(x)

    @staticmethod
    def normalize(x):
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.normalize(Fraction(1) / x)

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime ``p < 2**31``; elements are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if p < 2 or p >= 2**31 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, str):
            s = x.strip()
            if "/" in s:
                num, den = s.split("/")
                return int(num) * pow(int(den), -1, self.p) % self.p
            return int(s) % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot interpret {x!r} in GF({self.p})")

    def normalize(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(x % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# --------------------------------------------------------------------------
# linear maps


def multi_index(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    """Decode a flat tensor index into per-factor indices."""
    out = []
    for d in reversed(dims):
        out.append(index % d)
        index //= d
    return tuple(reversed(out))


def flat_index(indices: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for i, d in zip(indices, dims):
        idx = idx * d + i
    return idx


class LinearMap:
    """An immutable ``rows x cols`` matrix over a field (target x source)."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field, rows: int, cols: int, data: Mapping[int, Mapping[int, object]] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimension")
        self.field = field
        self.rows = rows
        self.cols = cols
        clean: dict[int, dict[int, object]] = {}
        if data:
            norm = field.normalize
            for r, row in data.items():
                if not 0 <= r < rows:
                    raise DimensionError(f"row index {r} outside 0..{rows - 1}")
                new = {}
                for c, v in row.items():
                    if not 0 <= c < cols:
                        raise DimensionError(f"column index {c} outside 0..{cols - 1}")
                    v = norm(v)
                    if v != 0:
                        new[c] = v
                if new:
                    clean[r] = new
        self._data = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, cols, data):
        # trusted constructor: data already normalized, no zeros
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = rows
        obj.cols = cols
        obj._data = data
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------
    @classmethod
    def from_dense(cls, field, grid: Sequence[Sequence], cols: int | None = None) -> "LinearMap":
        rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if rows else 0
        data = {}
        for r, row in enumerate(grid):
            if len(row) != cols:
                raise DimensionError("ragged matrix")
            data[r] = {c: field(v) for c, v in enumerate(row) if v != 0}
        return cls(field, rows, cols, data)

    @classmethod
    def from_entries(cls, field, rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> "LinearMap":
        data: dict[int, dict[int, object]] = {}
        for (r, c), v in entries.items():
            data.setdefault(r, {})[c] = field(v) if not isinstance(v, (int, Fraction)) else v
        return cls(field, rows, cols, data)

    @classmethod
    def from_columns(cls, field, rows: int, columns: Sequence[Sequence]) -> "LinearMap":
        data: dict[int, dict[int, object]] = {}
        for c, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionError("column length mismatch")
            for r, v in enumerate(col):
                if v != 0:
                    data.setdefault(r, {})[c] = v
        return cls(field, rows, len(columns), data)

    # accessors --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> list[list]:
        grid = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                grid[r][c] = v
        return grid

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(rc)
        return self._data.get(r, {}).get(c, self.field.zero)

    def nonzero(self) -> Iterable[tuple[int, int, object]]:
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def row(self, r: int) -> dict[int, object]:
        return dict(self._data.get(r, {}))

    def column(self, c: int) -> list:
        return [self._data.get(r, {}).get(c, self.field.zero) for r in range(self.rows)]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    # algebra ----------------------------------------------------------
    def _check_field(self, other: "LinearMap"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose(self, other)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return self._combine(other, 1)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self._combine(other, -1)

    def _combine(self, other, sign):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        norm = self.field.normalize
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                nv = norm(tgt.get(c, 0) + sign * v)
                if nv:
                    tgt[c] = nv
                else:
                    tgt.pop(c, None)
            if not tgt:
                del data[r]
        return LinearMap._raw(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "LinearMap":
        return self.scale(-1)

    def scale(self, s) -> "LinearMap":
        norm = self.field.normalize
        s = self.field(s) if not isinstance(s, (int, Fraction)) else s
        if s == 0:
            return LinearMap._raw(self.field, self.rows, self.cols, {})
        data = {r: {c: norm(s * v) for c, v in row.items()} for r, row in self._data.items()}
        return LinearMap(self.field, self.rows, self.cols, data)

    def transpose(self) -> "LinearMap":
        data: dict[int, dict[int, object]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return LinearMap._raw(self.field, self.cols, self.rows, data)

    @property
    def T(self) -> "LinearMap":
        return self.transpose()

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(self.nonzero())))
        return self._hash

    def first_difference(self, other: "LinearMap"):
        """First (row, col, self_value, other_value) where the maps differ, or None."""
        if self.shape != other.shape:
            raise DimensionError(f"cannot compare {self.shape} with {other.shape}")
        keys = set()
        for m in (self, other):
            for r, row in m._data.items():
                for c in row:
                    keys.add((r, c))
        for r, c in sorted(keys):
            a, b = self[r, c], other[r, c]
            if a != b:
                return r, c, a, b
        return None

    def rank(self) -> int:
        pivots = _echelon(self.field, (dict(row) for row in self._data.values()))
        return len(pivots)

    def inverse(self) -> "LinearMap":
        if self.rows != self.cols:
            raise DimensionError(f"cannot invert non-square {self.shape} map")
        n = self.rows
        rows = []
        for r in range(n):
            row = dict(self._data.get(r, {}))
            row[n + r] = self.field.one
            rows.append(row)
        pivots = _echelon(self.field, rows)
        if any(p not in pivots for p in range(n)):
            raise ZeroDivisionError("matrix is singular")
        _rref(self.field, pivots)
        data = {}
        for p in range(n):
            data[p] = {c - n: v for c, v in pivots[p].items() if c >= n}
        return LinearMap(self.field, n, n, data)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def power(self, k: int) -> "LinearMap":
        if self.rows != self.cols:
            raise DimensionError("power of non-square map")
        if k < 0:
            return self.inverse().power(-k)
        out = identity(self.field, self.rows)
        for _ in range(k):
            out = self @ out
        return out

    def apply(self, vector: Sequence) -> list:
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for map with {self.cols} columns")
        norm = self.field.normalize
        out = [self.field.zero] * self.rows
        for r, row in self._data.items():
            out[r] = norm(sum(v * vector[c] for c, v in row.items()))
        return out

    def __repr__(self):
        return f"LinearMap({self.field!r}, {self.rows}x{self.cols}, nnz={self.nnz})"


def _selection(m: LinearMap) -> dict[int, int] | None:
    """``{row: col}`` if every stored row of ``m`` is a single entry equal to one."""
    if m.nnz != len(m._data):
        return None
    out = {}
    for r, row in m._data.items():
        for c, v in row.items():
            if v != 1:
                return None
            out[r] = c
    return out


def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """Return ``f o g``."""
    f._check_field(g)
    if f.cols != g.rows:
        raise DimensionError(f"cannot compose {f.rows}x{f.cols} after {g.rows}x{g.cols}")
    norm = f.field.normalize
    gdata = g._data
    sel = _selection(f)
    if sel is not None:
        # f picks one row of g per output row (permutations, projections)
        return LinearMap._raw(f.field, f.rows, g.cols,
                              {r: dict(gdata[k]) for r, k in sel.items() if k in gdata})
    sel = _selection(g)
    if sel is not None and len(set(sel.values())) == len(sel):
        # g has a single one per row in distinct columns: (f o g)[i, sel[r]] = f[i, r]
        data = {}
        for i, frow in f._data.items():
            row = {sel[r]: v for r, v in frow.items() if r in sel}
            if row:
                data[i] = row
        return LinearMap._raw(f.field, f.rows, g.cols, data)
    data = {}
    for r, frow in f._data.items():
        acc: dict[int, object] = {}
        for k, v in frow.items():
            grow = gdata.get(k)
            if not grow:
                continue
            for c, w in grow.items():
                acc[c] = acc.get(c, 0) + v * w
        row = {}
        for c, s in acc.items():
            s = norm(s)
            if s:
                row[c] = s
        if row:
            data[r] = row
    return LinearMap._raw(f.field, f.rows, g.cols, data)


def kronecker(f: LinearMap, g: LinearMap) -> LinearMap:
    """Tensor product of maps in the global (left-most significant) basis order."""
    f._check_field(g)
    norm = f.field.normalize
    gr, gc = g.rows, g.cols
    data = {}
    for i, frow in f._data.items():
        for k, grow in g._data.items():
            data[i * gr + k] = {j * gc + l: norm(v * w) for j, v in frow.items() for l, w in grow.items()}
    return LinearMap._raw(f.field, f.rows * gr, f.cols * gc, data)


def tensor(*maps: LinearMap) -> LinearMap:
    out = maps[0]
    for m in maps[1:]:
        out = kronecker(out, m)
    return out


def chain(*maps: LinearMap) -> LinearMap:
    """``chain(f, g, h) == f @ g @ h`` (right-most applied first)."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


@lru_cache(maxsize=None)
def identity(field, n: int) -> LinearMap:
    return LinearMap._raw(field, n, n, {i: {i: field.one} for i in range(n)})


def zero(field, rows: int, cols: int) -> LinearMap:
    return LinearMap._raw(field, rows, cols, {})


@lru_cache(maxsize=None)
def permute(field, dims: tuple[int, ...], perm: tuple[int, ...]) -> LinearMap:
    """Reorder tensor factors: output factor ``t`` is input factor ``perm[t]``."""
    dims = tuple(dims)
    perm = tuple(perm)
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"{perm} is not a permutation of {len(dims)} factors")
    out_dims = [dims[p] for p in perm]
    n = 1
    for d in dims:
        n *= d
    data = {}
    for idx in itertools.product(*(range(d) for d in dims)):
        src = flat_index(idx, dims)
        tgt = flat_index([idx[p] for p in perm], out_dims)
        data[tgt] = {src: field.one}
    return LinearMap._raw(field, n, n, data)


def flip(field, m: int, n: int) -> LinearMap:
    """The symmetric braiding ``V_m (x) V_n -> V_n (x) V_m``."""
    return permute(field, (m, n), (1, 0))


def row_vector(field, values: Sequence) -> LinearMap:
    return LinearMap(field, 1, len(values), {0: {c: v for c, v in enumerate(values) if v != 0}})


def column_vector(field, values: Sequence) -> LinearMap:
    return LinearMap(field, len(values), 1, {r: {0: v} for r, v in enumerate(values) if v != 0})


# --------------------------------------------------------------------------
# elimination


def _propagate_zeros(field, rows: Iterable[dict]) -> tuple[list[dict], set[int]]:
    """Drop zero coefficients and eliminate variables forced to zero by one-term rows."""
    norm = field.normalize
    live: list[dict | None] = []
    occurs: dict[int, list[int]] = {}
    for row in rows:
        row = {k: nv for k, v in row.items() if (nv := norm(v))}
        if row:
            for k in row:
                occurs.setdefault(k, []).append(len(live))
            live.append(row)
    zero: set[int] = set()
    stack = [i for i, r in enumerate(live) if len(r) == 1]
    while stack:
        i = stack.pop()
        row = live[i]
        if row is None or len(row) != 1:
            continue
        (var,) = row
        zero.add(var)
        for j in occurs.pop(var, ()):
            other = live[j]
            if other is None:
                continue
            other.pop(var, None)
            if not other:
                live[j] = None
            elif len(other) == 1:
                stack.append(j)
    rest = [r for r in live if r]
    rest.sort(key=len)
    return rest, zero


def _echelon(field, rows: Iterable[dict]) -> dict[int, dict]:
    """Row echelon form keyed by leading variable; each pivot row is monic."""
    norm = field.normalize
    rest, zero = _propagate_zeros(field, rows)
    pivots: dict[int, dict] = {z: {z: field.one} for z in zero}
    seen: set = set()
    for row in rest:
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = field.inv(row[lead])
                if inv != 1:
                    row = {k: norm(v * inv) for k, v in row.items()}
                pivots[lead] = row
                break
            c = row[lead]
            for k, w in prow.items():
                nv = norm(row.get(k, 0) - c * w)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return pivots


def _rref(field, pivots: dict[int, dict]) -> None:
    """Reduce echelon rows in place so no pivot row mentions another pivot."""
    norm = field.normalize
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        hits = [q for q in row if q != p and q in pivots]
        for q in hits:
            c = row.pop(q)
            for k, w in pivots[q].items():
                if k == q:
                    continue
                nv = norm(row.get(k, 0) - c * w)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)


class SolutionSpace:
    """A basis of the solution space of a homogeneous linear system."""

    def __init__(self, field, ambient_dim: int, basis: Sequence[Sequence]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = [tuple(v) for v in basis]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def as_maps(self, rows: int, cols: int, offset: int = 0) -> list[LinearMap]:
        out = []
        for v in self.basis:
            data = {}
            for r in range(rows):
                row = {c: v[offset + r * cols + c] for c in range(cols) if v[offset + r * cols + c] != 0}
                if row:
                    data[r] = row
            out.append(LinearMap._raw(self.field, rows, cols, data))
        return out

    def __repr__(self):
        return f"SolutionSpace(dim={self.dim}, ambient={self.ambient_dim})"


def solve(field, equations: Iterable[Mapping[int, object]], n_unknowns: int) -> SolutionSpace:
    """Kernel basis of a homogeneous system given as sparse rows ``{var: coeff}``.

    Pivots are the smallest variable index of each reduced row, so the
    returned basis is a deterministic function of the input.
    """
    eqs = []
    for eq in equations:
        for var in eq:
            if not 0 <= var < n_unknowns:
                raise DimensionError(f"unknown {var} outside 0..{n_unknowns - 1}")
        eqs.append(dict(eq))
    pivots = _echelon(field, eqs)
    _rref(field, pivots)
    free = [v for v in range(n_unknowns) if v not in pivots]
    column_of = {f: i for i, f in enumerate(free)}
    basis = [[field.zero] * n_unknowns for _ in free]
    for i, f in enumerate(free):
        basis[i][f] = field.one
    norm = field.normalize
    for p, row in pivots.items():
        for k, c in row.items():
            if k != p:
                basis[column_of[k]][p] = norm(-c)
    return SolutionSpace(field, n_unknowns, basis)


def rank_of_vectors(field, vectors: Iterable[Sequence]) -> int:
    return len(_echelon(field, ({i: v for i, v in enumerate(vec) if v != 0} for vec in vectors)))


# --------------------------------------------------------------------------
# linear systems whose unknowns are matrices


class MatrixUnknown:
    def __init__(self, offset: int, rows: int, cols: int):
        self.offset = offset
        self.rows = rows
        self.cols = cols

    def var(self, r: int, c: int) -> int:
        return self.offset + r * self.cols + c


class LinearSystem:
    """Collects equations of the form ``sum coef * L o (I_a (x) U (x) I_b) o R = 0``.

    ``U`` is an unknown matrix; ``L`` or ``R`` may be ``None`` for identity.
    Scalar unknowns multiply a constant matrix.
    """

    def __init__(self, field):
        self.field = field
        self.n_unknowns = 0
        self._eqs: dict[tuple, dict[int, object]] = {}

    def matrix(self, rows: int, cols: int) -> MatrixUnknown:
        u = MatrixUnknown(self.n_unknowns, rows, cols)
        self.n_unknowns += rows * cols
        return u

    def scalar(self) -> int:
        self.n_unknowns += 1
        return self.n_unknowns - 1

    def _slot(self, key, r, c):
        k = (key, r, c)
        eq = self._eqs.get(k)
        if eq is None:
            eq = self._eqs[k] = {}
        return eq

    def add_term(self, key, unknown: MatrixUnknown, left: LinearMap | None = None,
                 right: LinearMap | None = None, a: int = 1, b: int = 1, coef=1) -> None:
        ur, uc = unknown.rows, unknown.cols
        inner_cols = a * uc * b
        inner_rows = a * ur * b
        if right is not None and right.rows != inner_cols:
            raise DimensionError(f"right factor has {right.rows} rows, expected {inner_cols}")
        if left is not None and left.cols != inner_rows:
            raise DimensionError(f"left factor has {left.cols} columns, expected {inner_rows}")
        # columns of left, as {col: [(row, value)]}
        if left is None:
            lcols = None
        else:
            lcols: dict[int, list] = {}
            for r, row in left._data.items():
                for c, v in row.items():
                    lcols.setdefault(c, []).append((r, v))
        if right is None:
            rentries = ((i, i, 1) for i in range(inner_cols))
        else:
            rentries = ((r, c, v) for r, row in right._data.items() for c, v in row.items())
        for rr, cc, rv in rentries:
            alpha, rest = divmod(rr, uc * b)
            j, beta = divmod(rest, b)
            for i in range(ur):
                lcol = (alpha * ur + i) * b + beta
                if lcols is None:
                    targets = ((lcol, 1),)
                else:
                    targets = lcols.get(lcol, ())
                var = unknown.var(i, j)
                for lr, lv in targets:
                    eq = self._slot(key, lr, cc)
                    eq[var] = eq.get(var, 0) + coef * lv * rv

    def add_scalar_term(self, key, var: int, matrix: LinearMap, coef=1) -> None:
        for r, c, v in matrix.nonzero():
            eq = self._slot(key, r, c)
            eq[var] = eq.get(var, 0) + coef * v

    def solve(self) -> SolutionSpace:
        return solve(self.field, self._eqs.values(), self.n_unknowns)


def kernel(m: LinearMap) -> SolutionSpace:
    """Basis of ``{v : m v = 0}``."""
    return solve(m.field, (m.row(r) for r in range(m.rows)), m.cols)


def _columns(m: LinearMap) -> dict[int, list[tuple[int, object]]]:
    cols: dict[int, list] = {}
    for r, row in m._data.items():
        for c, v in row.items():
            cols.setdefault(c, []).append((r, v))
    return cols


def codiagonal(mul: LinearMap, f: LinearMap, g: LinearMap, side: str = "left",
               reverse: bool = False) -> LinearMap:
    """Tensor product of two coactions, multiplying the coefficient legs with ``mul``.

    ``side="left"``: ``f: A -> H (x) A``, ``g: B -> H (x) B`` give
    ``a (x) b -> a_(-1) b_(-1) (x) a_(0) (x) b_(0)``.  ``side="right"``: ``f: A -> A (x) H``,
    ``g: B -> B (x) H`` give ``a (x) b -> a_(0) (x) b_(0) (x) a_(1) b_(1)``.
    ``reverse`` multiplies the legs in the opposite order.  Equivalent to
    ``(mul (x) id) o reindex o (f (x) g)`` without forming the Kronecker product.
    """
    N = mul.rows
    if side == "left":
        A, B = f.cols, g.cols
        if f.rows != N * A or g.rows != N * B:
            raise DimensionError("coaction shapes do not match the multiplication")
    elif side == "right":
        A, B = f.cols, g.cols
        if f.rows != A * N or g.rows != B * N:
            raise DimensionError("coaction shapes do not match the multiplication")
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    mcols = _columns(mul)
    fcols, gcols = _columns(f), _columns(g)
    acc: dict[int, dict[int, object]] = {}
    for i, fentries in fcols.items():
        for k, gentries in gcols.items():
            col = i * B + k
            for fr, fv in fentries:
                if side == "left":
                    h1, i2 = divmod(fr, A)
                else:
                    i2, h1 = divmod(fr, N)
                for gr, gv in gentries:
                    if side == "left":
                        h2, k2 = divmod(gr, B)
                    else:
                        k2, h2 = divmod(gr, N)
                    pair = h2 * N + h1 if reverse else h1 * N + h2
                    fg = fv * gv
                    for c, mv in mcols.get(pair, ()):
                        if side == "left":
                            row = (c * A + i2) * B + k2
                        else:
                            row = (i2 * B + k2) * N + c
                        r = acc.setdefault(row, {})
                        r[col] = r.get(col, 0) + fg * mv
    return LinearMap(f.field, N * A * B, A * B, acc)
