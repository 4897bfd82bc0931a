"""Integer homology of the chain complex attached to a finite birack.

Degree-n chains are finitely supported integer combinations of n-tuples
of carrier elements.  The boundary is

    d(x_1, .., x_n) = sum_{i=1..n} (-1)^(i+1) [ (x_1, .., ^x_i, .., x_n)
                       - (x_1^{x_i}, .., x_{i-1}^{x_i},
                          (x_{i+1})_{x_i}, .., (x_n)_{x_i}) ]

(entries before the deleted position act up by x_i, entries after act
down), with d = 0 in degrees <= 1.  For tables with trivial down action
the second tuple leaves the tail untouched and this reduces to the usual
rack differential.

Four theories are supported: the full complex (BR), the same complex on
a rack (R), the degenerate subcomplex spanned by tuples with a repeated
adjacent entry (D, quandles only), and the quotient by it (Q).

All linear algebra is exact: matrices are lists of Python ints and the
Smith normal form tracks its unimodular transforms and their inverses,
which is what lets a cycle be converted into homology-class coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import algebra
from .errors import DegreeTooLow, NotACycle, NotTotal, TheoryMismatch

THEORIES = ("BR", "R", "D", "Q")


class Chain:
    """A formal integer combination of equal-length tuples."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree, terms=None):
        self.degree = degree
        clean = {}
        for tup, coeff in (terms or {}).items():
            if len(tup) != degree:
                raise ValueError(f"term {tup} has wrong length for degree {degree}")
            if coeff:
                clean[tuple(tup)] = coeff
        self._terms = clean

    @classmethod
    def single(cls, tup, coeff=1):
        return cls(len(tup), {tuple(tup): coeff})

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, tup):
        return self._terms.get(tuple(tup), 0)

    def support(self):
        return sorted(self._terms)

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self._terms)
        for tup, c in other._terms.items():
            terms[tup] = terms.get(tup, 0) + c
        return Chain(self.degree, terms)

    def __neg__(self):
        return Chain(self.degree, {t: -c for t, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return Chain(self.degree, {t: k * c for t, c in self._terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self._terms.items())))

    def reduced(self):
        """Divide through by the gcd of the coefficients, making the first
        supported coefficient positive; used to deduplicate relations."""
        import math

        if not self._terms:
            return self
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
        first = self._terms[self.support()[0]]
        sign = -1 if first < 0 else 1
        return Chain(self.degree, {t: sign * c // g for t, c in self._terms.items()})

    def render(self, labels=None):
        if not self._terms:
            return "0"
        fmt = lambda t: "".join(labels[x] for x in t) if labels else str(t)
        parts = []
        for tup, c in self.items():
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            coeff = "" if mag == 1 else str(mag)
            parts.append(f"{sign}{coeff}{fmt(tup)}")
        return "".join(parts)

    def __repr__(self):
        return f"Chain({self.degree}, {self.render()})"


def tuple_boundary(table, tup):
    """Boundary of a single basis tuple."""
    if not table.is_total():
        raise NotTotal("boundary needs a total table")
    n = len(tup)
    if n < 1:
        raise DegreeTooLow("no boundary below degree 1")
    if n == 1:
        return Chain(0)
    terms = {}

    def bump(t, c):
        terms[t] = terms.get(t, 0) + c

    for i in range(n):
        sign = 1 if i % 2 == 0 else -1
        xi = tup[i]
        deleted = tup[:i] + tup[i + 1 :]
        acted = tuple(table.up[x][xi] for x in tup[:i]) + tuple(
            table.down[x][xi] for x in tup[i + 1 :]
        )
        bump(deleted, sign)
        bump(acted, -sign)
    return Chain(n - 1, terms)


def boundary(table, chain):
    """Boundary of a chain; zero in degrees <= 1."""
    if chain.degree < 1:
        raise DegreeTooLow("no boundary below degree 1")
    if chain.degree == 1:
        return Chain(0)
    out = Chain(chain.degree - 1)
    for tup, c in chain.items():
        out = out + tuple_boundary(table, tup).scaled(c)
    return out


def is_degenerate(tup):
    return any(tup[i] == tup[i + 1] for i in range(len(tup) - 1))


@lru_cache(maxsize=None)
def _classification(table):
    return algebra.check_axioms(table).classification


def _require_theory(table, theory):
    if theory not in THEORIES:
        raise TheoryMismatch(f"unknown theory {theory!r}")
    if not table.is_total():
        raise NotTotal("homology needs a total table")
    if theory == "R" and not algebra._trivial(table.down):
        raise TheoryMismatch("R theory needs a trivial down action")
    if theory in ("D", "Q") and _classification(table) != "quandle":
        raise TheoryMismatch(f"{theory} theory is only defined for quandles")


def theory_basis(table, n, theory):
    """Ordered tuple basis of the degree-n chain group in a theory."""
    _require_theory(table, theory)
    if n < 0:
        raise DegreeTooLow("negative degree")
    everything = list(itertools.product(range(table.n), repeat=n))
    if theory in ("BR", "R"):
        return tuple(everything)
    if theory == "D":
        if n < 2:
            return ()
        return tuple(t for t in everything if is_degenerate(t))
    return tuple(t for t in everything if not is_degenerate(t))


@dataclass(frozen=True)
class BoundaryMatrix:
    degree: int
    theory: str
    rows: tuple            # basis of the target chain group
    cols: tuple            # basis of the source chain group
    matrix: tuple          # matrix[i][j] over rows x cols

    def as_lists(self):
        return [list(row) for row in self.matrix]


def boundary_matrix(table, n, theory="BR"):
    """Matrix of the degree-n boundary in the tuple basis of the theory."""
    _require_theory(table, theory)
    if n < 1:
        raise DegreeTooLow("boundary matrices start at degree 1")
    rows = theory_basis(table, n - 1, theory)
    cols = theory_basis(table, n, theory)
    row_index = {t: i for i, t in enumerate(rows)}
    matrix = [[0] * len(cols) for _ in rows]
    if n >= 2:
        for j, tup in enumerate(cols):
            for target, coeff in tuple_boundary(table, tup).items():
                i = row_index.get(target)
                if i is None:
                    if theory == "Q":
                        continue  # degenerate image tuples vanish in the quotient
                    raise TheoryMismatch(
                        f"boundary of {tup} leaves the {theory} subcomplex at {target}"
                    )
                matrix[i][j] += coeff
    return BoundaryMatrix(
        degree=n,
        theory=theory,
        rows=rows,
        cols=cols,
        matrix=tuple(tuple(row) for row in matrix),
    )


# ---------------------------------------------------------------------------
# exact Smith normal form


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _snf_full(mat):
    """U, D, V, Vinv with U*mat*V = D in Smith normal form and Vinv = V^-1.

    Smallest-magnitude pivoting keeps intermediate entries small; all
    arithmetic is exact Python int, so overflow is not a concern even when
    elimination inflates entries.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    D = [list(row) for row in mat]
    U = _identity(m)
    V = _identity(n)
    Vinv = _identity(n)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def row_add(src, dst, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_add(src, dst, q):  # col dst += q * col src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def col_negate(j):
        for row in D:
            row[j] = -row[j]
        for row in V:
            row[j] = -row[j]
        Vinv[j] = [-a for a in Vinv[j]]

    def pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    def clear(t):
        while True:
            found = pivot(t)
            if found is None:
                return False
            _, i, j = found
            if i != t:
                row_swap(t, i)
            if j != t:
                col_swap(t, j)
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                return True

    rank = 0
    for t in range(min(m, n)):
        if not clear(t):
            break
        if D[t][t] < 0:
            col_negate(t)
        rank = t + 1

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if b % a:
                col_add(i + 1, i, 1)
                clear(i)
                if D[i + 1][i + 1] < 0:
                    col_negate(i + 1)
                changed = True
    return U, D, V, Vinv


def smith_normal_form(mat):
    """(U, D, V) with U*mat*V = D diagonal, invariant factors in order."""
    U, D, V, _ = _snf_full([list(row) for row in mat])
    return U, D, V


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisor chain")

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z_{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _mat_vec(mat, vec):
    return [sum(a * b for a, b in zip(row, vec)) for row in mat]


def _balanced(r, d):
    r %= d
    if r > d // 2:
        r -= d
    return r


@dataclass(frozen=True)
class HomologyBasis:
    """An abelian group plus the data needed to give any cycle coordinates.

    Coordinates are a tuple of balanced torsion residues followed by the
    free-part integers; boundaries map to all zeros.
    """

    table: object = field(compare=False)
    degree: int
    theory: str
    group: AbelianGroup
    _cols: tuple = field(repr=False)
    _bmatrix: tuple = field(repr=False)
    _vinv_tail: tuple = field(repr=False)   # last rows of V^-1: kernel coordinates
    _u2: tuple = field(repr=False)
    _factors: tuple = field(repr=False)     # all invariant factors incl. 1s
    _sign: int = 1

    def vectorize(self, chain):
        if chain.degree != self.degree:
            raise NotACycle(
                f"chain degree {chain.degree} does not match basis degree {self.degree}"
            )
        index = {t: i for i, t in enumerate(self._cols)}
        vec = [0] * len(self._cols)
        for tup, c in chain.items():
            i = index.get(tup)
            if i is None:
                if self.theory == "Q" and is_degenerate(tup):
                    continue
                raise NotACycle(f"tuple {tup} is not in the {self.theory} basis")
            vec[i] = c
        return vec

    def with_sign(self, sign):
        return HomologyBasis(
            table=self.table,
            degree=self.degree,
            theory=self.theory,
            group=self.group,
            _cols=self._cols,
            _bmatrix=self._bmatrix,
            _vinv_tail=self._vinv_tail,
            _u2=self._u2,
            _factors=self._factors,
            _sign=sign,
        )


def homology_group(table, n, theory="BR"):
    """H_n = ker d_n / im d_{n+1}, via two Smith normal forms.

    For the quandle theory at degree 3 on a 3-element quandle the
    coordinate sign is normalized so that the cycle (0,1,2) + (0,2,0)
    represents +1 whenever it generates a Z_3.
    """
    bm = boundary_matrix(table, n, theory)
    bp = boundary_matrix(table, n + 1, theory)
    cols = bm.cols
    if not cols:
        return HomologyBasis(
            table=table, degree=n, theory=theory,
            group=AbelianGroup(0), _cols=cols, _bmatrix=bm.matrix,
            _vinv_tail=(), _u2=(), _factors=(),
        )
    mat = bm.as_lists()
    if not mat:  # no target generators: everything is a cycle
        mat = [[0] * len(cols)]
    _, D, _, Vinv = _snf_full(mat)
    rank = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    k = len(cols) - rank
    vinv_tail = [Vinv[i] for i in range(rank, len(cols))]

    img_cols = []
    for j in range(len(bp.cols)):
        col = [bp.matrix[i][j] for i in range(len(bp.rows))]
        kappa = _mat_vec(Vinv, col)
        if any(kappa[:rank]):
            raise NotACycle("boundary image escaped the kernel; d*d != 0?")
        img_cols.append(kappa[rank:])
    if img_cols and k:
        B = [[img_cols[j][i] for j in range(len(img_cols))] for i in range(k)]
    else:
        B = [[0] for _ in range(k)] if k else []
    if not B:
        U2, D2 = [], []
    else:
        U2, D2, _, _ = _snf_full(B)
    factors = []
    for i in range(min(len(D2), len(D2[0]) if D2 else 0)):
        if D2[i][i]:
            factors.append(D2[i][i])
    torsion = tuple(d for d in factors if d >= 2)
    free_rank = k - len(factors)
    basis = HomologyBasis(
        table=table,
        degree=n,
        theory=theory,
        group=AbelianGroup(free_rank, torsion),
        _cols=cols,
        _bmatrix=bm.matrix,
        _vinv_tail=tuple(tuple(r) for r in vinv_tail),
        _u2=tuple(tuple(r) for r in U2),
        _factors=tuple(factors),
    )
    if (
        theory == "Q"
        and n == 3
        and table.n == 3
        and basis.group == AbelianGroup(0, (3,))
    ):
        probe = Chain(3, {(0, 1, 2): 1, (0, 2, 0): 1})
        try:
            coords = cycle_class(basis, probe)
        except NotACycle:
            return basis
        if coords and coords[0] == -1:
            return basis.with_sign(-1)
    return basis


def cycle_class(basis, chain):
    """Coordinates of a cycle's homology class; raises NotACycle otherwise."""
    vec = basis.vectorize(chain)
    if basis._bmatrix and any(_mat_vec(basis._bmatrix, vec)):
        raise NotACycle("chain has nonzero boundary")
    kappa = [
        basis._sign * sum(a * b for a, b in zip(row, vec))
        for row in basis._vinv_tail
    ]
    y = _mat_vec(basis._u2, kappa) if basis._u2 else []
    coords = []
    s = len(basis._factors)
    for i, d in enumerate(basis._factors):
        if d >= 2:
            coords.append(_balanced(y[i], d))
    coords.extend(y[s:])
    return tuple(coords)


def class_order(basis, coords):
    """Order of a class from its coordinates; 0 encodes infinite order."""
    import math

    torsion = basis.group.torsion
    if any(coords[len(torsion):]):
        return 0
    order = 1
    for d, c in zip(torsion, coords):
        order = math.lcm(order, d // math.gcd(d, c % d))
    return order
