"""Finite biracks and biquandles as operation tables.

A table on the carrier {0..n-1} stores two partial binary operations:
``up[a][b]`` (b acting on a from above, written a^b) and ``down[a][b]``
(written a_b).  Definedness of the two tables is coupled through a single
action domain Y: the pair (a, b) lies in Y exactly when b^a and a_b are
both defined, i.e. up[x][y] is defined iff down[y][x] is.  A total table
has Y = X x X.

Elements are plain integers; colour names such as r/g/b are display
metadata only.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    BadParameter,
    MalformedInput,
    NoPreimage,
    NotTotal,
    UndefinedPair,
)


@dataclass(frozen=True)
class BirackTable:
    n: int
    up: tuple[tuple[int | None, ...], ...]
    down: tuple[tuple[int | None, ...], ...]
    name: str = field(default="", compare=False)
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise MalformedInput("carrier must be nonempty")
        for grid, which in ((self.up, "up"), (self.down, "down")):
            if len(grid) != self.n or any(len(row) != self.n for row in grid):
                raise MalformedInput(f"{which} table is not {self.n}x{self.n}")
            for row in grid:
                for v in row:
                    if v is not None and not (0 <= v < self.n):
                        raise MalformedInput(f"{which} entry {v} out of range")
        for x in range(self.n):
            for y in range(self.n):
                if (self.up[x][y] is None) != (self.down[y][x] is None):
                    raise MalformedInput(
                        f"definedness of up[{x}][{y}] and down[{y}][{x}] disagree"
                    )
        # each actor's partial up/down maps must be injective where defined
        for b in range(self.n):
            for grid, which in ((self.up, "up"), (self.down, "down")):
                seen = {}
                for x in range(self.n):
                    v = grid[x][b]
                    if v is None:
                        continue
                    if v in seen:
                        raise MalformedInput(
                            f"{which} action of {b} not injective: "
                            f"{seen[v]} and {x} both map to {v}"
                        )
                    seen[v] = x

    def up_at(self, a, b):
        return self.up[a][b]

    def down_at(self, a, b):
        return self.down[a][b]

    def is_total(self):
        return all(v is not None for row in self.up for v in row)

    def y_pairs(self):
        """The action domain Y: pairs (a, b) such that b^a and a_b exist."""
        return tuple(
            (a, b)
            for a in range(self.n)
            for b in range(self.n)
            if self.down[a][b] is not None
        )

    def label(self, x):
        if self.labels is not None:
            return self.labels[x]
        return str(x)


@dataclass(frozen=True)
class AxiomCheck:
    passed: bool
    counterexamples: tuple


@dataclass(frozen=True)
class AxiomReport:
    b1: AxiomCheck
    b2: AxiomCheck
    b3: AxiomCheck
    classification: str


def _check_range(table, *elements):
    for x in elements:
        if not (0 <= x < table.n):
            raise BadParameter(f"element {x} outside carrier of size {table.n}")


def evaluate(table, op, a, b):
    """Apply one of the four actions: a^b, a_b, a^{b^-1}, a_{b^-1}."""
    _check_range(table, a, b)
    if op == "up":
        v = table.up[a][b]
        if v is None:
            raise UndefinedPair(f"{a}^{b} undefined")
        return v
    if op == "down":
        v = table.down[a][b]
        if v is None:
            raise UndefinedPair(f"{a}_{b} undefined")
        return v
    if op == "up_inv":
        for x in range(table.n):
            if table.up[x][b] == a:
                return x
        raise NoPreimage(f"no x with x^{b} = {a}")
    if op == "down_inv":
        for x in range(table.n):
            if table.down[x][b] == a:
                return x
        raise NoPreimage(f"no x with x_{b} = {a}")
    raise BadParameter(f"unknown operation {op!r}")


def switch(table, a, b):
    """S(a, b) = (b^a, a_b), defined when (a, b) lies in the domain Y."""
    _check_range(table, a, b)
    u = table.up[b][a]
    d = table.down[a][b]
    if u is None or d is None:
        raise UndefinedPair(f"switch undefined at ({a}, {b})")
    return (u, d)


@lru_cache(maxsize=None)
def _switch_inverse_map(table):
    inv = {}
    for a, b in table.y_pairs():
        inv[switch(table, a, b)] = (a, b)
    return inv


def switch_inverse(table, x, y):
    """The unique (a, b) with switch(a, b) = (x, y)."""
    _check_range(table, x, y)
    try:
        return _switch_inverse_map(table)[(x, y)]
    except KeyError:
        raise NoPreimage(f"({x}, {y}) not in the image of the switch") from None


def sideways(table, a, c):
    """F(a, b^a) = (b, a_b): recover b from c = b^a, then lower a by it."""
    _check_range(table, a, c)
    b = None
    for x in range(table.n):
        if table.up[x][a] == c:
            b = x
            break
    if b is None:
        raise NoPreimage(f"{c} is not in the image of x -> x^{a}")
    d = table.down[a][b]
    if d is None:
        raise UndefinedPair(f"{a}_{b} undefined")
    return (b, d)


def _switch_or_none(table, a, b):
    u = table.up[b][a]
    d = table.down[a][b]
    if u is None or d is None:
        return None
    return (u, d)


def _up_or_none(table, a, b):
    return table.up[a][b]


def _down_or_none(table, a, b):
    return table.down[a][b]


def _check_b2(table):
    cex = []
    domain = set(table.y_pairs())
    seen = {}
    for pair in sorted(domain):
        out = switch(table, *pair)
        if out not in domain:
            cex.append(("image_outside_domain", pair, out))
        if out in seen:
            cex.append(("not_injective", seen[out], pair))
        seen[out] = pair
    return AxiomCheck(not cex, tuple(cex))


def _yb_sides(table, triple):
    """Both composites S1 S2 S1 and S2 S1 S2, or None where undefined."""

    def s1(t):
        out = _switch_or_none(table, t[0], t[1])
        return None if out is None else (out[0], out[1], t[2])

    def s2(t):
        out = _switch_or_none(table, t[1], t[2])
        return None if out is None else (t[0], out[0], out[1])

    lhs = triple
    for step in (s1, s2, s1):
        lhs = step(lhs)
        if lhs is None:
            break
    rhs = triple
    for step in (s2, s1, s2):
        rhs = step(rhs)
        if rhs is None:
            break
    return lhs, rhs


def _derived_relation_violations(table, a, b, c):
    """The three composite action identities implied by the set-theoretic
    Yang-Baxter equation, checked only where every sub-expression exists."""
    up = lambda x, y: None if x is None or y is None else _up_or_none(table, x, y)
    dn = lambda x, y: None if x is None or y is None else _down_or_none(table, x, y)
    out = []
    # a^{c_b b^c} = a^{bc}
    lhs = up(up(a, dn(c, b)), up(b, c))
    rhs = up(up(a, b), c)
    if lhs is not None and rhs is not None and lhs != rhs:
        out.append(("derived_up", (a, b, c)))
    # (a^b)_{c^{b_a}} = (a_c)^{b_{c^a}}
    lhs = dn(up(a, b), up(c, dn(b, a)))
    rhs = up(dn(a, c), dn(b, up(c, a)))
    if lhs is not None and rhs is not None and lhs != rhs:
        out.append(("derived_mixed", (a, b, c)))
    # a_{c^b b_c} = a_{bc}
    lhs = dn(dn(a, up(c, b)), dn(b, c))
    rhs = dn(dn(a, b), c)
    if lhs is not None and rhs is not None and lhs != rhs:
        out.append(("derived_down", (a, b, c)))
    return out


def _check_b3(table):
    cex = []
    rng = range(table.n)
    for a, b, c in itertools.product(rng, rng, rng):
        lhs, rhs = _yb_sides(table, (a, b, c))
        if lhs is not None and rhs is not None and lhs != rhs:
            cex.append(("yang_baxter", (a, b, c), lhs, rhs))
        cex.extend(_derived_relation_violations(table, a, b, c))
    return AxiomCheck(not cex, tuple(cex))


def _check_b1(table):
    cex = []
    # two identity halves, verified independently: with x = a_{a^-1} require
    # a^x = x, and with y = a^{a^-1} require a_y = y
    for a in range(table.n):
        x = next((t for t in range(table.n) if table.down[t][a] == a), None)
        if x is not None:
            v = table.up[a][x]
            if v is not None and v != x:
                cex.append(("identity_down_half", a, x, v))
        y = next((t for t in range(table.n) if table.up[t][a] == a), None)
        if y is not None:
            v = table.down[a][y]
            if v is not None and v != y:
                cex.append(("identity_up_half", a, y, v))
    # the sideways map F(a, b^a) = (b, a_b) must be injective on its domain
    # and carry diagonal points to diagonal points
    f_map = {}
    for a in range(table.n):
        for b in range(table.n):
            c = table.up[b][a]
            d = table.down[a][b]
            if c is None or d is None:
                continue
            f_map[(a, c)] = (b, d)
    inverse = {}
    for key in sorted(f_map):
        out = f_map[key]
        if out in inverse:
            cex.append(("sideways_not_injective", inverse[out], key))
        inverse[out] = key
    for a in range(table.n):
        out = f_map.get((a, a))
        if out is not None and out[0] != out[1]:
            cex.append(("diagonal", a, out))
    return AxiomCheck(not cex, tuple(cex))


def _trivial(grid):
    return all(v is None or v == x for x, row in enumerate(grid) for v in row)


def check_axioms(table):
    """Run the birack/biquandle axiom checks and classify the table.

    Failures are reported with witnessing elements, never raised.  Both
    halves of the sideways-map axiom are verified independently and tagged
    separately in the counterexample list.
    """
    b1 = _check_b1(table)
    b2 = _check_b2(table)
    b3 = _check_b3(table)
    trivial_side = _trivial(table.down) or _trivial(table.up)
    if not (b2.passed and b3.passed):
        cls = "none"
    elif b1.passed:
        cls = "quandle" if trivial_side else "biquandle"
    else:
        cls = "rack" if trivial_side else "birack"
    return AxiomReport(b1=b1, b2=b2, b3=b3, classification=cls)


# ---------------------------------------------------------------------------
# constructors


def _total(n, up_fn, down_fn, name, labels=None):
    up = tuple(tuple(up_fn(a, b) for b in range(n)) for a in range(n))
    down = tuple(tuple(down_fn(a, b) for b in range(n)) for a in range(n))
    return BirackTable(n=n, up=up, down=down, name=name, labels=labels)


def twist(n):
    """Both actions trivial; the smallest quandle on each carrier size."""
    if n < 1:
        raise BadParameter("twist needs n >= 1")
    return _total(n, lambda a, b: a, lambda a, b: a, f"I{n}")


def dihedral(m):
    """Carrier Z_m with a^b = 2b - a and trivial down action."""
    if m < 2:
        raise BadParameter("dihedral needs modulus >= 2")
    return _total(m, lambda a, b: (2 * b - a) % m, lambda a, b: a, f"D{m}")


def three_colour():
    """The 3-colour quandle on r, g, b; conjugation of the transpositions
    in S3, which coincides with the dihedral rule mod 3."""
    t = dihedral(3)
    return BirackTable(n=3, up=t.up, down=t.down, name="Q3", labels=("r", "g", "b"))


def black_white():
    """Two elements b, w; every action is the swap.  The smallest
    biquandle that is not a rack."""
    return _total(2, lambda a, b: 1 - a, lambda a, b: 1 - a, "BQ1", labels=("b", "w"))


def alexander(m, lam, mu):
    """Carrier Z_m with a^b = lam*a + (1 - lam*mu)*b and a_b = mu*a."""
    import math

    if m < 2:
        raise BadParameter("alexander needs modulus >= 2")
    if math.gcd(lam % m, m) != 1 or math.gcd(mu % m, m) != 1:
        raise BadParameter(f"lambda={lam} and mu={mu} must be units mod {m}")
    return _total(
        m,
        lambda a, b: (lam * a + (1 - lam * mu) * b) % m,
        lambda a, b: (mu * a) % m,
        f"A{m}({lam},{mu})",
    )


def builtin(name, **params):
    """Named constructor used by the CLI; see BUILTIN_TABLES for aliases."""
    if name == "twist":
        return twist(params.get("n", 2))
    if name == "dihedral":
        return dihedral(params["m"])
    if name == "three_colour":
        return three_colour()
    if name == "black_white":
        return black_white()
    if name == "alexander":
        return alexander(params["m"], params["lam"], params["mu"])
    raise BadParameter(f"unknown builtin table {name!r}")


def double(table):
    """The double of a total birack: a partial structure on ordered pairs.

    The carrier is X^2 with (a, b) encoded as a*n + b.  The action of
    (a^b, c) on (a, b) from above is (a^{c_b}, b^c), and of (a, b) on
    (a^b, c) from below is (a, c_b); nothing else is defined, so the
    domain has exactly n^3 pairs.  Doubling a quandle yields a biquandle.
    """
    if not table.is_total():
        raise NotTotal("can only double a total birack")
    n = table.n
    nn = n * n
    up = [[None] * nn for _ in range(nn)]
    down = [[None] * nn for _ in range(nn)]
    for a in range(n):
        for b in range(n):
            base = a * n + b
            ab = table.up[a][b]
            for c in range(n):
                actor = ab * n + c
                cb = table.down[c][b]
                up[base][actor] = table.up[a][cb] * n + table.up[b][c]
                down[actor][base] = a * n + cb
    labels = None
    if table.labels is not None:
        labels = tuple(
            table.labels[a] + table.labels[b] for a in range(n) for b in range(n)
        )
    return BirackTable(
        n=nn,
        up=tuple(tuple(row) for row in up),
        down=tuple(tuple(row) for row in down),
        name=f"double({table.name or '?'})",
        labels=labels,
    )


def find_isomorphism(t1, t2):
    """Backtracking search for a relabelling carrying t1's operations to
    t2's; returns the permutation or None."""
    if t1.n != t2.n:
        return None
    n = t1.n
    perm = [None] * n
    used = [False] * n

    def consistent(x, y):
        for grid1, grid2 in ((t1.up, t2.up), (t1.down, t2.down)):
            for a in range(n):
                if perm[a] is None:
                    continue
                for p, q in ((x, a), (a, x), (x, x)):
                    v = grid1[p][q]
                    img = grid2[perm[p]][perm[q]]
                    if (v is None) != (img is None):
                        return False
                    if v is not None and perm[v] is not None and perm[v] != img:
                        return False
        return True

    def extend(x):
        if x == n:
            return all(
                (g1[a][b] is None and g2[perm[a]][perm[b]] is None)
                or perm[g1[a][b]] == g2[perm[a]][perm[b]]
                for g1, g2 in ((t1.up, t2.up), (t1.down, t2.down))
                for a in range(n)
                for b in range(n)
            )
        for y in range(n):
            if used[y]:
                continue
            perm[x] = y
            used[y] = True
            if consistent(x, y) and extend(x + 1):
                return True
            perm[x] = None
            used[y] = False
        return False

    if extend(0):
        return tuple(perm)
    return None


# ---------------------------------------------------------------------------
# serialization


def to_json_dict(table):
    enc = lambda grid: [[-1 if v is None else v for v in row] for row in grid]
    return {
        "name": table.name,
        "n": table.n,
        "up": enc(table.up),
        "down": enc(table.down),
    }


def from_json_dict(data):
    if not isinstance(data, dict):
        raise MalformedInput("birack JSON must be an object")
    try:
        n = data["n"]
        name = data["name"]
        up = data["up"]
        down = data["down"]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"missing birack field: {exc}") from None
    if not isinstance(n, int):
        raise MalformedInput("n must be an integer")

    def dec(grid, which):
        if not isinstance(grid, list) or len(grid) != n:
            raise MalformedInput(f"{which} table must have {n} rows")
        out = []
        for row in grid:
            if not isinstance(row, list) or len(row) != n:
                raise MalformedInput(f"{which} rows must have {n} entries")
            out.append(tuple(None if v == -1 else v for v in row))
        return tuple(out)

    return BirackTable(n=n, up=dec(up, "up"), down=dec(down, "down"), name=str(name))


def dumps(table):
    return json.dumps(to_json_dict(table), indent=1) + "\n"


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    return from_json_dict(data)
