"""Finite fields GF(q) for prime powers q <= 64 and affine planes over them.

Field elements are integer indices 0..q-1.  For q = p**k with k > 1 the
index encodes the coefficients of a polynomial over Z_p in base p, lowest
degree first, so in GF(4) the element ``x`` is index 2 and ``x + 1`` is 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NotPrimePower, UnsupportedOrder

MAX_ORDER = 64

# Monic irreducible moduli, coefficients lowest degree first.
IRREDUCIBLE = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    64: (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
    9: (2, 2, 1),  # x^2 + 2x + 2
    27: (1, 2, 0, 1),  # x^3 + 2x + 1
    25: (2, 4, 1),  # x^2 + 4x + 2
    49: (3, 6, 1),  # x^2 + 6x + 3
}


@dataclass(frozen=True)
class PrimePower:
    p: int
    k: int

    @property
    def q(self) -> int:
        return self.p**self.k


def factor_prime_power(q: int) -> PrimePower:
    """Write ``q`` as ``p**k`` with ``p`` prime, or raise :class:`NotPrimePower`."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotPrimePower(f"{q} has at least two distinct prime factors")
    return PrimePower(p, k)


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except NotPrimePower:
        return False
    return True


@dataclass(frozen=True, eq=False)
class FieldTables:
    """Lookup tables for GF(q).  ``inv[0]`` is unused and holds 0."""

    p: int
    k: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    modulus: tuple[int, ...] | None = None
    zero: int = 0
    one: int = 1

    @property
    def q(self) -> int:
        return self.p**self.k

    def elements(self) -> range:
        return range(self.q)


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _from_digits(ds, p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _poly_mulmod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic: x^k = -(lower terms)
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for i in range(k):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return prod[:k]


def build_field(pp: PrimePower | int) -> FieldTables:
    if isinstance(pp, int):
        pp = factor_prime_power(pp)
    p, k, q = pp.p, pp.k, pp.q
    if q > MAX_ORDER:
        raise UnsupportedOrder(f"order {q} exceeds the supported maximum {MAX_ORDER}")
    idx = np.arange(q)
    if k == 1:
        modulus = None
        add = (idx[:, None] + idx[None, :]) % p
        mul = (idx[:, None] * idx[None, :]) % p
    else:
        if q not in IRREDUCIBLE:
            raise UnsupportedOrder(f"no irreducible polynomial tabulated for order {q}")
        modulus = IRREDUCIBLE[q]
        digits = [_digits(a, p, k) for a in range(q)]
        add = np.array(
            [[_from_digits([(x + y) % p for x, y in zip(da, db)], p) for db in digits] for da in digits]
        )
        mul = np.array(
            [[_from_digits(_poly_mulmod(da, db, modulus, p), p) for db in digits] for da in digits]
        )
    neg = np.argmin(add, axis=1)  # add[a, neg[a]] == 0 is the unique minimum
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:
            raise UnsupportedOrder(f"tabulated modulus for order {q} is not irreducible")
        inv[a] = hits[0]
    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return FieldTables(p=p, k=k, add=add, mul=mul, neg=neg, inv=inv, modulus=modulus)


@dataclass(frozen=True, eq=False)
class AffinePlane:
    """Affine plane of order q on points ``a*q + b`` for (a, b) in GF(q)^2.

    ``classes[m]`` for m < q holds the lines of slope m (line id m*q + c has
    intercept c); ``classes[q]`` holds the vertical lines.
    """

    q: int
    lines: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def num_points(self) -> int:
        return self.q * self.q

    @property
    def points(self) -> range:
        return range(self.q * self.q)

    def class_of_line(self) -> np.ndarray:
        out = np.full(len(self.lines), -1, dtype=np.int64)
        for ci, members in enumerate(self.classes):
            out[list(members)] = ci
        return out

    def line_through(self) -> np.ndarray:
        """Square matrix of line ids through each point pair; -1 on the diagonal."""
        nump = self.num_points
        table = np.full((nump, nump), -1, dtype=np.int64)
        for lid, pts in enumerate(self.lines):
            for a, b in combinations(pts, 2):
                table[a, b] = table[b, a] = lid
        return table


def build_affine_plane(field: FieldTables) -> AffinePlane:
    q = field.q
    lines = []
    classes = []
    for m in range(q):
        members = []
        for c in range(q):
            ys = field.add[field.mul[m, np.arange(q)], c]
            lines.append(tuple(sorted(int(x * q + y) for x, y in zip(range(q), ys))))
            members.append(len(lines) - 1)
        classes.append(tuple(members))
    members = []
    for a in range(q):
        lines.append(tuple(a * q + y for y in range(q)))
        members.append(len(lines) - 1)
    classes.append(tuple(members))
    return AffinePlane(q=q, lines=tuple(lines), classes=tuple(classes))


@dataclass(frozen=True)
class PlaneVerdict:
    ok: bool
    violation: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_affine_plane(plane: AffinePlane) -> PlaneVerdict:
    """Exhaustively check line count, exact pair coverage and the parallel classes."""
    q = plane.q
    nump = q * q
    nlines = len(plane.lines)
    for lid, pts in enumerate(plane.lines):
        if len(set(pts)) != q or any(not 0 <= x < nump for x in pts):
            return PlaneVerdict(False, f"line {lid} is not a set of {q} valid points")

    cover = np.zeros((nump, nump), dtype=np.int64)
    for pts in plane.lines:
        for a, b in combinations(sorted(pts), 2):
            cover[a, b] += 1
    for a, b in combinations(range(nump), 2):
        if cover[a, b] != 1:
            return PlaneVerdict(False, f"points {a} and {b} lie on {cover[a, b]} lines")
    if nlines != q * q + q:
        return PlaneVerdict(False, f"expected {q * q + q} lines, found {nlines}")

    if len(plane.classes) != q + 1:
        return PlaneVerdict(False, f"expected {q + 1} parallel classes, found {len(plane.classes)}")
    seen: set[int] = set()
    for ci, members in enumerate(plane.classes):
        if len(members) != q:
            return PlaneVerdict(False, f"class {ci} has {len(members)} lines, expected {q}")
        covered: set[int] = set()
        for lid in members:
            if lid in seen:
                return PlaneVerdict(False, f"line {lid} appears in more than one class")
            seen.add(lid)
            pts = set(plane.lines[lid])
            if covered & pts:
                return PlaneVerdict(False, f"class {ci} contains intersecting lines")
            covered |= pts
        if len(covered) != nump:
            return PlaneVerdict(False, f"class {ci} does not cover every point")
    if len(seen) != nlines:
        return PlaneVerdict(False, "parallel classes do not partition the lines")
    return PlaneVerdict(True)
