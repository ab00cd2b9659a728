"""Finite groups stored as validated Cayley tables.

Elements are dense indices ``0..n-1`` with the identity at index 0.  Groups
come either from a raw multiplication table (:func:`from_cayley_table`) or
from one of the standard families described by a :class:`GroupSpec`
(:func:`construct`).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 720


class GroupError(ValueError):
    """Base class for invalid group input."""


class NotClosed(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoInverse(GroupError):
    pass


class SpecTooLarge(GroupError):
    pass


class BadParameter(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: np.ndarray
    identity: int = 0
    labels: tuple[str, ...] = ()
    name: str = ""

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __len__(self) -> int:
        return self.order

    def same_as(self, other: "FiniteGroup") -> bool:
        """Element-wise equality of tables and labels."""
        return (
            self.order == other.order
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, name={self.name!r})"


def _check_latin(t: np.ndarray) -> None:
    n = t.shape[0]
    full = np.arange(n)
    for a in range(n):
        row = np.sort(t[a])
        if not np.array_equal(row, full):
            vals, counts = np.unique(t[a], return_counts=True)
            dup = int(vals[counts > 1][0])
            raise NotClosed(f"row {a} is not a permutation (value {dup} repeats)")
    for b in range(n):
        col = np.sort(t[:, b])
        if not np.array_equal(col, full):
            vals, counts = np.unique(t[:, b], return_counts=True)
            dup = int(vals[counts > 1][0])
            raise NotClosed(f"column {b} is not a permutation (value {dup} repeats)")


def _find_identity(t: np.ndarray) -> int:
    n = t.shape[0]
    full = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], full) and np.array_equal(t[:, e], full):
            return e
    raise NoIdentity("no two-sided neutral element")


def _check_associative(t: np.ndarray) -> None:
    # (ab)c == a(bc), one row of a at a time to keep memory at O(n^2)
    n = t.shape[0]
    for a in range(n):
        left = t[t[a]]  # left[b, c] = (ab)c
        right = t[a][t]  # right[b, c] = a(bc)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = (int(x) for x in bad[0])
            raise NotAssociative(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")


def _check_inverses(t: np.ndarray, e: int) -> None:
    for a in range(t.shape[0]):
        if not np.any(t[a] == e):
            raise NoInverse(f"element {a} has no inverse")


def from_cayley_table(
    raw: Sequence[Sequence[int]] | np.ndarray,
    labels: Optional[Sequence[str]] = None,
    name: str = "",
) -> FiniteGroup:
    """Validate a multiplication table and relabel so the identity is 0.

    Raises one of :class:`NotClosed`, :class:`NoIdentity`,
    :class:`NotAssociative` or :class:`NoInverse`.
    """
    t = np.asarray(raw, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise NotClosed(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        a, b = (int(x) for x in np.argwhere((t < 0) | (t >= n))[0])
        raise NotClosed(f"entry table[{a}][{b}]={int(t[a, b])} outside 0..{n - 1}")
    if labels is not None and len(labels) != n:
        raise BadParameter(f"expected {n} labels, got {len(labels)}")
    _check_latin(t)
    e = _find_identity(t)
    _check_associative(t)
    _check_inverses(t, e)

    if labels is None:
        labels = [str(i) for i in range(n)]
    if e != 0:
        perm = [e] + [i for i in range(n) if i != e]  # new index -> old index
        inv = np.empty(n, dtype=np.int64)
        inv[perm] = np.arange(n)
        t = inv[t[np.ix_(perm, perm)]]
        labels = [labels[i] for i in perm]
    t = np.ascontiguousarray(t)
    t.setflags(write=False)
    return FiniteGroup(order=n, table=t, identity=0, labels=tuple(labels), name=name)


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != G.identity:
        x = G.mul(x, g)
        k += 1
    assert G.order % k == 0, "Lagrange violated; table is not a group"
    return k


def generated_subgroup(G: FiniteGroup, g: int) -> frozenset[int]:
    """Return the cyclic subgroup <g> as a set of element indices."""
    out = [G.identity]
    x = g
    while x != G.identity:
        out.append(x)
        x = G.mul(x, g)
    return frozenset(out)


def is_cyclic(G: FiniteGroup) -> Optional[int]:
    """Smallest generator of G, or None when G is not cyclic."""
    for g in range(G.order):
        if element_order(G, g) == G.order:
            return g
    return None


def involutions(G: FiniteGroup) -> list[int]:
    return [g for g in range(G.order) if g != G.identity and G.mul(g, g) == G.identity]


# ---------------------------------------------------------------------------
# Group families

FAMILIES = ("CYCLIC", "DIHEDRAL", "DICYCLIC", "SYMMETRIC", "ELEMENTARY_ABELIAN",
            "DIRECT_PRODUCT", "CAYLEY_FILE")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    params: tuple[int, ...] = ()
    factors: tuple["GroupSpec", ...] = ()
    path: Optional[str] = None

    def __str__(self) -> str:
        if self.family == "DIRECT_PRODUCT":
            return "DIRECT_PRODUCT(" + ", ".join(str(f) for f in self.factors) + ")"
        if self.family == "CAYLEY_FILE":
            return f"CAYLEY_FILE {self.path}"
        return " ".join([self.family, *map(str, self.params)])

    def expected_order(self) -> int:
        f, p = self.family, self.params
        if f == "CYCLIC":
            return p[0]
        if f == "DIHEDRAL":
            return 2 * p[0]
        if f == "DICYCLIC":
            return 4 * p[0]
        if f == "SYMMETRIC":
            return math.factorial(p[0])
        if f == "ELEMENTARY_ABELIAN":
            return p[0] ** p[1]
        if f == "DIRECT_PRODUCT":
            return math.prod(s.expected_order() for s in self.factors)
        if f == "CAYLEY_FILE":
            with open(self.path) as fh:
                return int(fh.readline().split()[0])
        raise BadParameter(f"unknown family {f}")


_ARITY = {"CYCLIC": 1, "DIHEDRAL": 1, "DICYCLIC": 1, "SYMMETRIC": 1, "ELEMENTARY_ABELIAN": 2}
_TOKEN = re.compile(r"\s*(\(|\)|,|[^\s(),]+)")


def parse_spec(text: str, base_dir: Optional[Path] = None) -> GroupSpec:
    """Parse a spec string such as ``DIHEDRAL 4`` or
    ``DIRECT_PRODUCT(CYCLIC 2, DICYCLIC 2)``.  Relative Cayley file paths are
    resolved against ``base_dir``."""
    tokens = [m.group(1) for m in _TOKEN.finditer(text.strip())]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise BadParameter(f"unexpected end of spec {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_one() -> GroupSpec:
        fam = take().upper()
        if fam in _ARITY:
            params = []
            for _ in range(_ARITY[fam]):
                tok = take()
                try:
                    params.append(int(tok))
                except ValueError:
                    raise BadParameter(f"{fam} expects integer parameters, got {tok!r}") from None
            return GroupSpec(fam, tuple(params))
        if fam == "DIRECT_PRODUCT":
            if take() != "(":
                raise BadParameter("DIRECT_PRODUCT expects '(' spec, spec, ... ')'")
            factors = [parse_one()]
            while peek() == ",":
                take()
                factors.append(parse_one())
            if take() != ")":
                raise BadParameter("unbalanced parentheses in DIRECT_PRODUCT")
            if len(factors) < 2:
                raise BadParameter("DIRECT_PRODUCT needs at least two factors")
            return GroupSpec(fam, factors=tuple(factors))
        if fam == "CAYLEY_FILE":
            p = Path(take())
            if base_dir is not None and not p.is_absolute():
                p = Path(base_dir) / p
            return GroupSpec(fam, path=str(p))
        raise BadParameter(f"unknown group family {fam!r}")

    spec = parse_one()
    if pos != len(tokens):
        raise BadParameter(f"trailing tokens in spec {text!r}: {tokens[pos:]}")
    return spec


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def _power_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


def cyclic(n: int) -> FiniteGroup:
    i = np.arange(n)
    t = (i[:, None] + i[None, :]) % n
    labels = ["e"] + [_power_label("g", k) for k in range(1, n)]
    return from_cayley_table(t, labels, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    # index k -> r^k, index n + k -> s r^k ; (s^a r^b)(s^c r^d) = s^(a+c) r^((-1)^c b + d)
    size = 2 * n
    t = np.empty((size, size), dtype=np.int64)
    for x in range(size):
        a, b = divmod(x, n)
        for y in range(size):
            c, d = divmod(y, n)
            t[x, y] = ((a + c) % 2) * n + (((-1) ** c) * b + d) % n
    labels = ["e"] + [_power_label("r", k) for k in range(1, n)]
    labels += ["s" if k == 0 else f"s·{_power_label('r', k)}" for k in range(n)]
    return from_cayley_table(t, labels, name=f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    # a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1 ; index j*2n + k -> a^k x^j
    m = 2 * n
    size = 4 * n
    t = np.empty((size, size), dtype=np.int64)
    for u in range(size):
        j, k = divmod(u, m)
        for v in range(size):
            i, l = divmod(v, m)
            exp = k + (l if j == 0 else -l)
            if j + i == 2:
                exp += n
            t[u, v] = ((j + i) % 2) * m + exp % m
    labels = ["e"] + [_power_label("a", k) for k in range(1, m)]
    labels += ["x" if k == 0 else f"{_power_label('a', k)}·x" for k in range(m)]
    return from_cayley_table(t, labels, name=f"Dic{n}")


def _cycle_label(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        cycles.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    t = np.empty((size, size), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # (p*q)(x) = p(q(x))
            t[i, j] = index[tuple(p[q[x]] for x in range(n))]
    return from_cayley_table(t, [_cycle_label(p) for p in perms], name=f"S{n}")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not _is_prime(p):
        raise BadParameter(f"ELEMENTARY_ABELIAN needs prime p, got {p}")
    vecs = list(itertools.product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    size = len(vecs)
    t = np.empty((size, size), dtype=np.int64)
    for i, v in enumerate(vecs):
        for j, w in enumerate(vecs):
            t[i, j] = index[tuple((a + b) % p for a, b in zip(v, w))]
    labels = ["e"] + ["(" + ",".join(map(str, v)) + ")" for v in vecs[1:]]
    return from_cayley_table(t, labels, name=f"E{p}^{k}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    # index g*m + h
    t = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n * m, n * m)
    labels = []
    for g in range(n):
        for h in range(m):
            labels.append("e" if g == 0 and h == 0 else f"({G.labels[g]},{H.labels[h]})")
    return from_cayley_table(t, labels, name=f"{G.name}x{H.name}")


def construct(spec: GroupSpec | str, size_cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    """Build the group described by ``spec`` (a :class:`GroupSpec` or its text form)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    f, p = spec.family, spec.params
    if f in _ARITY:
        if len(p) != _ARITY[f] or any(x < 1 for x in p):
            raise BadParameter(f"{f} needs {_ARITY[f]} positive parameter(s), got {p}")
    if f == "ELEMENTARY_ABELIAN" and not _is_prime(p[0]):
        raise BadParameter(f"ELEMENTARY_ABELIAN needs prime p, got {p[0]}")
    if f == "CAYLEY_FILE":
        G = read_cayley_file(spec.path)
        if G.order > size_cap:
            raise SpecTooLarge(f"{spec} has order {G.order} > cap {size_cap}")
        return G
    order = spec.expected_order()
    if order > size_cap:
        raise SpecTooLarge(f"{spec} has order {order} > cap {size_cap}")

    if f == "CYCLIC":
        G = cyclic(p[0])
    elif f == "DIHEDRAL":
        G = dihedral(p[0])
    elif f == "DICYCLIC":
        G = dicyclic(p[0])
    elif f == "SYMMETRIC":
        G = symmetric(p[0])
    elif f == "ELEMENTARY_ABELIAN":
        G = elementary_abelian(*p)
    elif f == "DIRECT_PRODUCT":
        parts = [construct(s, size_cap) for s in spec.factors]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H)
    else:
        raise BadParameter(f"unknown family {f}")
    return G


# ---------------------------------------------------------------------------
# Cayley table text format

def serialize(G: FiniteGroup) -> str:
    lines = [str(G.order)]
    lines += [" ".join(str(int(x)) for x in row) for row in G.table]
    if G.labels and all(" " not in s for s in G.labels):
        lines.append("labels: " + " ".join(G.labels))
    return "\n".join(lines) + "\n"


def parse_cayley_text(text: str, name: str = "") -> FiniteGroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise NotClosed("empty Cayley file")
    try:
        n = int(lines[0])
    except ValueError:
        raise NotClosed(f"first line must be the order, got {lines[0]!r}") from None
    if len(lines) < n + 1:
        raise NotClosed(f"expected {n} table rows, got {len(lines) - 1}")
    try:
        rows = [[int(x) for x in ln.split()] for ln in lines[1:n + 1]]
    except ValueError as exc:
        raise NotClosed(f"non-integer table entry: {exc}") from None
    if any(len(r) != n for r in rows):
        raise NotClosed(f"every row must have {n} entries")
    labels = None
    rest = lines[n + 1:]
    if rest:
        if not rest[0].startswith("labels:") or len(rest) > 1:
            raise NotClosed(f"unexpected trailing content: {rest[0]!r}")
        labels = rest[0][len("labels:"):].split()
    return from_cayley_table(rows, labels, name=name)


def read_cayley_file(path: str | Path) -> FiniteGroup:
    path = Path(path)
    return parse_cayley_text(path.read_text(), name=path.stem)


def write_cayley_file(G: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(serialize(G))
