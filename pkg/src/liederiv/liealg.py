"""Lie algebras given by structure constants.

An algebra is a labeled basis plus the sparse tensor c_{ij}^k for i < j
(antisymmetry supplies the rest).  The Jacobi identity is verified at
construction and load time, so downstream rank computations can trust
the tensor.  Generators cover the n-th Schrodinger algebra on basis
(e, h, f, z, u_1..u_n, v_1..v_n), the Heisenberg algebra on
(z, u_1..u_n, v_1..v_n), sl2 on (e, h, f), and abelian algebras.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactfield import (
    FIELD_Q,
    check_field,
    coerce_scalar,
    format_scalar,
    one,
    parse_scalar,
    zero,
)
from .linalg import Matrix, Subspace, SparseEchelon


class JacobiError(ValueError):
    """A bracket table violating the Jacobi identity, with the offending triple."""

    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"Jacobi identity fails on basis triple {triple}")


@dataclass(frozen=True)
class JacobiVerdict:
    ok: bool
    failing_triple: Optional[tuple] = None


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q or Q(i) by structure constants."""

    __slots__ = ("name", "field", "labels", "index", "table")

    def __init__(self, name: str, field: str, labels: Sequence[str], brackets, check=True):
        """brackets: {(i, j): {k: scalar}} for i < j, giving [b_i, b_j] = sum c^k b_k."""
        check_field(field)
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate basis labels")
        table = {}
        for (i, j), terms in brackets.items():
            if not 0 <= i < j < len(labels):
                raise ValueError(f"bad bracket pair ({i}, {j})")
            clean = {}
            for k, c in terms.items():
                if not 0 <= k < len(labels):
                    raise ValueError(f"bad bracket target index {k}")
                c = coerce_scalar(c, field)
                if c:
                    clean[k] = c
            if clean:
                table[(i, j)] = clean
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(labels)})
        object.__setattr__(self, "table", table)
        if check:
            verdict = check_jacobi(self)
            if not verdict.ok:
                raise JacobiError(verdict.failing_triple)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim {self.dim} over {self.field})"

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.labels == other.labels
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.field, self.labels))

    def bracket_basis(self, i: int, j: int) -> dict:
        """Sparse coordinates of [b_i, b_j]."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(coerce_scalar(c, self.field) for c in coords))

    def zero_element(self) -> "AlgebraElement":
        return self.element([zero(self.field)] * self.dim)

    def basis_element(self, i: int) -> "AlgebraElement":
        coords = [zero(self.field)] * self.dim
        coords[i] = one(self.field)
        return self.element(coords)

    def from_terms(self, terms: dict) -> "AlgebraElement":
        """Element from {label or index: coefficient}."""
        coords = [zero(self.field)] * self.dim
        for key, c in terms.items():
            i = self.index[key] if isinstance(key, str) else key
            coords[i] = coords[i] + coerce_scalar(c, self.field)
        return self.element(coords)


@dataclass(frozen=True)
class AlgebraElement:
    """Element of a LieAlgebra in basis coordinates."""

    algebra: LieAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate length does not match algebra dimension")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self, other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def scale(self, c) -> "AlgebraElement":
        c = coerce_scalar(c, self.algebra.field)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def __str__(self):
        parts = [
            f"({format_scalar(c)})*{lab}"
            for c, lab in zip(self.coords, self.algebra.labels)
            if c
        ]
        return " + ".join(parts) if parts else "0"


def _same_algebra(x: AlgebraElement, y: AlgebraElement):
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise ValueError("elements of different algebras")


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear bracket [x, y] expanded through the structure constants."""
    _same_algebra(x, y)
    L = x.algebra
    out = [zero(L.field)] * L.dim
    for (i, j), terms in L.table.items():
        a = x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i]
        if a:
            for k, c in terms.items():
                out[k] = out[k] + a * c
    return AlgebraElement(L, tuple(out))


def ad(x: AlgebraElement) -> Matrix:
    """Matrix of ad_x = [x, .] in the algebra basis (columns = images)."""
    L = x.algebra
    cols = []
    for j in range(L.dim):
        col = [zero(L.field)] * L.dim
        for i, xi in enumerate(x.coords):
            if xi:
                for k, c in L.bracket_basis(i, j).items():
                    col[k] = col[k] + xi * c
        cols.append(col)
    return Matrix(L.field, list(map(list, zip(*cols))))


def check_jacobi(L: LieAlgebra) -> JacobiVerdict:
    """Verify [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on all basis triples."""
    n = L.dim
    for a in range(n):
        for b in range(a + 1, n):
            ab = L.bracket_basis(a, b)
            for c in range(b + 1, n):
                acc: dict = {}
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    for m, coef in L.bracket_basis(x, y).items():
                        for k, d in L.bracket_basis(m, z).items():
                            v = acc.get(k)
                            nv = coef * d if v is None else v + coef * d
                            if nv:
                                acc[k] = nv
                            else:
                                acc.pop(k, None)
                if acc:
                    return JacobiVerdict(False, (L.labels[a], L.labels[b], L.labels[c]))
    return JacobiVerdict(True)


def center(L: LieAlgebra) -> Subspace:
    """{x : [x, L] = 0} via the nullspace of the stacked ad-matrices."""
    acc = SparseEchelon(L.dim)
    for j in range(L.dim):
        for k in range(L.dim):
            row = {}
            for i in range(L.dim):
                c = L.bracket_basis(i, j).get(k)
                if c:
                    row[i] = c
            if row:
                acc.insert(row)
    return acc.nullspace(L.field)


def make_schrodinger(n: int, field: str = FIELD_Q) -> LieAlgebra:
    """n-th Schrodinger algebra: sl2 acting on the Heisenberg algebra h_n.

    Basis (e, h, f, z, u_1..u_n, v_1..v_n), dimension 2n + 4, with
    [h,e]=2e, [h,f]=-2f, [e,f]=h, [u_k,v_k]=z, [h,u_k]=u_k, [h,v_k]=-v_k,
    [e,v_k]=u_k, [f,u_k]=v_k and z central.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    labels = ["e", "h", "f", "z"]
    labels += [f"u_{k}" for k in range(1, n + 1)]
    labels += [f"v_{k}" for k in range(1, n + 1)]
    E, H, F, Z = 0, 1, 2, 3
    u = lambda k: 3 + k
    v = lambda k: 3 + n + k
    br = {
        (E, H): {E: -2},
        (E, F): {H: 1},
        (H, F): {F: -2},
    }
    for k in range(1, n + 1):
        br[(E, v(k))] = {u(k): 1}
        br[(H, u(k))] = {u(k): 1}
        br[(H, v(k))] = {v(k): -1}
        br[(F, u(k))] = {v(k): 1}
        br[(u(k), v(k))] = {Z: 1}
    return LieAlgebra(f"schrodinger_{n}", field, labels, br)


def make_heisenberg(n: int, field: str = FIELD_Q) -> LieAlgebra:
    """Heisenberg algebra h_n on (z, u_1..u_n, v_1..v_n): [u_k, v_k] = z, z central."""
    if n < 1:
        raise ValueError("n must be at least 1")
    labels = ["z"] + [f"u_{k}" for k in range(1, n + 1)] + [f"v_{k}" for k in range(1, n + 1)]
    br = {(k, n + k): {0: 1} for k in range(1, n + 1)}
    return LieAlgebra(f"heisenberg_{n}", field, labels, br)


def make_sl2(field: str = FIELD_Q) -> LieAlgebra:
    """sl2 on (e, h, f): [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return LieAlgebra(
        "sl2", field, ["e", "h", "f"], {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}
    )


def make_abelian(k: int, field: str = FIELD_Q) -> LieAlgebra:
    """Abelian algebra of dimension k (all brackets zero)."""
    if k < 1:
        raise ValueError("dimension must be at least 1")
    return LieAlgebra(f"abelian_{k}", field, [f"x_{i}" for i in range(1, k + 1)], {})


def schrodinger_rank(L: LieAlgebra) -> Optional[int]:
    """n when L is structurally the generated n-th Schrodinger algebra, else None."""
    if L.dim < 6 or (L.dim - 4) % 2:
        return None
    n = (L.dim - 4) // 2
    if L.labels != make_schrodinger_labels(n):
        return None
    return n if L == make_schrodinger(n, L.field) else None


def make_schrodinger_labels(n: int) -> tuple:
    labels = ["e", "h", "f", "z"]
    labels += [f"u_{k}" for k in range(1, n + 1)]
    labels += [f"v_{k}" for k in range(1, n + 1)]
    return tuple(labels)


def restrict(L: LieAlgebra, labels: Sequence[str], name: str) -> LieAlgebra:
    """Subalgebra on a subset of basis labels (must be bracket-closed)."""
    idx = [L.index[lab] for lab in labels]
    pos = {b: a for a, b in enumerate(idx)}
    br = {}
    for (i, j), terms in L.table.items():
        if i in pos and j in pos:
            sub = {}
            for k, c in terms.items():
                if k not in pos:
                    raise ValueError("label subset is not bracket-closed")
                sub[pos[k]] = c
            br[(pos[i], pos[j])] = sub
    return LieAlgebra(name, L.field, list(labels), br)


def save(L: LieAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(L))


def to_json(L: LieAlgebra) -> str:
    brackets = []
    for (i, j) in sorted(L.table):
        terms = [
            {"basis": L.labels[k], "coeff": format_scalar(c)}
            for k, c in sorted(L.table[(i, j)].items())
        ]
        brackets.append({"left": L.labels[i], "right": L.labels[j], "terms": terms})
    doc = {"name": L.name, "field": L.field, "labels": list(L.labels), "brackets": brackets}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load(path: str) -> LieAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return from_json(text)


def _expect_keys(obj: dict, keys: set, where: str):
    extra = set(obj) - keys
    if extra:
        raise ValueError(f"unknown keys {sorted(extra)} in {where}")
    missing = keys - set(obj)
    if missing:
        raise ValueError(f"missing keys {sorted(missing)} in {where}")


def from_json(text: str) -> LieAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed algebra file: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("malformed algebra file: top level must be an object")
    _expect_keys(doc, {"name", "field", "labels", "brackets"}, "algebra file")
    field = check_field(doc["field"])
    labels = doc["labels"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ValueError("labels must be a list of strings")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate basis labels")
    index = {lab: i for i, lab in enumerate(labels)}
    if not isinstance(doc["brackets"], list):
        raise ValueError("brackets must be a list")
    table: dict = {}
    for entry in doc["brackets"]:
        _expect_keys(entry, {"left", "right", "terms"}, "bracket entry")
        try:
            li, ri = index[entry["left"]], index[entry["right"]]
        except KeyError as exc:
            raise ValueError(f"unknown basis label {exc.args[0]!r}") from exc
        if li == ri:
            raise ValueError(f"bracket of {entry['left']!r} with itself must be zero")
        terms = {}
        for term in entry["terms"]:
            _expect_keys(term, {"basis", "coeff"}, "bracket term")
            if term["basis"] not in index:
                raise ValueError(f"unknown basis label {term['basis']!r}")
            k = index[term["basis"]]
            c = parse_scalar(term["coeff"], field)
            if c:
                terms[k] = terms.get(k, zero(field)) + c
        terms = {k: c for k, c in terms.items() if c}
        i, j = (li, ri) if li < ri else (ri, li)
        stored = {k: (c if li < ri else -c) for k, c in terms.items()}
        if (i, j) in table:
            if table[(i, j)] != stored:
                raise ValueError(
                    f"inconsistent duplicate bracket for ({labels[i]}, {labels[j]})"
                )
        else:
            table[(i, j)] = stored
    name = doc["name"]
    if not isinstance(name, str):
        raise ValueError("name must be a string")
    return LieAlgebra(name, field, labels, table)
