# koszul_derham/utils/linalg.py
"""
Exact linear algebra over Q.

Vectors are sparse dicts {index: Fraction} without zero entries. Reduced row
echelon forms are computed by sympy's DomainMatrix over QQ in sparse format;
everything else (kernels, quotients, reductions) is read off those forms.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from koszul_derham.errors import PreconditionError
from koszul_derham.utils.modular import modular_rank

logger = logging.getLogger(__name__)

Vector = Dict[int, Fraction]


def to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def add_scaled(target: Vector, source: Vector, factor: Fraction) -> None:
    """target += factor * source, in place, dropping cancelled entries."""
    for j, value in source.items():
        updated = target.get(j, 0) + factor * value
        if updated:
            target[j] = updated
        else:
            target.pop(j, None)


class RationalMatrix:
    """Sparse exact matrix stored row-major as {row: {col: Fraction}}."""

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[int, Dict[int, Fraction]]] = None):
        self.rows = rows
        self.cols = cols
        self.entries: Dict[int, Dict[int, Fraction]] = {}
        for i, row in (entries or {}).items():
            clean = {j: Fraction(v) for j, v in row.items() if v != 0}
            if clean:
                self.entries[i] = clean
        self._columns: Optional[List[Vector]] = None

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Vector]) -> "RationalMatrix":
        entries: Dict[int, Dict[int, Fraction]] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                if value:
                    entries.setdefault(i, {})[j] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        return cls(n_rows, n_cols, {i: {j: Fraction(v) for j, v in enumerate(row)} for i, row in enumerate(rows)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.entries.values())

    def get(self, i: int, j: int) -> Fraction:
        return self.entries.get(i, {}).get(j, Fraction(0))

    def columns(self) -> List[Vector]:
        if self._columns is None:
            columns: List[Vector] = [{} for _ in range(self.cols)]
            for i, row in self.entries.items():
                for j, value in row.items():
                    columns[j][i] = value
            self._columns = columns
        return self._columns

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {j: col for j, col in enumerate(self.columns()) if col})

    def apply(self, v: Vector) -> Vector:
        """M v for a sparse vector indexed by columns."""
        out: Vector = {}
        columns = self.columns()
        for j, value in v.items():
            add_scaled(out, columns[j], value)
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise PreconditionError(f"cannot compose {self.shape} with {other.shape}")
        return RationalMatrix.from_columns(self.rows, [self.apply(col) for col in other.columns()])

    def dense(self) -> List[List[Fraction]]:
        return [[self.get(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def to_domain_matrix(self) -> DomainMatrix:
        rep = {i: {j: to_qq(v) for j, v in row.items()} for i, row in self.entries.items()}
        return DomainMatrix(rep, (self.rows, self.cols), QQ)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def rref_rows(rows: Sequence[Vector], ambient_dim: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Nonzero rows of the reduced row echelon form and their pivot columns."""
    rows = [r for r in rows if r]
    if not rows or ambient_dim == 0:
        return [], ()
    rep = {i: {j: to_qq(v) for j, v in row.items()} for i, row in enumerate(rows)}
    reduced, pivots = DomainMatrix(rep, (len(rows), ambient_dim), QQ).rref()
    sparse = reduced.to_sparse().rep
    out: List[Vector] = []
    for k, pivot in enumerate(pivots):
        row = sparse.get(k, {})
        out.append({j: to_fraction(v) for j, v in row.items() if v})
    return out, tuple(pivots)


class Subspace:
    """
    A subspace of Q^ambient_dim given by a reduced basis: row k has a 1 at
    pivots[k] and 0 at every other pivot, so one pass of elimination reduces
    any vector. Bases built by `span` are in canonical RREF.
    """

    def __init__(self, ambient_dim: int, basis: Sequence[Vector], pivots: Sequence[int]):
        if len(basis) != len(pivots):
            raise PreconditionError("one pivot per basis vector is required")
        self.ambient_dim = ambient_dim
        self.basis: List[Vector] = [dict(b) for b in basis]
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Vector]) -> "Subspace":
        basis, pivots = rref_rows(list(vectors), ambient_dim)
        return cls(ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [], [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [{j: Fraction(1)} for j in range(ambient_dim)], range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def reduce(self, v: Vector) -> Vector:
        out = dict(v)
        for row, pivot in zip(self.basis, self.pivots):
            factor = out.get(pivot)
            if factor:
                add_scaled(out, row, -factor)
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def __contains__(self, v: Vector) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def canonical(self) -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return self.contains_subspace(other)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class QuotientSpace:
    """
    Z/B for B inside Z, with coordinates in a complement G of B in Z.

    G is the reduced basis of Z reduced modulo B, so its pivots avoid B's and
    the coordinates of v are the entries of (v mod B) at G's pivots.
    """

    def __init__(self, cycles: Subspace, boundaries: Subspace):
        self.cycles = cycles
        self.boundaries = boundaries
        residues = [boundaries.reduce(z) for z in cycles.basis]
        self.complement = Subspace.span(cycles.ambient_dim, residues)
        if self.complement.dim != cycles.dim - boundaries.dim:
            raise PreconditionError(
                f"boundaries (dim {boundaries.dim}) are not contained in cycles (dim {cycles.dim})"
            )

    @property
    def dim(self) -> int:
        return self.complement.dim

    def coordinates(self, v: Vector) -> List[Fraction]:
        residue = self.boundaries.reduce(v)
        coords = [residue.get(pivot, Fraction(0)) for pivot in self.complement.pivots]
        for row, c in zip(self.complement.basis, coords):
            if c:
                add_scaled(residue, row, -c)
        if residue:
            raise PreconditionError("vector is not a cycle of this quotient")
        return coords

    def lift(self, coords: Sequence[Fraction]) -> Vector:
        out: Vector = {}
        for row, c in zip(self.complement.basis, coords):
            if c:
                add_scaled(out, row, Fraction(c))
        return out

    def is_zero_class(self, v: Vector) -> bool:
        return not any(self.coordinates(v))


# -- module level operations ----------------------------------------------

def _settings():
    from koszul_derham.config import get_settings

    return get_settings()


def rank(M: RationalMatrix, use_modular: bool = True) -> int:
    """
    Exact rank. A modular rank equal to min(rows, cols) certifies full rank;
    otherwise the exact elimination decides and a differing modular rank is
    logged as a warning.
    """
    if M.is_zero():
        return 0
    bound: Optional[int] = None
    if use_modular:
        settings = _settings()
        if M.rows * M.cols <= settings.modular_max_entries:
            bound = modular_rank(M.entries, M.rows, M.cols, settings.modular_prime)
            if bound is not None and bound == min(M.rows, M.cols):
                logger.debug(f"Rank of {M} certified modularly: {bound}")
                return bound
    rows = M.entries if M.rows <= M.cols else {j: c for j, c in enumerate(M.columns()) if c}
    ambient = M.cols if M.rows <= M.cols else M.rows
    _, pivots = rref_rows(list(rows.values()), ambient)
    exact = len(pivots)
    if bound is not None and bound != exact:
        logger.warning(f"Modular rank {bound} of {M} differs from the exact rank {exact}; using {exact}")
    return exact


def kernel_basis(M: RationalMatrix) -> Subspace:
    """Null space, reduced on the free columns of M's echelon form."""
    basis, pivots = rref_rows(list(M.entries.values()), M.cols)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    vectors: List[Vector] = []
    for j in free:
        v: Vector = {j: Fraction(1)}
        for row, pivot in zip(basis, pivots):
            value = row.get(j)
            if value:
                v[pivot] = -value
        vectors.append(v)
    logger.debug(f"Kernel of {M}: rank {len(pivots)}, nullity {len(free)}")
    return Subspace(M.cols, vectors, free)


def image_basis(M: RationalMatrix) -> Subspace:
    """Column space in canonical RREF."""
    return Subspace.span(M.rows, M.columns())


def membership(v: Vector, S: Subspace) -> bool:
    return S.contains(v)


def quotient_coordinates(v: Vector, Z: Subspace, B: Subspace) -> List[Fraction]:
    if not Z.contains(v):
        raise PreconditionError("vector does not lie in Z")
    return QuotientSpace(Z, B).coordinates(v)


def solve(M: RationalMatrix, b: Vector) -> Optional[Vector]:
    """Some x with M x = b, or None when b is outside the column space."""
    augmented = [dict(row) for row in (M.entries.get(i, {}) for i in range(M.rows))]
    for i, value in b.items():
        augmented[i][M.cols] = value
    basis, pivots = rref_rows(augmented, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    return {pivot: row[M.cols] for row, pivot in zip(basis, pivots) if row.get(M.cols)}
