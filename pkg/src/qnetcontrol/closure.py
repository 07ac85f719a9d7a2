"""Lie closure of a set of skew-Hermitian generators.

Elements are mapped to real coordinate vectors in which the Euclidean inner
product equals the Hilbert-Schmidt one, so rank decisions reduce to
Gram-Schmidt in R^n. Two coordinate systems are available:

* dense: entries of the matrix (diagonal imaginary parts, and sqrt(2) times
  the real/imaginary parts of the strict upper triangle);
* pauli: normalized Pauli-string coefficients, qubits only, with brackets
  evaluated from the symplectic representation of the strings.

The closure loop keeps an orthonormal basis and a frontier of newly accepted
elements. Each frontier element is bracketed with the basis, the candidates
are projected out of the basis twice (one re-orthogonalization pass), and
survivors are accepted one at a time in candidate order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .operators import DimensionError, PauliPolynomial, pauli_string

LOG = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
# brackets of unit-norm elements smaller than this are treated as exact zeros
ZERO_NORM = 1e-12
# candidates with relative residual below this wait until nothing better is left
DEFER = 1e-2


class IndeterminateError(ArithmeticError):
    """A candidate's relative residual fell in the ambiguous band ``[tol/10, tol]``."""

    def __init__(self, residual: float, tol: float, dim: int):
        self.residual = residual
        self.tol = tol
        self.dim = dim
        super().__init__(
            f"rank decision undecided: relative residual {residual:.3e} in "
            f"[{tol / 10:.1e}, {tol:.1e}] at basis size {dim}")


@dataclass
class ClosureResult:
    """Orthonormal (HS) basis of a generated Lie algebra.

    ``max_residual`` is the largest relative residual among rejected
    candidates, i.e. how close a discarded direction came to being new.
    """

    dim: int
    basis: list = field(repr=False)
    rounds: int
    saturated: bool
    max_residual: float
    target_dim: int
    representation: str
    tol: float


# --------------------------------------------------------------------------
# coordinate spaces


class DenseSpace:
    """Skew-Hermitian D x D matrices as real vectors of length D**2."""

    name = "dense"

    def __init__(self, dim: int):
        self.hilbert_dim = dim
        self.n = dim * dim
        self._iu = np.triu_indices(dim, 1)
        self._mats = np.empty((0, dim, dim), dtype=complex)

    @property
    def full_dim(self) -> int:
        return self.n - 1

    def to_coords(self, mats: np.ndarray) -> np.ndarray:
        mats = np.asarray(mats, dtype=complex)
        single = mats.ndim == 2
        if single:
            mats = mats[None]
        if mats.shape[1:] != (self.hilbert_dim, self.hilbert_dim):
            raise DimensionError(
                f"expected {self.hilbert_dim}x{self.hilbert_dim} operators, got {mats.shape[1:]}")
        i, j = self._iu
        diag = np.diagonal(mats, axis1=1, axis2=2).imag
        up = mats[:, i, j] * np.sqrt(2)
        out = np.concatenate([diag, up.real, up.imag], axis=1)
        return out[0] if single else out

    def from_coords(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.atleast_2d(vecs)
        d = self.hilbert_dim
        m = len(self._iu[0])
        out = np.zeros((len(vecs), d, d), dtype=complex)
        idx = np.arange(d)
        out[:, idx, idx] = 1j * vecs[:, :d]
        up = (vecs[:, d:d + m] + 1j * vecs[:, d + m:]) / np.sqrt(2)
        i, j = self._iu
        out[:, i, j] = up
        out[:, j, i] = -up.conj()
        return out

    def reset(self, capacity: int) -> None:
        self._mats = np.empty((capacity, self.hilbert_dim, self.hilbert_dim), dtype=complex)

    def register(self, index: int, vec: np.ndarray) -> None:
        self._mats[index] = self.from_coords(vec)[0]

    def brackets(self, f: int, others: np.ndarray) -> np.ndarray:
        a = self._mats[f]
        b = self._mats[others]
        return self.to_coords(a @ b - b @ a)

    def export(self, vecs: np.ndarray) -> list:
        return list(self.from_coords(vecs))


class PauliSpace:
    """Traceless skew-Hermitian operators on ``n`` qubits in Pauli-string coordinates.

    Coordinate ``k`` is the weight of ``i P_k / sqrt(2**n)`` where ``P_k`` has
    symplectic code ``k = x | (z << n)`` (``Y = i X Z`` on a site).
    """

    name = "pauli"

    def __init__(self, n_sites: int):
        self.n_sites = n_sites
        self.hilbert_dim = 2 ** n_sites
        self.n = 4 ** n_sites
        codes = np.arange(self.n, dtype=np.int64)
        mask = self.hilbert_dim - 1
        self._x = codes & mask
        self._z = codes >> n_sites
        self._xz = np.bitwise_count(self._x & self._z).astype(np.int64)
        self._basis = None

    @property
    def full_dim(self) -> int:
        return self.n - 1

    def code(self, string) -> int:
        x = z = 0
        for site, letter in pauli_string(string):
            if letter in "XY":
                x |= 1 << site
            if letter in "ZY":
                z |= 1 << site
        return x | (z << self.n_sites)

    def string(self, code: int):
        x = code & (self.hilbert_dim - 1)
        z = code >> self.n_sites
        out = []
        for site in range(self.n_sites):
            bx, bz = (x >> site) & 1, (z >> site) & 1
            if bx or bz:
                out.append((site, "Y" if bx and bz else ("X" if bx else "Z")))
        return tuple(out)

    def to_coords(self, polys: Sequence[PauliPolynomial] | PauliPolynomial) -> np.ndarray:
        single = isinstance(polys, PauliPolynomial)
        if single:
            polys = [polys]
        scale = np.sqrt(self.hilbert_dim)
        out = np.zeros((len(polys), self.n))
        for row, poly in zip(out, polys):
            if poly.n_sites != self.n_sites:
                raise DimensionError(f"expected {self.n_sites}-qubit polynomial, got {poly.n_sites}")
            for s, c in poly.terms.items():
                row[self.code(s)] = c * scale
        return out[0] if single else out

    def reset(self, capacity: int) -> None:
        self._basis = np.empty((capacity, self.n))

    def register(self, index: int, vec: np.ndarray) -> None:
        self._basis[index] = vec

    def _ad_matrix(self, vec: np.ndarray) -> sp.csr_matrix:
        """Sparse matrix of ``v -> [f, v]`` for the element with coordinates ``vec``."""
        p = np.flatnonzero(vec)
        px, pz, pxz = self._x[p, None], self._z[p, None], self._xz[p, None]
        qx, qz, qxz = self._x[None], self._z[None], self._xz[None]
        sym = np.bitwise_count(px & qz) + np.bitwise_count(pz & qx)
        anti = (sym & 1).astype(bool)
        rx, rz = px ^ qx, pz ^ qz
        # P Q = i**e R with e = |x1 z1| + |x2 z2| + 2 |z1 x2| - |x3 z3|  (mod 4)
        e = (pxz + qxz + 2 * np.bitwise_count(pz & qx) - np.bitwise_count(rx & rz)) & 3
        rows = (rx | (rz << self.n_sites))[anti]
        cols = np.broadcast_to(np.arange(self.n)[None], anti.shape)[anti]
        # [iP, iQ] = -2 P Q = i * (-2 s) R with P Q = i s R, s = +1 (e=1) or -1 (e=3)
        s = np.where(e == 1, 1.0, -1.0)
        vals = (-2.0 / np.sqrt(self.hilbert_dim)) * (s * vec[p, None])
        vals = np.broadcast_to(vals, anti.shape)[anti]
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.n, self.n))

    def brackets(self, f: int, others: np.ndarray) -> np.ndarray:
        ad = self._ad_matrix(self._basis[f])
        return np.asarray((ad @ self._basis[others].T).T)

    def export(self, vecs: np.ndarray) -> list:
        scale = np.sqrt(self.hilbert_dim)
        out = []
        for v in np.atleast_2d(vecs):
            # entries at roundoff level are dropped from the sparse form
            nz = np.flatnonzero(np.abs(v) > 1e-14)
            out.append(PauliPolynomial({self.string(int(k)): v[k] / scale for k in nz}, self.n_sites))
        return out


def space_for(generators: Sequence) -> DenseSpace | PauliSpace:
    if not generators:
        raise ValueError("at least one generator is required")
    if all(isinstance(g, PauliPolynomial) for g in generators):
        n = {g.n_sites for g in generators}
        if len(n) != 1:
            raise DimensionError(f"generators on different qubit counts: {sorted(n)}")
        return PauliSpace(n.pop())
    if any(isinstance(g, PauliPolynomial) for g in generators):
        raise TypeError("cannot mix PauliPolynomial and dense generators")
    shapes = {np.shape(g) for g in generators}
    if len(shapes) != 1:
        raise DimensionError(f"generators have different shapes: {sorted(shapes)}")
    shape = shapes.pop()
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionError(f"generators must be square matrices, got {shape}")
    return DenseSpace(shape[0])


# --------------------------------------------------------------------------
# closure loop


class _Basis:
    """Orthonormal basis ``Q`` for rank decisions plus the raw spanning set.

    Each accepted candidate contributes a row of ``Q`` (its orthonormalized
    residual) and registers the candidate itself, normalized, with the
    coordinate space; brackets are always evaluated on those raw elements.
    A residual accepted with relative size rho carries roundoff amplified by
    1/rho, so bracketing ``Q`` rows would compound that noise generation
    after generation. Raw elements only accumulate it additively, and ``Q``
    spans them to roundoff because Gram-Schmidt with re-orthogonalization is
    backward stable.

    Candidates with residual between ``tol`` and ``defer`` are parked and
    decided only once no better-conditioned direction is left.
    """

    def __init__(self, space, capacity: int, tol: float, defer: float | None = None):
        self.space = space
        self.tol = tol
        self.defer = max(DEFER if defer is None else defer, tol)
        self.vecs = np.empty((capacity, space.n))
        self.size = 0
        self.capacity = capacity
        self.max_residual = 0.0
        self.parked: list[tuple[np.ndarray, np.ndarray]] = []
        space.reset(capacity)

    @property
    def full(self) -> bool:
        return self.size >= self.capacity

    def _drop(self, res: np.ndarray) -> None:
        if res.size:
            self.max_residual = max(self.max_residual, float(res.max()))

    def _project(self, c: np.ndarray, raw: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Project rows out of the basis, discarding those already spanned.

        One pass fixes a residual's size to roundoff, which is all the discard
        decision needs; the second pass, needed for the direction of a
        survivor, runs on the survivors only.
        """
        b = self.vecs[:self.size]
        if not len(b):
            return c, raw
        c -= (c @ b.T) @ b
        res = np.linalg.norm(c, axis=1)
        live = res >= self.tol / 20
        self._drop(res[~live])
        c, raw = c[live], raw[live]
        c -= (c @ b.T) @ b
        return c, raw

    def _commit(self, r: np.ndarray, raw: np.ndarray, start: int) -> np.ndarray:
        # re-orthogonalize against this batch's acceptances, then the whole basis
        new = self.vecs[start:self.size]
        r = r - (new @ r) @ new
        r = r / np.linalg.norm(r)
        b = self.vecs[:self.size]
        r = r - (b @ r) @ b
        r /= np.linalg.norm(r)
        self.vecs[self.size] = r
        self.space.register(self.size, raw)
        self.size += 1
        return r

    def _decide(self, c: np.ndarray, raw: np.ndarray, threshold: float, final: bool) -> int:
        """Greedy pivoted acceptance of rows of ``c`` (already orthogonal to the basis)."""
        lo = self.tol / 10
        res = np.linalg.norm(c, axis=1)
        live = res >= lo
        self._drop(res[~live])
        c, raw, res = c[live], raw[live], res[live]
        start = self.size
        while len(c) and not self.full:
            i = int(np.argmax(res))
            if res[i] <= threshold:
                break
            r = self._commit(c[i], raw[i], start)
            c = np.delete(c, i, axis=0)
            raw = np.delete(raw, i, axis=0)
            c -= np.outer(c @ r, r)
            res = np.linalg.norm(c, axis=1)
        added = self.size - start
        if self.full or not len(c):
            return added
        small = res < lo
        self._drop(res[small])
        c, raw, res = c[~small], raw[~small], res[~small]
        if not len(c):
            return added
        if final:
            raise IndeterminateError(float(res.max()), self.tol, self.size)
        self.parked.append((c, raw))
        return added

    def absorb(self, cands: np.ndarray, final: bool = False) -> int:
        """Accept new directions from ``cands``; return how many.

        Residuals are relative to each candidate's own norm.
        """
        norms = np.linalg.norm(cands, axis=1)
        keep = norms > ZERO_NORM
        if not keep.any():
            return 0
        raw = cands[keep] / norms[keep, None]
        c, raw = self._project(raw.copy(), raw)
        return self._decide(c, raw, self.tol if final else self.defer, final)

    def flush(self) -> int:
        """Decide all parked candidates against the current basis."""
        if not self.parked:
            return 0
        c = np.concatenate([p[0] for p in self.parked])
        raw = np.concatenate([p[1] for p in self.parked])
        self.parked = []
        # parked rows keep their relative-residual scale; project out later acceptances
        c, raw = self._project(c, raw)
        return self._decide(c, raw, self.tol, final=True)


def lie_closure(generators: Sequence, target_dim: int | None = None,
                tol: float = DEFAULT_TOL) -> ClosureResult:
    """Smallest bracket-closed real subspace containing ``generators``.

    ``generators`` are traceless skew-Hermitian matrices (dense path) or
    :class:`PauliPolynomial` objects (Pauli path). The loop stops early once
    ``target_dim`` is reached (default: dimension of the full traceless
    algebra). Raises :class:`IndeterminateError` when a candidate cannot be
    classified at ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    generators = list(generators)
    space = space_for(generators)
    coords = space.to_coords(generators)
    coords = np.atleast_2d(coords)
    if space.name == "dense":
        traces = np.abs(coords[:, :space.hilbert_dim].sum(axis=1))
        if np.any(traces > 1e-9 * (1 + np.linalg.norm(coords, axis=1))):
            raise ValueError("generators must be traceless; strip the identity part first")
    full = space.full_dim
    if target_dim is None:
        target_dim = full
    if not 0 < target_dim <= full:
        raise ValueError(f"target_dim must be in [1, {full}], got {target_dim}")

    basis = _Basis(space, target_dim, tol)
    basis.absorb(coords, final=True)
    frontier = (0, basis.size)
    rounds = 0
    while not basis.full:
        if frontier[0] == frontier[1]:
            basis.flush()
            frontier = (frontier[0], basis.size)
            if frontier[0] == frontier[1]:
                break
        rounds += 1
        start, stop = frontier
        for f in range(start, stop):
            # pairs among earlier frontier elements were bracketed already
            others = np.r_[0:start, f + 1:basis.size]
            if others.size:
                basis.absorb(space.brackets(f, others))
            if basis.full:
                break
        LOG.debug("round %d: dim %d, parked batches %d", rounds, basis.size, len(basis.parked))
        frontier = (stop, basis.size)

    vecs = basis.vecs[:basis.size]
    return ClosureResult(
        dim=basis.size,
        basis=space.export(vecs) if basis.size else [],
        rounds=rounds,
        saturated=basis.full,
        max_residual=basis.max_residual,
        target_dim=target_dim,
        representation=space.name,
        tol=tol,
    )
