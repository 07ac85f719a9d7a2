"""Operator algebra on finite-dimensional Hilbert spaces.

Lie-algebra elements are skew-Hermitian matrices ``iH`` with ``H`` Hermitian,
stored as plain complex ``numpy`` arrays. Real linear combinations only.
For all-qubit systems the sparse :class:`PauliPolynomial` offers exact
bracket arithmetic on Pauli strings.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

PAULI_LETTERS = ("X", "Y", "Z")

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-qubit products: (a, b) -> (phase, c) with a.b = phase * c
_PAULI_PRODUCT = {
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}


class DimensionError(ValueError):
    """Operator shapes or site dimensions do not match."""


def pauli(letter: str) -> np.ndarray:
    """Return a copy of the 2x2 Pauli matrix ``I``, ``X``, ``Y`` or ``Z``."""
    return _PAULI[letter].copy()


def _check_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"operator must be square, got shape {a.shape}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Return ``ab - ba``."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_square(a)
    _check_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Real Hilbert-Schmidt inner product ``Re Tr(a^dagger b)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.real(np.vdot(a, b)))


def hs_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def is_skew_hermitian(a: np.ndarray, atol: float = 1e-12) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.allclose(a, -a.conj().T, atol=atol)


def traceless_part(a: np.ndarray) -> np.ndarray:
    """Remove the identity component; the trace only contributes a global phase."""
    a = np.asarray(a, dtype=complex)
    d = a.shape[0]
    return a - (np.trace(a) / d) * np.eye(d)


def embed_local(op: np.ndarray, sites: Sequence[int], net_dims: Sequence[int]) -> np.ndarray:
    """Embed ``op`` acting on ``sites`` (in the listed order) into the full network.

    ``net_dims[i]`` is the local dimension of site ``i``; the global space is
    ``net_dims[0] x net_dims[1] x ...`` in Kronecker order. The result acts as
    identity on every site not listed.
    """
    op = np.asarray(op, dtype=complex)
    _check_square(op)
    sites = list(sites)
    n = len(net_dims)
    if len(set(sites)) != len(sites):
        raise ValueError(f"sites must be distinct, got {sites}")
    for s in sites:
        if not 0 <= s < n:
            raise IndexError(f"site {s} out of range for {n} sites")
    local = [net_dims[s] for s in sites]
    if op.shape[0] != int(np.prod(local, dtype=int)):
        raise DimensionError(
            f"operator of dim {op.shape[0]} does not match sites {sites} with dims {local}")
    rest = [s for s in range(n) if s not in sites]
    rest_dim = int(np.prod([net_dims[s] for s in rest], dtype=int))
    full = np.kron(op, np.eye(rest_dim))
    if n == 0:
        return full
    # axes of `full` are ordered (sites..., rest...) for rows, then for columns
    order = sites + rest
    dims = [net_dims[s] for s in order]
    t = full.reshape(dims + dims)
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [n + i for i in inv])
    total = int(np.prod(net_dims, dtype=int))
    return t.reshape(total, total)


def gell_mann(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices (Hermitian, traceless, ``Tr(g g) = 2``).

    Ordered as symmetric/antisymmetric pairs for each ``j < k``, then the
    diagonal ones; for ``d = 2`` this is ``[X, Y, Z]``.
    """
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((d, d), dtype=complex)
            a[j, k] = -1j
            a[k, j] = 1j
            mats += [s, a]
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1
        diag[l] = -l
        mats.append(np.sqrt(2 / (l * (l + 1))) * np.diag(diag).astype(complex))
    return mats


def su_basis(d: int) -> list[np.ndarray]:
    """Skew-Hermitian HS-orthogonal basis of su(d): ``i`` times the Gell-Mann set."""
    return [1j * g for g in gell_mann(d)]


def joint_su_basis(dims: Sequence[int]) -> list[np.ndarray]:
    """Basis of su(d_1 d_2 ...) built from tensor products of local Gell-Mann matrices.

    Every product except the all-identity one is kept, so the result has
    ``(prod dims)**2 - 1`` elements and is HS-orthogonal.
    """
    local = [[np.eye(d, dtype=complex)] + gell_mann(d) for d in dims]
    out = []
    for combo in itertools.product(*local):
        if all(c is loc[0] for c, loc in zip(combo, local)):
            continue
        out.append(1j * reduce(np.kron, combo))
    return out


@dataclass(frozen=True)
class SpinOperators:
    d: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def spin(self) -> float:
        return (self.d - 1) / 2


def spin_operators(d: int) -> SpinOperators:
    """Spin-s matrices with ``s = (d-1)/2`` in the ``|s, m>`` basis, ``m`` descending."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    s = (d - 1) / 2
    m = s - np.arange(d)
    sp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        # S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>
        sp[i - 1, i] = np.sqrt(s * (s + 1) - m[i] * (m[i] + 1))
    sx = (sp + sp.conj().T) / 2
    sy = (sp - sp.conj().T) / 2j
    sz = np.diag(m).astype(complex)
    return SpinOperators(d, sx, sy, sz)


# --------------------------------------------------------------------------
# Pauli strings

PauliString = tuple  # sorted tuple of (site, letter) pairs, identity implicit


def pauli_string(spec: Mapping[int, str] | Iterable[tuple[int, str]] | str) -> PauliString:
    """Normalize a Pauli string.

    Accepts a mapping ``{site: letter}``, an iterable of pairs, or a dense
    label such as ``"XIZ"`` (site 0 first).
    """
    if isinstance(spec, str):
        pairs = [(i, c) for i, c in enumerate(spec.upper()) if c != "I"]
    elif isinstance(spec, Mapping):
        pairs = list(spec.items())
    else:
        pairs = list(spec)
    out = {}
    for site, letter in pairs:
        if letter not in PAULI_LETTERS:
            raise ValueError(f"invalid Pauli letter {letter!r}")
        if site < 0:
            raise ValueError(f"invalid site {site}")
        if site in out:
            raise ValueError(f"site {site} repeated in Pauli string")
        out[int(site)] = letter
    return tuple(sorted(out.items()))


def string_label(string: PauliString, n_sites: int | None = None) -> str:
    if n_sites is None:
        n_sites = (max(s for s, _ in string) + 1) if string else 1
    chars = ["I"] * n_sites
    for site, letter in string:
        chars[site] = letter
    return "".join(chars)


def string_matrix(string: PauliString, n_sites: int) -> np.ndarray:
    letters = dict(string)
    if letters and max(letters) >= n_sites:
        raise IndexError(f"Pauli string {string} exceeds {n_sites} sites")
    return reduce(np.kron, [_PAULI[letters.get(i, "I")] for i in range(n_sites)], np.eye(1, dtype=complex))


def _multiply_strings(p: PauliString, q: PauliString) -> tuple[complex, PauliString]:
    """Return ``(phase, r)`` with ``P Q = phase * R``."""
    a = dict(p)
    b = dict(q)
    phase = 1 + 0j
    out = {}
    for site in a.keys() | b.keys():
        x, y = a.get(site), b.get(site)
        if x is None or y is None:
            out[site] = x or y
        elif x != y:
            ph, c = _PAULI_PRODUCT[(x, y)]
            phase *= ph
            out[site] = c
    return phase, tuple(sorted(out.items()))


def strings_commute(p: PauliString, q: PauliString) -> bool:
    b = dict(q)
    clashes = sum(1 for site, x in p if site in b and b[site] != x)
    return clashes % 2 == 0


@dataclass(frozen=True)
class PauliTerm:
    """The skew-Hermitian operator ``i * coefficient * P`` for a Pauli string ``P``."""

    coefficient: float
    string: PauliString

    def __post_init__(self):
        object.__setattr__(self, "string", pauli_string(self.string))
        object.__setattr__(self, "coefficient", float(self.coefficient))

    def to_dense(self, n_sites: int) -> np.ndarray:
        return 1j * self.coefficient * string_matrix(self.string, n_sites)


def pauli_bracket(p: PauliTerm, q: PauliTerm) -> PauliTerm | None:
    """Bracket of two Pauli terms; ``None`` when the strings commute.

    For anticommuting strings ``[iaP, ibQ] = -2ab PQ`` and ``PQ = +-i R``, so
    the result is again a single i-prefixed term.
    """
    if strings_commute(p.string, q.string):
        return None
    phase, r = _multiply_strings(p.string, q.string)
    # phase is +-i here
    sign = phase.imag
    return PauliTerm(-2.0 * p.coefficient * q.coefficient * sign, r)


@dataclass(frozen=True)
class PauliPolynomial:
    """Real-weighted sum of i-prefixed Pauli strings on ``n_sites`` qubits.

    ``terms`` maps each Pauli string to its coefficient; zero coefficients are
    dropped on construction. The identity string is not allowed since
    elements are traceless.
    """

    terms: Mapping[PauliString, float]
    n_sites: int

    def __post_init__(self):
        clean = {}
        for s, c in self.terms.items():
            s = pauli_string(s)
            if not s:
                raise ValueError("identity string is not a traceless Lie-algebra element")
            if s[-1][0] >= self.n_sites:
                raise IndexError(f"string {s} exceeds {self.n_sites} sites")
            c = float(c) + clean.get(s, 0.0)
            clean[s] = c
        clean = {s: c for s, c in clean.items() if c != 0.0}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_terms(cls, terms: Iterable[PauliTerm], n_sites: int) -> "PauliPolynomial":
        acc: dict[PauliString, float] = {}
        for t in terms:
            acc[t.string] = acc.get(t.string, 0.0) + t.coefficient
        return cls(acc, n_sites)

    @classmethod
    def from_dense(cls, a: np.ndarray, n_sites: int, atol: float = 1e-12) -> "PauliPolynomial":
        """Decompose a traceless skew-Hermitian matrix into i-prefixed Pauli strings."""
        a = np.asarray(a, dtype=complex)
        dim = 2 ** n_sites
        if a.shape != (dim, dim):
            raise DimensionError(f"expected {dim}x{dim} matrix for {n_sites} qubits")
        terms = {}
        for letters in itertools.product("IXYZ", repeat=n_sites):
            s = pauli_string("".join(letters))
            if not s:
                continue
            # a = i sum c_P P  =>  c_P = Tr(P a) / (i dim)
            c = np.trace(string_matrix(s, n_sites) @ a) / (1j * dim)
            if abs(c) > atol:
                terms[s] = c.real
        return cls(terms, n_sites)

    def __iter__(self):
        return (PauliTerm(c, s) for s, c in self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "PauliPolynomial") -> "PauliPolynomial":
        if self.n_sites != other.n_sites:
            raise DimensionError("site count mismatch")
        acc = dict(self.terms)
        for s, c in other.terms.items():
            acc[s] = acc.get(s, 0.0) + c
        return PauliPolynomial(acc, self.n_sites)

    def __mul__(self, scalar: float) -> "PauliPolynomial":
        return PauliPolynomial({s: scalar * c for s, c in self.terms.items()}, self.n_sites)

    __rmul__ = __mul__

    def bracket(self, other: "PauliPolynomial") -> "PauliPolynomial":
        if self.n_sites != other.n_sites:
            raise DimensionError("site count mismatch")
        out = [r for p in self for q in other if (r := pauli_bracket(p, q)) is not None]
        return PauliPolynomial.from_terms(out, self.n_sites)

    def hs_norm(self) -> float:
        return float(np.sqrt(2 ** self.n_sites * sum(c * c for c in self.terms.values())))

    def to_dense(self) -> np.ndarray:
        dim = 2 ** self.n_sites
        out = np.zeros((dim, dim), dtype=complex)
        for s, c in self.terms.items():
            out += 1j * c * string_matrix(s, self.n_sites)
        return out

    def labels(self) -> dict[str, float]:
        return {string_label(s, self.n_sites): c for s, c in self.terms.items()}
