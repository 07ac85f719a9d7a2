import numpy as np
import pytest


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + a.conj().T) / 2


def random_skew_traceless(rng, d):
    h = random_hermitian(rng, d)
    h -= np.trace(h) / d * np.eye(d)
    return 1j * h


def random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _flat(m):
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def _span(mats, rtol=1e-9):
    """Orthonormal matrices spanning the real span of ``mats`` (SVD rank)."""
    if not mats:
        return []
    a = np.array([_flat(m) for m in mats])
    _, s, vt = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    d = mats[0].shape[0]
    return [(v[: d * d] + 1j * v[d * d:]).reshape(d, d) for v in vt[:rank]]


def naive_closure_dim(gens, rtol=1e-9, max_iter=50):
    """All-pairs bracketing to fixpoint, rank by SVD; no frontier bookkeeping."""
    basis = _span(list(gens), rtol)
    for _ in range(max_iter):
        new = basis + [a @ b - b @ a for i, a in enumerate(basis) for b in basis[i + 1:]]
        nxt = _span(new, rtol)
        if len(nxt) == len(basis):
            return len(basis)
        basis = nxt
    raise RuntimeError("naive closure did not converge")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance summary: tests/test_acceptance.py records one verdict per criterion
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (passed, detail)
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: (len(s.split("-")[0]), s)):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
