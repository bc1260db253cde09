"""Exact dense linear algebra over small finite fields F_{p^e}.

Elements of F_{p^e} are stored as packed integers in 0..p^e-1 whose base-p
digits are the coefficients of the polynomial-basis representation
(low degree first).  Addition is digitwise mod p; multiplication uses
discrete-log tables over a fixed primitive element.  Everything is exact:
no floating point ever reaches a field value (the float64 BLAS path below
is an integer accumulator with a checked overflow bound).
"""

from __future__ import annotations

import numpy as np

MAX_P = 13
MAX_E = 4

# Defining polynomials fixed as the lexicographically least monic irreducible
# (coefficients compared low-degree first).  The four fields used by the
# variety scans are pinned explicitly; everything else is recomputed on
# demand by the same rule.
PINNED_MODULI = {
    (2, 2): (1, 1, 1),        # w^2 + w + 1
    (2, 3): (1, 1, 0, 1),     # w^3 + w + 1
    (3, 2): (1, 0, 1),        # w^2 + 1
    (3, 3): (1, 2, 0, 1),     # w^3 + 2w + 1
}

_BLAS_LIMIT = float(2**53)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by monic m, coefficients low-degree first."""
    a = [c % p for c in a]
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _poly_is_irreducible(m: list[int], p: int) -> bool:
    """Exhaustive check for degree <= 4: no roots, no quadratic factors."""
    deg = len(m) - 1
    if deg < 1 or m[-1] != 1:
        return False
    if deg == 1:
        return True
    for x in range(p):
        acc = 0
        for c in reversed(m):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    if deg < 4:
        return True
    # degree 4: exclude products of two irreducible quadratics
    for c0 in range(p):
        for c1 in range(p):
            q = [c0, c1, 1]
            if not _poly_is_irreducible(q, p):
                continue
            if not any(_poly_mod(list(m), q, p)):
                return False
    return True


def lexleast_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over F_p."""
    if e == 1:
        return (0, 1)
    coeffs = [0] * e
    while True:
        m = coeffs + [1]
        if _poly_is_irreducible(m, p):
            return tuple(m)
        for i in range(e):
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
        else:  # pragma: no cover - a monic irreducible always exists
            raise RuntimeError("no irreducible polynomial found")


class FieldSpec:
    """The field F_{p^e} with a fixed defining polynomial."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p) or p > MAX_P:
            raise ValueError(f"p must be a prime <= {MAX_P}, got {p}")
        if not 1 <= e <= MAX_E:
            raise ValueError(f"extension degree must be in 1..{MAX_E}, got {e}")
        if modulus is None:
            modulus = PINNED_MODULI.get((p, e)) or lexleast_irreducible(p, e)
        modulus = tuple(c % p for c in modulus[:-1]) + (modulus[-1],)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _poly_is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._powers = p ** np.arange(e, dtype=np.int64)
        self._build_log_tables()

    def _build_log_tables(self):
        p, e, q = self.p, self.e, self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        for g in range(2 if q > 2 else 1, q):
            seen = 0
            x = 1
            ok = True
            for i in range(q - 1):
                exp[i] = x
                if log[x] >= 0:
                    ok = False
                    break
                log[x] = i
                x = self._mul_scalar(x, g)
            if ok and x == 1:
                self._gen = g
                break
            log[:] = -1
        else:  # pragma: no cover - multiplicative group is always cyclic
            raise RuntimeError("no primitive element found")
        self._exp = exp
        self._log = log

    def _mul_scalar(self, a: int, b: int) -> int:
        """Polynomial multiplication mod (modulus, p) on packed ints."""
        p, e = self.p, self.e
        ca = [(a // p**i) % p for i in range(e)]
        cb = [(b // p**i) % p for i in range(e)]
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        red = _poly_mod(prod, list(self.modulus), p)
        red += [0] * (e - len(red))
        return sum(c * p**i for i, c in enumerate(red))

    # -- packed-index arithmetic; every op accepts ints or int arrays --

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        out = 0
        for i in range(self.e):
            pi = self._powers[i]
            out = out + ((a // pi + b // pi) % self.p) * pi
        return out if out.ndim else int(out)

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        a = np.asarray(a)
        out = 0
        for i in range(self.e):
            pi = self._powers[i]
            out = out + ((-(a // pi)) % self.p) * pi
        return out if out.ndim else int(out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        a, b = np.asarray(a), np.asarray(b)
        nz = (a != 0) & (b != 0)
        la = self._log[np.where(nz, a, 1)]
        lb = self._log[np.where(nz, b, 1)]
        out = np.where(nz, self._exp[(la + lb) % (self.q - 1)], 0)
        return out if out.ndim else int(out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverting 0 in a finite field")
        a = np.asarray(a)
        out = self._exp[(-self._log[a]) % (self.q - 1)]
        return out if out.ndim else int(out)

    def pow(self, a, k: int):
        a = np.asarray(a)
        if k == 0:
            return np.ones_like(a) if a.ndim else 1
        zero = a == 0
        if k < 0:
            if np.any(zero):
                raise ZeroDivisionError("negative power of 0")
            k %= self.q - 1
        la = self._log[np.where(zero, 1, a)]
        out = np.where(zero, 0, self._exp[(la * k) % (self.q - 1)])
        return out if out.ndim else int(out)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def coeff_vector(self, a: int) -> tuple[int, ...]:
        return tuple((int(a) // self.p**i) % self.p for i in range(self.e))

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.e and any(cs[self.e:]):
            raise ValueError("coefficient list longer than extension degree")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(cs[: self.e]))

    def elem(self, a) -> "FieldElement":
        return FieldElement(self, int(a) % self.q)

    def elem_str(self, a: int) -> str:
        if self.e == 1:
            return str(int(a) % self.p)
        terms = []
        for i, c in enumerate(self.coeff_vector(a)):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                v = "w" if i == 1 else f"w^{i}"
                terms.append(v if c == 1 else f"{c}*{v}")
        return "+".join(terms) if terms else "0"

    def parse_elem(self, s: str) -> int:
        s = s.strip()
        total = 0
        for term in s.split("+"):
            term = term.strip()
            if term in ("", "0"):
                continue
            if "w" not in term:
                total = self.add(total, int(term) % self.p)
                continue
            coef, _, var = term.partition("w")
            c = int(coef.rstrip("*")) if coef.rstrip("*") else 1
            i = int(var[1:]) if var.startswith("^") else 1
            total = self.add(total, self.from_coeffs([0] * i + [c]))
        return int(total)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e})"


class FieldElement:
    """A single field value; convenience wrapper over the packed index."""

    __slots__ = ("field", "index")

    def __init__(self, field: FieldSpec, index: int):
        self.field = field
        self.index = int(index) % field.q

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeff_vector(self.index)

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.index
        return int(other) % self.field.p

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.index, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.index, self._lift(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.index, self._lift(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(
            self.field, self.field.mul(self.index, self.field.inv(self._lift(other)))
        )

    def __pow__(self, k):
        return FieldElement(self.field, self.field.pow(self.index, k))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        return self.index == int(other) % self.field.q

    def __hash__(self):
        return hash((self.field, self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return self.field.elem_str(self.index)


class FFMatrix:
    """Dense matrix over a FieldSpec; entries are packed indices."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, a):
        self.field = field
        arr = np.asarray(a, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("FFMatrix needs a 2-D array")
        self.a = arr

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field, rows):
        data = [
            [x.index if isinstance(x, FieldElement) else int(x) % field.q for x in row]
            for row in rows
        ]
        return cls(field, np.array(data, dtype=np.int64).reshape(len(data), -1))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def entry(self, i, j) -> FieldElement:
        return FieldElement(self.field, self.a[i, j])

    def copy(self):
        return FFMatrix(self.field, self.a.copy())

    @property
    def T(self):
        return FFMatrix(self.field, self.a.T.copy())

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other):
        self._check(other)
        return FFMatrix(self.field, self.field.add(self.a, other.a))

    def __sub__(self, other):
        self._check(other)
        return FFMatrix(self.field, self.field.sub(self.a, other.a))

    def __neg__(self):
        return FFMatrix(self.field, self.field.neg(self.a))

    def scale(self, c):
        c = c.index if isinstance(c, FieldElement) else int(c)
        return FFMatrix(self.field, self.field.mul(self.a, c))

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.a.shape} @ {other.a.shape}")
        f = self.field
        if f.e == 1:
            # integer matmul through float64 BLAS; exact while the inner
            # products stay below 2^53
            if (f.p - 1) ** 2 * max(self.cols, 1) < _BLAS_LIMIT:
                prod = np.matmul(self.a.astype(np.float64), other.a.astype(np.float64))
                return FFMatrix(f, (prod % f.p).astype(np.int64))
            return FFMatrix(f, np.matmul(self.a, other.a) % f.p)
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for k in range(self.cols):
            out = f.add(out, f.mul(self.a[:, k : k + 1], other.a[k : k + 1, :]))
        return FFMatrix(f, out)

    def __pow__(self, k: int):
        if self.rows != self.cols:
            raise ValueError("matrix power needs a square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        out = FFMatrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FFMatrix)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool(np.all(self.a == other.a))
        )

    def __hash__(self):
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(
            np.all(self.a == np.eye(self.rows, dtype=np.int64))
        )

    def to_coeff_lists(self):
        """Nested lists of coefficient vectors (low degree first), for JSON."""
        return [[list(self.field.coeff_vector(x)) for x in row] for row in self.a]

    @classmethod
    def from_coeff_lists(cls, field, data):
        rows = [[field.from_coeffs(c) for c in row] for row in data]
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    def __repr__(self):
        return f"FFMatrix({self.field!r}, {self.a.tolist()})"


def rref(m: FFMatrix) -> tuple[FFMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; row space preserved."""
    f = m.field
    a = m.a.copy()
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = f.mul(a[r], f.inv(int(a[r, c])))
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if np.any(mask):
            a[mask] = f.sub(a[mask], f.mul(col[mask, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return FFMatrix(f, a), tuple(pivots)


def rank(m: FFMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: FFMatrix) -> list[np.ndarray]:
    """Basis of the right null space; count = cols - rank."""
    f = m.field
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for c in free:
        v = np.zeros(m.cols, dtype=np.int64)
        v[c] = 1
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(int(red.a[r, c]))
        basis.append(v)
    return basis


def column_space_basis(m: FFMatrix) -> FFMatrix:
    """Matrix whose columns are a basis of the column space."""
    _, pivots = rref(m.T)
    # pivots of the transpose give independent rows of m^T = columns of m
    return FFMatrix(m.field, m.a[:, list(pivots)].copy())


def solve(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """Solve a @ x = b; raises ValueError when the system is inconsistent.

    When the solution is not unique the free coordinates are set to 0.
    """
    if a.field != b.field or a.rows != b.rows:
        raise ValueError("incompatible system")
    f = a.field
    aug = FFMatrix(f, np.hstack([a.a, b.a]))
    red, pivots = rref(aug)
    for pc in pivots:
        if pc >= a.cols:
            raise ValueError("inconsistent linear system")
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red.a[r, a.cols :]
    return FFMatrix(f, x)


def inverse(m: FFMatrix) -> FFMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, FFMatrix.identity(m.field, m.rows))
    if not (m @ x).is_identity():
        raise ValueError("matrix is singular")
    return x


def kron(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """Kronecker product; realizes the diagonal action on tensor products."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    f = a.field
    big = f.mul(a.a[:, None, :, None], b.a[None, :, None, :])
    return FFMatrix(f, np.asarray(big).reshape(a.rows * b.rows, a.cols * b.cols))


def hstack(mats: list[FFMatrix]) -> FFMatrix:
    f = mats[0].field
    return FFMatrix(f, np.hstack([m.a for m in mats]))


def vstack(mats: list[FFMatrix]) -> FFMatrix:
    f = mats[0].field
    return FFMatrix(f, np.vstack([m.a for m in mats]))


def from_columns(field: FieldSpec, cols: list[np.ndarray]) -> FFMatrix:
    if not cols:
        raise ValueError("need at least one column")
    return FFMatrix(field, np.stack(cols, axis=1))


def solve_commutant(gensA: list[FFMatrix], gensB: list[FFMatrix]) -> list[FFMatrix]:
    """Basis of {X : X @ gensA[i] == gensB[i] @ X for all i}.

    These are the module homomorphisms from the module with actions gensA
    (dimension m) to the one with actions gensB (dimension n); X is n x m.
    """
    if len(gensA) != len(gensB):
        raise ValueError("generator count mismatch")
    if not gensA:
        raise ValueError("need at least one generator")
    f = gensA[0].field
    m = gensA[0].rows
    n = gensB[0].rows
    eye_m = FFMatrix.identity(f, m)
    eye_n = FFMatrix.identity(f, n)
    blocks = []
    for A, B in zip(gensA, gensB):
        if A.field != f or B.field != f:
            raise ValueError("field mismatch")
        if A.rows != m or B.rows != n or A.rows != A.cols or B.rows != B.cols:
            raise ValueError("generators must be square and consistently sized")
        # row-major vec: vec(X A) = (I_n kron A^T) vec X, vec(B X) = (B kron I_m) vec X
        blocks.append(kron(eye_n, A.T) - kron(B, eye_m))
    system = vstack(blocks)
    return [FFMatrix(f, v.reshape(n, m)) for v in kernel_basis(system)]
