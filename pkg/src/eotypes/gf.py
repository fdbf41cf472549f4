"""Exact arithmetic in GF(p^m) with Frobenius twists.

Elements are stored as integer *codes* in ``[0, p^m)``: the base-p digits of
a code are the coefficients (ascending degree) of the element written in the
power basis of the modulus polynomial. All bulk operations act on numpy
int64 arrays of codes, which keeps linear algebra and polynomial convolution
exact and fast; ``FieldElem`` is a thin scalar wrapper for convenience.

Arrays of codes are treated as immutable: operations always return fresh
arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import ConstraintError

DTYPE = np.int64

# Witnesses making Miller-Rabin deterministic for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- dense univariate arithmetic over Z/p, used only for modulus handling --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] % p
        if c:
            off = len(a) - 1 - dm
            for i in range(dm + 1):
                a[off + i] = (a[off + i] - c * mod[i]) % p
        a.pop()
    return _trim(a)


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_mod(base, mod, p)
    while e > 0:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        monic = [(c * inv_lead) % p for c in b]
        a, b = b, _poly_mod(a, monic, p)
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_divmod(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = (a[k + len(b) - 1] * inv_lead) % p
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - c * bi) % p
    return _trim(q), _trim(a[:len(b) - 1])


def _int_egcd(a, b):
    # returns (g, x) with x*a == g (mod b)
    old_r, r = a, b
    old_x, x = 1, 0
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
    return old_r, old_x


def _is_irreducible(coeffs, p):
    """gcd test: a monic f of degree m is irreducible over Z/p iff
    gcd(f, x^(p^k) - x) is constant for every k <= m/2."""
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] % p != 1:
        return False
    if coeffs[0] % p == 0:  # x divides f
        return m == 1
    for k in range(1, m // 2 + 1):
        xq = _poly_powmod([0, 1], p ** k, coeffs, p)
        xq = list(xq) + [0] * (2 - len(xq))
        diff = _trim([xq[0] % p, (xq[1] - 1) % p] + xq[2:])
        if len(_poly_gcd(coeffs, diff, p)) > 1:
            return False
    return True


class GF:
    """The field GF(p^m), with vectorized arithmetic on code arrays."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise ConstraintError(f"p = {p} is not prime")
        if m < 1:
            raise ConstraintError(f"extension degree m = {m} must be >= 1")
        self.p = int(p)
        self.m = int(m)
        self.q = p ** m
        if m == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = self._find_modulus()
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ConstraintError(
                    f"modulus must be monic of degree {m} "
                    f"(got coefficient list of length {len(modulus)})")
            if not _is_irreducible(list(modulus), p):
                raise ConstraintError(f"modulus {modulus} is reducible over Z/{p}")
            self.modulus = modulus
        self._ppow = np.array([p ** i for i in range(m)], DTYPE)
        if m > 1:
            self._red = self._reduction_matrix()
            self._frob_mats = self._frobenius_matrices()
        if self.p <= 1 << 16:
            inv = np.zeros(self.p, DTYPE)
            for i in range(1, self.p):
                inv[i] = pow(i, self.p - 2, self.p)
            self._inv_table = inv
        else:
            self._inv_table = None

    def _find_modulus(self):
        # first irreducible monic polynomial, coefficient tuples ordered
        # lexicographically from the degree-(m-1) coefficient down
        p, m = self.p, self.m
        for code in range(p ** m):
            coeffs = [(code // p ** i) % p for i in range(m)] + [1]
            if _is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise RuntimeError("unreachable")  # pragma: no cover

    def _reduction_matrix(self):
        # row t = coefficients of x^(m+t) mod modulus, t = 0..m-2
        p, m = self.p, self.m
        rows = []
        cur = _poly_mod([0] * m + [1], self.modulus, p)
        for _ in range(m - 1):
            rows.append(list(cur) + [0] * (m - len(cur)))
            cur = _poly_mod([0] + list(cur), self.modulus, p)
        return np.array(rows, DTYPE).reshape(m - 1, m)

    def _frobenius_matrices(self):
        # mats[k] maps coefficient columns through sigma^k, x -> x^(p^k)
        p, m = self.p, self.m
        sigma = np.zeros((m, m), DTYPE)
        for j in range(m):
            col = _poly_powmod([0] * j + [1], p, self.modulus, p)
            for i, c in enumerate(col):
                sigma[i, j] = c
        mats = [np.eye(m, dtype=DTYPE)]
        for _ in range(m - 1):
            mats.append((sigma @ mats[-1]) % p)
        return mats

    # -- element codecs ----------------------------------------------------

    def decode(self, codes):
        """Code array -> digit array with a trailing axis of length m."""
        codes = np.asarray(codes, DTYPE)
        out = np.empty(codes.shape + (self.m,), DTYPE)
        c = codes
        for i in range(self.m):
            out[..., i] = c % self.p
            c = c // self.p
        return out

    def encode(self, digits):
        digits = np.asarray(digits, DTYPE) % self.p
        return digits @ self._ppow

    def from_int(self, c):
        """Image of an integer under the canonical map Z -> GF(p^m)."""
        return int(c) % self.p

    # -- arithmetic on code arrays -----------------------------------------

    def add(self, a, b):
        a = np.asarray(a, DTYPE)
        b = np.asarray(b, DTYPE)
        if self.m == 1:
            return (a + b) % self.p
        return self.encode(self.decode(a) + self.decode(b))

    def sub(self, a, b):
        a = np.asarray(a, DTYPE)
        b = np.asarray(b, DTYPE)
        if self.m == 1:
            return (a - b) % self.p
        return self.encode(self.decode(a) - self.decode(b))

    def neg(self, a):
        a = np.asarray(a, DTYPE)
        if self.m == 1:
            return (-a) % self.p
        return self.encode(-self.decode(a))

    def mul(self, a, b):
        a = np.asarray(a, DTYPE)
        b = np.asarray(b, DTYPE)
        if self.m == 1:
            return (a * b) % self.p
        da, db = self.decode(a), self.decode(b)
        da, db = np.broadcast_arrays(da, db)
        m = self.m
        planes = np.zeros(da.shape[:-1] + (2 * m - 1,), DTYPE)
        for i in range(m):
            planes[..., i:i + m] += da[..., i:i + 1] * db
        digits = planes[..., :m] + planes[..., m:] @ self._red
        return self.encode(digits)

    def scale_int(self, c, a):
        """Multiply codes by an integer scalar or array (image of c mod p)."""
        a = np.asarray(a, DTYPE)
        c = np.asarray(c, DTYPE) % self.p
        if self.m == 1:
            return (a * c) % self.p
        return self.encode(self.decode(a) * c[..., None])

    def reduce_digit_planes(self, planes):
        """Collapse integer digit planes (trailing axis of length 2m-1,
        indexing powers of the field generator) back to element codes."""
        m = self.m
        planes = np.asarray(planes, DTYPE)
        if m == 1:
            return planes[..., 0] % self.p
        digits = planes[..., :m] + planes[..., m:] @ self._red
        return self.encode(digits)

    def inv_scalar(self, code):
        """Inverse of a single element, by extended Euclid on the modulus."""
        code = int(code)
        if code == 0:
            raise ZeroDivisionError("0 has no inverse")
        p = self.p
        if self.m == 1:
            if self._inv_table is not None:
                return int(self._inv_table[code])
            # extended Euclid on (p, code)
            g, x = _int_egcd(code % p, p)
            if g != 1:  # pragma: no cover - p prime
                raise ZeroDivisionError("not invertible")
            return x % p
        a = _trim([(code // p ** i) % p for i in range(self.m)])
        r0, r1 = list(self.modulus), a
        t0, t1 = [], [1]
        while r1:
            q, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
        # r0 is a nonzero constant gcd since the modulus is irreducible
        c_inv = pow(r0[0], p - 2, p)
        t0 = [(c * c_inv) % p for c in t0]
        t0 = t0 + [0] * (self.m - len(t0))
        return int(self.encode(np.array(t0[:self.m], DTYPE)))

    def inv(self, a):
        a = np.asarray(a, DTYPE)
        if self.m == 1 and self._inv_table is not None:
            if np.any(a == 0):
                raise ZeroDivisionError("0 has no inverse")
            return self._inv_table[a]
        out = np.empty_like(a)
        flat_in, flat_out = a.reshape(-1), out.reshape(-1)
        for i, c in enumerate(flat_in):
            flat_out[i] = self.inv_scalar(int(c))
        return out

    def pow_int(self, a, e: int):
        if e < 0:
            return self.pow_int(self.inv(np.asarray(a, DTYPE)), -e)
        result = np.broadcast_to(np.asarray(1, DTYPE), np.shape(a)).copy()
        base = np.asarray(a, DTYPE)
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frob(self, a, k: int = 1):
        """Entrywise x -> x^(p^k); k may be negative (inverse twist)."""
        a = np.asarray(a, DTYPE)
        k %= self.m
        if k == 0:
            return a.copy()
        digits = self.decode(a)
        return self.encode(digits @ self._frob_mats[k].T)

    def matmul(self, A, B):
        A = np.asarray(A, DTYPE)
        B = np.asarray(B, DTYPE)
        if self.m == 1:
            return (A @ B) % self.p
        da, db = self.decode(A), self.decode(B)
        m = self.m
        planes = np.zeros((A.shape[0], B.shape[1], 2 * m - 1), DTYPE)
        for i in range(m):
            for j in range(m):
                planes[..., i + j] += da[..., i] @ db[..., j]
        digits = planes[..., :m] + planes[..., m:] @ self._red
        return self.encode(digits)

    def random_elements(self, rng, shape):
        return rng.integers(0, self.q, size=shape, dtype=DTYPE)

    # -- formatting ----------------------------------------------------------

    def format_element(self, code) -> str:
        if self.m == 1:
            return str(int(code))
        return ",".join(str(int(d)) for d in self.decode(np.asarray(code, DTYPE)))

    def parse_element(self, text: str) -> int:
        parts = [int(t) for t in text.split(",")]
        if self.m == 1:
            if len(parts) != 1:
                raise ConstraintError(f"expected a single integer, got {text!r}")
            return parts[0] % self.p
        if len(parts) > self.m:
            raise ConstraintError(f"element {text!r} has more than m={self.m} coefficients")
        parts = parts + [0] * (self.m - len(parts))
        return int(self.encode(np.array(parts, DTYPE)))

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ConstraintError("element belongs to a different field")
            return value
        return FieldElem(self, self.from_int(value))

    def element_from_code(self, code: int) -> "FieldElem":
        return FieldElem(self, int(code) % self.q)

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p
                and self.m == other.m and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}; modulus={list(self.modulus)})"


def field_new(p: int, m: int = 1, modulus=None) -> GF:
    """Construct GF(p^m). With m > 1 and no modulus given, a deterministic
    search picks the first irreducible monic polynomial of degree m."""
    return GF(p, m, modulus)


class FieldElem:
    """Scalar wrapper around a field code, with operator sugar."""

    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self):
        return tuple(int(d) for d in self.field.decode(np.asarray(self.code, DTYPE)))

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ConstraintError("field mismatch")
            return other.code
        return self.field.from_int(other)

    def __add__(self, other):
        return FieldElem(self.field, int(self.field.add(self.code, self._coerce(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, int(self.field.sub(self.code, self._coerce(other))))

    def __rsub__(self, other):
        return FieldElem(self.field, int(self.field.sub(self._coerce(other), self.code)))

    def __mul__(self, other):
        return FieldElem(self.field, int(self.field.mul(self.code, self._coerce(other))))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, int(self.field.neg(self.code)))

    def __truediv__(self, other):
        return self * FieldElem(self.field, self.field.inv_scalar(self._coerce(other)))

    def __pow__(self, e):
        return FieldElem(self.field, int(self.field.pow_int(self.code, e)))

    def inverse(self):
        return FieldElem(self.field, self.field.inv_scalar(self.code))

    def frobenius(self, k: int = 1) -> "FieldElem":
        """x -> x^(p^k), with negative k meaning the inverse twist."""
        return FieldElem(self.field, int(self.field.frob(self.code, k)))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"FieldElem({self.field!r}, {self.field.format_element(self.code)})"


def frobenius(x: FieldElem, k: int = 1) -> FieldElem:
    """x^(p^k) in the element's field; frobenius(x, -1) is the inverse twist."""
    return x.frobenius(k)
