"""Finite field towers F_q <= F_(q^m) with the Frobenius Galois action.

Elements of F_(p^n) are encoded as integers in [0, p^n): the base-p digits
are the coefficients of the power basis of a fixed irreducible polynomial.
Multiplication goes through log/antilog tables of a generator; for the
field sizes used here a full flat product table is also precomputed, so a
field operation is one list lookup.
"""

from .errors import EnumerationBoundExceeded
from .groups import cyclic_group

_FULL_TABLE_LIMIT = 256  # sizes up to this get flat add/mul tables
_SIZE_LIMIT = 2**16


def _poly_mul_mod(a, b, modulus, p, n):
    """Multiply digit-encoded polynomials mod `modulus` (degree n, monic)."""
    # decode to coefficient lists
    ca = [(a // p**i) % p for i in range(n)]
    cb = [(b // p**i) % p for i in range(n)]
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus
    mcoef = [(modulus // p**i) % p for i in range(n + 1)]
    for i in range(2 * n - 2, n - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(n):
                prod[i - n + j] = (prod[i - n + j] - c * mcoef[j]) % p
    return sum(prod[i] * p**i for i in range(n))


def _is_irreducible(poly, p, n):
    """Trial division by every monic polynomial of degree 1..n//2."""
    for d in range(1, n // 2 + 1):
        for rest in range(p**d):
            divisor = rest + p**d  # monic of degree d
            if _poly_divides(divisor, poly, p):
                return False
    return True


def _poly_divides(divisor, poly, p):
    def degree(x):
        d = -1
        i = 0
        while x:
            if x % p:
                d = i
            x //= p
            i += 1
        return d

    dd = degree(divisor)
    rem = [(poly // p**i) % p for i in range(degree(poly) + 1)]
    dcoef = [(divisor // p**i) % p for i in range(dd + 1)]
    lead_inv = pow(dcoef[dd], -1, p)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] * lead_inv % p
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * dcoef[j]) % p
    return not any(rem[:dd])


def _find_irreducible(p, n):
    if n == 1:
        return p  # the polynomial x
    for rest in range(p**n):
        poly = rest + p**n
        if poly % p == 0:
            continue  # constant term 0 means x divides it
        if _is_irreducible(poly, p, n):
            return poly
    raise AssertionError("no irreducible polynomial found")


class GaloisFieldTower:
    """The extension K/k with k = F_q, K = F_(q^m), q = p^base_degree.

    Gal(K/k) is cyclic of order m, generated by the Frobenius x -> x^q.
    """

    def __init__(self, p, base_degree, ext_degree):
        if p < 2 or any(p % d == 0 for d in range(2, p)):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        self.base_degree = base_degree
        self.ext_degree = ext_degree
        self.q = p**base_degree
        n = base_degree * ext_degree
        self.size = p**n
        if self.size > _SIZE_LIMIT:
            raise EnumerationBoundExceeded(
                f"field size {self.size} exceeds {_SIZE_LIMIT}"
            )
        self.poly = _find_irreducible(p, n)
        self._n = n
        self._build_tables()
        self.frobenius = self._power_map(self.q)
        assert self._frob_order() == ext_degree
        self.subfield = tuple(
            sorted(x for x in range(self.size) if self.frobenius[x] == x)
        )
        assert len(self.subfield) == self.q

    def _build_tables(self):
        p, n, size = self.p, self._n, self.size
        add = []
        for x in range(size):
            row = []
            for y in range(size):
                s = 0
                xx, yy, mult = x, y, 1
                for _ in range(n):
                    s += ((xx + yy) % p) * mult
                    xx //= p
                    yy //= p
                    mult *= p
                row.append(s)
            add.append(row)
        self._add = add
        self._neg = [add[x].index(0) for x in range(size)]
        # find a multiplicative generator
        if size == 2:
            gen = 1
        else:
            gen = None
            for cand in range(2, size):
                seen = {1}
                cur = cand
                while cur != 1:
                    seen.add(cur)
                    cur = _poly_mul_mod(cur, cand, self.poly, p, n)
                if len(seen) == size - 1:
                    gen = cand
                    break
        assert gen is not None
        self.generator = gen
        log = [None] * size
        antilog = [1]
        cur = 1
        for e in range(size - 1):
            log[cur] = e
            cur = _poly_mul_mod(cur, gen, self.poly, p, n)
            if e + 1 < size - 1:
                antilog.append(cur)
        self._log = log
        self._antilog = antilog
        if size <= _FULL_TABLE_LIMIT:
            mul = []
            for x in range(size):
                row = []
                for y in range(size):
                    if x == 0 or y == 0:
                        row.append(0)
                    else:
                        row.append(antilog[(log[x] + log[y]) % (size - 1)])
                mul.append(row)
            self._mul = mul
        else:
            self._mul = None
        self._inv = [None] * size
        for x in range(1, size):
            self._inv[x] = (
                self._antilog[(size - 1 - self._log[x]) % (size - 1)]
            )

    def _power_map(self, e):
        out = [0] * self.size
        for x in range(1, self.size):
            out[x] = self._antilog[(self._log[x] * e) % (self.size - 1)]
        return out

    def _frob_order(self):
        ident = list(range(self.size))
        cur = list(self.frobenius)
        order = 1
        while cur != ident:
            cur = [self.frobenius[c] for c in cur]
            order += 1
        return order

    # field arithmetic ---------------------------------------------------
    def add(self, x, y):
        return self._add[x][y]

    def neg(self, x):
        return self._neg[x]

    def sub(self, x, y):
        return self._add[x][self._neg[y]]

    def mul(self, x, y):
        if self._mul is not None:
            return self._mul[x][y]
        if x == 0 or y == 0:
            return 0
        return self._antilog[(self._log[x] + self._log[y]) % (self.size - 1)]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("field inverse of 0")
        return self._inv[x]

    def frob_power(self, x, j):
        for _ in range(j % self.ext_degree):
            x = self.frobenius[x]
        return x

    def in_subfield(self, x):
        return self.frobenius[x] == x

    def subfield_generator(self):
        """A multiplicative generator of the subfield F_q."""
        for x in self.subfield:
            if x in (0, 1):
                continue
            seen = {1}
            cur = x
            while cur != 1:
                seen.add(cur)
                cur = self.mul(cur, x)
            if len(seen) == self.q - 1:
                return x
        assert self.q == 2
        return 1

    def galois_group(self):
        """Gal(K/k) as a cyclic permutation group; element g corresponds to
        frobenius^j where j = g[0]."""
        return cyclic_group(self.ext_degree)

    def frob_exponent(self, gamma):
        """The Frobenius power represented by a Galois group element."""
        return gamma[0] if self.ext_degree > 1 else 0

    def __repr__(self):
        return (
            f"GaloisFieldTower(p={self.p}, q={self.q}, "
            f"K=F_{self.q}^{self.ext_degree})"
        )
