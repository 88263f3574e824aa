"""Integer and multiplicative-function plumbing shared by the whole package.

Everything here is deterministic and pure: prime sieves, Mobius/SPF tables,
the Kronecker symbol, and a block-streamed evaluator for multiplicative
functions n -> prod_{p^k || n} g(p^k) over a range 1..N.  The streaming
evaluator keeps memory at O(sqrt(N) + block) as long as the caller supplies
a vectorized lookup for values at large primes.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

BLOCK = 1 << 16


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (empty for n < 2)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def smallest_prime_factor(n: int) -> np.ndarray:
    """spf[k] = smallest prime factor of k (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
            spf[p] = p
    rest = spf[2:] == 0
    spf[2:][rest] = np.arange(2, n + 1)[rest]
    return spf


def mobius_up_to(n: int) -> np.ndarray:
    """mu[k] for k <= n, as int8 (mu[0] = 0)."""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    squarefree = np.ones(n + 1, dtype=bool)
    for p in primes_up_to(n):
        mu[p::p] *= -1
        pp = int(p) * int(p)
        if pp <= n:
            squarefree[pp::pp] = False
    mu[~squarefree] = 0
    return mu


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, k), ...] by trial division; fine for n <= 10^12."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            k = 0
            while n % q == 0:
                n //= q
                k += 1
            if k:
                out.append((q, k))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(k == 1 for _, k in factorize(n))


def mobius(n: int) -> int:
    f = factorize(n)
    if any(k > 1 for _, k in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def radical_gcd_part(n: int, r: int) -> int:
    """Largest divisor of n supported on the primes of r, i.e. gcd(n, r^inf)."""
    if r == 0:
        return n
    g = math.gcd(n, r)
    out = 1
    while g > 1:
        out *= g
        n //= g
        g = math.gcd(n, g)
    return out


# ----------------------------------------------------------------------
# Kronecker symbol and fundamental discriminants


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # peel off factors of 2 using (a/2) = 0, 1, -1 for a even, a = +-1 mod 8, a = +-3 mod 8
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        if a % 2 == 0:
            return 0
        if e % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol (a/n) for odd n > 0 by reciprocity
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    """True for d = 1 mod 4 squarefree, or d = 4m with m = 2, 3 mod 4 squarefree."""
    if d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def fundamental_discriminants(bound: int) -> list[int]:
    """All fundamental discriminants with |d| <= bound, sorted by |d| then sign."""
    out = [d for a in range(1, bound + 1) for d in (a, -a) if is_fundamental_discriminant(d)]
    return sorted(out, key=lambda d: (abs(d), -d))


# ----------------------------------------------------------------------
# Streaming evaluation of multiplicative functions

PrimePowerTable = Callable[[int, int], np.ndarray]
AtPrimeVec = Callable[[np.ndarray], np.ndarray]


def _block_values(
    lo: int,
    hi: int,
    small_primes: np.ndarray,
    pp_table: PrimePowerTable,
    at_prime: AtPrimeVec,
    dtype=np.float64,
) -> np.ndarray:
    """Values of a multiplicative function on [lo, hi).

    pp_table(p, kmax) must return the values [g(p^0), ..., g(p^kmax)];
    at_prime(p_array) the values g(p) at primes larger than sqrt(hi).
    """
    m = hi - lo
    rem = np.arange(lo, hi, dtype=np.int64)
    val = np.ones(m, dtype=dtype)
    if lo == 0:
        rem[0] = 1
        val[0] = 0
    for p in small_primes:
        p = int(p)
        if p * p >= hi:
            break
        start = (-lo) % p
        idx = np.arange(start, m, p)
        if idx.size == 0:
            continue
        cur = rem[idx]
        k = np.ones(idx.size, dtype=np.int64)
        cur //= p
        divisible = cur % p == 0
        while divisible.any():
            cur[divisible] //= p
            k[divisible] += 1
            divisible = cur % p == 0
        val[idx] *= pp_table(p, int(k.max()))[k]
        rem[idx] = cur
    big = rem > 1
    if big.any():
        val[big] *= at_prime(rem[big])
    return val


class MultiplicativeStream:
    """Block-streamed values of a multiplicative function over 1..N.

    The function is specified by its prime-power values; large-prime values
    come from a vectorized callback so no dense table over 1..N is required.
    """

    def __init__(self, nmax: int, pp_table: PrimePowerTable, at_prime: AtPrimeVec, dtype=np.float64):
        self.nmax = nmax
        self.pp_table = pp_table
        self.at_prime = at_prime
        self.dtype = dtype
        self._small = primes_up_to(math.isqrt(nmax) + 1)

    def blocks(self, nmax: int | None = None, block: int = BLOCK) -> Iterator[tuple[int, np.ndarray]]:
        """Yield (lo, values on [lo, lo+len)) covering 0..nmax inclusive."""
        top = self.nmax if nmax is None else nmax
        if top > self.nmax:
            raise ValueError(f"stream built for n <= {self.nmax}, requested {top}")
        for lo in range(0, top + 1, block):
            hi = min(lo + block, top + 1)
            yield lo, _block_values(lo, hi, self._small, self.pp_table, self.at_prime, self.dtype)

    def table(self, nmax: int | None = None) -> np.ndarray:
        """Dense array t with t[n] = g(n), t[0] = 0."""
        top = self.nmax if nmax is None else nmax
        out = np.empty(top + 1, dtype=self.dtype)
        for lo, vals in self.blocks(top):
            out[lo : lo + vals.size] = vals
        return out


def prime_value_lookup(primes: np.ndarray, values: np.ndarray) -> AtPrimeVec:
    """Vectorized p -> value lookup backed by a sorted prime array."""

    def at_prime(parr: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(primes, parr)
        if idx.max(initial=-1) >= primes.size or not np.array_equal(primes[idx], parr):
            missing = parr[(idx >= primes.size) | (primes[np.minimum(idx, primes.size - 1)] != parr)]
            raise KeyError(f"no stored value at prime {int(missing[0])}")
        return values[idx]

    return at_prime


# ----------------------------------------------------------------------
# Dense Dirichlet-series helpers (1-indexed coefficient arrays, entry 0 unused)


def dirichlet_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """c[n] = sum_{ij = n} a[i] b[j], truncated to len(a)."""
    n = len(a) - 1
    c = np.zeros_like(a)
    for i in range(1, n + 1):
        if a[i] != 0:
            j = n // i
            c[i : i * j + 1 : i] += a[i] * b[1 : j + 1]
    return c


def dirichlet_inverse(a: np.ndarray) -> np.ndarray:
    """Inverse under Dirichlet convolution; requires a[1] != 0."""
    n = len(a) - 1
    if a[1] == 0:
        raise ValueError("series has no Dirichlet inverse (leading coefficient 0)")
    inv = np.zeros_like(a)
    inv[1] = 1.0 / a[1]
    for m in range(2, n + 1):
        s = 0.0
        for d in divisors(m):
            if d < m:
                s += inv[d] * a[m // d]
        inv[m] = -s / a[1]
    return inv


def euler_product_coefficients(nmax: int, local_coeffs: Callable[[int, int], np.ndarray], dtype=np.float64) -> np.ndarray:
    """Expand prod_p (sum_k c_p(k) p^{-ks}) into Dirichlet coefficients up to nmax.

    local_coeffs(p, kmax) returns [c_p(0), ..., c_p(kmax)] with c_p(0) = 1.
    """
    out = np.zeros(nmax + 1, dtype=dtype)
    out[1] = 1
    for p in primes_up_to(nmax):
        p = int(p)
        kmax = 1
        while p ** (kmax + 1) <= nmax:
            kmax += 1
        c = local_coeffs(p, kmax)
        prev = out.copy()
        pk = 1
        for k in range(1, kmax + 1):
            pk *= p
            if c[k] != 0:
                top = nmax // pk
                out[pk : pk * top + 1 : pk] += c[k] * prev[1 : top + 1]
    return out
