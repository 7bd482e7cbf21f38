"""Detection of zero and root-of-unity eigenvalues in integer polynomials.

The ultimate behaviour of the integer difference sequences studied in this
package is read off the factorisation of their minimal polynomials into a
power of X, cyclotomic factors, and a cofactor with no root that is zero or
a root of unity.  ``cyclotomic_profile`` computes that splitting by trial
division: every cyclotomic polynomial of order d with totient(d) <= degree
is tried, which is exhaustive because a primitive d-th root of unity has
degree totient(d) over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .poly import IntPolynomial


def totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, by the recursive quotient formula
    Phi_d = (X^d - 1) / prod_{e | d, e < d} Phi_e."""
    num = IntPolynomial([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            num = num.divmod_exact(cyclotomic_poly(e))
    return num


@dataclass
class CyclotomicProfile:
    """Splitting of an integer polynomial into X^power_of_x, cyclotomic
    factors Phi_d**mult, and a remainder with no zero or root-of-unity
    root."""

    power_of_x: int
    unit_root_orders: list[tuple[int, int]]  # (order d, multiplicity)
    remainder: IntPolynomial
    leading: int = 1  # integer content+sign pulled out so reconstruction is exact

    def reconstruct(self) -> IntPolynomial:
        p = IntPolynomial([self.leading]).shift(self.power_of_x)
        for d, mult in self.unit_root_orders:
            p = p * cyclotomic_poly(d) ** mult
        return p * self.remainder

    @property
    def orders(self) -> dict[int, int]:
        return dict(self.unit_root_orders)

    def all_unit_roots_simple(self) -> bool:
        return all(m == 1 for _, m in self.unit_root_orders)

    def max_unit_root_multiplicity(self) -> int:
        return max((m for _, m in self.unit_root_orders), default=0)

    def is_pure_power_of_x(self) -> bool:
        return not self.unit_root_orders and self.remainder.degree == 0


def cyclotomic_profile(p: IntPolynomial) -> CyclotomicProfile:
    """Factor out the X-power and every cyclotomic factor of ``p``."""
    if p.is_zero():
        raise ValueError("cyclotomic profile of the zero polynomial")
    k = 0
    coeffs = list(p.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        k += 1
    rem = IntPolynomial(coeffs)
    lead = rem.content() if rem.lc > 0 else -rem.content()
    rem = rem.primitive()
    orders = []
    # totient(d) >= sqrt(d/2), so every d with totient(d) <= n satisfies
    # d <= 2 n^2; the totient is not monotone, so scan the whole range.
    n0 = rem.degree
    for d in range(1, 2 * n0 * n0 + 2):
        if rem.degree == 0:
            break
        if totient(d) > rem.degree:
            continue
        phi = cyclotomic_poly(d)
        mult = 0
        while phi.degree <= rem.degree and phi.divides(rem):
            rem = rem.divmod_exact(phi)
            mult += 1
        if mult:
            orders.append((d, mult))
    return CyclotomicProfile(k, orders, rem, lead)
