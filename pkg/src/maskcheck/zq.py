"""Ring arithmetic over Z_q with a runtime modulus.

Every element carries its modulus; operations between elements of
different moduli are hard errors rather than silent coercions, because a
wrong-modulus bug would silently invalidate every security verdict built
on top of this module.  q is any positive integer (not required prime);
only the root-of-unity machinery insists on primality.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Modulus",
    "ZqElement",
    "ModulusMismatchError",
    "add",
    "sub",
    "mul",
    "is_probable_prime",
    "primitive_root_of_unity",
]


class ModulusMismatchError(ValueError):
    """Raised when two elements with different moduli meet in one operation."""


@dataclass(frozen=True, order=True)
class Modulus:
    """A positive runtime modulus q."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError(f"modulus must be an int, got {type(self.q).__name__}")
        if self.q < 1:
            raise ValueError(f"modulus must be >= 1, got {self.q}")

    def element(self, value: int) -> "ZqElement":
        """Lift an integer into Z_q (reduced to canonical form)."""
        return ZqElement(value, self)

    def __str__(self) -> str:
        return f"Z_{self.q}"


def as_modulus(q: "Modulus | int") -> Modulus:
    return q if isinstance(q, Modulus) else Modulus(q)


@dataclass(frozen=True)
class ZqElement:
    """A canonical residue in [0, q), tagged with its modulus.

    Python integers are unbounded, so products never overflow regardless
    of q; canonical form is restored after every operation.
    """

    value: int
    modulus: Modulus

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise TypeError(f"value must be an int, got {type(self.value).__name__}")
        object.__setattr__(self, "value", self.value % self.modulus.q)

    @property
    def q(self) -> int:
        return self.modulus.q

    def _coerce(self, other: "ZqElement | int") -> "ZqElement":
        if isinstance(other, ZqElement):
            if other.modulus != self.modulus:
                raise ModulusMismatchError(
                    f"cannot combine {self.modulus} and {other.modulus} elements"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return ZqElement(other, self.modulus)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: "ZqElement | int") -> "ZqElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZqElement(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: "ZqElement | int") -> "ZqElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZqElement(self.value - o.value, self.modulus)

    def __rsub__(self, other: int) -> "ZqElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZqElement(o.value - self.value, self.modulus)

    def __mul__(self, other: "ZqElement | int") -> "ZqElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZqElement(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "ZqElement":
        return ZqElement(-self.value, self.modulus)

    def __pow__(self, exponent: int) -> "ZqElement":
        if exponent < 0:
            raise ValueError("negative exponents are not supported")
        return ZqElement(pow(self.value, exponent, self.q), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"ZqElement({self.value} mod {self.q})"


def _same_modulus(*elems: ZqElement) -> Modulus:
    mod = elems[0].modulus
    for e in elems[1:]:
        if e.modulus != mod:
            raise ModulusMismatchError(
                f"cannot combine {mod} and {e.modulus} elements"
            )
    return mod


def add(x: ZqElement, y: ZqElement) -> ZqElement:
    """(x + y) mod q."""
    _same_modulus(x, y)
    return x + y


def sub(x: ZqElement, y: ZqElement) -> ZqElement:
    """(x - y) mod q."""
    _same_modulus(x, y)
    return x - y


def mul(x: ZqElement, y: ZqElement) -> ZqElement:
    """(x * y) mod q."""
    _same_modulus(x, y)
    return x * y


# Deterministic Miller-Rabin witness set: exact for all n < 3.3 * 10^24,
# which covers every modulus this package is meant for.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primitive_root_of_unity(q: "Modulus | int", n: int) -> ZqElement:
    """An element of exact multiplicative order n in Z_q.

    Requires q prime, n a power of two, and n | q - 1.  Any element w
    with w^n = 1 and w^(n/2) != 1 qualifies; the search is deterministic
    (smallest generator base wins) so results are reproducible.
    """
    mod = as_modulus(q)
    p = mod.q
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"order must be a positive integer, got {n!r}")
    if n & (n - 1) != 0:
        raise ValueError(f"order must be a power of two, got {n}")
    if not is_probable_prime(p):
        raise ValueError(f"modulus {p} is not prime; no guaranteed roots of unity")
    if (p - 1) % n != 0:
        raise ValueError(f"order {n} does not divide q - 1 = {p - 1}")
    if n == 1:
        return mod.element(1)
    exponent = (p - 1) // n
    for g in range(2, p):
        w = pow(g, exponent, p)
        if pow(w, n // 2, p) != 1:
            return mod.element(w)
    raise ValueError(f"no element of order {n} found in Z_{p}")
