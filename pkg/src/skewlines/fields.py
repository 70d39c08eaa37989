"""Exact field arithmetic: Q, prime fields F_p, and simple extensions F[z]/(m(z)).

An element is stored as an integer coefficient vector (low degree first) with a
single shared positive denominator, kept reduced modulo the minimal polynomial
and with content 1.  That makes equality plain tuple comparison, every value
hashable, and the multiply/reduce hot path pure integer work.

Only one extension step is supported: the base of an extension must be the
rationals or a prime field.  Composite needs (several radicals at once) are met
by a single cyclotomic extension, see :func:`cyclotomic_field`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union


class FieldError(Exception):
    """Base class for field construction and arithmetic errors."""


class NonPrimeModulus(FieldError):
    """The modulus of a prime field is not prime."""


class ReducibleMinpoly(FieldError):
    """A minimal polynomial was proven reducible over its base field."""


class MixedFields(FieldError):
    """Two operands belong to different fields."""


class DivisionByZero(FieldError, ZeroDivisionError):
    """Inversion or division by the zero element."""


class UnsupportedField(FieldError):
    """The requested construction or operation is outside supported scope."""


CoeffLike = Union[int, str, Fraction, "FieldElement"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def euler_phi(n: int) -> int:
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


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-first), divisor monic-led."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(out) - 1, -1, -1):
        coeff = num[len(den) - 1 + shift]
        if coeff % lead != 0:
            raise ArithmeticError("inexact polynomial division")
        q = coeff // lead
        out[shift] = q
        if q:
            for i, c in enumerate(den):
                num[i + shift] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder in exact division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n):
        if d != n:
            poly = _poly_div_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _max_order_with_phi_le(bound: int) -> int:
    """Largest n such that phi(n) <= bound (phi(n) >= sqrt(n/2) caps the scan)."""
    best = 1
    for n in range(1, 2 * bound * bound + 3):
        if euler_phi(n) <= bound:
            best = n
    return best


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a supported field.

    kind is one of "rational", "prime", "extension".  For extensions, minpoly
    holds the monic minimal polynomial as exact coefficient strings, low degree
    first (so ("1", "0", "1") means z^2 + 1).
    """

    kind: str
    p: Optional[int] = None
    base: Optional["FieldSpec"] = None
    minpoly: Optional[tuple[str, ...]] = None

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {
            "kind": "extension",
            "base": self.base.to_json(),
            "minpoly": list(self.minpoly),
        }

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise UnsupportedField(f"not a field description: {obj!r}")
        kind = obj["kind"]
        if kind == "rational":
            return FieldSpec("rational")
        if kind == "prime":
            p = obj.get("p")
            if not isinstance(p, int):
                raise UnsupportedField("prime field needs an integer 'p'")
            return FieldSpec("prime", p=p)
        if kind == "extension":
            base = FieldSpec.from_json(obj["base"])
            return extension_spec(base, obj["minpoly"])
        raise UnsupportedField(f"unknown field kind {kind!r}")


RATIONAL_SPEC = FieldSpec("rational")


def prime_spec(p: int) -> FieldSpec:
    return FieldSpec("prime", p=p)


def _canon_coeff(c: CoeffLike, p: Optional[int]) -> str:
    """Canonical string form of a minpoly coefficient (reduced mod p if given)."""
    fr = Fraction(str(c))
    if p:
        den = fr.denominator % p
        if den == 0:
            raise UnsupportedField(
                f"minpoly coefficient {fr} has denominator divisible by {p}"
            )
        return str(fr.numerator * pow(den, p - 2, p) % p)
    return str(fr)


def extension_spec(base: FieldSpec, coeffs: Sequence[CoeffLike]) -> FieldSpec:
    p = base.p if base.kind == "prime" else None
    return FieldSpec(
        "extension",
        base=base,
        minpoly=tuple(_canon_coeff(c, p) for c in coeffs),
    )


class FieldElement:
    """Immutable element of a :class:`Field`.

    Supports +, -, *, /, ** with other elements of the same field and with
    plain ints.  Equality and hashing follow the canonical representation.
    """

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: "Field", nums: tuple[int, ...], den: int):
        self.field = field
        self.nums = nums
        self.den = den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficient vector over the base field as exact rationals."""
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        """True when the element lies in the prime field / rationals."""
        return not any(self.nums[1:])

    def inv(self) -> "FieldElement":
        return self.field._make(*self.field._inv(self.nums, self.den))

    def sort_key(self) -> tuple:
        return (self.nums, self.den)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.spec != self.field.spec:
                raise MixedFields(
                    f"cannot mix elements of {self.field} and {other.field}"
                )
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return f._make(*f._add(self.nums, self.den, o.nums, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return f._make(*f._add(self.nums, self.den, f._neg_nums(o.nums), o.den))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        return f._make(*f._mul(self.nums, self.den, o.nums, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __neg__(self):
        return self.field._make(self.field._neg_nums(self.nums), self.den)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (
            self.field.spec == other.field.spec
            and self.nums == other.nums
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.nums, self.den))

    def __bool__(self):
        return any(self.nums)

    def to_json(self):
        """Canonical JSON form: a string for base fields, a list for extensions."""
        if self.field.degree == 1:
            return str(Fraction(self.nums[0], self.den))
        return [str(Fraction(n, self.den)) for n in self.nums]

    def __repr__(self):
        if self.field.degree == 1:
            return str(Fraction(self.nums[0], self.den))
        parts = []
        for i, n in enumerate(self.nums):
            if n == 0:
                continue
            c = Fraction(n, self.den)
            if i == 0:
                parts.append(str(c))
            else:
                var = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return out


class Field:
    """A supported exact field: Q, F_p, or a one-step extension of either."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        if spec.kind == "rational":
            self.characteristic = 0
            self.degree = 1
            self.minpoly: Optional[tuple[Fraction, ...]] = None
        elif spec.kind == "prime":
            if not isinstance(spec.p, int) or not _is_prime(spec.p):
                raise NonPrimeModulus(f"{spec.p!r} is not prime")
            self.characteristic = spec.p
            self.degree = 1
            self.minpoly = None
        elif spec.kind == "extension":
            if spec.base is None or spec.minpoly is None:
                raise UnsupportedField("extension needs a base and a minpoly")
            if spec.base.kind == "extension":
                raise UnsupportedField(
                    "nested extension towers are not supported; supply a single "
                    "extension of Q or F_p with one primitive element "
                    "(see cyclotomic_field for composite needs)"
                )
            base = Field(spec.base)
            self.characteristic = base.characteristic
            coeffs = tuple(Fraction(c) for c in spec.minpoly)
            if len(coeffs) < 3:
                raise UnsupportedField("extension degree must be at least 2")
            if coeffs[-1] != 1:
                raise UnsupportedField("minimal polynomial must be monic")
            self.degree = len(coeffs) - 1
            self.minpoly = coeffs
        else:
            raise UnsupportedField(f"unknown field kind {spec.kind!r}")

        p = self.characteristic
        self.is_finite = p > 0
        self.size: Optional[int] = p**self.degree if self.is_finite else None
        self.conductor: Optional[int] = None  # n when this is Q(zeta_n)

        if spec.kind == "extension":
            if p:
                self._mod_minpoly = tuple(
                    int(c) % p if c.denominator == 1 else self._frac_mod(c, p)
                    for c in self.minpoly
                )
                self._check_irreducible_mod_p()
            else:
                self._detect_conductor()
                self._check_irreducible_char0()
            self._build_reduction_rows()
        elif spec.kind == "rational":
            self.conductor = 1

    # -- construction-time checks -------------------------------------------

    @staticmethod
    def _frac_mod(c: Fraction, p: int) -> int:
        den = c.denominator % p
        if den == 0:
            raise UnsupportedField("minpoly coefficient denominator divisible by p")
        return (c.numerator % p) * pow(den, p - 2, p) % p

    def _check_irreducible_mod_p(self):
        p = self.characteristic
        m = self._mod_minpoly
        d = self.degree
        # exhaustive search for a monic factor of degree 1..d//2
        for k in range(1, d // 2 + 1):
            if p**k > 10**6:
                raise UnsupportedField("modulus too large for irreducibility check")
            for tail in itertools.product(range(p), repeat=k):
                div = list(tail) + [1]
                if not any(self._polymod_p(list(m), div, p)):
                    raise ReducibleMinpoly(
                        f"minpoly factors mod {p} (found divisor of degree {k})"
                    )

    @staticmethod
    def _polymod_p(num: list[int], den: list[int], p: int) -> list[int]:
        num = [c % p for c in num]
        dd = len(den) - 1
        inv_lead = pow(den[-1], p - 2, p)
        for shift in range(len(num) - 1 - dd, -1, -1):
            c = num[dd + shift]
            if c:
                q = c * inv_lead % p
                for i, dc in enumerate(den):
                    num[i + shift] = (num[i + shift] - q * dc) % p
        return num[:dd]

    def _detect_conductor(self):
        ints = all(c.denominator == 1 for c in self.minpoly)
        if not ints:
            return
        mp = tuple(int(c) for c in self.minpoly)
        for n in range(1, 2 * self.degree**2 + 3):
            if euler_phi(n) == self.degree and cyclotomic_polynomial(n) == mp:
                self.conductor = n
                return

    def _check_irreducible_char0(self):
        # rational roots (minpoly is monic): clear denominators first
        lcm_den = 1
        for c in self.minpoly:
            lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
        ints = [int(c * lcm_den) for c in self.minpoly]
        a0, lead = ints[0], ints[-1]
        if a0 == 0:
            raise ReducibleMinpoly("z divides the minimal polynomial")
        for num in _divisors(abs(a0)):
            for den in _divisors(abs(lead)):
                if math.gcd(num, den) != 1:
                    continue
                for sign in (1, -1):
                    r = Fraction(sign * num, den)
                    if sum(c * r**i for i, c in enumerate(self.minpoly)) == 0:
                        raise ReducibleMinpoly(f"rational root {r} found")
        if self.degree >= 4 and self.conductor is None:
            raise UnsupportedField(
                "degree >= 4 extensions of the rationals must be cyclotomic"
            )

    def _build_reduction_rows(self):
        """Rows expressing z^(degree+t) in the power basis, as ints over one den."""
        d = self.degree
        p = self.characteristic
        if p:
            rows = []
            top = [(-c) % p for c in self._mod_minpoly[:d]]
            cur = top[:]
            rows.append(tuple(cur))
            for _ in range(d - 2):
                shifted = [0] + cur[:-1]
                carry = cur[-1]
                cur = [(shifted[i] + carry * top[i]) % p for i in range(d)]
                rows.append(tuple(cur))
            self._red_rows = tuple(rows)
            self._red_den = 1
        else:
            top = [-c for c in self.minpoly[:d]]
            cur = top[:]
            frac_rows = [cur[:]]
            for _ in range(d - 2):
                shifted = [Fraction(0)] + cur[:-1]
                carry = cur[-1]
                cur = [shifted[i] + carry * top[i] for i in range(d)]
                frac_rows.append(cur[:])
            den = 1
            for row in frac_rows:
                for c in row:
                    den = den * c.denominator // math.gcd(den, c.denominator)
            self._red_rows = tuple(
                tuple(int(c * den) for c in row) for row in frac_rows
            )
            self._red_den = den

    # -- canonical representation -------------------------------------------

    def _make(self, nums, den: int = 1) -> FieldElement:
        return FieldElement(self, tuple(nums), den)

    def _normalize(self, nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
        p = self.characteristic
        if p:
            return tuple(n % p for n in nums), 1
        if den < 0:
            den = -den
            nums = [-n for n in nums]
        g = den
        for n in nums:
            if n:
                g = math.gcd(g, n)
            if g == 1:
                break
        if g > 1:
            den //= g
            nums = [n // g for n in nums]
        if not any(nums):
            return tuple(0 for _ in nums), 1
        return tuple(nums), den

    # -- arithmetic kernels ---------------------------------------------------

    def _neg_nums(self, nums):
        if self.characteristic:
            p = self.characteristic
            return tuple((-n) % p for n in nums)
        return tuple(-n for n in nums)

    def _add(self, n1, d1, n2, d2):
        if self.characteristic:
            p = self.characteristic
            return tuple((a + b) % p for a, b in zip(n1, n2)), 1
        if d1 == d2:
            return self._normalize([a + b for a, b in zip(n1, n2)], d1)
        return self._normalize([a * d2 + b * d1 for a, b in zip(n1, n2)], d1 * d2)

    def _mul(self, n1, d1, n2, d2):
        d = self.degree
        if d == 1:
            nums = [n1[0] * n2[0]]
            if self.characteristic:
                return (nums[0] % self.characteristic,), 1
            return self._normalize(nums, d1 * d2)
        conv = [0] * (2 * d - 1)
        for i, a in enumerate(n1):
            if a:
                for j, b in enumerate(n2):
                    if b:
                        conv[i + j] += a * b
        low = conv[:d]
        R = self._red_den
        if R != 1:
            low = [c * R for c in low]
        for t in range(d - 1):
            c = conv[d + t]
            if c:
                row = self._red_rows[t]
                for i in range(d):
                    if row[i]:
                        low[i] += c * row[i]
        if self.characteristic:
            p = self.characteristic
            return tuple(c % p for c in low), 1
        return self._normalize(low, d1 * d2 * R)

    def _inv(self, nums, den):
        if not any(nums):
            raise DivisionByZero("cannot invert zero")
        p = self.characteristic
        if self.degree == 1:
            if p:
                return (pow(nums[0], p - 2, p),), 1
            return self._normalize([den], nums[0])
        if p:
            inv_poly = self._poly_ext_gcd_p(list(nums))
            return tuple(inv_poly), 1
        a = [Fraction(n, den) for n in nums]
        inv_poly = self._poly_ext_gcd_q(a)
        common = 1
        for c in inv_poly:
            common = common * c.denominator // math.gcd(common, c.denominator)
        return self._normalize([int(c * common) for c in inv_poly], common)

    def _poly_ext_gcd_p(self, a: list[int]) -> list[int]:
        p = self.characteristic
        d = self.degree
        m = list(self._mod_minpoly)
        r0, r1 = m, a + [0] * (len(m) - len(a))
        s0, s1 = [0], [1]

        def deg(poly):
            for i in range(len(poly) - 1, -1, -1):
                if poly[i] % p:
                    return i
            return -1

        while deg(r1) > 0:
            d1 = deg(r1)
            inv_lead = pow(r1[d1], p - 2, p)
            q = [0] * (deg(r0) - d1 + 1)
            r0 = r0[:]
            for shift in range(deg(r0) - d1, -1, -1):
                c = r0[d1 + shift] % p
                if c:
                    qc = c * inv_lead % p
                    q[shift] = qc
                    for i in range(d1 + 1):
                        r0[i + shift] = (r0[i + shift] - qc * r1[i]) % p
            new_s = list(s0) + [0] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        if i + j >= len(new_s):
                            new_s.extend([0] * (i + j - len(new_s) + 1))
                        new_s[i + j] = (new_s[i + j] - qc * sc) % p
            r0, r1 = r1, r0
            s0, s1 = s1, new_s
        c = r1[deg(r1)] % p
        if c == 0:
            raise DivisionByZero("element not invertible (reducible modulus?)")
        inv_c = pow(c, p - 2, p)
        out = [(sc * inv_c) % p for sc in s1]
        out += [0] * (d - len(out))
        return out[:d]

    def _poly_ext_gcd_q(self, a: list[Fraction]) -> list[Fraction]:
        d = self.degree
        m = list(self.minpoly)
        r0 = m
        r1 = a + [Fraction(0)] * (len(m) - len(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(poly):
            for i in range(len(poly) - 1, -1, -1):
                if poly[i]:
                    return i
            return -1

        while deg(r1) > 0:
            d1 = deg(r1)
            lead = r1[d1]
            q = [Fraction(0)] * (deg(r0) - d1 + 1)
            r0 = r0[:]
            for shift in range(deg(r0) - d1, -1, -1):
                c = r0[d1 + shift]
                if c:
                    qc = c / lead
                    q[shift] = qc
                    for i in range(d1 + 1):
                        r0[i + shift] -= qc * r1[i]
            new_s = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        if i + j >= len(new_s):
                            new_s.extend([Fraction(0)] * (i + j - len(new_s) + 1))
                        new_s[i + j] -= qc * sc
            r0, r1 = r1, r0
            s0, s1 = s1, new_s
        g = r1[deg(r1)] if deg(r1) == 0 else None
        if not g:
            raise DivisionByZero("element not invertible (reducible modulus?)")
        out = [sc / g for sc in s1]
        out += [Fraction(0)] * (d - len(out))
        return out[:d]

    # -- element constructors -------------------------------------------------

    def zero(self) -> FieldElement:
        return self._make((0,) * self.degree, 1)

    def one(self) -> FieldElement:
        return self._make((1,) + (0,) * (self.degree - 1), 1)

    def from_int(self, k: int) -> FieldElement:
        if self.characteristic:
            k %= self.characteristic
        return self._make((k,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, fr: Fraction) -> FieldElement:
        if self.characteristic:
            p = self.characteristic
            if fr.denominator % p == 0:
                raise DivisionByZero(f"denominator of {fr} vanishes mod {p}")
            val = fr.numerator * pow(fr.denominator % p, p - 2, p) % p
            return self.from_int(val)
        return self._make(
            (fr.numerator,) + (0,) * (self.degree - 1), fr.denominator
        )

    def gen(self) -> FieldElement:
        """The adjoined root z (errors on degree-1 fields)."""
        if self.degree == 1:
            raise UnsupportedField("base fields have no adjoined generator")
        nums = [0] * self.degree
        nums[1] = 1
        return self._make(nums, 1)

    def from_coeffs(self, coeffs: Sequence[CoeffLike]) -> FieldElement:
        if len(coeffs) > self.degree:
            raise UnsupportedField(
                f"coefficient vector longer than degree {self.degree}"
            )
        fracs = [Fraction(str(c)) if not isinstance(c, Fraction) else c for c in coeffs]
        fracs += [Fraction(0)] * (self.degree - len(fracs))
        if self.characteristic:
            p = self.characteristic
            nums = []
            for fr in fracs:
                if fr.denominator % p == 0:
                    raise DivisionByZero(f"denominator of {fr} vanishes mod {p}")
                nums.append(fr.numerator * pow(fr.denominator % p, p - 2, p) % p)
            return self._make(nums, 1)
        den = 1
        for fr in fracs:
            den = den * fr.denominator // math.gcd(den, fr.denominator)
        return self._make(*self._normalize([int(fr * den) for fr in fracs], den))

    def element_from_json(self, obj) -> FieldElement:
        """Accept a scalar string/int (constant) or a coefficient-vector list."""
        if isinstance(obj, (str, int)):
            return self.from_fraction(Fraction(str(obj)))
        if isinstance(obj, list):
            return self.from_coeffs(obj)
        raise UnsupportedField(f"cannot read element from {obj!r}")

    # -- deterministic enumeration ---------------------------------------------

    def elements(self) -> Iterator[FieldElement]:
        """Every element of a finite field, in lexicographic coefficient order."""
        if not self.is_finite:
            raise UnsupportedField("cannot enumerate an infinite field")
        p = self.characteristic
        for nums in itertools.product(range(p), repeat=self.degree):
            yield self._make(nums, 1)

    @staticmethod
    def _rational_sequence() -> Iterator[Fraction]:
        yield Fraction(0)
        h = 1
        while True:
            for den in range(1, h + 1):
                if den == h:
                    nums = [n for n in range(1, h + 1) if math.gcd(n, den) == 1]
                else:
                    nums = [h] if math.gcd(h, den) == 1 else []
                for n in nums:
                    yield Fraction(n, den)
                    yield Fraction(-n, den)
            h += 1

    def element_sequence(self) -> Iterator[FieldElement]:
        """A deterministic enumeration of the field (exhaustive when finite)."""
        if self.is_finite:
            yield from self.elements()
            return
        if self.degree == 1:
            for fr in self._rational_sequence():
                yield self.from_fraction(fr)
            return
        base: list[Fraction] = []
        seq = self._rational_sequence()
        shell = 0
        while True:
            while len(base) <= shell:
                base.append(next(seq))
            for rev in itertools.product(range(shell + 1), repeat=self.degree):
                idx = tuple(reversed(rev))
                if max(idx) != shell:
                    continue
                yield self.from_coeffs([base[i] for i in idx])
            shell += 1

    # -- roots and orders -------------------------------------------------------

    def mult_order(self, a: FieldElement, bound: int) -> Optional[int]:
        """Least n <= bound with a^n = 1, else None."""
        if a.is_zero():
            raise DivisionByZero("zero has no multiplicative order")
        x = a
        one = self.one()
        for n in range(1, bound + 1):
            if x == one:
                return n
            x = x * a
        return None

    def root_of_unity_bound(self, quadratic: bool = False) -> int:
        """Provable cap on orders of roots of unity in this field.

        With quadratic=True the cap covers any quadratic extension as well,
        which bounds eigenvalue-ratio orders of 2x2 matrices over the field.
        """
        if self.is_finite:
            q = self.size
            return q * q - 1 if quadratic else q - 1
        d = self.degree * (2 if quadratic else 1)
        return _max_order_with_phi_le(d)

    def sqrt(self, a: FieldElement) -> Optional[FieldElement]:
        """A canonical square root of a in this field, or None if none exists.

        Raises UnsupportedField when existence cannot be decided (non-rational
        elements of characteristic-0 extensions of degree >= 4 that are not
        settled by the cyclotomic machinery).  The returned root is canonical:
        lexicographically least coefficient vector over finite fields, first
        nonzero coefficient positive in characteristic 0.
        """
        root, decided = self._sqrt_impl(a)
        if not decided:
            raise UnsupportedField(
                "square-root existence undecidable for this element"
            )
        return root

    def _sqrt_impl(self, a: FieldElement) -> tuple[Optional[FieldElement], bool]:
        if a.is_zero():
            return self.zero(), True
        if self.is_finite:
            return self._sqrt_finite(a), True
        if a.is_rational():
            return self._sqrt_char0_rational(Fraction(a.nums[0], a.den))
        if self.degree == 2:
            return self._sqrt_quadratic_general(a), True
        return None, False

    def _sqrt_finite(self, a: FieldElement) -> Optional[FieldElement]:
        p = self.characteristic
        if self.degree == 1:
            if p == 2:
                return a
            n = a.nums[0]
            if pow(n, (p - 1) // 2, p) != 1:
                return None
            r = _tonelli_shanks(n, p)
            return self.from_int(min(r, p - r))
        if self.size > 10**4:
            raise UnsupportedField("finite field too large for exhaustive sqrt")
        for x in self.elements():
            if x * x == a:
                return x
        return None

    @staticmethod
    def _rational_sqrt(fr: Fraction) -> Optional[Fraction]:
        if fr < 0:
            return None
        rn = math.isqrt(fr.numerator)
        rd = math.isqrt(fr.denominator)
        if rn * rn == fr.numerator and rd * rd == fr.denominator:
            return Fraction(rn, rd)
        return None

    def _canonical_sign(self, x: FieldElement) -> FieldElement:
        for n in x.nums:
            if n > 0:
                return x
            if n < 0:
                return -x
        return x

    def _sqrt_char0_rational(self, fr: Fraction) -> tuple[Optional[FieldElement], bool]:
        direct = self._rational_sqrt(fr)
        if direct is not None:
            return self.from_fraction(direct), True
        if self.degree == 1:
            return None, True
        if self.degree == 2 and self.conductor is None:
            b, c = self.minpoly[1], self.minpoly[0]
            # x = alpha + beta*z with beta != 0: beta^2 = 4*fr/(b^2-4c)
            beta2 = 4 * fr / (b * b - 4 * c)
            beta = self._rational_sqrt(beta2)
            if beta is None or beta == 0:
                return None, True
            alpha = b * beta / 2
            cand = self.from_coeffs([alpha, beta])
            if cand * cand == self.from_fraction(fr):
                return self._canonical_sign(cand), True
            return None, True
        if self.conductor is None:
            # odd-degree extensions contain no new square roots of rationals
            if self.degree % 2 == 1:
                return None, True
            return None, False
        # cyclotomic: split fr = s * t^2 with s a squarefree integer, build
        # sqrt(s) from Gauss sums (complete: sqrt(s) lies in Q(zeta_n) exactly
        # when the construction below succeeds)
        s, t = _squarefree_decompose(fr)
        if s is None:
            return None, False
        root_s = self._cyclotomic_sqrt_squarefree(s)
        if root_s is None:
            return None, True
        out = self.from_fraction(t) * root_s
        assert out * out == self.from_fraction(fr)
        return self._canonical_sign(out), True

    def _zeta_power(self, k: int) -> FieldElement:
        k %= self.conductor
        return self.gen() ** k if k else self.one()

    def _gauss_sum(self, p: int) -> Optional[FieldElement]:
        """Quadratic Gauss sum for an odd prime p dividing the conductor.

        Squares to (-1)^((p-1)/2) * p, giving an explicit square root of
        +-p inside the cyclotomic field.
        """
        n = self.conductor
        if n % p != 0:
            return None
        zp = self._zeta_power(n // p)
        acc = self.zero()
        power = self.one()
        for a in range(1, p):
            power = power * zp
            if pow(a, (p - 1) // 2, p) == 1:
                acc = acc + power
            else:
                acc = acc - power
        return acc

    def _cyclotomic_sqrt_squarefree(self, s: int) -> Optional[FieldElement]:
        n = self.conductor
        x = self.one()
        m = abs(s)
        if m % 2 == 0:
            if n % 8 != 0:
                return None
            zeta8 = self._zeta_power(n // 8)
            x = x * (zeta8 + zeta8.inv())
            m //= 2
        f = 3
        while f * f <= m:
            while m % f == 0:
                g = self._gauss_sum(f)
                if g is None:
                    return None
                x = x * g
                m //= f
            f += 2
        if m > 1:
            g = self._gauss_sum(m)
            if g is None:
                return None
            x = x * g
        target = self.from_int(s)
        if x * x == target:
            return x
        # off by a factor of -1: fix with a fourth root of unity if present
        if n % 4 == 0:
            x = x * self._zeta_power(n // 4)
            if x * x == target:
                return x
        return None

    def _sqrt_quadratic_general(self, u: FieldElement) -> Optional[FieldElement]:
        """Complete sqrt in a quadratic extension of Q via a rational quadratic."""
        b, c = self.minpoly[1], self.minpoly[0]
        u0, u1 = Fraction(u.nums[0], u.den), Fraction(u.nums[1], u.den)
        # x = alpha + beta z, x^2 = (alpha^2 - c beta^2) + beta(2 alpha - b beta) z
        # u1 != 0 here (rational case handled separately), so beta != 0 and
        # alpha = (u1 + b beta^2) / (2 beta); substituting gives a quadratic in
        # Y = beta^2:  (b^2-4c) Y^2 + (2 b u1 - 4 u0) Y + u1^2 = 0.
        A = b * b - 4 * c
        B = 2 * b * u1 - 4 * u0
        C = u1 * u1
        disc = B * B - 4 * A * C
        rd = self._rational_sqrt(disc)
        if rd is None:
            return None
        for sign in (1, -1):
            Y = (-B + sign * rd) / (2 * A)
            beta = self._rational_sqrt(Y)
            if beta is None or beta == 0:
                continue
            for bsign in (1, -1):
                bb = bsign * beta
                alpha = (u1 + b * bb * bb) / (2 * bb)
                cand = self.from_coeffs([alpha, bb])
                if cand * cand == u:
                    return self._canonical_sign(cand)
        return None

    # -- parsing ------------------------------------------------------------------

    def parse(self, text: str) -> FieldElement:
        """Parse a small exact expression: rationals, z, ^, *, +, -, parentheses."""
        tokens = _tokenize(text)
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else None

        def take():
            nonlocal pos
            if pos >= len(tokens):
                raise ValueError(f"unexpected end of input in {text!r}")
            tok = tokens[pos]
            pos += 1
            return tok

        def parse_expr():
            node = parse_term()
            while peek() in ("+", "-"):
                op = take()
                rhs = parse_term()
                node = node + rhs if op == "+" else node - rhs
            return node

        def parse_term():
            node = parse_unary()
            while peek() == "*":
                take()
                node = node * parse_unary()
            return node

        def parse_unary():
            if peek() == "-":
                take()
                return -parse_unary()
            if peek() == "+":
                take()
                return parse_unary()
            return parse_atom()

        def parse_atom():
            tok = take()
            if tok == "(":
                node = parse_expr()
                if take() != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
            elif tok == "z":
                node = self.gen()
            elif isinstance(tok, Fraction):
                node = self.from_fraction(tok)
            else:
                raise ValueError(f"unexpected token {tok!r} in {text!r}")
            if peek() == "^":
                take()
                exp = take()
                if not isinstance(exp, Fraction) or exp.denominator != 1:
                    raise ValueError(f"exponent must be an integer in {text!r}")
                node = node ** int(exp)
            return node

        out = parse_expr()
        if pos != len(tokens):
            raise ValueError(f"trailing input in {text!r}")
        return out

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        if self.spec.kind == "rational":
            return "Q"
        if self.spec.kind == "prime":
            return f"F_{self.characteristic}"
        base = "Q" if self.characteristic == 0 else f"F_{self.characteristic}"
        if self.conductor:
            return f"Q(zeta_{self.conductor})"
        return f"{base}[z]/(deg {self.degree})"


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch == "z":
            tokens.append("z")
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ValueError(f"bad fraction in {text!r}")
                tokens.append(Fraction(int(text[i:j]), int(text[j + 1 : k])))
                i = k
            else:
                tokens.append(Fraction(int(text[i:j])))
                i = j
        else:
            raise ValueError(f"unexpected character {ch!r} in {text!r}")
    return tokens


def _tonelli_shanks(n: int, p: int) -> int:
    """A square root of n modulo an odd prime p (n must be a residue)."""
    if n % p == 0:
        return 0
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        for i in range(1, m):
            t2 = t2 * t2 % p
            if t2 == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _squarefree_decompose(fr: Fraction) -> tuple[Optional[int], Optional[Fraction]]:
    """fr = s * t^2 with s squarefree (sign carried by s); None if too big to factor."""
    n = abs(fr.numerator) * fr.denominator
    if n >= 10**12:
        return None, None
    s, sq = 1, 1
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            if e % 2:
                s *= f
            sq *= f ** (e // 2)
        f += 1 if f == 2 else 2
    s *= n
    if fr < 0:
        s = -s
    t = Fraction(sq, fr.denominator)
    # fr = s * t^2 requires t^2 = fr/s; verify
    assert s * t * t == fr
    return s, t


def field_make(spec: FieldSpec) -> Field:
    """Build a field from its description, validating it eagerly."""
    return Field(spec)


def rational_field() -> Field:
    return Field(RATIONAL_SPEC)


def prime_field(p: int) -> Field:
    return Field(prime_spec(p))


def extension_field(base: Field | FieldSpec, coeffs: Sequence[CoeffLike]) -> Field:
    base_spec = base.spec if isinstance(base, Field) else base
    return Field(extension_spec(base_spec, coeffs))


def cyclotomic_field(n: int) -> Field:
    """Q adjoined a primitive n-th root of unity (plain Q for n <= 2)."""
    if n < 1:
        raise UnsupportedField("n must be positive")
    if euler_phi(n) == 1:
        return rational_field()
    f = Field(extension_spec(RATIONAL_SPEC, cyclotomic_polynomial(n)))
    return f
