"""2x2 matrices over an exact field, canonical PGL2 representatives, points of
P^1, and eigenvalue/eigenvector extraction that never leaves the field.

Projective classes are deduplicated by a canonical representative whose first
nonzero entry (row-major) is 1; that single convention makes closure
enumeration a plain hash-set walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .fields import Field, FieldElement, MixedFields, UnsupportedField


class SingularMatrix(Exception):
    """A nonsingular matrix was required."""


class ZeroMatrix(Exception):
    """The zero matrix has no projective class."""


class ZeroVector(Exception):
    """The zero vector names no point of P^1 or P^3."""


def _same_field(*elts: FieldElement) -> Field:
    f = elts[0].field
    for e in elts[1:]:
        if e.field.spec != f.spec:
            raise MixedFields("matrix entries lie in different fields")
    return f


class Mat2:
    """An immutable 2x2 matrix (a b / c d) over one field."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a: FieldElement, b: FieldElement,
                 c: FieldElement, d: FieldElement):
        self.field = _same_field(a, b, c, d)
        self.a, self.b, self.c, self.d = a, b, c, d

    # -- constructors

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> "Mat2":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 entry grid")
        ents = []
        for row in rows:
            for e in row:
                if isinstance(e, FieldElement):
                    if e.field.spec != field.spec:
                        raise MixedFields("entry from a different field")
                    ents.append(e)
                else:
                    ents.append(field.element_from_json(e))
        return Mat2(*ents)

    @staticmethod
    def identity(field: Field) -> "Mat2":
        one, zero = field.one(), field.zero()
        return Mat2(one, zero, zero, one)

    @staticmethod
    def zero(field: Field) -> "Mat2":
        z = field.zero()
        return Mat2(z, z, z, z)

    @staticmethod
    def diag(x: FieldElement, y: FieldElement) -> "Mat2":
        zero = x.field.zero()
        return Mat2(x, zero, zero, y)

    # -- scalar-valued maps

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def trace(self) -> FieldElement:
        return self.a + self.d

    def entries(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_scalar(self) -> bool:
        return (not self.b) and (not self.c) and self.a == self.d

    def is_identity(self) -> bool:
        one = self.field.one()
        return self.a == one and self.d == one and not self.b and not self.c

    # -- algebra

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b,
                    self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, s) -> "Mat2":
        if isinstance(s, int):
            s = self.field.from_int(s)
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inv(self) -> "Mat2":
        det = self.det()
        if not det:
            raise SingularMatrix("matrix has determinant 0")
        return self.adjugate().scale(det.inv())

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            return self.inv() ** (-n)
        out = Mat2.identity(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def apply(self, v: tuple[FieldElement, FieldElement]):
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    # -- identity & encoding

    def key(self) -> tuple:
        return (self.a.sort_key(), self.b.sort_key(),
                self.c.sort_key(), self.d.sort_key())

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.field.spec == other.field.spec and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> list:
        return [[self.a.to_json(), self.b.to_json()],
                [self.c.to_json(), self.d.to_json()]]

    @staticmethod
    def from_json(field: Field, obj) -> "Mat2":
        return Mat2.from_rows(field, obj)

    def __repr__(self):
        return f"[[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]]"


def mat_det(m: Mat2) -> FieldElement:
    return m.det()


def mat_trace(m: Mat2) -> FieldElement:
    return m.trace()


def mat_inv(m: Mat2) -> Mat2:
    return m.inv()


def commutator(x: Mat2, y: Mat2) -> Mat2:
    """x*y - y*x."""
    return x * y - y * x


class ProjPoint:
    """A point of P^1 as a canonical pair [x : y], first nonzero entry 1."""

    __slots__ = ("x", "y", "field")

    def __init__(self, x: FieldElement, y: FieldElement):
        field = _same_field(x, y)
        if not x and not y:
            raise ZeroVector("[0 : 0] is not a point")
        if x:
            inv = x.inv()
            x, y = field.one(), y * inv
        else:
            y = field.one()
        self.x, self.y, self.field = x, y, field

    @staticmethod
    def from_pair(field: Field, x, y) -> "ProjPoint":
        return ProjPoint(field.element_from_json(x) if not isinstance(x, FieldElement) else x,
                         field.element_from_json(y) if not isinstance(y, FieldElement) else y)

    def key(self) -> tuple:
        return (self.x.sort_key(), self.y.sort_key())

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.field.spec == other.field.spec and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> list:
        return [self.x.to_json(), self.y.to_json()]

    def __repr__(self):
        return f"[{self.x!r} : {self.y!r}]"


class ProjElem:
    """An element of PGL2: a nonsingular Mat2 scaled so its first nonzero
    entry (row-major) is 1.  Hash/equality use that canonical form."""

    __slots__ = ("rep",)

    def __init__(self, rep: Mat2):
        # trusted constructor: rep must already be canonical (use proj_normalize)
        self.rep = rep

    @property
    def field(self) -> Field:
        return self.rep.field

    def is_identity(self) -> bool:
        return self.rep.is_identity()

    def __mul__(self, other: "ProjElem") -> "ProjElem":
        if not isinstance(other, ProjElem):
            return NotImplemented
        if self.field.spec != other.field.spec:
            raise MixedFields("cannot compose classes over different fields")
        return proj_normalize(self.rep * other.rep)

    def inv(self) -> "ProjElem":
        # the adjugate is det * inverse — the same projective class, no division
        return proj_normalize(self.rep.adjugate())

    def __pow__(self, n: int) -> "ProjElem":
        if n < 0:
            return self.inv() ** (-n)
        out = proj_identity(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def key(self) -> tuple:
        return self.rep.key()

    def __eq__(self, other):
        if not isinstance(other, ProjElem):
            return NotImplemented
        return self.field.spec == other.field.spec and self.rep.key() == other.rep.key()

    def __hash__(self):
        return hash(self.rep.key())

    def to_json(self) -> list:
        return self.rep.to_json()

    def __repr__(self):
        return f"<{self.rep!r}>"


def proj_normalize(m: Mat2) -> ProjElem:
    """Canonical PGL2 representative: divide by the first nonzero entry."""
    if m.is_zero():
        raise ZeroMatrix("the zero matrix has no projective class")
    if not m.det():
        raise SingularMatrix("singular matrix does not lie in PGL2")
    for lead in m.entries():
        if lead:
            break
    if lead == m.field.one():
        return ProjElem(m)
    s = lead.inv()
    return ProjElem(m.scale(s))


def proj_identity(field: Field) -> ProjElem:
    return ProjElem(Mat2.identity(field))


def proj_mul(g: ProjElem, h: ProjElem) -> ProjElem:
    return g * h


def proj_inv(g: ProjElem) -> ProjElem:
    return g.inv()


def proj_commute(g: ProjElem, h: ProjElem) -> bool:
    return g * h == h * g


def proj_order(g: ProjElem, bound: int = 120) -> Optional[int]:
    """Least n <= bound with g^n = identity in PGL2, or None."""
    x = g
    for n in range(1, bound + 1):
        if x.is_identity():
            return n
        x = x * g
    return None


def moebius_apply(g: ProjElem, p: ProjPoint) -> ProjPoint:
    if g.field.spec != p.field.spec:
        raise MixedFields("element and point lie over different fields")
    x, y = g.rep.apply((p.x, p.y))
    return ProjPoint(x, y)


@dataclass
class EigenReport:
    """Eigenvalues/eigenlines of a 2x2 matrix found inside its own field.

    pairs lists (eigenvalue, eigenline) sorted by eigenvalue; all_lines marks
    scalar matrices (every line is an eigenline — pairs then holds the two
    coordinate lines as representatives).  extension_required means the
    characteristic polynomial provably has no root in the field; undecided
    means existence could not be settled with the available square-root
    machinery (degree >= 4 discriminants outside the rationals).
    """

    pairs: list[tuple[FieldElement, ProjPoint]] = dc_field(default_factory=list)
    all_lines: bool = False
    extension_required: bool = False
    undecided: bool = False

    @property
    def eigenlines(self) -> list[ProjPoint]:
        return [v for _, v in self.pairs]

    def eigenvalue_set(self) -> set:
        return {lam for lam, _ in self.pairs}


def _kernel_line(m: Mat2) -> ProjPoint:
    """A nonzero kernel vector of a singular, nonzero 2x2 matrix."""
    if m.a or m.b:
        return ProjPoint(m.b, -m.a)
    return ProjPoint(m.d, -m.c)


def eigenvectors(m: Mat2) -> EigenReport:
    f = m.field
    if m.is_scalar():
        lam = m.a
        e1 = ProjPoint(f.one(), f.zero())
        e2 = ProjPoint(f.zero(), f.one())
        return EigenReport(pairs=[(lam, e1), (lam, e2)], all_lines=True)

    def line_for(lam: FieldElement) -> ProjPoint:
        shifted = m - Mat2.identity(f).scale(lam)
        return _kernel_line(shifted)

    pairs: list[tuple[FieldElement, ProjPoint]] = []

    if not m.c or not m.b:
        # triangular: eigenvalues sit on the diagonal
        lams = [m.a] if m.a == m.d else [m.a, m.d]
        for lam in lams:
            pairs.append((lam, line_for(lam)))
        pairs.sort(key=lambda t: t[0].sort_key())
        return EigenReport(pairs=pairs)

    tr, det = m.trace(), m.det()
    if f.characteristic == 2:
        if f.size is not None and f.size <= 10**4:
            for lam in f.elements():
                if (m - Mat2.identity(f).scale(lam)).det() == f.zero():
                    pairs.append((lam, line_for(lam)))
            if pairs:
                pairs.sort(key=lambda t: t[0].sort_key())
                return EigenReport(pairs=pairs)
            return EigenReport(extension_required=True)
        return EigenReport(undecided=True)

    disc = tr * tr - 4 * det
    try:
        w = f.sqrt(disc)
    except UnsupportedField:
        if f.is_finite and f.size <= 10**4:
            for lam in f.elements():
                if (m - Mat2.identity(f).scale(lam)).det() == f.zero():
                    pairs.append((lam, line_for(lam)))
            if pairs:
                pairs.sort(key=lambda t: t[0].sort_key())
                return EigenReport(pairs=pairs)
            return EigenReport(extension_required=True)
        return EigenReport(undecided=True)
    if w is None:
        return EigenReport(extension_required=True)
    half = f.from_int(2).inv()
    if not w:
        lam = tr * half
        pairs.append((lam, line_for(lam)))
    else:
        for lam in ((tr + w) * half, (tr - w) * half):
            pairs.append((lam, line_for(lam)))
    pairs.sort(key=lambda t: t[0].sort_key())
    return EigenReport(pairs=pairs)


def shared_eigenlines(reports: Iterable[EigenReport]) -> Optional[list[ProjPoint]]:
    """Intersect eigenline sets across reports.

    Returns None when any report is inconclusive (undecided) — the caller
    cannot distinguish "no common line" from "line not visible in this field".
    A report with all_lines=True imposes no constraint.
    """
    current: Optional[list[ProjPoint]] = None
    for rep in reports:
        if rep.all_lines:
            continue
        if rep.undecided:
            return None
        lines = rep.eigenlines
        if current is None:
            current = lines
        else:
            current = [v for v in current if v in lines]
        if not current:
            return []
    if current is None:
        return []  # only scalars: handled by caller via all_lines
    return current
