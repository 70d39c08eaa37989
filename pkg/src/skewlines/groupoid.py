"""Groupoid generators F_ijk, group closure in PGL2, classification of the
finite groups that arise, and the eigenvalue-ratio finiteness test.

The closure is a plain breadth-first walk over canonical PGL2 representatives
with a hard element budget; every downstream consumer (classifier, orbit
enumerator, CLI) works from its deterministic element list.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .configs import INF_LABEL, InvalidIndex, LineConfig
from .matrices import (
    ProjElem,
    eigenvectors,
    moebius_apply,
    proj_identity,
    proj_normalize,
    proj_order,
)

DEFAULT_BUDGET = 5000


class IndexCollision(Exception):
    """A generator triple must consist of three distinct line labels."""


class IncompleteClosure(Exception):
    """The closure hit its budget; downstream analysis would be unsound."""


def generator(cfg: LineConfig, i: str, j: str, k: str) -> ProjElem:
    """The class of (M_j - M_k)^(-1) (M_i - M_k), the map L_i -> L_j via L_k.

    The infinity label is handled by its closed forms; the zero line's matrix
    is literally the zero matrix, so it needs no special case.
    """
    cfg.require_valid()
    i, j, k = str(i), str(j), str(k)
    if len({i, j, k}) < 3:
        raise IndexCollision(f"triple ({i},{j},{k}) repeats a line")
    for lab in (i, j, k):
        if not cfg.has_label(lab):
            raise InvalidIndex(f"no line labeled {lab!r}")
    if k == INF_LABEL:
        return proj_identity(cfg.field)
    mk = cfg.matrix(k)
    if j == INF_LABEL:
        return proj_normalize(cfg.matrix(i) - mk)
    if i == INF_LABEL:
        # adjugate = det * inverse: same projective class, no division
        return proj_normalize((cfg.matrix(j) - mk).adjugate())
    return proj_normalize((cfg.matrix(j) - mk).adjugate() * (cfg.matrix(i) - mk))


@dataclass
class GeneratorSet:
    """Deduplicated canonical generators with the triples that produced them."""

    elements: list[ProjElem]
    provenance: dict[ProjElem, list[tuple[str, str, str]]]
    mode: str

    @property
    def field(self):
        return self.elements[0].field if self.elements else None

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "elements": [
                {
                    "matrix": g.to_json(),
                    "triples": [list(t) for t in self.provenance[g]],
                }
                for g in self.elements
            ],
        }


def generator_set(cfg: LineConfig, mode: str = "all_triples") -> GeneratorSet:
    """Generators in one of two equivalent shapes.

    all_triples: F_ijk over every ordered triple of distinct lines.
    differences: the classes [M_i - M_j] over pairs of finite lines (these
    are the F_{i,inf,j}, and generate the same group when both special lines
    are present).
    """
    cfg.require_valid()
    if mode not in ("all_triples", "differences"):
        raise ValueError(f"unknown generator mode {mode!r}")
    provenance: dict[ProjElem, list[tuple[str, str, str]]] = {}
    labels = cfg.labels()
    if mode == "all_triples":
        for i in labels:
            for j in labels:
                for k in labels:
                    if len({i, j, k}) < 3:
                        continue
                    g = generator(cfg, i, j, k)
                    provenance.setdefault(g, []).append((i, j, k))
    else:
        finite = [lab for lab in labels if lab != INF_LABEL]
        for i in finite:
            for j in finite:
                if i == j:
                    continue
                g = proj_normalize(cfg.matrix(i) - cfg.matrix(j))
                provenance.setdefault(g, []).append((i, INF_LABEL, j))
    elements = sorted(provenance, key=lambda g: g.key())
    return GeneratorSet(elements=elements, provenance=provenance, mode=mode)


@dataclass
class GroupClosure:
    """Elements of the generated subgroup of PGL2 in BFS insertion order."""

    elements: list[ProjElem]
    budget_hit: bool
    budget: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: ProjElem) -> bool:
        return g.key() in self._keyset()

    def _keyset(self) -> set:
        cached = getattr(self, "_keys", None)
        if cached is None:
            cached = {g.key() for g in self.elements}
            object.__setattr__(self, "_keys", cached)
        return cached

    def is_abelian(self) -> bool:
        els = self.elements
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                if els[i] * els[j] != els[j] * els[i]:
                    return False
        return True

    def order_census(self) -> dict[int, int]:
        census: dict[int, int] = {}
        bound = max(len(self.elements), 1)
        for g in self.elements:
            n = proj_order(g, bound)
            census[n] = census.get(n, 0) + 1
        return census

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "budget_hit": self.budget_hit,
            "elements": [g.to_json() for g in self.elements],
        }


def group_closure(gens: GeneratorSet, budget: int = DEFAULT_BUDGET) -> GroupClosure:
    """Breadth-first closure of the generators under right multiplication."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if not gens.elements:
        raise ValueError("cannot close an empty generator set")
    f = gens.field
    ident = proj_identity(f)
    mults = [g for g in gens.elements if not g.is_identity()]
    elements: list[ProjElem] = [ident]
    seen = {ident.key()}
    budget_hit = False
    idx = 0
    while idx < len(elements) and not budget_hit:
        x = elements[idx]
        for g in mults:
            y = x * g
            k = y.key()
            if k in seen:
                continue
            if len(elements) >= budget:
                budget_hit = True
                break
            seen.add(k)
            elements.append(y)
        idx += 1
    return GroupClosure(elements=elements, budget_hit=budget_hit, budget=budget)


@dataclass
class Classification:
    """Which finite Moebius group the closure is."""

    label: str
    order: int
    census: dict[int, int]
    abelian: bool
    invariant_factors: Optional[list[int]] = None
    witnesses: Optional[dict] = None
    theorem_violation: bool = False

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "order": self.order,
            "order_census": {str(k): v for k, v in sorted(self.census.items())},
            "abelian": self.abelian,
        }
        if self.invariant_factors is not None:
            out["invariant_factors"] = list(self.invariant_factors)
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        if self.theorem_violation:
            out["theorem_violation"] = True
        return out


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _abelian_invariant_factors(order: int, census: dict[int, int]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an abelian group from its census.

    For each prime p, n_k = #{g : g^(p^k) = 1} determines the partition of
    the p-part (the multiset of exponents) by conjugation; aligning the
    partitions largest-first and multiplying across primes gives the factors.
    """
    per_prime: dict[int, list[int]] = {}
    for p in _factorize(order):
        # m_k = log_p n_k;  d_k = m_k - m_{k-1} counts factors with exponent >= k
        exponents: list[int] = []
        prev_m = 0
        k = 1
        while True:
            n_k = sum(
                cnt for o, cnt in census.items()
                if (p**k) % o == 0
            )
            m_k = 0
            while p**m_k < n_k:
                m_k += 1
            if p**m_k != n_k:
                raise ValueError("census is not that of an abelian p-group")
            d_k = m_k - prev_m
            if d_k == 0:
                break
            exponents = [e + 1 for e in exponents[:d_k]] + exponents[d_k:]
            while len(exponents) < d_k:
                exponents.append(1)
            prev_m = m_k
            k += 1
        per_prime[p] = sorted(exponents, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(width):
        d = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)  # ascending: d_1 | d_2 | ...


_POLYHEDRAL = {
    12: ("A4", {1: 1, 2: 3, 3: 8}, (3, 2), lambda r, s: proj_order(s * r, 12) == 3),
    24: ("S4", {1: 1, 2: 9, 3: 8, 4: 6}, (3, 2), lambda r, s: proj_order(r * s, 24) == 4),
    60: ("A5", {1: 1, 2: 15, 3: 20, 5: 24}, (3, 5), lambda r, s: proj_order(r * s, 60) == 2),
}


def _subgroup_size(r: ProjElem, s: ProjElem, cap: int) -> int:
    gens = [r, s]
    ident = proj_identity(r.field)
    seen = {ident.key()}
    frontier = [ident]
    count = 1
    while frontier and count <= cap:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                k = y.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
                    count += 1
        frontier = nxt
    return count


def _try_polyhedral(G: GroupClosure, census: dict[int, int]) -> Optional[Classification]:
    blueprint = _POLYHEDRAL.get(G.order)
    if blueprint is None:
        return None
    label, want_census, (ord_r, ord_s), relation = blueprint
    if census != want_census:
        return None
    bound = G.order
    orders = {g.key(): proj_order(g, bound) for g in G.elements}
    rs_cands = [g for g in G.elements if orders[g.key()] == ord_r]
    ss_cands = [g for g in G.elements if orders[g.key()] == ord_s]
    for r in rs_cands:
        for s in ss_cands:
            if not relation(r, s):
                continue
            if _subgroup_size(r, s, G.order) == G.order:
                wit = {
                    "r": r.to_json(),
                    "s": s.to_json(),
                    "orders": [ord_r, ord_s],
                }
                return Classification(
                    label=label, order=G.order, census=census,
                    abelian=False, witnesses=wit,
                )
    return None


def _try_affine(G: GroupClosure, census: dict[int, int]) -> Optional[Classification]:
    """Non-abelian subgroup fixing a point of P^1: shape (C_p)^m x| C_n."""
    first = next((g for g in G.elements if not g.is_identity()), None)
    if first is None:
        return None
    rep = eigenvectors(first.rep)
    if rep.undecided or not rep.pairs:
        return None
    fixed = None
    for v in rep.eigenlines:
        if all(moebius_apply(g, v) == v for g in G.elements):
            fixed = v
            break
    if fixed is None:
        return None
    f = G.elements[0].field
    p = f.characteristic
    if p == 0:
        return None  # finite affine groups in characteristic 0 are cyclic
    four = f.from_int(4)
    p_part = 0
    for g in G.elements:
        m = g.rep
        tr, det = m.trace(), m.det()
        if tr * tr == four * det:
            p_part += 1
    n = G.order
    if p_part <= 1 or n % p_part:
        return None
    q, m = p_part, 0
    while q % p == 0:
        q //= p
        m += 1
    if q != 1:
        return None
    quotient = n // p_part
    has_quot = any(proj_order(g, n) == quotient for g in G.elements)
    if not has_quot:
        return None
    return Classification(
        label=f"affine({p_part},{quotient})", order=n, census=census,
        abelian=False, witnesses={"fixed_point": fixed.to_json()},
    )


def _try_dihedral(G: GroupClosure, census: dict[int, int]) -> Optional[Classification]:
    n = G.order
    if n < 6 or n % 2:
        return None
    half = n // 2
    bound = n
    rotation = next(
        (g for g in G.elements if proj_order(g, bound) == half), None
    )
    if rotation is None:
        return None
    cyc = set()
    x = proj_identity(rotation.field)
    for _ in range(half):
        cyc.add(x.key())
        x = x * rotation
    outside = [g for g in G.elements if g.key() not in cyc]
    if len(outside) != half:
        return None
    if all(proj_order(g, bound) == 2 for g in outside):
        return Classification(
            label=f"dihedral({half})", order=n, census=census,
            abelian=False, theorem_violation=True,
        )
    return None


def classify(G: GroupClosure) -> Classification:
    """Name the group: decision chain over order, census, and witnesses."""
    if G.budget_hit:
        raise IncompleteClosure(
            f"closure stopped at budget {G.budget}; classification needs a "
            "complete element list"
        )
    n = G.order
    census = G.order_census()
    if n == 1:
        return Classification(label="trivial", order=1, census=census, abelian=True)
    if G.is_abelian():
        if census.get(n):
            return Classification(
                label=f"cyclic({n})", order=n, census=census,
                abelian=True, invariant_factors=[n],
            )
        factors = _abelian_invariant_factors(n, census)
        primes = _factorize(n)
        if len(primes) == 1:
            (p, e), = primes.items()
            if all(d == p for d in factors):
                return Classification(
                    label=f"elementary_abelian({p},{e})", order=n,
                    census=census, abelian=True, invariant_factors=factors,
                )
        label = "abelian(" + ",".join(str(d) for d in factors) + ")"
        return Classification(
            label=label, order=n, census=census,
            abelian=True, invariant_factors=factors,
        )
    hit = _try_affine(G, census)
    if hit is not None:
        return hit
    hit = _try_polyhedral(G, census)
    if hit is not None:
        return hit
    hit = _try_dihedral(G, census)
    if hit is not None:
        return hit
    return Classification(label="unknown", order=n, census=census, abelian=False)


@dataclass
class RatioReport:
    """Eigenvalue-ratio orders of the generators.

    Any generator whose ratio provably fails to be a root of unity certifies
    an infinite group.  The scan is complete within the field: a quadratic
    extension can only hold roots of unity up to a provable cap, so a miss
    below the cap is a proof, not a timeout.  Unipotent generators report
    ratio order 1 with semisimple=False (their own order is p or infinite,
    which the ratio cannot see).
    """

    entries: list[dict] = dc_field(default_factory=list)
    cap: int = 0

    @property
    def infinite_witness(self) -> bool:
        return any(e["status"] == "not_root_of_unity" for e in self.entries)

    @property
    def all_roots_of_unity(self) -> bool:
        return all(e["status"] == "root_of_unity" for e in self.entries)

    def to_json(self) -> dict:
        return {
            "entries": self.entries,
            "cap": self.cap,
            "infinite_witness": self.infinite_witness,
        }


def ratio_order(g: ProjElem, bound: int) -> Optional[int]:
    """Least n <= bound with (lam1/lam2)^n = 1, via the trace recursion.

    With s_k = rho^k + rho^(-k): s_0 = 2, s_1 = tr^2/det - 2, and
    s_{k+1} = s_1 s_k - s_{k-1}; rho^n = 1 exactly when s_n = 2.  Everything
    stays inside the ground field even when the eigenvalues do not.
    """
    m = g.rep
    f = m.field
    tr, det = m.trace(), m.det()
    two = f.from_int(2)
    tau = tr * tr * det.inv() - two
    s_prev, s_cur = two, tau
    for n in range(1, bound + 1):
        if s_cur == two:
            return n
        s_prev, s_cur = s_cur, tau * s_cur - s_prev
    return None


def eigratio_check(cfg: LineConfig, bound: Optional[int] = None) -> RatioReport:
    """Ratio analysis of every generator of the configuration's group."""
    cfg.require_valid()
    gens = generator_set(cfg, mode="all_triples")
    cap = cfg.field.root_of_unity_bound(quadratic=True)
    effective = cap if bound is None else min(bound, cap)
    report = RatioReport(cap=cap)
    four = cfg.field.from_int(4)
    for g in gens.elements:
        m = g.rep
        tr, det = m.trace(), m.det()
        semisimple = tr * tr != four * det or g.is_identity()
        n = ratio_order(g, effective)
        if n is not None:
            status = "root_of_unity"
        elif effective == cap:
            status = "not_root_of_unity"
        else:
            status = "undetermined"
        report.entries.append({
            "element": g.to_json(),
            "triples": [list(t) for t in gens.provenance[g]],
            "ratio_order": n,
            "status": status,
            "semisimple": semisimple,
        })
    return report
