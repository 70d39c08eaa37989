"""Acceptance gate: one test per shipping criterion, exact values throughout.

Each test prints a `CRITERION n: PASS/FAIL` line with the mismatches, then
asserts them.  Required values that the mathematics genuinely refuses to
produce are still asserted as required — those tests fail loudly with an
analysis instead of being quietly weakened.
"""

import json
import random
import time
from math import lcm

import pytest

from skewlines.cli import main
from skewlines.configs import LineConfig, predict_abelian
from skewlines.families import (
    a4_example,
    a5_example,
    affine,
    c3_scaled,
    cyclic_4line,
    elementary_abelian,
    s4_example,
    standard_construction,
)
from skewlines.fields import cyclotomic_field, prime_field, rational_field
from skewlines.groupoid import (
    classify,
    eigratio_check,
    generator,
    generator_set,
    group_closure,
)
from skewlines.matrices import Mat2, ProjElem, ProjPoint, proj_order
from skewlines.orbits import (
    P3Point,
    generic_seed,
    orbit_full,
    orbit_geometric,
    orbit_on_line,
    p3_from_string,
    point_on_line,
)

Q = rational_field()
F3 = prime_field(3)
F5 = prime_field(5)


def _report(num, title, checks, analysis=None):
    bad = [(what, want, got) for what, want, got in checks if want != got]
    print(f"CRITERION {num}: {'PASS' if not bad else 'FAIL'} - {title}")
    for what, want, got in bad:
        print(f"  {what}: required {want!r}, computed {got!r}")
    if bad and analysis:
        print(f"  analysis: {analysis}")
    detail = "; ".join(f"{what}: required {want!r}, computed {got!r}"
                       for what, want, got in bad)
    if analysis and bad:
        detail += f" || {analysis}"
    assert not bad, f"criterion {num} ({title}): {detail}"


def _closure(cfg, budget=5000):
    return group_closure(generator_set(cfg), budget=budget)


def _affine_f5_variant():
    """Order-20 affine realization with the dilation square inside F_5."""
    return LineConfig(F5, [
        Mat2.identity(F5),
        Mat2.from_rows(F5, [["-1", "1"], ["0", "-1"]]),
        Mat2.diag(F5.parse("2"), F5.parse("3")),
    ])


def _element_pool(f, span=2):
    z = f.gen()
    return [f.from_int(a) + f.from_int(b) * z
            for a in range(-span, span + 1) for b in range(-span, span + 1)]


def _det_tr_one_config(f, rng, pool):
    """Random 4-line configuration {0, inf, I, M} with det M = tr M = 1."""
    one = f.one()
    while True:
        a, b = rng.choice(pool), rng.choice(pool)
        if b.is_zero():
            continue
        c = (a * (one - a) - one) / b
        m = Mat2(a, b, c, one - a)
        return LineConfig(f, [Mat2.identity(f), m])


def _f3_matrix_pool():
    ident = Mat2.identity(F3)
    pool = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    m = Mat2.from_rows(F3, [[str(a), str(b)], [str(c), str(d)]])
                    if m.det().is_zero() or (m - ident).det().is_zero():
                        continue
                    pool.append(m)
    return pool


def _random_4line_corpus(seed, f3_count=30, cyclo_count=20):
    """50 random valid 4-line configurations with |G| <= 24.

    Over F_3 the whole ambient group PGL2(F_3) has order 24, so any valid
    matrix qualifies; the cyclotomic samples have det = tr = 1, which pins
    the group order to 3.
    """
    rng = random.Random(seed)
    f3_pool = _f3_matrix_pool()
    configs = [LineConfig(F3, [Mat2.identity(F3), rng.choice(f3_pool)])
               for _ in range(f3_count)]
    f = cyclotomic_field(3)
    pool = _element_pool(f)
    configs += [_det_tr_one_config(f, rng, pool) for _ in range(cyclo_count)]
    return configs


def _golden_corpus():
    fams = [
        standard_construction(3),
        standard_construction(4),
        c3_scaled(2),
        cyclic_4line(3, 3),
        elementary_abelian(2),
        elementary_abelian(3),
        affine(3),
        a4_example(),
        s4_example(),
        a5_example(),
    ]
    return [fam.config for fam in fams] + [_affine_f5_variant()]


def _orbit_point_sets(rep):
    return {lab: {p.key() for p in pts} for lab, pts in rep.points.items()}


# ---------------------------------------------------------------------------


def test_criterion_01_icosahedral_group():
    started = time.monotonic()
    cfg = a5_example().config
    f = cfg.field
    G = _closure(cfg)
    cls = classify(G)
    r = ProjElem(cfg.matrix("2"))
    s = ProjElem(cfg.matrix("3"))
    special_size, special_stab = orbit_on_line(cfg, G, ProjPoint(f.zero(), f.one()))
    seed = generic_seed(cfg, G)
    gen_rep = orbit_full(cfg, point_on_line(cfg, "inf", seed), closure=G)
    elapsed = time.monotonic() - started
    _report(1, "icosahedral example", [
        ("closure order", 60, G.order),
        ("classification", "A5", cls.label),
        ("order of r = [M2]", 3, proj_order(r, 100)),
        ("order of s = [M3]", 5, proj_order(s, 100)),
        ("order of rs", 2, proj_order(r * s, 100)),
        ("orbit of [0:0:0:1] on its carrier line", 30, special_size),
        ("stabilizer of [0:0:0:1]", 2, special_stab),
        ("generic orbit across the five lines", 300, gen_rep.total_size),
        ("generic stabilizer", 1, gen_rep.stabilizer_order),
        ("runtime below 10 s", True, elapsed < 10.0),
    ])


def test_criterion_02_octahedral_group():
    cfg = s4_example().config  # over Q(i)
    f = cfg.field
    m2, m3 = cfg.matrix("2"), cfg.matrix("3")
    comm_det = (m2 * m3 - m3 * m2).det()
    G = _closure(cfg)
    cls = classify(G)
    r = generator(cfg, "2", "0", "1")
    s = r * generator(cfg, "3", "0", "1")
    special = orbit_full(cfg, p3_from_string(f, "[0:0:0:1]"), closure=G)
    gen_rep = orbit_full(cfg, point_on_line(cfg, "inf", generic_seed(cfg, G)),
                         closure=G)

    # the second listed seed involves sqrt(3) as well as i; the smallest
    # cyclotomic field containing both is the 12th (i = z^3, sqrt3 = z + z^11)
    f12 = cyclotomic_field(12)
    big = s4_example(f12).config
    G12 = _closure(big)
    i = f12.parse("z^3")
    sqrt3 = f12.parse("z + z^11")
    w = (f12.one() - i) * (f12.one() + sqrt3) / f12.from_int(2)
    mid = orbit_full(big, P3Point(f12.zero(), f12.zero(), -f12.one(), w),
                     closure=G12)
    print("criterion 2 field recorded for the middle seed: "
          "12th cyclotomic field (conductor 12, i = z^3, sqrt(3) = z + z^11)")
    _report(2, "octahedral example", [
        ("det of the additive commutator", f.from_int(2), comm_det),
        ("closure order", 24, G.order),
        ("classification", "S4", cls.label),
        ("order of r", 3, proj_order(r, 100)),
        ("order of s", 2, proj_order(s, 100)),
        ("order of rs", 4, proj_order(r * s, 100)),
        ("generic orbit", 120, gen_rep.total_size),
        ("middle-seed orbit", 40, mid.total_size),
        ("orbit of [0:0:0:1]", 30, special.total_size),
        ("recorded field conductor", 12, f12.conductor),
        ("i^2 in the recorded field", f12.from_int(-1), i * i),
        ("sqrt(3)^2 in the recorded field", f12.from_int(3), sqrt3 * sqrt3),
    ])


def test_criterion_03_tetrahedral_group():
    cfg = a4_example().config  # a = 1 over the 12th cyclotomic field
    f = cfg.field
    G = _closure(cfg)
    cls = classify(G)
    A, B = cfg.matrix("2"), cfg.matrix("3")
    r = ProjElem(A)
    s = ProjElem(A * B)
    special = orbit_full(cfg, p3_from_string(f, "[0:0:0:1]"), closure=G)
    mid = orbit_full(cfg, p3_from_string(f, "[0:0:-1:z^3]"), closure=G)
    gen_rep = orbit_full(cfg, point_on_line(cfg, "inf", generic_seed(cfg, G)),
                         closure=G)

    # the four special points on the infinity line, written with the line
    # parameter w/z: infinity, 1/(eps*a), 0, -eps/a (here a = 1, eps = z^2)
    eps = f.parse("z^2")
    zero, one = f.zero(), f.one()
    harmonic = {
        P3Point(zero, zero, zero, one),        # w/z = infinity
        P3Point(zero, zero, one, eps.inv()),   # w/z = 1/(eps*a)
        P3Point(zero, zero, one, zero),        # w/z = 0
        P3Point(zero, zero, one, -eps),        # w/z = -eps/a
    }
    _report(3, "tetrahedral example", [
        ("closure order", 12, G.order),
        ("classification", "A4", cls.label),
        ("order of s", 2, proj_order(s, 100)),
        ("order of r", 3, proj_order(r, 100)),
        ("order of sr", 3, proj_order(s * r, 100)),
        ("generic orbit", 60, gen_rep.total_size),
        ("orbit of [0:0:-1:i*a]", 30, mid.total_size),
        ("orbit of [0:0:0:1]", 20, special.total_size),
        ("infinity-line points of the small orbit", harmonic,
         set(special.points["inf"])),
    ])


def test_criterion_04_translation_planes():
    checks = []
    for p in (3, 5):
        fam = elementary_abelian(p)
        G = _closure(fam.config)
        cls = classify(G)
        checks.append((f"closure order for p={p}", p * p, G.order))
        checks.append((f"classification for p={p}",
                       f"elementary_abelian({p},2)", cls.label))
    _report(4, "translation planes of order p^2", checks)


def test_criterion_05_affine_example():
    fam = affine(5)  # dilation sqrt(2): 2 is the least primitive root mod 5
    cfg = fam.config
    f = cfg.field
    G = _closure(cfg)
    cls = classify(G)
    t_inf = orbit_on_line(cfg, G, ProjPoint(f.one(), f.zero()))
    t_zero = orbit_on_line(cfg, G, ProjPoint(f.zero(), f.one()))
    t_one = orbit_on_line(cfg, G, ProjPoint(f.one(), f.one()))

    # the prime-field realization of the same shape gets the order and the
    # label right; print it alongside the failing requirement for comparison
    small = _affine_f5_variant()
    Gs = _closure(small)
    small_zero = orbit_on_line(small, Gs, ProjPoint(F5.zero(), F5.one()))
    small_one = orbit_on_line(small, Gs, ProjPoint(F5.one(), F5.one()))
    print(f"criterion 5 comparison: dilation diag(2,3) over F_5 gives order "
          f"{Gs.order}, label {classify(Gs).label}, t=0 orbit {small_zero[0]}, "
          f"t=1 orbit {small_one[0]}")
    _report(5, "affine example with dilation sqrt(2) in F_25", [
        ("closure order p(p-1)", 20, G.order),
        ("classification", "affine(5,4)", cls.label),
        ("orbit of t=infinity", 1, t_inf[0]),
        ("orbit of [0:0:0:1] on its line", 5, t_zero[0]),
        ("generic per-line orbit", 20, t_one[0]),
    ], analysis=(
        "sqrt(2) generates the multiplicative group of F_25, so the dilation "
        "subgroup has order 2(p-1) = 8 and conjugates the translations "
        "through all of F_25: |G| = 2 p^2 (p-1) = 200 with label "
        "affine(25,8). An order p(p-1) = 20 group needs the dilation square "
        "to generate F_p^* while the translation steps stay inside F_p — "
        "impossible when the dilation square itself lies outside F_p. A "
        "per-line orbit of size |G| = 20 is also impossible over a finite "
        "field: the line holds only p^2+1 = 26 points and every point has a "
        "nontrivial stabilizer, so the largest orbits have size 25 here "
        "(size 5 in the order-20 prime-field realization printed above)."
    ))


def test_criterion_06_standard_construction():
    checks = []
    for n in range(2, 9):
        fam = standard_construction(n)
        G = _closure(fam.config)
        checks.append((f"closure order for n={n}", lcm(2, n), G.order))
    _report(6, "standard construction over the nth cyclotomic field", checks,
            analysis=(
                "for n = 2 the second diagonal matrix is diag(-1,-1) = -I, a "
                "scalar: every projection between the four lines is then the "
                "identity Moebius map, so the closure is trivial of order 1, "
                "not lcm(2,2) = 2. The construction only separates scales "
                "from n = 3 on."
            ))


def test_criterion_07_scaled_triangles():
    fam = c3_scaled(2)  # scale factor s = -1, second triangle at t = -1/2
    cfg = fam.config
    f = cfg.field
    G = _closure(cfg)
    scale = cfg.matrix("4")
    _report(7, "two triangles of lines at scale -1/2", [
        ("closure order lcm(3, ord(s)) with ord(s)=2", 6, G.order),
        ("classification", "cyclic(6)", classify(G).label),
        ("second triangle sits at t = -1/2",
         Mat2.diag(f.parse("-1/2"), f.parse("-1/2")).key(), scale.key()),
    ])


def test_criterion_08_order_three_criterion():
    f = cyclotomic_field(3)
    one = f.one()
    pool = _element_pool(f)
    rng = random.Random(88)

    matching_orders = []
    seen = set()
    while len(matching_orders) < 20:
        cfg = _det_tr_one_config(f, rng, pool)
        key = cfg.matrix("2").key()
        if key in seen:
            continue
        seen.add(key)
        matching_orders.append(_closure(cfg, budget=100).order)

    violating_orders = []
    seen.clear()
    ident = Mat2.identity(f)
    while len(violating_orders) < 20:
        m = Mat2(rng.choice(pool), rng.choice(pool),
                 rng.choice(pool), rng.choice(pool))
        if m.det().is_zero() or (m - ident).det().is_zero():
            continue
        if m.det() == one and m.trace() == one:
            continue
        if m.key() in seen:
            continue
        seen.add(m.key())
        cfg = LineConfig(f, [ident, m])
        violating_orders.append(_closure(cfg, budget=120).order)

    print(f"criterion 8 sampled orders: det=tr=1 -> {sorted(set(matching_orders))}, "
          f"violating -> {sorted(set(violating_orders))}")
    _report(8, "det = tr = 1 forces order 3 on four lines", [
        ("all 20 det=tr=1 samples close to order 3", [3] * 20, matching_orders),
        ("no violating sample closes to order 3", True,
         all(o != 3 for o in violating_orders)),
    ])


def test_criterion_09a_oracle_equivalence():
    started = time.monotonic()
    mismatches = []
    total = 0

    golden_seeds = [
        (a4_example().config, "[0:0:0:1]"),
        (s4_example().config, "[0:0:0:1]"),
        (a5_example().config, "[0:0:0:1]"),
        (_affine_f5_variant(), "[0:0:0:1]"),
        (elementary_abelian(3).config, "[0:0:0:1]"),
    ]
    for cfg, text in golden_seeds:
        G = _closure(cfg)
        seed = p3_from_string(cfg.field, text)
        fast = orbit_full(cfg, seed, closure=G)
        slow = orbit_geometric(cfg, seed, closure=G)
        total += 1
        if _orbit_point_sets(fast) != _orbit_point_sets(slow):
            mismatches.append(f"golden config over {cfg.field!r}")

    for cfg in _random_4line_corpus(seed=99):
        G = _closure(cfg, budget=100)
        seed = point_on_line(cfg, "1", generic_seed(cfg, G))
        fast = orbit_full(cfg, seed, closure=G)
        slow = orbit_geometric(cfg, seed, closure=G)
        total += 1
        if _orbit_point_sets(fast) != _orbit_point_sets(slow):
            mismatches.append(f"random config {cfg.to_json()['lines']}")

    elapsed = time.monotonic() - started
    _report("9a", f"transport and plane-intersection orbits agree "
                  f"({total} configurations)", [
        ("mismatching configurations", [], mismatches),
        ("runtime below 60 s", True, elapsed < 60.0),
    ])


def test_criterion_09b_orbit_stabilizer_identity():
    started = time.monotonic()
    failures = []
    count = 0
    for cfg in _golden_corpus():
        f = cfg.field
        G = _closure(cfg)
        seeds = [p3_from_string(f, "[0:0:0:1]"),
                 p3_from_string(f, "[1:0:0:0]"),
                 p3_from_string(f, "[1:1:1:1]")]
        if f.characteristic == 0:
            # over a finite field every point of the line can carry a
            # stabilizer, so free seeds only exist in characteristic zero
            seeds.append(point_on_line(cfg, "inf", generic_seed(cfg, G)))
        for seed in seeds:
            rep = orbit_full(cfg, seed, closure=G)
            count += 1
            if rep.per_line_sizes[rep.carrier] * rep.stabilizer_order != G.order:
                failures.append(f"{seed!r} over {f!r}: "
                                f"{rep.per_line_sizes[rep.carrier]} * "
                                f"{rep.stabilizer_order} != {G.order}")
            if rep.total_size != sum(rep.per_line_sizes.values()):
                failures.append(f"{seed!r} over {f!r}: inconsistent totals")
    elapsed = time.monotonic() - started
    _report("9b", f"orbit size times stabilizer equals group order "
                  f"({count} completed orbits)", [
        ("violations", [], failures),
        ("runtime below 60 s", True, elapsed < 60.0),
    ])


def test_criterion_09c_generator_mode_equivalence():
    started = time.monotonic()
    failures = []
    corpus = _golden_corpus()
    for cfg in corpus:
        full = group_closure(generator_set(cfg, mode="all_triples"), budget=5000)
        diff = group_closure(generator_set(cfg, mode="differences"), budget=5000)
        if {g.key() for g in full.elements} != {g.key() for g in diff.elements}:
            failures.append(f"config over {cfg.field!r}")
    elapsed = time.monotonic() - started
    _report("9c", f"all-triples and difference generators close identically "
                  f"({len(corpus)} configurations)", [
        ("mismatching configurations", [], failures),
        ("runtime below 60 s", True, elapsed < 60.0),
    ])


def test_criterion_09d_no_dihedral_anywhere():
    started = time.monotonic()
    offenders = []
    corpus = _golden_corpus() + _random_4line_corpus(seed=7)
    for cfg in corpus:
        G = _closure(cfg, budget=5000)
        cls = classify(G)
        if cls.label.startswith("dihedral") or cls.theorem_violation:
            offenders.append(f"{cls.label} over {cfg.field!r}")
    elapsed = time.monotonic() - started
    _report("9d", f"no configuration closes to a dihedral group "
                  f"({len(corpus)} configurations)", [
        ("dihedral classifications", [], offenders),
        ("runtime below 60 s", True, elapsed < 60.0),
    ])


def test_criterion_09e_abelian_prediction_agrees():
    started = time.monotonic()
    disagreements = []
    corpus = _golden_corpus() + _random_4line_corpus(seed=13)
    for cfg in corpus:
        predicted = predict_abelian(cfg).abelian
        actual = _closure(cfg, budget=5000).is_abelian()
        if predicted != actual:
            disagreements.append(
                f"predicted {predicted}, closed {actual} over {cfg.field!r}")
    elapsed = time.monotonic() - started
    _report("9e", f"commutation of the matrices predicts commutativity of "
                  f"the closure ({len(corpus)} configurations)", [
        ("disagreements", [], disagreements),
        ("runtime below 60 s", True, elapsed < 60.0),
    ])


def test_criterion_10_infinite_group_witness(tmp_path, capsys):
    cfg = LineConfig(Q, [Mat2.identity(Q),
                         Mat2.diag(Q.from_int(4), Q.from_int(2))])
    ratios = eigratio_check(cfg)
    statuses = {entry["status"] for entry in ratios.entries}

    path = tmp_path / "unbounded.json"
    path.write_text(json.dumps(cfg.to_json()))
    code = main(["group", str(path), "--json", "--budget", "5000"])
    payload = json.loads(capsys.readouterr().out)
    _report(10, "non-root-of-unity eigenvalue ratio certifies an infinite "
                "group", [
        ("an eigenvalue ratio is flagged as not a root of unity", True,
         "not_root_of_unity" in statuses),
        ("the report carries an infinite witness", True,
         ratios.infinite_witness),
        ("closure stops at the element budget", True, payload["budget_hit"]),
        ("partial closure order equals the budget", 5000, payload["order"]),
        ("command exits with the budget code", 2, code),
    ])
