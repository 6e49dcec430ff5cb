#!/usr/bin/env python3
"""Build the catalog data files shipped under src/thinville/data.

Two sources feed the catalog.  The five-group case representatives are
direct constructions: the derived subgroup is laid out as a rank-one
module over F_p[X, Y] subject to X^2 = h Y^2 with h a quadratic
non-residue, and the generator powers are chosen so the collector
accepts the presentation.  The 3-group entries come from a census:
every pc presentation in two narrow template shapes is swept for
consistency, survivors are reduced up to isomorphism by a
generating-pair search, and each class is settled by the exhaustive
Beauville search.

Every number written into an `# expect:` header is computed here by
the engine before it is frozen; nothing is copied in by hand.

Run from the repository root:

    python tools/build_catalog.py --suite all --out src/thinville/data
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from itertools import product

from thinville.pcgroup import PcPresentation, format_element
from thinville.structure import (
    agemo,
    center,
    derived_subgroup,
    frattini_quotient,
    gamma,
    is_maximal_class,
    is_metabelian,
    is_thin,
    lower_central_series,
    nilpotency_class,
)
from thinville.beauville import (
    classify_theorem_a,
    exhaustive_beauville,
    guided_beauville,
)


# ----------------------------------------------------------------------
# five-group constructions
#
# Generator layout for the class-5 and class-6 families, with c = [g2, g1]:
#   g1 x   g2 y   g3 c
#   g4 c.Y      g5 c.X
#   g6 c.Y^2    g7 c.YX
#   g8 c.Y^3    g9 c.Y^2X     (g10 c.Y^4 in the class-6 family)
# The module action sends v.X^2 to h v.Y^2, so weight-k commutators close
# after the two basis words per weight shown above.

def build_deep_pair_rep():
    """Class 5, order 5^9, deepest nontrivial term of order 25.

    Both generator powers land in the deepest term, one on each basis
    word, so the power map reaches the whole bottom layer.
    """
    return PcPresentation(5, 9,
        powers={1: [(8, 1)], 2: [(9, 1)]},
        commutators={
            (2, 1): [(3, 1)],
            (3, 1): [(5, 1)], (3, 2): [(4, 1)],
            (4, 1): [(7, 1)], (4, 2): [(6, 1)],
            (5, 1): [(6, 2)], (5, 2): [(7, 1)],
            (6, 1): [(9, 1)], (6, 2): [(8, 1)],
            (7, 1): [(8, 2)], (7, 2): [(9, 1)],
        })


def build_top_class_rep():
    """Class 6, order 5^10: the class-5 layout extended one weight down.

    The second power word needs the inverse of h as its exponent: the
    collected fifth power of a conjugate of y produces exactly one deep
    correction term, and the power relator must reproduce it.
    """
    return PcPresentation(5, 10,
        powers={1: [(8, 1)], 2: [(9, 3)]},
        commutators={
            (2, 1): [(3, 1)],
            (3, 1): [(5, 1)], (3, 2): [(4, 1)],
            (4, 1): [(7, 1)], (4, 2): [(6, 1)],
            (5, 1): [(6, 2)], (5, 2): [(7, 1)],
            (6, 1): [(9, 1)], (6, 2): [(8, 1)],
            (7, 1): [(8, 2)], (7, 2): [(9, 1)],
            (8, 2): [(10, 1)],
            (9, 1): [(10, 2)],
        })


def build_wide_power_rep():
    """Class 5, order 5^8, power subgroup equal to the second-deepest
    term (order 125).

    Reaching weight 4 with fifth powers forces the commutator subgroup
    to have exponent 25; the weight-2 and weight-3 power relators keep
    the collector's overlap checks satisfied and were found by a small
    engine-verified scan.
    """
    return PcPresentation(5, 8,
        powers={1: [(6, 1)], 2: [(7, 2)], 3: [(8, 4)]},
        commutators={
            (2, 1): [(3, 1)],
            (3, 1): [(5, 1)], (3, 2): [(4, 1)],
            (4, 1): [(7, 1)], (4, 2): [(6, 1)],
            (5, 1): [(6, 2)], (5, 2): [(7, 1)],
            (6, 2): [(8, 1)],
            (7, 1): [(8, 2)],
        })


def build_small_power_rep(h, lam, delta, deltap):
    """Class 5, order 5^8, power subgroup of order 5 (the deepest term).

    The parameters steer how many maximal subgroups have exponent 5:
    lam couples the two weight-4 words into the single deepest word,
    delta and deltap place the generator powers on it.
    """
    pows = {}
    if delta % 5:
        pows[1] = [(8, delta % 5)]
    if deltap % 5:
        pows[2] = [(8, deltap % 5)]
    comm = {(2, 1): [(3, 1)], (3, 1): [(5, 1)], (3, 2): [(4, 1)],
            (4, 1): [(7, 1)], (4, 2): [(6, 1)],
            (5, 1): [(6, h % 5)], (5, 2): [(7, 1)],
            (6, 2): [(8, 1)], (7, 1): [(8, h % 5)]}
    if lam % 5:
        comm[(6, 1)] = [(8, lam % 5)]
        comm[(7, 2)] = [(8, lam % 5)]
    return PcPresentation(5, 8, powers=pows, commutators=comm)


FIVE_GROUP_ENTRIES = [
    ("thin5-c5-A1", build_deep_pair_rep,
     "class-5 representative with a deepest term of order 25"),
    ("thin5-c6-A2", build_top_class_rep,
     "class-6 representative"),
    ("thin5-c5-A3", build_wide_power_rep,
     "class-5 representative with power subgroup of order 125"),
    ("thin5-c5-A4pos", lambda: build_small_power_rep(3, 2, 1, 0),
     "class-5 representative, power subgroup of order 5, "
     "three maximal subgroups of exponent 5"),
    ("thin5-c5-A4neg", lambda: build_small_power_rep(2, 0, 0, 1),
     "class-5 representative, power subgroup of order 5, "
     "one maximal subgroup of exponent 5"),
]


# ----------------------------------------------------------------------
# 3-group templates
#
# Rank 5 (order 3^5, class 3): basis x, y, c = [y,x], d4 = [c,x],
# d5 = [c,y]; the weight-3 words are central.  Rank 6 (order 3^6,
# class 4) adds one weight-4 word e with a symmetric coupling matrix
#   [d4,x] = e^m1   [d4,y] = [d5,x] = e^m2   [d5,y] = e^m4
# (the mixed entries agree because commutation into an abelian derived
# subgroup is a symmetric bilinear pairing).

TEMPLATE35_COMM = {(2, 1): [(3, 1)], (3, 1): [(4, 1)], (3, 2): [(5, 1)]}


def _word(indices, exps):
    return [(g, e) for g, e in zip(indices, exps) if e]


def sweep_rank5():
    """All consistent rank-5 template presentations.

    Power words range over everything the pc format allows for this
    shape, so the sweep is a complete census of the template: x^3 and
    y^3 over the whole Frattini tail, c^3 over the weight-3 span, d4^3
    over d5.
    """
    survivors = []
    for wx in product(range(3), repeat=3):
        for wy in product(range(3), repeat=3):
            for wc in product(range(3), repeat=2):
                for wd4 in range(3):
                    pows = {}
                    if any(wx):
                        pows[1] = _word((3, 4, 5), wx)
                    if any(wy):
                        pows[2] = _word((3, 4, 5), wy)
                    if any(wc):
                        pows[3] = _word((4, 5), wc)
                    if wd4:
                        pows[4] = [(5, wd4)]
                    g = PcPresentation(3, 5, powers=pows,
                                       commutators=TEMPLATE35_COMM)
                    if g.is_consistent():
                        survivors.append(((wx, wy, wc, wd4), g))
    return survivors


def sweep_rank6():
    """All consistent rank-6 template presentations over the pruned
    power grid.

    Pruning: generator cubes range over the weight-3 span and the cubes
    of derived words over the deepest term.  For the thin targets this
    loses nothing: their cube subgroup lies in the third series term
    and the cube of the derived subgroup in the fourth.  The zero
    coupling matrix is skipped because it forces a third independent
    generator direction.
    """
    matrices = [(m1, m2, m4)
                for m1 in range(3) for m2 in range(3) for m4 in range(3)
                if (m1, m2, m4) != (0, 0, 0)]
    survivors = []
    for m1, m2, m4 in matrices:
        comm = {(2, 1): [(3, 1)], (3, 1): [(4, 1)], (3, 2): [(5, 1)]}
        if m1:
            comm[(4, 1)] = [(6, m1)]
        if m2:
            comm[(4, 2)] = [(6, m2)]
            comm[(5, 1)] = [(6, m2)]
        if m4:
            comm[(5, 2)] = [(6, m4)]
        for wx in product(range(3), repeat=3):
            for wy in product(range(3), repeat=3):
                for wc in range(3):
                    for wd4 in range(3):
                        for wd5 in range(3):
                            pows = {}
                            if any(wx):
                                pows[1] = _word((4, 5, 6), wx)
                            if any(wy):
                                pows[2] = _word((4, 5, 6), wy)
                            if wc:
                                pows[3] = [(6, wc)]
                            if wd4:
                                pows[4] = [(6, wd4)]
                            if wd5:
                                pows[5] = [(6, wd5)]
                            g = PcPresentation(3, 6, powers=pows,
                                               commutators=comm)
                            if g.is_consistent():
                                survivors.append(
                                    (((m1, m2, m4), wx, wy, wc, wd4, wd5), g))
    return survivors


# ----------------------------------------------------------------------
# isomorphism reduction
#
# Template groups are compared through generating pairs: a pair (a, b)
# of H determines words c, d4, d5 (and e) by the defining commutators,
# and reading the relator data off that basis yields a parameter tuple.
# H contains a pair reproducing G's tuple exactly when G and H are
# isomorphic.  The first pair member only needs to range over conjugacy
# representatives, since conjugating both members leaves the tuple
# unchanged.

def order_histogram(pres):
    hist = Counter(pres.element_order(v) for v in pres.elements())
    return tuple(sorted(hist.items()))


def invariant_key(pres):
    series = lower_central_series(pres)
    return (pres.n,
            nilpotency_class(pres),
            tuple(series.widths),
            bool(is_thin(pres).thin),
            center(pres).order,
            agemo(pres).order,
            order_histogram(pres))


def _outside_pool(pres):
    quotient, project, lift = frattini_quotient(pres)
    zero = (0,) * quotient.n
    pool = [v for v in pres.elements() if project(v) != zero]
    return pool, project


def _conjugacy_reps(pres, pool):
    seen = set()
    reps = []
    for v in pool:
        if v in seen:
            continue
        reps.append(v)
        queue = [v]
        seen.add(v)
        while queue:
            u = queue.pop()
            for k in range(1, pres.n + 1):
                w = pres.conjugate(u, pres.gen(k))
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return reps


def _span_table(pres, basis):
    """Map every ordered product over basis to its exponent tuple.

    Returns None when the products collide, which means the candidate
    words are dependent and the pair does not give a template frame.
    """
    p = pres.p
    table = {}
    if len(basis) == 2:
        d4, d5 = basis
        u = pres.identity
        for i in range(p):
            v = u
            for j in range(p):
                if v in table:
                    return None
                table[v] = (i, j)
                v = pres.multiply(v, d5)
            u = pres.multiply(u, d4)
    else:
        d4, d5, e = basis
        u = pres.identity
        for i in range(p):
            v = u
            for j in range(p):
                w = v
                for k in range(p):
                    if w in table:
                        return None
                    table[w] = (i, j, k)
                    w = pres.multiply(w, e)
                v = pres.multiply(v, d5)
            u = pres.multiply(u, d4)
    return table


def rebuild_rank5(pres, a, b):
    """Parameter tuple of the rank-5 template on the pair (a, b).

    Cubes of the pair may carry a component on c itself, so they are
    solved over (c, d4, d5); everything else lives in the weight-3 span.
    """
    c = pres.commutator(b, a)
    d4 = pres.commutator(c, a)
    d5 = pres.commutator(c, b)
    table = _span_table(pres, (d4, d5))
    if table is None:
        return None
    cinv = pres.inverse(c)

    def ext(v):
        w = v
        for s in range(pres.p):
            t = table.get(w)
            if t is not None:
                return (s,) + t
            w = pres.multiply(cinv, w)
        return None

    pa = ext(pres.power(a, 3))
    pb = ext(pres.power(b, 3))
    if pa is None or pb is None:
        return None
    out = []
    for v in (pres.power(c, 3), pres.power(d4, 3), pres.power(d5, 3)):
        t = table.get(v)
        if t is None:
            return None
        out.append(t)
    return (pa, pb) + tuple(out)


def rebuild_rank6(pres, a, b):
    """Parameter tuple of the rank-6 template on the pair (a, b).

    The deepest word is normalized to the first nontrivial coupling
    commutator, so tuples are invariant under rescaling it.
    """
    c = pres.commutator(b, a)
    d4 = pres.commutator(c, a)
    d5 = pres.commutator(c, b)
    e1 = pres.commutator(d4, a)
    e2 = pres.commutator(d4, b)
    e3 = pres.commutator(d5, b)
    e = next((w for w in (e1, e2, e3) if w != pres.identity), None)
    if e is None:
        return None
    table = _span_table(pres, (d4, d5, e))
    if table is None:
        return None
    m = []
    for w in (e1, e2, e3):
        t = table.get(w)
        if t is None or t[0] or t[1]:
            return None
        m.append(t[2])
    out = []
    for v in (pres.power(a, 3), pres.power(b, 3), pres.power(c, 3),
              pres.power(d4, 3), pres.power(d5, 3)):
        t = table.get(v)
        if t is None:
            return None
        out.append(t)
    return tuple(m) + tuple(out)


def template_tuple(pres):
    rebuild = rebuild_rank5 if pres.n == 5 else rebuild_rank6
    t = rebuild(pres, pres.gen(1), pres.gen(2))
    if t is None:
        raise AssertionError("template group does not rebuild on its "
                             "own defining pair")
    return t


def has_pair_with_tuple(pres, target_tuple):
    rebuild = rebuild_rank5 if pres.n == 5 else rebuild_rank6
    pool, project = _outside_pool(pres)
    reps = _conjugacy_reps(pres, pool)
    p = pres.p
    for a in reps:
        pa = project(a)
        for b in pool:
            pb = project(b)
            if (pa[0] * pb[1] - pa[1] * pb[0]) % p == 0:
                continue
            if rebuild(pres, a, b) == target_tuple:
                return True
    return False


def isomorphic_templates(g, h):
    return has_pair_with_tuple(h, template_tuple(g))


def reduce_census(survivors, log=lambda *a: None):
    """Group survivors into isomorphism classes.

    Returns a list of (representative params, representative pres,
    invariant key, member count).
    """
    clusters = {}
    for i, (params, g) in enumerate(survivors):
        key = invariant_key(g)
        clusters.setdefault(key, []).append((params, g))
        if (i + 1) % 500 == 0:
            log(f"  invariants: {i + 1}/{len(survivors)}")
    classes = []
    for key in sorted(clusters):
        members = clusters[key]
        reps = []
        for params, g in members:
            t = template_tuple(g)
            matched = False
            for rep in reps:
                if t == rep["tuple"] or has_pair_with_tuple(rep["pres"], t):
                    rep["count"] += 1
                    matched = True
                    break
            if not matched:
                reps.append({"params": params, "pres": g, "tuple": t,
                             "count": 1})
        log(f"  cluster {key}: {len(members)} presentations, "
            f"{len(reps)} classes")
        for rep in reps:
            classes.append((rep["params"], rep["pres"], key, rep["count"]))
    return classes


# ----------------------------------------------------------------------
# emission

def expect_line(pres, verdict_found):
    return ("# expect: order=%d class=%d metabelian=%s maximal_class=%s "
            "thin=%s beauville=%s center_order=%d" % (
                pres.order,
                nilpotency_class(pres),
                str(is_metabelian(pres)).lower(),
                str(is_maximal_class(pres)).lower(),
                str(bool(is_thin(pres).thin)).lower(),
                str(bool(verdict_found)).lower(),
                center(pres).order))


def pc_text(pres, header_lines):
    lines = list(header_lines)
    lines.append(f"p {pres.p}")
    lines.append(f"n {pres.n}")
    for i in range(1, pres.n + 1):
        vec = pres._powvec[i - 1]
        if vec != pres.identity:
            lines.append(f"pow {i} = " + format_element(vec))
    for (j, i) in sorted(pres._comvec):
        lines.append(f"comm {j} {i} = " + format_element(pres._comvec[(j, i)]))
    return "\n".join(lines) + "\n"


def write_entry(out_dir, entry_id, pres, provenance, verdict_found):
    header = [f"# {entry_id}",
              f"# provenance: {provenance}",
              expect_line(pres, verdict_found)]
    path = f"{out_dir}/{entry_id}.pc"
    with open(path, "w") as fh:
        fh.write(pc_text(pres, header))
    return path


# ----------------------------------------------------------------------
# suites

def run_five_suite(out_dir, log):
    written = []
    for entry_id, build, blurb in FIVE_GROUP_ENTRIES:
        t0 = time.time()
        g = build()
        if not g.is_consistent():
            raise AssertionError(f"{entry_id}: inconsistent construction")
        cls = classify_theorem_a(g)
        if not cls.in_scope or cls.case_label is None:
            raise AssertionError(f"{entry_id}: classification failed: "
                                 f"{cls.reason}")
        verdict = guided_beauville(g)
        expected = "found" if cls.predicted_beauville else "refuted"
        if verdict.status != expected:
            raise AssertionError(
                f"{entry_id}: search said {verdict.status}, classification "
                f"predicted {expected}")
        provenance = (f"direct construction ({blurb}); derived subgroup is "
                      f"a rank-one module with X^2 = h Y^2, h a mod-5 "
                      f"non-residue; engine-verified consistency, "
                      f"classification case {cls.case_label}, and search "
                      f"verdict (python tools/build_catalog.py --suite p5)")
        path = write_entry(out_dir, entry_id, g, provenance,
                           verdict.status == "found")
        log(f"  {entry_id}: case {cls.case_label} {verdict.status} "
            f"({time.time() - t0:.1f}s) -> {path}")
        written.append(entry_id)
    return written


def run_rank5_suite(out_dir, log):
    t0 = time.time()
    survivors = sweep_rank5()
    log(f"  rank-5 sweep: {len(survivors)} consistent presentations "
        f"({time.time() - t0:.1f}s)")
    classes = reduce_census(survivors, log)
    log(f"  rank-5 census: {len(classes)} isomorphism classes")
    decided = []
    for params, g, key, count in classes:
        verdict = exhaustive_beauville(g)
        if verdict.status not in ("found", "refuted"):
            raise AssertionError(f"exhaustive search inconclusive: {verdict}")
        decided.append((params, g, key, count, verdict.status == "found"))
    positives = [d for d in decided if d[4]]
    if len(positives) != 1:
        raise AssertionError(
            f"expected exactly one Beauville class at order 3^5, "
            f"found {len(positives)}")
    written = []
    params, g, key, count, _ = positives[0]
    provenance = ("rank-5 template census (python tools/build_catalog.py "
                  "--suite p3): complete sweep of the template's power "
                  "words, isomorphism-reduced by generating-pair search; "
                  "the unique Beauville class of order 3^5, matching the "
                  "standard small-group library index recorded in the id")
    write_entry(out_dir, "sg-3_5-3", g, provenance, True)
    log(f"  sg-3_5-3: census count {count}, params {params}")
    written.append("sg-3_5-3")
    negatives = sorted((d for d in decided if not d[4]),
                       key=lambda d: (d[2], template_tuple(d[1])))
    for idx, (params, g, key, count, _) in enumerate(negatives, start=1):
        entry_id = f"thin35-n{idx}"
        provenance = ("rank-5 template census (python tools/build_catalog.py "
                      "--suite p3): non-Beauville class, kept so the "
                      "refutation side of the census stays testable")
        write_entry(out_dir, entry_id, g, provenance, False)
        log(f"  {entry_id}: census count {count}, params {params}")
        written.append(entry_id)
    return written


def run_rank6_suite(out_dir, log):
    """Census at order 3^6.

    A cheap pass tags every consistent template instance with its
    invariant fingerprint, width profile, and center order.  Exhaustive
    verdicts then run only where a shipped claim depends on them: all
    thin instances (both sides of the census ship) and the non-thin
    instances with center of order 9 (the one non-thin entry that
    ships).  Non-thin instances with a larger center carry no claim and
    are the slowest to refute, so they get no verdict.  Isomorphism
    reduction is applied only to the search-positive thin side, which
    must split into exactly two classes.  Refuted instances ship one
    per distinct invariant fingerprint, so the shipped negatives are
    pairwise non-isomorphic without any pair-search cost.
    """
    t0 = time.time()
    survivors = sweep_rank6()
    log(f"  rank-6 sweep: {len(survivors)} consistent presentations "
        f"({time.time() - t0:.1f}s)")
    t0 = time.time()
    tagged = []
    for idx, (params, g) in enumerate(survivors, start=1):
        tagged.append((params, g, invariant_key(g), is_thin(g).thin,
                       center(g).order))
        if idx % 200 == 0:
            log(f"  tagging: {idx}/{len(survivors)} "
                f"({time.time() - t0:.1f}s)")
    needs_verdict = [t for t in tagged if t[3] or t[4] == 9]
    skipped = len(tagged) - len(needs_verdict)
    log(f"  tagged {len(tagged)} instances ({time.time() - t0:.1f}s); "
        f"{len(needs_verdict)} need verdicts, {skipped} non-thin "
        f"large-center instances skipped")
    t0 = time.time()
    decided = []
    for idx, (params, g, key, thin, zc) in enumerate(needs_verdict,
                                                     start=1):
        verdict = exhaustive_beauville(g)
        if verdict.status not in ("found", "refuted"):
            raise AssertionError(f"exhaustive search inconclusive: {verdict}")
        decided.append((params, g, key, thin, zc,
                        verdict.status == "found"))
        if idx % 25 == 0:
            log(f"  verdicts: {idx}/{len(needs_verdict)} "
                f"({time.time() - t0:.1f}s)")
    thin_pos = sorted((d for d in decided if d[3] and d[5]),
                      key=lambda d: (d[2], d[0]))
    nonthin_pos = sorted((d for d in decided if not d[3] and d[5]),
                         key=lambda d: (d[2], d[0]))
    log(f"  positives: {len(thin_pos)} thin instances, "
        f"{len(nonthin_pos)} non-thin center-9 instances "
        f"({time.time() - t0:.1f}s)")
    if not nonthin_pos:
        raise AssertionError("no non-thin Beauville instance at order 3^6")
    t0 = time.time()
    classes = []
    for d in thin_pos:
        order = sorted(range(len(classes)),
                       key=lambda i: classes[i][0][2] != d[2])
        placed = False
        for i in order:
            rep = classes[i][0]
            if has_pair_with_tuple(d[1], template_tuple(rep[1])):
                classes[i].append(d)
                placed = True
                break
        if not placed:
            classes.append([d])
    log(f"  thin positives: {len(classes)} isomorphism classes "
        f"({time.time() - t0:.1f}s)")
    if len(classes) != 2:
        raise AssertionError(
            f"expected exactly two thin Beauville classes at order 3^6, "
            f"found {len(classes)}")
    written = []
    # Stable assignment of the two standard library indices: order the
    # classes by invariant fingerprint, then parameter tuple.  The set is
    # engine-certain; which class carries which index is a fixed
    # convention.
    classes.sort(key=lambda members: (members[0][2], members[0][0]))
    for entry_id, members in zip(("sg-3_6-34", "sg-3_6-37"), classes):
        params, g = members[0][0], members[0][1]
        provenance = ("rank-6 template census (python tools/build_catalog.py "
                      "--suite p3): sweep of the template's pruned power "
                      "grid; one of the two thin Beauville classes of order "
                      "3^6, search-positive side isomorphism-reduced by "
                      "generating-pair matching; index assignment between "
                      "the two follows a fixed ordering convention")
        write_entry(out_dir, entry_id, g, provenance, True)
        log(f"  {entry_id}: {len(members)} census instances, "
            f"params {params}")
        written.append(entry_id)
    params, g, key, thin, zc, found = nonthin_pos[0]
    provenance = ("rank-6 template census (python tools/build_catalog.py "
                  "--suite p3): the non-thin Beauville class of order 3^6, "
                  "center of order 9, found in the singular-coupling branch")
    write_entry(out_dir, "sg-3_6-40", g, provenance, True)
    log(f"  sg-3_6-40: {len(nonthin_pos)} census instances, "
        f"params {params}")
    written.append("sg-3_6-40")
    seen_keys = set()
    thin_neg = []
    for d in sorted((d for d in decided if d[3] and not d[5]),
                    key=lambda d: (d[2], d[0])):
        if d[2] in seen_keys:
            continue
        seen_keys.add(d[2])
        thin_neg.append(d)
    for idx, (params, g, key, thin, zc, found) in enumerate(thin_neg,
                                                            start=1):
        entry_id = f"thin36-n{idx}"
        provenance = ("rank-6 template census (python tools/build_catalog.py "
                      "--suite p3): thin non-Beauville representative, one "
                      "per distinct invariant fingerprint, kept so the "
                      "refutation side of the census stays testable")
        write_entry(out_dir, entry_id, g, provenance, False)
        log(f"  {entry_id}: params {params}")
        written.append(entry_id)
    return written


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=("p5", "p3", "p35", "p36", "all"),
                    default="all")
    ap.add_argument("--out", default="src/thinville/data")
    args = ap.parse_args(argv)

    def log(msg):
        print(msg, flush=True)

    summary = {}
    t0 = time.time()
    if args.suite in ("p5", "all"):
        log("five-group representatives:")
        summary["p5"] = run_five_suite(args.out, log)
    if args.suite in ("p3", "p35", "all"):
        log("order 3^5 census:")
        summary["p35"] = run_rank5_suite(args.out, log)
    if args.suite in ("p3", "p36", "all"):
        log("order 3^6 census:")
        summary["p36"] = run_rank6_suite(args.out, log)
    log(f"done in {time.time() - t0:.1f}s")
    log(json.dumps(summary, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
