"""Subgroup machinery and structural predicates.

Subgroups are carried as echelonized induced generating sequences: the
basis elements have strictly increasing leading generator indices,
leading exponent 1, and zero entries at every other basis lead.  That
form is canonical, so subgroup equality is basis equality and the
membership sieve is exact.  All closures (generated subgroup, normal
closure) run a queue that keeps the product set closed under p-th
powers, commutators, and, for normal closures, conjugation by the
presentation generators.

The enumerating operations (agemo, omega, exponent, brute lattice
walks) respect an element budget, settable per call or through the
THINVILLE_BUDGET environment variable; exceeding it raises
BudgetExceededError rather than returning a partial answer.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .pcgroup import PcPresentation

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured element budget."""


def get_budget(budget=None) -> int:
    if budget is not None:
        return int(budget)
    return int(os.environ.get("THINVILLE_BUDGET", DEFAULT_BUDGET))


def _leading(vec):
    for i, e in enumerate(vec):
        if e:
            return i + 1
    return None


def _cache(pres) -> dict:
    return pres.__dict__.setdefault("_structure_cache", {})


# ----------------------------------------------------------------------
# echelonized subgroups

class Subgroup:
    """An induced generating sequence inside a fixed presentation."""

    __slots__ = ("pres", "basis", "leads", "_leadmap")

    def __init__(self, pres, basis):
        self.pres = pres
        self.basis = tuple(basis)
        self.leads = tuple(_leading(b) for b in self.basis)
        self._leadmap = dict(zip(self.leads, self.basis))

    @property
    def order(self) -> int:
        return self.pres.p ** len(self.basis)

    @property
    def log_order(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"Subgroup(order={self.order}, leads={list(self.leads)})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.basis == other.basis \
            and self.pres is other.pres

    def __hash__(self):
        return hash(self.basis)

    def __contains__(self, vec):
        P = self.pres
        u = vec
        while u != P.identity:
            b = self._leadmap.get(_leading(u))
            if b is None:
                return False
            u = P._fold(P._power(b, -u[_leading(u) - 1]), u)
        return True

    def contains_subgroup(self, other) -> bool:
        return all(b in self for b in other.basis)

    def elements(self):
        """Every member, as products of basis powers (lexicographic)."""
        P = self.pres
        if not self.basis:
            yield P.identity
            return
        # odometer with a prefix-product stack: one multiply per element
        k = len(self.basis)
        exps = [0] * k
        prefix = [P.identity] * (k + 1)
        while True:
            yield prefix[k]
            i = k - 1
            while i >= 0 and exps[i] == P.p - 1:
                exps[i] = 0
                i -= 1
            if i < 0:
                return
            exps[i] += 1
            prefix[i + 1] = P._fold(prefix[i + 1], self.basis[i])
            for j in range(i + 1, k):
                prefix[j + 1] = prefix[j]

    def random_element(self, rng):
        P = self.pres
        v = P.identity
        for b in self.basis:
            e = rng.randrange(P.p)
            if e:
                v = P._fold(v, P._power(b, e))
        return v


class _Closure:
    def __init__(self, pres, normal):
        self.pres = pres
        self.normal = normal
        self.slots = {}
        self.queue = []

    def sift(self, u):
        P = self.pres
        while u != P.identity:
            l = _leading(u)
            b = self.slots.get(l)
            if b is None:
                return u
            u = P._fold(P._power(b, -u[l - 1]), u)
        return u

    def run(self, gens):
        P = self.pres
        self.queue.extend(gens)
        while self.queue:
            u = self.sift(self.queue.pop())
            if u == P.identity:
                continue
            l = _leading(u)
            b = P._power(u, pow(u[l - 1], -1, P.p))
            self.slots[l] = b
            self.queue.append(P._power(b, P.p))
            # commutator obligations, both orders
            for other in list(self.slots.values()):
                if other is not b:
                    self.queue.append(_comm(P, b, other))
                    self.queue.append(_comm(P, other, b))
            if self.normal:
                for k in range(1, P.n + 1):
                    g = P._unit(k)
                    self.queue.append(P._fold(P._fold(P._gen_inverse(k), b), g))
        return self.canonical_basis()

    def canonical_basis(self):
        P = self.pres
        leads = sorted(self.slots)
        out = []
        for l in leads:
            b = self.slots[l]
            for l2 in leads:
                if l2 > l and b[l2 - 1]:
                    b = P._fold(b, P._power(self.slots[l2], P.p - b[l2 - 1]))
            out.append(b)
        return out


def _comm(P, a, b):
    return P._fold(P._inverse(P._fold(b, a)), P._fold(a, b))


def generated_subgroup(pres, gens) -> Subgroup:
    pres.ensure_consistent()
    closure = _Closure(pres, normal=False)
    return Subgroup(pres, closure.run(list(gens)))


def normal_closure(pres, gens) -> Subgroup:
    pres.ensure_consistent()
    closure = _Closure(pres, normal=True)
    return Subgroup(pres, closure.run(list(gens)))


def trivial_subgroup(pres) -> Subgroup:
    return Subgroup(pres, ())


def whole_group(pres) -> Subgroup:
    cache = _cache(pres)
    if "whole" not in cache:
        cache["whole"] = generated_subgroup(pres, pres.gens())
    return cache["whole"]


def subgroup_join(pres, a, b) -> Subgroup:
    return generated_subgroup(pres, list(a.basis) + list(b.basis))


def is_normal(pres, sub) -> bool:
    for b in sub.basis:
        for k in range(1, pres.n + 1):
            if pres.conjugate(b, pres.gen(k)) not in sub:
                return False
    return True


def is_abelian_subgroup(pres, sub) -> bool:
    basis = sub.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if _comm(pres, basis[i], basis[j]) != pres.identity:
                return False
    return True


def is_cyclic_subgroup(pres, sub) -> bool:
    if sub.log_order <= 1:
        return True
    if not is_abelian_subgroup(pres, sub):
        return False
    return max(pres.element_order(b) for b in sub.basis) == sub.order


# ----------------------------------------------------------------------
# cosets, quotient and subgroup presentations

def canonical_coset_rep(pres, sub, vec):
    """The unique element of vec*sub with zeros at the basis leads."""
    for b in sub.basis:
        l = _leading(b)
        e = vec[l - 1]
        if e:
            vec = pres._fold(vec, pres._power(b, pres.p - e))
    return vec


def quotient_presentation(pres, sub):
    """Presentation of G/N for normal N, with project and lift maps."""
    key = ("quotient", sub.basis)
    cache = _cache(pres)
    if key in cache:
        return cache[key]
    if not is_normal(pres, sub):
        raise ValueError("quotient requires a normal subgroup")
    kept = [i for i in range(1, pres.n + 1) if i not in sub._leadmap]
    if not kept:
        raise ValueError("quotient by the whole group is trivial")
    kept_pos = {g: a + 1 for a, g in enumerate(kept)}

    def project(vec):
        r = canonical_coset_rep(pres, sub, vec)
        return tuple(r[g - 1] for g in kept)

    def lift(qvec):
        out = [0] * pres.n
        for a, g in enumerate(kept):
            out[g - 1] = qvec[a]
        return tuple(out)

    def to_word(qvec, above):
        word = []
        for a, e in enumerate(qvec):
            if e:
                if a + 1 <= above:
                    raise AssertionError("quotient relator fell below its base")
                word.append((a + 1, e))
        return word

    powers = {}
    commutators = {}
    for a, g in enumerate(kept, start=1):
        powers[a] = to_word(project(pres._power(pres._unit(g), pres.p)), a)
    for b_i, gj in enumerate(kept, start=1):
        for a_i, gi in enumerate(kept[:b_i - 1], start=1):
            commutators[(b_i, a_i)] = to_word(
                project(_comm(pres, pres._unit(gj), pres._unit(gi))), b_i)
    quotient = PcPresentation(pres.p, len(kept), powers, commutators)
    if not quotient.is_consistent():
        raise AssertionError("derived quotient presentation is inconsistent")
    cache[key] = (quotient, project, lift)
    return cache[key]


def subgroup_presentation(pres, sub):
    """Presentation of a subgroup on its own basis, with an embedding map."""
    basis = sub.basis
    if not basis:
        raise ValueError("the trivial subgroup has no generators to present")
    k = len(basis)
    lead_index = {l: i for i, l in enumerate(sub.leads)}

    def express(u):
        coeffs = [0] * k
        while u != pres.identity:
            l = _leading(u)
            i = lead_index.get(l)
            if i is None:
                raise AssertionError("element left the subgroup while sifting")
            coeffs[i] = u[l - 1]
            u = pres._fold(pres._power(basis[i], -coeffs[i]), u)
        return coeffs

    def to_word(coeffs, above):
        word = []
        for i, e in enumerate(coeffs, start=1):
            if e:
                if i <= above:
                    raise AssertionError("subgroup relator fell below its base")
                word.append((i, e))
        return word

    powers = {}
    commutators = {}
    for i in range(1, k + 1):
        powers[i] = to_word(express(pres._power(basis[i - 1], pres.p)), i)
    for j in range(2, k + 1):
        for i in range(1, j):
            commutators[(j, i)] = to_word(
                express(_comm(pres, basis[j - 1], basis[i - 1])), j)
    inside = PcPresentation(pres.p, k, powers, commutators)
    if not inside.is_consistent():
        raise AssertionError("derived subgroup presentation is inconsistent")

    def embed(svec):
        v = pres.identity
        for i, e in enumerate(svec):
            if e:
                v = pres._fold(v, pres._power(basis[i], e))
        return v

    return inside, embed


# ----------------------------------------------------------------------
# central series

@dataclass
class CentralSeries:
    kind: str                 # "lower" or "upper"
    terms: list               # Subgroups; lower: descending to 1, upper: ascending to G
    widths: list              # log_p indices between consecutive terms


def lower_central_series(pres) -> CentralSeries:
    cache = _cache(pres)
    if "lcs" not in cache:
        terms = [whole_group(pres)]
        while terms[-1].log_order > 0:
            current = terms[-1]
            gens = [_comm(pres, b, pres._unit(k))
                    for b in current.basis for k in range(1, pres.n + 1)]
            nxt = normal_closure(pres, gens)
            if nxt.log_order >= current.log_order:
                raise AssertionError("lower central series failed to descend")
            terms.append(nxt)
        widths = [terms[i].log_order - terms[i + 1].log_order
                  for i in range(len(terms) - 1)]
        cache["lcs"] = CentralSeries("lower", terms, widths)
    return cache["lcs"]


def gamma(pres, i) -> Subgroup:
    """Lower central term; indices past the class give the trivial group."""
    if i < 1:
        raise ValueError("lower central terms are indexed from 1")
    terms = lower_central_series(pres).terms
    return terms[min(i - 1, len(terms) - 1)]


def nilpotency_class(pres) -> int:
    return len(lower_central_series(pres).terms) - 1


def derived_subgroup(pres) -> Subgroup:
    cache = _cache(pres)
    if "derived" not in cache:
        gens = [_comm(pres, pres._unit(j), pres._unit(i))
                for j in range(2, pres.n + 1) for i in range(1, j)]
        cache["derived"] = normal_closure(pres, gens)
    return cache["derived"]


def _left_nullspace(rows, p):
    """Basis of {x : sum x_i rows[i] = 0 mod p}."""
    k = len(rows)
    m = len(rows[0]) if rows else 0
    aug = [list(rows[i]) + [1 if t == i else 0 for t in range(k)] for i in range(k)]
    pivot_row = 0
    for col in range(m):
        pr = None
        for r in range(pivot_row, k):
            if aug[r][col] % p:
                pr = r
                break
        if pr is None:
            continue
        aug[pivot_row], aug[pr] = aug[pr], aug[pivot_row]
        inv = pow(aug[pivot_row][col], -1, p)
        aug[pivot_row] = [(x * inv) % p for x in aug[pivot_row]]
        for r in range(k):
            if r != pivot_row and aug[r][col] % p:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[pivot_row])]
        pivot_row += 1
        if pivot_row == k:
            break
    return [row[m:] for row in aug[pivot_row:]]


def center(pres) -> Subgroup:
    cache = _cache(pres)
    if "center" in cache:
        return cache["center"]
    pres.ensure_consistent()
    C = whole_group(pres)
    # refine coordinate by coordinate: after step t, [C, G] vanishes on
    # the first t coordinates (the tail filtration is central, so the
    # per-coordinate commutator map is a homomorphism on C)
    for t in range(1, pres.n + 1):
        if C.log_order == 0:
            break
        rows = []
        for b in C.basis:
            rows.append([_comm(pres, b, pres._unit(k))[t - 1]
                         for k in range(1, pres.n + 1)])
        null = _left_nullspace(rows, pres.p)
        gens = []
        for x in null:
            v = pres.identity
            for i, e in enumerate(x):
                if e:
                    v = pres._fold(v, pres._power(C.basis[i], e))
            gens.append(v)
        gens.extend(pres._power(b, pres.p) for b in C.basis)
        gens.extend(_comm(pres, C.basis[i], C.basis[j])
                    for i in range(len(C.basis)) for j in range(i + 1, len(C.basis)))
        C = generated_subgroup(pres, gens)
    cache["center"] = C
    return C


def upper_central_series(pres) -> CentralSeries:
    cache = _cache(pres)
    if "ucs" not in cache:
        whole = whole_group(pres)
        terms = [trivial_subgroup(pres)]
        current = terms[0]
        while current != whole:
            if current.log_order == 0:
                bigger = center(pres)
            else:
                quotient, project, lift = quotient_presentation(pres, current)
                zq = center(quotient)
                bigger = generated_subgroup(
                    pres, [lift(b) for b in zq.basis] + list(current.basis))
            if bigger.log_order <= current.log_order:
                raise AssertionError("upper central series failed to ascend")
            terms.append(bigger)
            current = bigger
        widths = [terms[i + 1].log_order - terms[i].log_order
                  for i in range(len(terms) - 1)]
        cache["ucs"] = CentralSeries("upper", terms, widths)
    return cache["ucs"]


# ----------------------------------------------------------------------
# agemo, omega, exponent, Frattini

def frattini(pres) -> Subgroup:
    cache = _cache(pres)
    if "frattini" not in cache:
        gens = list(derived_subgroup(pres).basis)
        gens.extend(pres._power(pres._unit(i), pres.p) for i in range(1, pres.n + 1))
        cache["frattini"] = generated_subgroup(pres, gens)
    return cache["frattini"]


def frattini_quotient(pres):
    """(quotient presentation of G/Frattini, project, lift)."""
    return quotient_presentation(pres, frattini(pres))


def agemo(pres, budget=None) -> Subgroup:
    """The subgroup generated by all p-th powers.

    Seeds a normal closure with generator powers, then certifies it by
    checking that the quotient has exponent p, enlarging on any failure.
    The certificate makes the seed choice irrelevant to the answer.
    """
    cache = _cache(pres)
    if "agemo" in cache:
        return cache["agemo"]
    budget = get_budget(budget)
    p = pres.p
    seeds = [pres._power(pres._unit(i), p) for i in range(1, pres.n + 1)]
    for i in range(1, pres.n + 1):
        for j in range(i + 1, pres.n + 1):
            seeds.append(pres._power(pres._fold(pres._unit(i), pres._unit(j)), p))
    W = normal_closure(pres, seeds)
    while True:
        if W.log_order == pres.n:
            break
        quotient, project, lift = quotient_presentation(pres, W)
        if quotient.order > budget:
            raise BudgetExceededError(
                f"certifying the agemo needs a sweep over {quotient.order} cosets, "
                f"budget is {budget}")
        bad = None
        for q in quotient.elements():
            if quotient._power(q, p) != quotient.identity:
                bad = q
                break
        if bad is None:
            break
        W = normal_closure(pres, list(W.basis) + [pres._power(lift(bad), p)])
    cache["agemo"] = W
    return W


def agemo_brute(pres, budget=None) -> Subgroup:
    """Reference agemo by enumerating every element's p-th power."""
    budget = get_budget(budget)
    if pres.order > budget:
        raise BudgetExceededError(
            f"brute agemo over {pres.order} elements exceeds budget {budget}")
    gens = {pres._power(v, pres.p) for v in pres.elements()}
    return generated_subgroup(pres, gens)


def omega1(pres, budget=None) -> Subgroup:
    """Subgroup generated by the elements of order dividing p."""
    budget = get_budget(budget)
    if pres.order > budget:
        raise BudgetExceededError(
            f"omega over {pres.order} elements exceeds budget {budget}")
    gens = [v for v in pres.elements() if pres._power(v, pres.p) == pres.identity]
    return generated_subgroup(pres, gens)


def exponent(pres, sub, budget=None) -> int:
    """Largest element order in the subgroup."""
    if sub.log_order == 0:
        return 1
    if is_abelian_subgroup(pres, sub):
        return max(pres.element_order(b) for b in sub.basis)
    budget = get_budget(budget)
    if sub.order > budget:
        raise BudgetExceededError(
            f"exponent sweep over {sub.order} elements exceeds budget {budget}")
    inside, _ = subgroup_presentation(pres, sub)
    best = 1
    for v in inside.elements():
        k = 0
        b = v
        while b != inside.identity:
            b = inside._power(b, inside.p)
            k += 1
        best = max(best, inside.p ** k)
    return best


def maximal_subgroups(pres):
    """Index-p subgroups, ordered by their direction in G/Frattini."""
    cache = _cache(pres)
    if "maximals" in cache:
        return cache["maximals"]
    quotient, project, lift = frattini_quotient(pres)
    p, r = pres.p, quotient.n
    phi = frattini(pres)
    out = []
    for direction in _projective_points(p, r):
        # hyperplane spanned by all projective points orthogonal to nothing:
        # for rank 2 a maximal subgroup is the preimage of one line
        if r == 2:
            span = [direction]
        else:
            span = _hyperplane_span(direction, p, r)
        gens = list(phi.basis) + [lift(v) for v in span]
        out.append((direction, generated_subgroup(pres, gens)))
    maximals = [sub for _, sub in sorted(out, key=lambda t: t[0])]
    cache["maximals"] = maximals
    return maximals


def _projective_points(p, r):
    """Normalized direction vectors (first nonzero entry 1), lex order."""
    pts = []
    for v in itertools.product(range(p), repeat=r):
        lead = next((x for x in v if x), None)
        if lead == 1:
            pts.append(v)
    return sorted(pts)


def _hyperplane_span(normal_vec, p, r):
    rows = [list(normal_vec)]
    return [tuple(x) for x in _left_nullspace_cols(rows, p, r)]


def _left_nullspace_cols(rows, p, r):
    # solutions x of rows . x = 0 (right nullspace)
    transposed = [[rows[j][i] for j in range(len(rows))] for i in range(r)]
    return _left_nullspace(transposed, p)


def maximal_subgroup_of(pres, vec) -> list:
    """The maximal subgroups containing vec (one unless vec is a Frattini element)."""
    return [m for m in maximal_subgroups(pres) if vec in m]


# ----------------------------------------------------------------------
# predicates

def is_metabelian(pres) -> bool:
    cache = _cache(pres)
    if "metabelian" not in cache:
        cache["metabelian"] = is_abelian_subgroup(pres, derived_subgroup(pres))
    return cache["metabelian"]


def is_maximal_class(pres) -> bool:
    if pres.n == 2:
        # order p^2 is abelian; the exclusion targets the nonabelian family
        return False
    return nilpotency_class(pres) == pres.n - 1


@dataclass
class ThinReport:
    thin: bool
    witness_kind: str = None      # cyclic | width | normal-subgroup
    layer: int = None
    witness_element: tuple = None
    witness_subgroup: Subgroup = None

    def __bool__(self):
        return self.thin


def is_thin(pres, budget=None) -> ThinReport:
    """Sandwich test: every normal subgroup between consecutive lower
    central terms, and every layer of width at most p^2."""
    cache = _cache(pres)
    if "thin" in cache:
        return cache["thin"]
    result = _is_thin_impl(pres, budget)
    cache["thin"] = result
    return result


def _is_thin_impl(pres, budget):
    quotient, project, lift = frattini_quotient(pres)
    if quotient.n < 2:
        return ThinReport(False, witness_kind="cyclic")
    series = lower_central_series(pres)
    for i, w in enumerate(series.widths, start=1):
        if w > 2:
            return ThinReport(False, witness_kind="width", layer=i)
    c = len(series.terms) - 1
    for i in range(1, c + 1):
        upper = series.terms[i - 1]
        target = series.terms[i]
        deeper = series.terms[i + 1] if i + 1 < len(series.terms) else trivial_subgroup(pres)
        ok, bad = _covering_holds_on_layer(pres, upper, target, deeper)
        if ok:
            continue
        # verify a genuine sandwich violation before answering no
        closure = normal_closure(pres, [bad])
        if not closure.contains_subgroup(target):
            return ThinReport(
                False, witness_kind="normal-subgroup", layer=i,
                witness_element=bad, witness_subgroup=closure)
        if not _sieve_layer(pres, upper, target, budget):
            witness = _sieve_layer_witness(pres, upper, target, budget)
            closure = normal_closure(pres, [witness])
            return ThinReport(
                False, witness_kind="normal-subgroup", layer=i,
                witness_element=witness, witness_subgroup=closure)
    return ThinReport(True)


def _covering_holds_on_layer(pres, upper, target, deeper):
    """Check [g,G] deeper = target for all g in upper minus target,
    ranging g over representatives modulo deeper (enough: commutators
    of deeper against G land below deeper)."""
    if deeper.log_order:
        quotient, project, lift = quotient_presentation(pres, deeper)
        up_q = generated_subgroup(quotient, [project(b) for b in upper.basis])
        tg_q = generated_subgroup(quotient, [project(b) for b in target.basis])
        for u in up_q.elements():
            if u in tg_q or u == quotient.identity:
                continue
            comms = [_comm(quotient, u, quotient._unit(k))
                     for k in range(1, quotient.n + 1)]
            if generated_subgroup(quotient, comms) != tg_q:
                return False, lift(u)
        return True, None
    for u in upper.elements():
        if u in target or u == pres.identity:
            continue
        comms = [_comm(pres, u, pres._unit(k)) for k in range(1, pres.n + 1)]
        if generated_subgroup(pres, comms) != target:
            return False, u
    return True, None


def _sieve_layer(pres, upper, target, budget):
    budget = get_budget(budget)
    if upper.order > budget:
        raise BudgetExceededError(
            f"thinness sieve over {upper.order} elements exceeds budget {budget}")
    for g in upper.elements():
        if g in target:
            continue
        if not normal_closure(pres, [g]).contains_subgroup(target):
            return False
    return True


def _sieve_layer_witness(pres, upper, target, budget):
    for g in upper.elements():
        if g in target:
            continue
        if not normal_closure(pres, [g]).contains_subgroup(target):
            return g
    raise AssertionError("witness vanished between passes")


def is_thin_brute(pres, budget=None) -> bool:
    """Definitional test over the full normal subgroup lattice."""
    series = lower_central_series(pres)
    for sub in normal_subgroups(pres, budget):
        if not any(
            series.terms[i].contains_subgroup(sub)
            and (i + 1 >= len(series.terms) or sub.contains_subgroup(series.terms[i + 1]))
            for i in range(len(series.terms))
        ):
            return False
    for w in series.widths:
        if w > 2:
            return False
    if frattini_quotient(pres)[0].n < 2:
        return False
    return True


def normal_subgroups(pres, budget=None):
    """All normal subgroups: cyclic normal closures, closed under join."""
    budget = get_budget(budget)
    if pres.order > budget:
        raise BudgetExceededError(
            f"normal subgroup walk over {pres.order} elements exceeds budget {budget}")
    found = {}
    for v in pres.elements():
        sub = normal_closure(pres, [v])
        found.setdefault(sub.basis, sub)
    frontier = list(found.values())
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(found.values()):
                join = subgroup_join(pres, a, b)
                if join.basis not in found:
                    found[join.basis] = join
                    fresh.append(join)
        frontier = fresh
    return sorted(found.values(), key=lambda s: (s.log_order, s.basis))


# ----------------------------------------------------------------------
# normal subgroup lattice of a thin group

@dataclass
class LatticeLayer:
    index: int
    width: int          # log_p of the layer order
    count: int          # normal subgroups N with term(i+1) <= N <= term(i)
    tag: str            # chain | diamond | other


@dataclass
class LatticeProfile:
    layers: list
    ends_with_chain: bool

    def tags(self):
        return [layer.tag for layer in self.layers]


def lattice_profile(pres, budget=None) -> LatticeProfile:
    report = is_thin(pres, budget)
    if not report.thin:
        raise ValueError("lattice profile requires a thin group")
    series = lower_central_series(pres)
    layers = []
    for i in range(1, len(series.terms)):
        upper, lower = series.terms[i - 1], series.terms[i]
        width = series.widths[i - 1]
        if width == 1:
            layers.append(LatticeLayer(i, width, 2, "chain"))
            continue
        # width 2: the layer is abelian; elementary gives p+1 intermediate
        # subgroups (diamond), cyclic gives exactly one
        elementary = all(pres._power(b, pres.p) in lower for b in upper.basis)
        if elementary:
            layers.append(LatticeLayer(i, width, pres.p + 3, "diamond"))
        else:
            layers.append(LatticeLayer(i, width, 3, "other"))
    return LatticeProfile(layers, ends_with_chain=layers[-1].tag == "chain" if layers else False)


def lattice_nodes(pres, budget=None):
    """(subgroup, layer index) pairs for every normal subgroup of a thin
    group, plus the covering edges, both canonically ordered."""
    profile = lattice_profile(pres, budget)
    series = lower_central_series(pres)
    p = pres.p
    nodes = []
    edges = []
    term_ids = {}
    for i, term in enumerate(series.terms, start=1):
        term_ids[term.basis] = len(nodes)
        nodes.append((term, i))
    for layer in profile.layers:
        upper = series.terms[layer.index - 1]
        lower = series.terms[layer.index]
        top, bottom = term_ids[upper.basis], term_ids[lower.basis]
        if layer.tag == "chain":
            edges.append((top, bottom))
            continue
        # two independent generators of the layer, picked greedily
        gens = []
        grown = lower
        for b in upper.basis:
            if b not in grown:
                gens.append(b)
                grown = generated_subgroup(pres, list(grown.basis) + [b])
            if len(gens) == 2:
                break
        if layer.tag == "diamond":
            mids = []
            for direction in _projective_points(p, 2):
                v = pres.identity
                for g, e in zip(gens, direction):
                    if e:
                        v = pres._fold(v, pres._power(g, e))
                mids.append(generated_subgroup(pres, list(lower.basis) + [v]))
        else:
            u = gens[0] if pres._power(gens[0], p) not in lower else gens[1]
            mids = [generated_subgroup(pres, list(lower.basis) + [pres._power(u, p)])]
        for mid in sorted(mids, key=lambda s: s.basis):
            mid_id = len(nodes)
            nodes.append((mid, layer.index))
            edges.append((top, mid_id))
            edges.append((mid_id, bottom))
    return nodes, edges


def profile_matches_shape_grammar(profile: LatticeProfile, p: int) -> bool:
    """Diamond on top, then a chain, then up to p-2 diamonds, then an
    optional final chain.  Prefixes of that shape (small groups) pass."""
    tags = profile.tags()
    if not tags or tags[0] != "diamond":
        return False
    rest = tags[1:]
    if not rest:
        return True
    if rest[0] != "chain":
        return False
    rest = rest[1:]
    diamonds = 0
    while rest and rest[0] == "diamond":
        diamonds += 1
        rest = rest[1:]
    if diamonds > p - 2:
        return False
    if not rest:
        return True
    return rest == ["chain"]


# ----------------------------------------------------------------------
# structural facts about the agemo of a thin group

@dataclass
class PlaceOfAgemoReport:
    applicable: bool
    depth: int = None            # largest i with G^p inside term i
    agemo_order: int = None
    checks: dict = field(default_factory=dict)

    @property
    def all_pass(self):
        return all(self.checks.values()) if self.applicable else True


def verify_place_of_agemo(pres, budget=None) -> PlaceOfAgemoReport:
    report = is_thin(pres, budget)
    if not (report.thin and is_metabelian(pres) and not is_maximal_class(pres)):
        raise ValueError(
            "place-of-agemo checks require a metabelian thin group "
            "that is not of maximal class")
    W = agemo(pres, budget)
    if W.log_order == 0:
        return PlaceOfAgemoReport(applicable=False, agemo_order=1)
    series = lower_central_series(pres)
    depth = max(i for i in range(1, len(series.terms) + 1)
                if gamma(pres, i).contains_subgroup(W))
    p = pres.p
    derived = derived_subgroup(pres)
    derived_powers = generated_subgroup(
        pres, [pres._power(b, p) for b in derived.basis])
    checks = {
        "depth at least 3": depth >= 3,
        "depth at most p": depth <= p,
        "next term cyclic": is_cyclic_subgroup(pres, gamma(pres, depth + 1)),
        "term after next trivial": gamma(pres, depth + 2).log_order == 0,
        "derived powers inside next term": gamma(pres, depth + 1).contains_subgroup(derived_powers),
        "agemo order at most p^3": W.log_order <= 3,
    }
    return PlaceOfAgemoReport(True, depth, W.order, checks)


def covering_property_check(pres, rng, samples_per_layer=3) -> bool:
    """Spot-check that commutation with random layer elements regenerates
    the next lower central term."""
    series = lower_central_series(pres)
    for i in range(1, len(series.terms)):
        upper = series.terms[i - 1]
        target = series.terms[i]
        deeper = series.terms[i + 1] if i + 1 < len(series.terms) else trivial_subgroup(pres)
        if upper.log_order == target.log_order:
            continue
        for _ in range(samples_per_layer):
            g = upper.random_element(rng)
            while g in target:
                g = upper.random_element(rng)
            comms = [_comm(pres, g, pres._unit(k)) for k in range(1, pres.n + 1)]
            span = generated_subgroup(pres, comms + list(deeper.basis))
            if span != target:
                return False
    return True


# ----------------------------------------------------------------------
# exponent-p maximal subgroups

def exponent_p_maximal_count(pres, budget=None) -> int:
    """How many maximal subgroups have exponent p."""
    cache = _cache(pres)
    if "exp-p-maximals" not in cache:
        cache["exp-p-maximals"] = sum(
            1 for sub in maximal_subgroups(pres)
            if maximal_has_exponent_p(pres, sub, budget))
    return cache["exp-p-maximals"]


def maximal_has_exponent_p(pres, sub, budget=None) -> bool:
    fast = _maximal_exponent_p_fast(pres, sub)
    if fast is not None:
        return fast
    return exponent(pres, sub, budget) == pres.p


def _maximal_exponent_p_fast(pres, sub):
    """Exact shortcut for metabelian groups of class at most p+1 whose
    third lower central term has exponent p: every power expansion
    correction dies except the deepest left-normed commutator, so one
    coset representative decides the whole maximal subgroup.  Returns
    None when its guards fail."""
    p = pres.p
    if not is_metabelian(pres):
        return None
    c = nilpotency_class(pres)
    if c > p + 1:
        return None
    quotient, project, lift = frattini_quotient(pres)
    if quotient.n != 2:
        return None
    derived = derived_subgroup(pres)
    if derived != frattini(pres):
        # coset representatives modulo the derived subgroup would not be
        # powers of a single element, so the shortcut does not apply
        return None
    g3 = gamma(pres, 3)
    if g3.log_order and exponent(pres, g3) > p:
        return None
    if exponent(pres, derived) > p:
        return False
    rep = next(b for b in sub.basis if project(b) != (0, 0))
    if pres._power(rep, p) != pres.identity:
        return False
    tail = [rep] * (p - 1)
    return all(
        pres.left_normed_commutator(b, tail) == pres.identity
        for b in derived.basis)
