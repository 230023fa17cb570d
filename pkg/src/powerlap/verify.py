"""Machine-checkable registry of the structural claims about power-graph spectra.

Every checker returns a ClaimReport with a pass/fail verdict, a concrete
witness on failure, and the computed evidence backing the verdict.  All
integrality decisions are taken from the exact certification engine,
never from floating-point rounding; numerics only order certified
non-integer eigenvalues against integers, with wide guard bands.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .graphs import (
    Graph,
    components,
    induced_subgraph,
    power_graph,
    reduced_cyclic_graph,
    vertex_connectivity,
)
from .groups import (
    FiniteGroup,
    cyclic_group,
    dicyclic_group,
    direct_product,
    euler_phi,
    factorize,
    generalized_quaternion,
    is_p_group,
)
from .pgroup import (
    check_multiple_property,
    classify_eigenvalues,
    decompose,
    tree_charpoly,
)
from .spectra import (
    FactoredCharPoly,
    Spectrum,
    algebraic_connectivity,
    spectral_radius,
    spectral_radius_multiplicity,
    spectrum,
)

__all__ = [
    "ClaimReport",
    "ConjectureRow",
    "check_cyclic_algcon",
    "check_cyclic_radius_mult",
    "check_cyclic_kappa_eq_mu",
    "check_dicyclic_bundle",
    "check_pgroup_bundle",
    "scan_conjecture",
    "pgroup_catalog",
    "is_generalized_quaternion",
    "run_cyclic_suite",
    "run_dicyclic_suite",
    "run_pgroup_suite",
    "CLAIM_IDS",
]

NUMERIC_GUARD = 1e-8

CLAIM_IDS = (
    "cyclic-algcon",
    "cyclic-radius-mult",
    "cyclic-kappa-vs-algcon",
    "dicyclic-bundle",
    "pgroup-bundle",
)


@dataclass(frozen=True)
class ClaimReport:
    """Outcome of one claim check with its witness and evidence."""

    claim_id: str
    parameters: dict
    verdict: str  # "pass" | "fail" | "inapplicable"
    witness: Optional[str] = None
    evidence: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim_id,
            "params": self.parameters,
            "verdict": self.verdict,
            "witness": self.witness,
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _report(claim_id, params, ok, witness, evidence, started) -> ClaimReport:
    return ClaimReport(
        claim_id=claim_id,
        parameters=params,
        verdict="pass" if ok else "fail",
        witness=None if ok else witness,
        evidence=evidence,
        elapsed=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# shared cyclic-group machinery


@lru_cache(maxsize=None)
def _cyclic_graph(n: int) -> Graph:
    return power_graph(cyclic_group(n))


@lru_cache(maxsize=None)
def _cyclic_spectrum(n: int) -> Spectrum:
    return spectrum(_cyclic_graph(n))


@lru_cache(maxsize=None)
def _cyclic_kappa(n: int) -> int:
    return vertex_connectivity(_cyclic_graph(n)).size


def _exact_equals_int(value: int | float, target: int) -> bool:
    """Whether an eigenvalue equals an integer target, decided exactly.

    Certified integers compare exactly; numeric values are certified
    non-integers, so they can never equal the target.  A numeric value
    inside the guard band around the target would signal an absorption
    failure upstream and raises instead of guessing.
    """
    if isinstance(value, int):
        return value == target
    if abs(value - target) < NUMERIC_GUARD:
        raise AssertionError(
            f"numeric eigenvalue {value} too close to integer {target} to order"
        )
    return False


def _multisets_match(a: Iterable[int | float], b: Iterable[int | float],
                     tol: float = NUMERIC_GUARD) -> bool:
    """Exact equality on certified integers, tolerance pairing on numerics."""
    ints_a = sorted(v for v in a if isinstance(v, int))
    ints_b = sorted(v for v in b if isinstance(v, int))
    if ints_a != ints_b:
        return False
    flo_a = sorted(float(v) for v in a if not isinstance(v, int))
    flo_b = sorted(float(v) for v in b if not isinstance(v, int))
    if len(flo_a) != len(flo_b):
        return False
    return all(abs(x - y) <= tol for x, y in zip(flo_a, flo_b))


# ---------------------------------------------------------------------------
# cyclic-group claims


def check_cyclic_algcon(n: int) -> ClaimReport:
    """Algebraic connectivity of the cyclic power graph equals phi(n)+1
    exactly when n is prime or a product of two distinct primes."""
    started = time.perf_counter()
    if n < 2:
        raise ValueError("requires n >= 2")
    s = _cyclic_spectrum(n)
    mu = algebraic_connectivity(s)
    target = euler_phi(n) + 1
    f = factorize(n)
    predicate = f.is_prime or f.is_product_of_two_distinct_primes
    attains = _exact_equals_int(mu, target)
    ok = attains == predicate
    return _report(
        "cyclic-algcon",
        {"n": n},
        ok,
        f"n={n}: algcon={mu}, phi(n)+1={target}, predicate={predicate}",
        {
            "algebraic_connectivity": mu,
            "phi_plus_one": target,
            "predicate": predicate,
            "attains_bound": attains,
        },
        started,
    )


def check_cyclic_radius_mult(n: int) -> ClaimReport:
    """The spectral radius n of the cyclic power graph has multiplicity
    phi(n)+1 exactly when n = 4 or n is not a prime power; for composite n
    the spectrum also splits into the top block of n's and the shifted
    spectrum of the reduced graph."""
    started = time.perf_counter()
    if n < 2:
        raise ValueError("requires n >= 2")
    s = _cyclic_spectrum(n)
    radius = spectral_radius(s)
    mult = spectral_radius_multiplicity(s)
    target = euler_phi(n) + 1
    f = factorize(n)
    predicate = n == 4 or not f.is_prime_power
    ok = (radius == n) and ((mult == target) == predicate)
    evidence = {
        "radius": radius,
        "radius_multiplicity": mult,
        "phi_plus_one": target,
        "predicate": predicate,
    }

    block_ok = True
    if not f.is_prime:
        vals = s.eigenvalues_descending()
        phi1 = target
        top = vals[:phi1]
        block_ok = all(isinstance(v, int) and v == n for v in top)
        window = vals[phi1 : n - 1]
        reduced = spectrum(reduced_cyclic_graph(n))
        shifted = [
            (v + phi1) if isinstance(v, int) else float(v) + phi1
            for v in reduced.eigenvalues_descending()[:-1]
        ]
        block_ok = block_ok and _multisets_match(window, shifted)
        evidence["block_structure"] = block_ok
    ok = ok and block_ok
    return _report(
        "cyclic-radius-mult",
        {"n": n},
        ok,
        f"n={n}: radius={radius}, multiplicity={mult}, phi(n)+1={target}, "
        f"predicate={predicate}, block={block_ok}",
        evidence,
        started,
    )


def check_cyclic_kappa_eq_mu(n: int) -> ClaimReport:
    """Vertex connectivity equals algebraic connectivity for the cyclic
    power graph exactly when n is a product of two distinct primes."""
    started = time.perf_counter()
    if n < 2:
        raise ValueError("requires n >= 2")
    s = _cyclic_spectrum(n)
    mu = algebraic_connectivity(s)
    kappa = _cyclic_kappa(n)
    predicate = factorize(n).is_product_of_two_distinct_primes
    equal = _exact_equals_int(mu, kappa)
    ok = equal == predicate
    return _report(
        "cyclic-kappa-vs-algcon",
        {"n": n},
        ok,
        f"n={n}: kappa={kappa}, algcon={mu}, predicate={predicate}",
        {
            "kappa": kappa,
            "algebraic_connectivity": mu,
            "equal": equal,
            "predicate": predicate,
        },
        started,
    )


# ---------------------------------------------------------------------------
# dicyclic claims


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def quaternion_closed_form(alpha: int) -> FactoredCharPoly:
    """Closed-form spectrum of the generalized quaternion power graph."""
    if alpha < 2:
        raise ValueError("alpha must be >= 2")
    counts: Counter = Counter()
    counts[0] += 1
    counts[2] += 2 ** (alpha - 1)
    counts[4] += 2 ** (alpha - 1)
    counts[2**alpha] += 2**alpha - 3
    counts[2 ** (alpha + 1)] += 2
    return FactoredCharPoly.from_counts(counts)


def check_dicyclic_bundle(n: int) -> ClaimReport:
    """All spectral claims about the order-4n dicyclic power graph at once.

    Verifies the (1, 2] algebraic-connectivity window, the spectral
    radius multiplicity rule, the five-way equivalence (connectivity
    equality, connectivity value 2, integrality of the connectivity,
    integrality of the whole spectrum, n a power of two), the universal
    adjacency of the unique involution, the closed-form spectrum in the
    power-of-two case, and the join decomposition when the equality of
    connectivities holds.
    """
    started = time.perf_counter()
    if n < 2:
        raise ValueError("requires n >= 2")
    g = power_graph(dicyclic_group(n))
    order = 4 * n
    s = spectrum(g)
    mu = algebraic_connectivity(s)
    cut = vertex_connectivity(g)
    kappa = cut.size
    pow2 = _is_power_of_two(n)
    failures: list[str] = []

    # (a) 1 < algcon <= 2, with the eigenvalue 2 certified exactly
    mu_f = float(mu)
    two_present = s.exact.multiplicity(2) >= 1
    if not (mu_f > 1.0 + NUMERIC_GUARD):
        failures.append(f"algcon {mu} not above 1")
    if not (mu_f <= 2.0 + NUMERIC_GUARD):
        failures.append(f"algcon {mu} above 2")
    if not two_present:
        failures.append("2 is not a certified eigenvalue")

    # (b) multiplicity of the radius 4n
    mult = spectral_radius_multiplicity(s)
    radius = spectral_radius(s)
    if radius != order:
        failures.append(f"radius {radius} != {order}")
    if mult != (2 if pow2 else 1):
        failures.append(f"radius multiplicity {mult}, expected {2 if pow2 else 1}")

    # (c) five-way equivalence
    s1 = _exact_equals_int(mu, kappa)
    s2 = _exact_equals_int(mu, 2)
    s3 = isinstance(mu, int)
    s4 = s.is_exact
    s5 = pow2
    statements = {"kappa_eq_algcon": s1, "algcon_is_2": s2,
                  "algcon_integer": s3, "laplacian_integral": s4,
                  "power_of_two": s5}
    if len({s1, s2, s3, s4, s5}) != 1:
        failures.append(f"equivalence mismatch: {statements}")

    # (d) the involution a^n is universal exactly in the power-of-two case
    universal = g.degree(n) == order - 1
    if universal != pow2:
        failures.append(f"a^n universal={universal}, power-of-two={pow2}")

    # (e) closed-form spectrum for generalized quaternion orders
    if pow2:
        alpha = n.bit_length()
        expected = quaternion_closed_form(alpha)
        if not (s.is_exact and s.exact == expected):
            failures.append(f"spectrum {s.exact.text()} != closed form {expected.text()}")

    # (f) join decomposition whenever the connectivities agree
    if s1:
        if kappa != 2:
            failures.append(f"kappa={kappa}, expected 2 for the join decomposition")
        sep = {0, n}  # identity and the involution a^n
        join_side = all(
            g.adjacent(v, 0) and g.adjacent(v, n)
            for v in range(order)
            if v not in sep
        )
        rest = induced_subgraph(g, [v for v in range(order) if v not in sep])
        disconnected = len(components(rest)) >= 2
        if not join_side:
            failures.append("some vertex misses the {e, a^n} join")
        if not disconnected:
            failures.append("removing {e, a^n} leaves the graph connected")

    if kappa != 2:
        failures.append(f"vertex connectivity {kappa} != 2")
    sep_check = induced_subgraph(g, [v for v in range(order) if v not in (0, n)])
    if len(components(sep_check)) < 2:
        failures.append("{e, a^n} does not separate the graph")

    ok = not failures
    return _report(
        "dicyclic-bundle",
        {"n": n},
        ok,
        f"n={n}: " + "; ".join(failures) if failures else None,
        {
            "order": order,
            "algebraic_connectivity": mu,
            "kappa": kappa,
            "kappa_witness": list(cut.separating_set),
            "radius_multiplicity": mult,
            "statements": statements,
            "universal_involution": universal,
        },
        started,
    )


# ---------------------------------------------------------------------------
# p-group claims


def is_cyclic(g: FiniteGroup) -> bool:
    return max(g.orders()) == g.order


def is_generalized_quaternion(g: FiniteGroup) -> bool:
    """Whether the group satisfies the generalized quaternion presentation."""
    order = g.order
    if order < 8 or not _is_power_of_two(order):
        return False
    m = order // 4  # presentation parameter: a has order 2m, b*b = a^m
    masks = g.subgroup_masks()
    orders = g.orders()
    for a in range(order):
        if orders[a] != 2 * m:
            continue
        amask = masks[a]
        am = a
        for _ in range(m - 1):
            am = g.mul(am, a)
        a_inv = g.inverse(a)
        for b in range(order):
            if (amask >> b) & 1:
                continue
            if g.mul(b, b) != am:
                continue
            # b a b^-1 == a^-1
            if g.mul(g.mul(b, a), g.inverse(b)) == a_inv:
                return True
        return False  # one maximal cyclic subgroup candidate suffices
    return False


def check_pgroup_bundle(g: FiniteGroup) -> ClaimReport:
    """All spectral claims about one p-group power graph at once.

    Verifies that connectivity value 1, radius multiplicity 1 and "neither
    cyclic nor generalized quaternion" coincide (order >= 3); that the
    vertex and algebraic connectivities agree exactly when the group is
    not cyclic; that the spectrum is certified integral and every
    eigenvalue classifies structurally; the order-p^2 closed forms; and
    that the recursive characteristic polynomial matches the direct one.
    """
    started = time.perf_counter()
    p = is_p_group(g)
    if p is None:
        return ClaimReport(
            claim_id="pgroup-bundle",
            parameters={"group": g.label, "order": g.order},
            verdict="inapplicable",
            witness=None,
            evidence={"reason": "not a p-group"},
            elapsed=time.perf_counter() - started,
        )
    pg = power_graph(g)
    s = spectrum(pg)
    cut = vertex_connectivity(pg)
    kappa = cut.size
    cyclic = is_cyclic(g)
    genq = is_generalized_quaternion(g)
    failures: list[str] = []

    mu = algebraic_connectivity(s) if g.order >= 2 else 0

    # (a) three-way equivalence, stated for order >= 3
    if g.order >= 3:
        a1 = _exact_equals_int(mu, 1)
        a2 = spectral_radius_multiplicity(s) == 1
        a3 = not cyclic and not genq
        if len({a1, a2, a3}) != 1:
            failures.append(
                f"algcon-1={a1}, radius-mult-1={a2}, neither-cyclic-nor-gq={a3}"
            )

    # (b) kappa equals algcon exactly when not cyclic
    b1 = _exact_equals_int(mu, kappa) if g.order >= 2 else True
    if g.order >= 2 and b1 != (not cyclic):
        failures.append(f"kappa={kappa}, algcon={mu}, cyclic={cyclic}")

    # (c) certified integral spectrum, full classification
    if not s.is_exact:
        failures.append("spectrum is not certified integral")
    else:
        try:
            classify_eigenvalues(g, s)
        except AssertionError as exc:
            failures.append(str(exc))
        prop = check_multiple_property(g, s)
        if not prop.ok:
            failures.extend(prop.violations)

    # (d) order p^2 closed forms
    if g.order == p * p:
        if cyclic:
            expected = FactoredCharPoly.from_counts({0: 1, p * p: p * p - 1})
        else:
            expected = FactoredCharPoly.from_counts(
                {0: 1, 1: p, p: (p + 1) * (p - 2), p * p: 1}
            )
        if not (s.is_exact and s.exact == expected):
            failures.append(
                f"order p^2 spectrum {s.exact.text()} != {expected.text()}"
            )

    # (e) recursive characteristic polynomial equals the direct spectrum
    recursive = tree_charpoly(decompose(g))
    if not (s.is_exact and recursive == s.exact):
        failures.append(
            f"recursion gives {recursive.text()}, direct gives {s.exact.text()}"
        )

    ok = not failures
    return _report(
        "pgroup-bundle",
        {"group": g.label, "order": g.order, "prime": p},
        ok,
        f"{g.label}: " + "; ".join(failures) if failures else None,
        {
            "kappa": kappa,
            "algebraic_connectivity": mu,
            "radius_multiplicity": spectral_radius_multiplicity(s),
            "cyclic": cyclic,
            "generalized_quaternion": genq,
            "laplacian_integral": s.is_exact,
        },
        started,
    )


# ---------------------------------------------------------------------------
# the conjecture scanner


@dataclass(frozen=True)
class ConjectureRow:
    """One scanned order: exact integrality facts and the order predicate."""

    n: int
    algcon_integer: bool
    laplacian_integral: bool
    predicate_strict: bool  # prime power or product of two distinct primes
    predicate_loose: bool  # prime power or product of two primes (p = q allowed)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "algcon_integer": self.algcon_integer,
            "laplacian_integral": self.laplacian_integral,
            "predicate_strict": self.predicate_strict,
            "predicate_loose": self.predicate_loose,
        }

    def to_tsv(self) -> str:
        return "\t".join(
            str(x).lower() if isinstance(x, bool) else str(x)
            for x in (
                self.n,
                self.algcon_integer,
                self.laplacian_integral,
                self.predicate_strict,
                self.predicate_loose,
            )
        )


TSV_HEADER = "n\talgcon_integer\tlaplacian_integral\tpredicate_strict\tpredicate_loose"


def scan_conjecture(max_n: int) -> tuple[list[ConjectureRow], dict]:
    """Scan 2..max_n for the three-way equivalence between integral
    algebraic connectivity, an integral spectrum, and the order predicate.

    Integrality comes from the exact engine only.  The summary lists the
    orders violating the equivalence under each reading of "product of
    two primes" (the two readings define the same predicate, since a
    square of a prime is already a prime power; both are still reported).
    """
    if max_n < 2:
        raise ValueError("requires max_n >= 2")
    rows: list[ConjectureRow] = []
    for n in range(2, max_n + 1):
        s = _cyclic_spectrum(n)
        mu = algebraic_connectivity(s)
        algcon_integer = isinstance(mu, int)
        laplacian_integral = s.is_exact
        if laplacian_integral and not algcon_integer:
            raise AssertionError("integral spectrum with non-integral connectivity")
        f = factorize(n)
        strict = f.is_prime_power or f.is_product_of_two_distinct_primes
        loose = f.is_prime_power or f.is_product_of_two_primes
        rows.append(
            ConjectureRow(n, algcon_integer, laplacian_integral, strict, loose)
        )
    failures_strict = [
        r.n
        for r in rows
        if not (r.algcon_integer == r.laplacian_integral == r.predicate_strict)
    ]
    failures_loose = [
        r.n
        for r in rows
        if not (r.algcon_integer == r.laplacian_integral == r.predicate_loose)
    ]
    summary = {
        "max_n": max_n,
        "rows": len(rows),
        "failures_strict": failures_strict,
        "failures_loose": failures_loose,
        "holds_strict": not failures_strict,
        "holds_loose": not failures_loose,
    }
    return rows, summary


# ---------------------------------------------------------------------------
# suites and the p-group catalog


def _partitions(k: int, cap: Optional[int] = None):
    if k == 0:
        yield ()
        return
    cap = k if cap is None else min(cap, k)
    for first in range(cap, 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def pgroup_catalog(max_order: int) -> list[FiniteGroup]:
    """Every p-group of order <= max_order built from cyclic direct
    products, plus the generalized quaternion groups."""
    groups: list[FiniteGroup] = []
    p = 2
    while p <= max_order:
        if factorize(p).is_prime:
            pk = p
            k = 1
            while pk <= max_order:
                for part in _partitions(k):
                    factors = [cyclic_group(p**a) for a in part]
                    g = factors[0]
                    for f in factors[1:]:
                        g = direct_product(g, f)
                    groups.append(g)
                k += 1
                pk *= p
        p += 1
    alpha = 2
    while 2 ** (alpha + 1) <= max_order:
        groups.append(generalized_quaternion(alpha))
        alpha += 1
    groups.sort(key=lambda g: (g.order, g.label))
    return groups


def run_cyclic_suite(max_n: int) -> list[ClaimReport]:
    reports = []
    for n in range(2, max_n + 1):
        reports.append(check_cyclic_algcon(n))
        reports.append(check_cyclic_radius_mult(n))
        reports.append(check_cyclic_kappa_eq_mu(n))
    return reports


def run_dicyclic_suite(max_n: int) -> list[ClaimReport]:
    return [check_dicyclic_bundle(n) for n in range(2, max_n + 1)]


def run_pgroup_suite(max_order: int) -> list[ClaimReport]:
    return [check_pgroup_bundle(g) for g in pgroup_catalog(max_order)]
