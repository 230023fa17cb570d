"""Recursive structure of p-group power graphs.

For a p-group, the power graph decomposes recursively: the subgraph
induced by U(g) is a clique on the ~-class of g joined to the disjoint
union of the subgraphs for the primitive classes above g.  This module
builds that decomposition tree, materializes it, evaluates its factored
characteristic polynomial through the join/union calculus, and
classifies every Laplacian eigenvalue into its structural form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .graphs import Graph
from .groups import (
    FiniteGroup,
    euler_phi,
    factorize,
    hat_up_set,
    is_p_group,
    primitive_classes,
    up_set,
)
from .spectra import (
    FactoredCharPoly,
    Spectrum,
    clique_charpoly,
    join_charpoly,
    union_charpoly,
)

__all__ = [
    "CliqueLeaf",
    "JoinNode",
    "DecompTree",
    "EigenvalueForm",
    "MultiplePropertyReport",
    "decompose",
    "tree_vertex_count",
    "tree_graph",
    "tree_charpoly",
    "tree_string",
    "tree_json_dict",
    "classify_eigenvalues",
    "check_multiple_property",
]


@dataclass(frozen=True)
class CliqueLeaf:
    """A ~-class with no primitive classes above it: a complete subgraph."""

    size: int
    element: int
    element_order: int
    upset_size: int


@dataclass(frozen=True)
class JoinNode:
    """An apex clique (one ~-class) joined to the subtrees above it."""

    apex_size: int
    children: tuple["DecompTree", ...]
    element: int
    element_order: int
    upset_size: int


DecompTree = Union[CliqueLeaf, JoinNode]


def decompose(g: FiniteGroup) -> DecompTree:
    """Decomposition tree of the power graph of a p-group.

    Children are sorted by descending vertex count, then by
    representative element index, so trees render canonically.
    """
    p = is_p_group(g)
    if p is None:
        raise ValueError(f"{g.label} is not a p-group")
    return _subtree(g, g.identity)


def _subtree(g: FiniteGroup, x: int) -> DecompTree:
    order = g.order_of(x)
    apex = euler_phi(order)
    upset = len(up_set(g, x))
    reps = primitive_classes(g, x)
    if not reps:
        return CliqueLeaf(size=apex, element=x, element_order=order, upset_size=upset)
    children = tuple(_subtree(g, h) for h in reps)
    children = tuple(
        sorted(children, key=lambda t: (-tree_vertex_count(t), t.element))
    )
    return JoinNode(
        apex_size=apex,
        children=children,
        element=x,
        element_order=order,
        upset_size=upset,
    )


def tree_vertex_count(t: DecompTree) -> int:
    if isinstance(t, CliqueLeaf):
        return t.size
    return t.apex_size + sum(tree_vertex_count(c) for c in t.children)


def tree_graph(t: DecompTree) -> Graph:
    """Materialize the join/union expression as an explicit graph."""
    if isinstance(t, CliqueLeaf):
        return Graph.complete(t.size)
    blocks = [tree_graph(c) for c in t.children]
    apex = t.apex_size
    total = apex + sum(b.n for b in blocks)
    rows = [0] * total
    # apex vertices form a clique and are adjacent to every block vertex
    full = (1 << total) - 1
    for v in range(apex):
        rows[v] = full ^ (1 << v)
    offset = apex
    apex_mask = (1 << apex) - 1
    for b in blocks:
        for v in range(b.n):
            rows[offset + v] = (b.rows[v] << offset) | apex_mask
        offset += b.n
    return Graph(total, tuple(rows))


def tree_charpoly(t: DecompTree) -> FactoredCharPoly:
    """Factored characteristic polynomial, bottom-up through the calculus."""
    if isinstance(t, CliqueLeaf):
        return clique_charpoly(t.size)
    child_polys = [tree_charpoly(c) for c in t.children]
    union_poly = union_charpoly(child_polys)
    union_size = sum(tree_vertex_count(c) for c in t.children)
    return join_charpoly(
        clique_charpoly(t.apex_size), t.apex_size, union_poly, union_size
    )


def tree_string(t: DecompTree) -> str:
    """Canonical text form, e.g. ``K1 v ((K2 v 3*K6) + 3*K2)``."""
    if isinstance(t, CliqueLeaf):
        return f"K{t.size}"
    terms: list[str] = []
    counts: list[int] = []
    for c in t.children:
        s = tree_string(c)
        if isinstance(c, JoinNode):
            s = f"({s})"
        if terms and terms[-1] == s:
            counts[-1] += 1
        else:
            terms.append(s)
            counts.append(1)
    rendered = [f"{k}*{s}" if k > 1 else s for s, k in zip(terms, counts)]
    body = " + ".join(rendered)
    if len(rendered) > 1:
        body = f"({body})"
    return f"K{t.apex_size} v {body}"


def tree_json_dict(t: DecompTree) -> dict:
    base = {
        "element": t.element,
        "order": t.element_order,
        "u_size": t.upset_size,
    }
    if isinstance(t, CliqueLeaf):
        return {"clique": t.size, **base}
    return {
        "join": {
            "apex": t.apex_size,
            "children": [tree_json_dict(c) for c in t.children],
        },
        **base,
    }


def tree_json(t: DecompTree) -> str:
    return json.dumps(tree_json_dict(t), sort_keys=True)


# ---------------------------------------------------------------------------
# eigenvalue classification


@dataclass(frozen=True)
class EigenvalueForm:
    """Structural form of one Laplacian eigenvalue of a p-group power graph.

    form is "zero", "order_of" (value equals the order of the witness) or
    "uhat_plus_order" (value equals |U(w)| - |[w]| + o(w) for witness w).
    """

    value: int
    form: str
    witness: int | None


def classify_eigenvalues(g: FiniteGroup, s: Spectrum) -> list[EigenvalueForm]:
    """Assign every distinct eigenvalue its structural form with a witness.

    An unclassifiable eigenvalue would falsify the structural theory and
    raises immediately.
    """
    if is_p_group(g) is None:
        raise ValueError(f"{g.label} is not a p-group")
    if not s.is_exact:
        raise ValueError("classification requires an exact spectrum")
    orders = g.orders()
    forms: list[EigenvalueForm] = []
    for value, _ in s.exact.factors:
        if value == 0:
            forms.append(EigenvalueForm(0, "zero", None))
            continue
        witness = next((x for x in range(g.order) if orders[x] == value), None)
        if witness is not None:
            forms.append(EigenvalueForm(value, "order_of", witness))
            continue
        witness = next(
            (
                x
                for x in range(g.order)
                if len(hat_up_set(g, x)) + orders[x] == value
            ),
            None,
        )
        if witness is not None:
            forms.append(EigenvalueForm(value, "uhat_plus_order", witness))
            continue
        raise AssertionError(
            f"eigenvalue {value} of {g.label} fits no structural form"
        )
    return forms


@dataclass(frozen=True)
class MultiplePropertyReport:
    """Divisibility facts about the eigenvalues of a p-group power graph."""

    ok: bool
    prime: int
    violations: tuple[str, ...]


def check_multiple_property(g: FiniteGroup, s: Spectrum) -> MultiplePropertyReport:
    """Verify the divisibility properties of an exact p-group spectrum.

    Every nonzero eigenvalue must be 1 or divisible by p; for every
    element x, |U-hat(x)| + o(x) must be a multiple of o(x); and whenever
    that quantity is a prime power, the primitive-class count of x must
    be 0 or congruent to 1 mod p.
    """
    p = is_p_group(g)
    if p is None:
        raise ValueError(f"{g.label} is not a p-group")
    if not s.is_exact:
        raise ValueError("the property check requires an exact spectrum")
    violations: list[str] = []
    for value, _ in s.exact.factors:
        if value not in (0, 1) and value % p != 0:
            violations.append(f"eigenvalue {value} is neither 1 nor a multiple of {p}")
    orders = g.orders()
    for x in range(g.order):
        combined = len(hat_up_set(g, x)) + orders[x]
        if combined % orders[x] != 0:
            violations.append(
                f"element {x}: |U-hat|+order = {combined} not a multiple of {orders[x]}"
            )
        if _is_prime_power(combined):
            pi = len(primitive_classes(g, x))
            if pi != 0 and pi % p != 1:
                violations.append(
                    f"element {x}: prime-power value {combined} but {pi} primitive classes"
                )
    return MultiplePropertyReport(
        ok=not violations, prime=p, violations=tuple(violations)
    )


def _is_prime_power(n: int) -> bool:
    return n >= 2 and factorize(n).is_prime_power
