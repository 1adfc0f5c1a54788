"""Chromatic symmetric functions in noncommuting variables.

Four independent computation routes are provided and must agree:

* ``subset``     signed sum over edge subsets, indexed by the partition into
                 connected components of each spanning subgraph;
* ``mobius``     Moebius-weighted sum over the contraction lattice;
* ``delcon``     deletion-contraction recursion on a relabeled last edge;
* ``definition`` monomial expansion over proper-coloring patterns, i.e. the
                 partitions all of whose blocks are independent sets.

On top of these sit the classification reports (elementary-basis positivity,
the global sign pattern in the x basis), the k-cycle deletion identity, the
tree expansion in the x basis, and the matching identity tying single x
terms to clique unions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Optional

from .elements import (
    NCSymElement,
    SymElement,
    basis_term,
    coefficient,
    convert,
    scale,
)
from .errors import DomainError, InvariantViolation, ResourceLimitError
from .graphs import (
    LabeledGraph,
    complete_graph_union,
    components_partition,
    contract_last_edge,
    contraction_lattice,
    delete_edges,
    induced_subgraph,
    is_clique_union,
    is_tree,
)
from .partitions import (
    Permutation,
    SetPartition,
    iter_partitions,
    max_ground_set,
)

DEFAULT_SUBSET_EDGE_LIMIT = 22
DEFAULT_DELCON_BUDGET = 1 << 21

_delcon_memo: dict[tuple, dict] = {}
_auto_cache: dict[tuple, NCSymElement] = {}


def clear_caches() -> None:
    """Drop the deletion-contraction memo and the shared result cache."""
    _delcon_memo.clear()
    _auto_cache.clear()


# ---------------------------------------------------------------------------
# route 1: edge subsets


def _walk_edge_subsets(graph: LabeledGraph,
                       visit: Callable[[tuple[tuple[int, ...], ...], int], None]) -> None:
    """Call visit(blocks, sign) once per edge subset, where blocks is the
    canonical component partition of the subset and sign is (-1)^|subset|.

    Uses a union-find with an undo trail so each inclusion/exclusion step is
    near constant time.
    """
    n = graph.n
    edges = graph.edges
    parent = list(range(n + 1))
    size = [1] * (n + 1)
    trail: list[int] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def union(u: int, v: int) -> None:
        ru, rv = find(u), find(v)
        if ru == rv:
            trail.append(0)
            return
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        trail.append(rv)

    def undo() -> None:
        rv = trail.pop()
        if rv:
            ru = parent[rv]
            parent[rv] = rv
            size[ru] -= size[rv]

    def blocks_now() -> tuple[tuple[int, ...], ...]:
        groups: dict[int, list[int]] = {}
        for x in range(1, n + 1):
            groups.setdefault(find(x), []).append(x)
        return tuple(tuple(g) for g in sorted(groups.values(), key=lambda b: b[0]))

    def recurse(i: int, sign: int) -> None:
        if i == len(edges):
            visit(blocks_now(), sign)
            return
        recurse(i + 1, sign)
        union(*edges[i])
        recurse(i + 1, -sign)
        undo()

    recurse(0, 1)


def _check_subset_limit(graph: LabeledGraph, edge_limit: Optional[int]) -> None:
    limit = DEFAULT_SUBSET_EDGE_LIMIT if edge_limit is None else edge_limit
    if len(graph.edges) > limit:
        raise ResourceLimitError(
            f"edge-subset expansion limited to {limit} edges, graph has {len(graph.edges)}")


def csf_from_edge_subsets(graph: LabeledGraph,
                          edge_limit: Optional[int] = None) -> NCSymElement:
    """Signed edge-subset expansion; returns a p-basis element."""
    _check_subset_limit(graph, edge_limit)
    counts: dict[tuple, int] = {}

    def visit(blocks, sign):
        counts[blocks] = counts.get(blocks, 0) + sign

    _walk_edge_subsets(graph, visit)
    terms = {SetPartition._raw(graph.n, blocks): Fraction(total)
             for blocks, total in counts.items() if total}
    return NCSymElement._raw("p", graph.n, terms)


def classical_csf(graph: LabeledGraph,
                  edge_limit: Optional[int] = None) -> SymElement:
    """The commuting-variable chromatic symmetric function, computed by its
    own edge-subset expansion over power sums indexed by component shapes."""
    _check_subset_limit(graph, edge_limit)
    from .partitions import IntegerPartition

    counts: dict[tuple, int] = {}

    def visit(blocks, sign):
        lam = tuple(sorted((len(b) for b in blocks), reverse=True))
        counts[lam] = counts.get(lam, 0) + sign

    _walk_edge_subsets(graph, visit)
    terms = {IntegerPartition(lam): Fraction(total)
             for lam, total in counts.items() if total}
    return SymElement._raw("p", graph.n, terms)


# ---------------------------------------------------------------------------
# route 2: contraction lattice


def csf_from_contraction_lattice(graph: LabeledGraph) -> NCSymElement:
    """Moebius-weighted sum of power sums over the connected partitions."""
    lattice = contraction_lattice(graph)
    terms = {pi: Fraction(value) for pi, value in lattice.mobius0.items()}
    return NCSymElement._raw("p", graph.n, terms)


# ---------------------------------------------------------------------------
# route 3: deletion-contraction


def csf_by_deletion_contraction(graph: LabeledGraph,
                                budget: Optional[int] = None) -> NCSymElement:
    """Deletion-contraction recursion, memoized on the exact labeled graph.

    Each expansion relabels the lexicographically largest edge onto the two
    top labels (order-preservingly elsewhere), recurses on deletion and on
    contraction followed by induction, then undoes the relabeling.
    Disconnected graphs split into components first.
    """
    remaining = [DEFAULT_DELCON_BUDGET if budget is None else budget]
    terms = _delcon(graph, remaining)
    return NCSymElement._raw("p", graph.n, dict(terms))


def _delcon(graph: LabeledGraph, remaining: list[int]) -> dict:
    key = graph.key()
    hit = _delcon_memo.get(key)
    if hit is not None:
        return hit
    if remaining[0] <= 0:
        raise ResourceLimitError(
            "deletion-contraction expansion budget exhausted "
            f"(limit {DEFAULT_DELCON_BUDGET} expansions)")
    remaining[0] -= 1
    n = graph.n
    if not graph.edges:
        result = {SetPartition.singletons(n): Fraction(1)}
    else:
        comp = components_partition(graph)
        if len(comp.blocks) > 1:
            result = _delcon_split(graph, comp, remaining)
        else:
            u, v = graph.edges[-1]
            others = [x for x in range(1, n + 1) if x != u and x != v]
            images = [0] * n
            images[u - 1] = n - 1
            images[v - 1] = n
            for slot, x in enumerate(others, start=1):
                images[x - 1] = slot
            delta = Permutation(images)
            moved = LabeledGraph(n, [(delta(a), delta(b)) for a, b in graph.edges])
            deleted = LabeledGraph(n, [e for e in moved.edges if e != (n - 1, n)])
            del_terms = _delcon(deleted, remaining)
            con_terms = _delcon(contract_last_edge(moved), remaining)
            combined = dict(del_terms)
            for pi, coeff in con_terms.items():
                key2 = pi.adjoin_top()
                total = combined.get(key2, Fraction(0)) - coeff
                if total:
                    combined[key2] = total
                else:
                    combined.pop(key2, None)
            inverse = delta.inverse()
            result = {pi.permuted(inverse): coeff for pi, coeff in combined.items()}
    return _delcon_memo.setdefault(key, result)


def _delcon_split(graph: LabeledGraph, comp: SetPartition,
                  remaining: list[int]) -> dict:
    # product over components, then undo the relabeling onto slash position
    order = [x for block in comp.blocks for x in block]
    images = [0] * graph.n
    for slot, x in enumerate(order, start=1):
        images[x - 1] = slot
    delta = Permutation(images)
    product_terms = {SetPartition.empty(): Fraction(1)}
    for block in comp.blocks:
        piece = induced_subgraph(graph, block)
        piece_terms = _delcon(piece, remaining)
        merged: dict[SetPartition, Fraction] = {}
        for left, a in product_terms.items():
            for right, b in piece_terms.items():
                merged[left.slash(right)] = a * b
        product_terms = merged
    inverse = delta.inverse()
    return {pi.permuted(inverse): coeff for pi, coeff in product_terms.items()}


# ---------------------------------------------------------------------------
# route 4: the coloring definition


def csf_from_colorings(graph: LabeledGraph) -> NCSymElement:
    """Monomial expansion: one m term per partition of the vertices into
    independent sets (the equality patterns of proper colorings)."""
    limit = max_ground_set()
    if graph.n > limit:
        raise ResourceLimitError(
            f"coloring expansion limited to n <= {limit} (NCSYM_MAX_N), got {graph.n}")
    if graph.n == 0:
        return NCSymElement._raw("m", 0, {SetPartition.empty(): Fraction(1)})
    terms = {}
    for pi in iter_partitions(graph.n):
        independent = True
        for block in pi.blocks:
            mask = 0
            for x in block:
                mask |= 1 << x
            if any(graph._adj[x] & mask for x in block):
                independent = False
                break
        if independent:
            terms[pi] = Fraction(1)
    return NCSymElement._raw("m", graph.n, terms)


# ---------------------------------------------------------------------------
# dispatcher


def chromatic_symmetric_function(graph: LabeledGraph,
                                 method: str = "auto") -> NCSymElement:
    """Compute the chromatic symmetric function of a labeled graph.

    method 'auto' picks edge subsets for small edge counts, the contraction
    lattice while exhaustive enumeration is allowed, and deletion-contraction
    beyond that; results for 'auto' are cached per graph.  The 'definition'
    route returns an m-basis element, all others return p-basis.
    """
    if method == "auto":
        key = graph.key()
        hit = _auto_cache.get(key)
        if hit is not None:
            return hit
        if len(graph.edges) <= 18:
            out = csf_from_edge_subsets(graph)
        elif graph.n <= max_ground_set():
            out = csf_from_contraction_lattice(graph)
        else:
            out = csf_by_deletion_contraction(graph)
        return _auto_cache.setdefault(key, out)
    if method == "subset":
        return csf_from_edge_subsets(graph)
    if method == "mobius":
        return csf_from_contraction_lattice(graph)
    if method == "delcon":
        return csf_by_deletion_contraction(graph)
    if method == "definition":
        return csf_from_colorings(graph)
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# identities


def k_deletion_sum(graph: LabeledGraph,
                   cycle_edges: Iterable[tuple[int, int]]) -> NCSymElement:
    """Alternating sum of chromatic functions over deletions of all subsets
    of the first k-1 listed cycle edges.  The listed edges must form a simple
    cycle in the graph; the result is the zero element of the same degree."""
    edges = []
    for edge in cycle_edges:
        u, v = edge
        edges.append((u, v) if u < v else (v, u))
    k = len(edges)
    if k < 3:
        raise DomainError("a cycle needs at least 3 edges")
    if len(set(edges)) != k:
        raise DomainError("cycle edges must be distinct")
    degree: dict[int, int] = {}
    for u, v in edges:
        if (u, v) not in graph.edges:
            raise DomainError(f"edge ({u}, {v}) not present in the graph")
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    if len(degree) != k or any(d != 2 for d in degree.values()):
        raise DomainError("listed edges do not form a simple cycle")
    cycle_graph = LabeledGraph(graph.n, edges)
    mask = 0
    for v in degree:
        mask |= 1 << v
    if not cycle_graph.is_connected_subset(mask):
        raise DomainError("listed edges do not form a single cycle")

    removable = edges[:-1]
    totals: dict[SetPartition, Fraction] = {}
    for mask_bits in range(1 << len(removable)):
        subset = [removable[i] for i in range(len(removable)) if mask_bits >> i & 1]
        sign = -1 if len(subset) % 2 else 1
        value = chromatic_symmetric_function(delete_edges(graph, subset))
        for pi, coeff in value._terms.items():
            total = totals.get(pi, Fraction(0)) + sign * coeff
            if total:
                totals[pi] = total
            else:
                totals.pop(pi, None)
    return NCSymElement._raw("p", graph.n, totals)


def tree_x_expansion(tree: LabeledGraph) -> NCSymElement:
    """Signed x expansion of a tree's chromatic symmetric function.

    Sums x over the partitions whose path closure uses every tree edge and
    that leave no leaf in a singleton block, with the global sign
    (-1)^(n-1)."""
    if not is_tree(tree):
        raise DomainError("tree expansion requires a tree")
    n = tree.n
    if n > max_ground_set():
        raise ResourceLimitError(
            f"tree expansion limited to n <= {max_ground_set()} (NCSYM_MAX_N)")
    from .graphs import path_edge_closure

    required = frozenset(tree.edges)
    leaves = {v for v in range(1, n + 1) if tree.degree(v) == 1}
    sign = Fraction(-1 if (n - 1) % 2 else 1)
    terms = {}
    for sigma in iter_partitions(n):
        if any(len(block) == 1 and block[0] in leaves for block in sigma.blocks):
            continue
        if path_edge_closure(tree, sigma) == required:
            terms[sigma] = sign
    return NCSymElement._raw("x", n, terms)


def matching_x_identity(pi: SetPartition) -> NCSymElement:
    """For a partition with blocks of size at most two, the signed chromatic
    function of its clique union equals the single basis element x_pi.

    Returns (-1)^t * csf(clique union) converted to x, where t counts the
    two-element blocks, after asserting the equality."""
    t = 0
    for block in pi.blocks:
        if len(block) > 2:
            raise DomainError("matching identity needs blocks of size at most 2")
        if len(block) == 2:
            t += 1
    value = chromatic_symmetric_function(complete_graph_union(pi))
    signed = convert(scale(value, -1 if t % 2 else 1), "x")
    if signed != basis_term("x", pi):
        raise InvariantViolation(f"matching identity failed at {pi}")
    return signed


# ---------------------------------------------------------------------------
# classification reports


@dataclass(frozen=True)
class EPositivityReport:
    """Outcome of the elementary-basis positivity test.

    verdict is 'e_positive' exactly when every component is a clique, else
    'mixed' (a strictly positive and a strictly negative e coefficient both
    occur); 'zero' is reserved for the zero element and unreachable for
    graphs.  negative_witness, present whenever some component is not
    complete, pairs a witness partition with its negative coefficient: the
    witness splits one non-complete component into two blocks with no edges
    between them and keeps every other component whole.  top_coefficient is
    the coefficient of e at the components partition, always positive.
    """

    verdict: str
    is_clique_union: bool
    negative_witness: Optional[tuple[SetPartition, Fraction]]
    top_coefficient: Fraction

    def to_json_dict(self) -> dict:
        witness = None
        if self.negative_witness is not None:
            pi, coeff = self.negative_witness
            witness = {"partition": pi.to_text(),
                       "num": coeff.numerator, "den": coeff.denominator}
        return {
            "verdict": self.verdict,
            "is_clique_union": self.is_clique_union,
            "negative_witness": witness,
            "top_coefficient": {"num": self.top_coefficient.numerator,
                                "den": self.top_coefficient.denominator},
        }


def _component_top_coefficient(sub: LabeledGraph) -> Fraction:
    """Leading e coefficient of a connected graph: |top p coefficient|/(k-1)!."""
    k = sub.n
    value = chromatic_symmetric_function(sub)
    lead = value._terms.get(SetPartition.single_block(k), Fraction(0)) if k else Fraction(1)
    return Fraction(abs(lead), factorial(k - 1)) if k else Fraction(1)


def classify_e_positivity(graph: LabeledGraph) -> EPositivityReport:
    """Classify the e-basis sign pattern of a graph's chromatic function.

    The verdict rests on the clique-union criterion applied per component.
    For a non-clique-union graph the negative witness coefficient is computed
    two ways, by the closed formula (the witness cuts one component into two
    edgeless-across parts, so only the leading term survives) and by full
    conversion on that component; both must agree exactly.
    """
    comp = components_partition(graph)
    cliqueish = is_clique_union(graph)
    comp_tops: list[Fraction] = []
    subgraphs: list[LabeledGraph] = []
    for block in comp.blocks:
        sub = induced_subgraph(graph, block)
        subgraphs.append(sub)
        comp_tops.append(_component_top_coefficient(sub))
    top = Fraction(1)
    for value in comp_tops:
        top *= value
    witness = None
    if not cliqueish:
        index = next(i for i, sub in enumerate(subgraphs) if not is_clique_union(sub))
        sub = subgraphs[index]
        block = comp.blocks[index]
        k = sub.n
        pair = next((u, v) for u in range(1, k + 1) for v in range(u + 1, k + 1)
                    if not sub.has_edge(u, v))
        rest = tuple(x for x in range(1, k + 1) if x not in pair)
        local = SetPartition(k, [pair, rest])
        predicted = -comp_tops[index]
        converted = coefficient(chromatic_symmetric_function(sub), "e", local)
        if converted != predicted:
            raise InvariantViolation(
                f"witness coefficient mismatch on component {block}: "
                f"formula {predicted}, conversion {converted}")
        embedded_blocks = [tuple(block[x - 1] for x in pair),
                           tuple(block[x - 1] for x in rest)]
        embedded_blocks.extend(b for i, b in enumerate(comp.blocks) if i != index)
        global_pi = SetPartition(graph.n, embedded_blocks)
        global_coeff = predicted
        for i, value in enumerate(comp_tops):
            if i != index:
                global_coeff *= value
        witness = (global_pi, global_coeff)
    verdict = "e_positive" if cliqueish else "mixed"
    return EPositivityReport(verdict, cliqueish, witness, top)


@dataclass(frozen=True)
class XSignReport:
    """Sign pattern of the x expansion: with k components, the chromatic
    function times (-1)^(n-k) has nonnegative coordinates everywhere."""

    n: int
    component_count: int
    sign: int
    z_is_x_positive: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "component_count": self.component_count,
            "sign": self.sign,
            "z_is_x_positive": self.z_is_x_positive,
        }


def x_sign_report(graph: LabeledGraph) -> XSignReport:
    """Verify the global sign pattern of the x expansion and report it."""
    value = convert(chromatic_symmetric_function(graph), "x")
    k = len(components_partition(graph).blocks)
    sign = -1 if (graph.n - k) % 2 else 1
    positive = all(sign * coeff >= 0 for coeff in value._terms.values())
    if not positive:
        raise InvariantViolation(
            f"x-sign pattern violated on {graph!r}")
    return XSignReport(graph.n, k, sign, positive)
