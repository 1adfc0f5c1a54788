"""Families of chromatic symmetric functions that form bases of NCSym.

A generator strategy assigns to each atomic partition a connected graph on
the same ground set whose components partition is that partition.  Slashing
the generators along the atomic decomposition of an arbitrary pi produces a
graph G_pi; the chromatic functions of these graphs, written in the p basis,
are supported on refinements of pi with diagonal coefficient mu_L(0, pi),
which is never zero.  Triangularity with nonzero diagonal certifies a basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .chromatic import chromatic_symmetric_function
from .elements import NCSymElement, convert
from .errors import DomainError, InvariantViolation
from .graphs import (
    LabeledGraph,
    components_partition,
    contraction_lattice,
    slash_union,
)
from .partitions import SetPartition, enumerate_partitions, iter_partitions


@dataclass(frozen=True)
class AtomicGeneratorStrategy:
    """Names a rule producing one connected generator graph per atomic
    partition; rule(alpha) must return a connected graph on alpha's ground
    set whose components partition equals alpha."""

    name: str
    rule: Callable[[SetPartition], LabeledGraph]


def _path_rule(alpha: SetPartition) -> LabeledGraph:
    edges = []
    for block in alpha.blocks:
        edges.extend((block[i], block[i + 1]) for i in range(len(block) - 1))
    return LabeledGraph(alpha.n, edges)


def _clique_rule(alpha: SetPartition) -> LabeledGraph:
    edges = []
    for block in alpha.blocks:
        edges.extend((block[i], block[j])
                     for i in range(len(block)) for j in range(i + 1, len(block)))
    return LabeledGraph(alpha.n, edges)


PATH_PER_BLOCK = AtomicGeneratorStrategy("path_per_block", _path_rule)
CLIQUE_PER_BLOCK = AtomicGeneratorStrategy("clique_per_block", _clique_rule)

_BUILTIN = {s.name: s for s in (PATH_PER_BLOCK, CLIQUE_PER_BLOCK)}


def builtin_strategy(name: str) -> AtomicGeneratorStrategy:
    try:
        return _BUILTIN[name]
    except KeyError:
        raise DomainError(
            f"unknown strategy {name!r}; choose from {sorted(_BUILTIN)}") from None


def strategy_from_generators(name: str,
                             table: dict[SetPartition, LabeledGraph]) -> AtomicGeneratorStrategy:
    """Wrap an explicit atomic-partition-to-graph table as a strategy.

    Every key must be atomic and every value a graph on the key's ground set
    whose components partition equals the key."""
    for alpha, g in table.items():
        if not alpha.is_atomic:
            raise DomainError(f"{alpha.to_text()} is not atomic")
        if g.n != alpha.n:
            raise DomainError(
                f"generator for {alpha.to_text()} must have {alpha.n} vertices, got {g.n}")
        if components_partition(g) != alpha:
            raise DomainError(
                f"generator for {alpha.to_text()} has components "
                f"{components_partition(g).to_text()}")
    frozen = dict(table)

    def rule(alpha: SetPartition) -> LabeledGraph:
        g = frozen.get(alpha)
        if g is None:
            raise DomainError(f"no generator supplied for {alpha.to_text()}")
        return g

    return AtomicGeneratorStrategy(name, rule)


def generator_graph(strategy: AtomicGeneratorStrategy,
                    alpha: SetPartition) -> LabeledGraph:
    """The strategy's generator for one atomic partition, validated."""
    if not alpha.is_atomic:
        raise DomainError(f"{alpha.to_text()} is not atomic")
    graph = strategy.rule(alpha)
    if graph.n != alpha.n or components_partition(graph) != alpha:
        raise InvariantViolation(
            f"strategy {strategy.name} returned a graph whose components "
            f"partition is not {alpha.to_text()}")
    return graph


def basis_graph(strategy: AtomicGeneratorStrategy, pi: SetPartition) -> LabeledGraph:
    """Build G_pi by slashing generators along pi's atomic decomposition."""
    graph = LabeledGraph(0, [])
    for atom in pi.atomic_decomposition():
        graph = slash_union(graph, generator_graph(strategy, atom))
    return graph


def atomic_partitions_upto(n: int) -> list[SetPartition]:
    """All atomic set partitions of [m] for 1 <= m <= n."""
    out = []
    for m in range(1, n + 1):
        out.extend(pi for pi in iter_partitions(m) if pi.is_atomic)
    return out


@dataclass(frozen=True)
class ChromaticBasis:
    """A certified chromatic basis in degree n.

    order lists the set partitions in canonical enumeration order; graphs and
    elements are aligned with it, elements in the p basis.  generators maps
    each atomic partition of ground sets up to n to its generator graph.
    """

    n: int
    strategy: AtomicGeneratorStrategy
    order: tuple[SetPartition, ...]
    generators: dict[SetPartition, LabeledGraph]
    graphs: tuple[LabeledGraph, ...]
    elements: tuple[NCSymElement, ...]

    def index_of(self, pi: SetPartition) -> int:
        try:
            return self.order.index(pi)
        except ValueError:
            raise DomainError(
                f"{pi.to_text()} is not a degree-{self.n} partition") from None

    def element_at(self, pi: SetPartition) -> NCSymElement:
        return self.elements[self.index_of(pi)]


def build_basis(n: int, strategy: AtomicGeneratorStrategy) -> ChromaticBasis:
    """Construct and certify the chromatic basis of degree n.

    Certification checks, for every partition pi, that the p expansion of
    Y applied to the slashed generator graph is supported on refinements of
    pi and that the diagonal coefficient equals the independently recomputed
    lattice value mu_L(0, pi), which must be nonzero.  A failure of either
    check means the transition matrix could be singular and raises.
    """
    order = tuple(enumerate_partitions(n))
    generators = {alpha: generator_graph(strategy, alpha)
                  for alpha in atomic_partitions_upto(n)}
    graphs = []
    elements = []
    for pi in order:
        graph = basis_graph(strategy, pi)
        value = convert(chromatic_symmetric_function(graph), "p")
        for sigma, coeff in value._terms.items():
            if not sigma.refines(pi):
                raise InvariantViolation(
                    f"p support of basis element at {pi.to_text()} leaks to "
                    f"{sigma.to_text()}")
        diagonal = value._terms.get(pi, Fraction(0))
        expected = Fraction(contraction_lattice(graph).mobius0[pi])
        if not diagonal or diagonal != expected:
            raise InvariantViolation(
                f"diagonal coefficient at {pi.to_text()} is {diagonal}, "
                f"expected nonzero {expected}")
        graphs.append(graph)
        elements.append(value)
    return ChromaticBasis(n, strategy, order, generators,
                          tuple(graphs), tuple(elements))


def express(f: NCSymElement, basis: ChromaticBasis) -> dict[SetPartition, Fraction]:
    """Coordinates of f in the chromatic basis, by back-substitution.

    Works coarsest-first: the coarsest partition carrying a residue has its
    coefficient fixed by the diagonal, then that multiple of the basis
    element is subtracted; triangularity guarantees termination with an
    empty residue.
    """
    if f.degree != basis.n:
        raise DomainError(
            f"element of degree {f.degree} cannot be expressed "
            f"in a degree-{basis.n} basis")
    residue = dict(convert(f, "p")._terms)
    coords: dict[SetPartition, Fraction] = {}
    # coarsest first: fewest blocks, ties broken by canonical encoding
    for pi in sorted(basis.order, key=lambda q: (len(q.blocks), q.rgs)):
        value = residue.get(pi)
        if not value:
            continue
        element = basis.element_at(pi)
        coeff = value / element._terms[pi]
        coords[pi] = coeff
        for sigma, c in element._terms.items():
            total = residue.get(sigma, Fraction(0)) - coeff * c
            if total:
                residue[sigma] = total
            else:
                residue.pop(sigma, None)
    if residue:
        raise InvariantViolation("back-substitution left a nonzero residue")
    return coords


def combine(basis: ChromaticBasis,
            coords: dict[SetPartition, Fraction]) -> NCSymElement:
    """Inverse of express: assemble the linear combination sum c_pi Y_{G_pi}."""
    total = NCSymElement.zero("p", basis.n)
    for pi, coeff in coords.items():
        if not coeff:
            continue
        element = basis.element_at(pi)
        piece = NCSymElement._raw(
            "p", basis.n, {s: coeff * c for s, c in element._terms.items()})
        total = total + piece
    return total


def transition_matrix(basis: ChromaticBasis) -> list[list[Fraction]]:
    """Rows follow canonical order; row i holds the p coordinates of basis
    element i, columns in the same canonical order."""
    index = {pi: j for j, pi in enumerate(basis.order)}
    matrix = []
    for element in basis.elements:
        row = [Fraction(0)] * len(basis.order)
        for sigma, coeff in element._terms.items():
            row[index[sigma]] = coeff
        matrix.append(row)
    return matrix


def transition_matrix_json(basis: ChromaticBasis) -> dict:
    """JSON-ready transition data: partition labels in canonical order and
    the matrix rows as exact fraction pairs."""
    return {
        "n": basis.n,
        "strategy": basis.strategy.name,
        "order": [pi.to_text() for pi in basis.order],
        "matrix": [[{"num": c.numerator, "den": c.denominator} for c in row]
                   for row in transition_matrix(basis)],
    }
