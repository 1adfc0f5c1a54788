"""Sparse exact elements of the algebra of symmetric functions in
noncommuting variables.

Five bases, each indexed by set partitions of [n] for homogeneous degree n:

* ``m`` monomial: words whose equality pattern is exactly the partition;
* ``p`` power sum: words constant on every block;
* ``e`` elementary: words with distinct letters inside every block;
* ``h`` complete homogeneous;
* ``x`` the Schur-like basis, triangular against ``p`` with Moebius weights.

The power-sum basis is the conversion hub: every change of basis routes
through ``p``, multiplication concatenates indices (slash product), and the
degree-raising operator and the symmetric group action act on ``p`` indices.
Coefficients are exact rationals; zero coefficients are never stored.
Expansion columns are computed lazily and published at most once per key, so
concurrent readers always observe fully built dictionaries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import DomainError
from .partitions import (
    IntegerPartition,
    Permutation,
    SetPartition,
    coarser_partitions,
    finer_partitions,
    mobius_from_bottom,
    mobius_interval,
    multiplicity_factorial,
    parse_partition,
    parts_factorial,
)

BASES = ("m", "p", "e", "h", "x")
SYM_BASES = ("m", "p", "e", "h")

_ZERO = Fraction(0)
_ONE = Fraction(1)

_to_p_cache: dict[tuple[str, SetPartition], dict] = {}
_from_p_cache: dict[tuple[str, SetPartition], dict] = {}
_word_cache: dict[tuple[SetPartition, int], dict] = {}


def clear_caches() -> None:
    """Drop all cached conversion columns and word tables."""
    _to_p_cache.clear()
    _from_p_cache.clear()
    _word_cache.clear()


def _memo(cache: dict, key, factory):
    hit = cache.get(key)
    if hit is None:
        # setdefault publishes exactly one value even under racing computes
        hit = cache.setdefault(key, factory())
    return hit


def _accumulate(target: dict, key, delta: Fraction) -> None:
    total = target.get(key, _ZERO) + delta
    if total:
        target[key] = total
    else:
        target.pop(key, None)


# ---------------------------------------------------------------------------
# change-of-basis columns against the power-sum basis


def _to_p_column(basis: str, pi: SetPartition) -> dict:
    """Expansion of the basis element b_pi over p, as {sigma: coefficient}."""
    if basis == "p":
        return {pi: _ONE}
    return _memo(_to_p_cache, (basis, pi), lambda: _build_to_p(basis, pi))


def _build_to_p(basis: str, pi: SetPartition) -> dict:
    if basis == "m":
        # p_pi sums m over coarsenings; invert with interval Moebius weights
        return {sigma: Fraction(mobius_interval(pi, sigma))
                for sigma in coarser_partitions(pi)}
    if basis == "x":
        return {sigma: Fraction(mobius_interval(sigma, pi))
                for sigma in finer_partitions(pi)}
    if basis == "h":
        return {sigma: Fraction(abs(mobius_from_bottom(sigma)))
                for sigma in finer_partitions(pi)}
    if basis == "e":
        # From the triangular system expressing p over e:
        #   mu(bottom, pi) * p_pi = sum_{sigma <= pi} mu(sigma, pi) e_sigma
        # solve for e_pi by back-substitution over the strictly finer sigma.
        out = {pi: Fraction(mobius_from_bottom(pi))}
        for sigma in finer_partitions(pi):
            if sigma == pi:
                continue
            weight = mobius_interval(sigma, pi)
            for tau, coeff in _to_p_column("e", sigma).items():
                _accumulate(out, tau, -weight * coeff)
        return out
    raise DomainError(f"unknown basis {basis!r}")


def _from_p_column(basis: str, pi: SetPartition) -> dict:
    """Expansion of p_pi over the given basis, as {sigma: coefficient}."""
    if basis == "p":
        return {pi: _ONE}
    return _memo(_from_p_cache, (basis, pi), lambda: _build_from_p(basis, pi))


def _build_from_p(basis: str, pi: SetPartition) -> dict:
    if basis == "m":
        return {sigma: _ONE for sigma in coarser_partitions(pi)}
    if basis == "x":
        return {sigma: _ONE for sigma in finer_partitions(pi)}
    if basis == "e":
        bottom = mobius_from_bottom(pi)
        return {sigma: Fraction(mobius_interval(sigma, pi), bottom)
                for sigma in finer_partitions(pi)}
    if basis == "h":
        # h_pi = sum_{sigma <= pi} |mu(bottom, sigma)| p_sigma; invert by
        # back-substitution over strictly finer sigma.
        lead = Fraction(1, abs(mobius_from_bottom(pi)))
        out = {pi: lead}
        for sigma in finer_partitions(pi):
            if sigma == pi:
                continue
            weight = abs(mobius_from_bottom(sigma)) * lead
            for tau, coeff in _from_p_column("h", sigma).items():
                _accumulate(out, tau, -weight * coeff)
        return out
    raise DomainError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# elements


class NCSymElement:
    """A finite linear combination of one basis, with exact coefficients.

    Equality across bases converts both sides to p first; within one basis
    the stored term dictionaries are compared directly (basis expansions are
    unique).  Zero elements remember their degree.
    """

    __slots__ = ("basis", "degree", "_terms")

    def __init__(self, basis: str, degree: int,
                 terms: Mapping[SetPartition, object] | Iterable[tuple[SetPartition, object]]):
        if basis not in BASES:
            raise DomainError(f"unknown basis {basis!r}")
        if degree < 0:
            raise DomainError("degree must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict[SetPartition, Fraction] = {}
        for pi, coeff in items:
            if not isinstance(pi, SetPartition):
                raise DomainError(f"term index {pi!r} is not a set partition")
            if pi.n != degree:
                raise DomainError(
                    f"index {pi} lives on [{pi.n}] but the element has degree {degree}")
            _accumulate(cleaned, pi, Fraction(coeff))
        self.basis = basis
        self.degree = degree
        self._terms = cleaned

    @classmethod
    def _raw(cls, basis: str, degree: int,
             terms: dict[SetPartition, Fraction]) -> "NCSymElement":
        self = object.__new__(cls)
        self.basis = basis
        self.degree = degree
        self._terms = terms
        return self

    @classmethod
    def zero(cls, basis: str, degree: int) -> "NCSymElement":
        if basis not in BASES:
            raise DomainError(f"unknown basis {basis!r}")
        return cls._raw(basis, degree, {})

    @property
    def terms(self) -> Mapping[SetPartition, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[SetPartition, Fraction]]:
        """Terms ordered by the canonical partition encoding."""
        return sorted(self._terms.items(), key=lambda item: item[0].rgs)

    def in_basis(self, target: str) -> "NCSymElement":
        return convert(self, target)

    def coefficient_in(self, basis: str, pi: SetPartition) -> Fraction:
        return coefficient(self, basis, pi)

    # operators delegate to the module functions

    def __add__(self, other):
        if not isinstance(other, NCSymElement):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, NCSymElement):
            return NotImplemented
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, NCSymElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCSymElement):
            return NotImplemented
        if self.degree != other.degree:
            return False
        if self.basis == other.basis:
            return self._terms == other._terms
        return convert(self, "p")._terms == convert(other, "p")._terms

    def __hash__(self) -> int:
        canonical = convert(self, "p")
        return hash((self.degree, frozenset(canonical._terms.items())))

    def __repr__(self) -> str:
        return f"<NCSymElement {self}>"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for pi, coeff in self.sorted_terms():
            lead = "-" if coeff < 0 else ("+" if chunks else "")
            value = abs(coeff)
            body = f"{self.basis}{{{pi.to_text()}}}"
            piece = body if value == 1 else f"{value}*{body}"
            chunks.append(f"{lead}{piece}" if not chunks else f"{lead} {piece}")
        return " ".join(chunks)


def basis_term(basis: str, pi: SetPartition, coeff=1) -> NCSymElement:
    """The single-term element coeff * b_pi."""
    coeff = Fraction(coeff)
    if basis not in BASES:
        raise DomainError(f"unknown basis {basis!r}")
    if coeff == 0:
        return NCSymElement.zero(basis, pi.n)
    return NCSymElement._raw(basis, pi.n, {pi: coeff})


def one(basis: str = "p") -> NCSymElement:
    """The multiplicative unit: the degree-0 empty-index term."""
    return basis_term(basis, SetPartition.empty())


def convert(f: NCSymElement, target: str) -> NCSymElement:
    """Rewrite f in the target basis, exactly."""
    if target not in BASES:
        raise DomainError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    if f.basis == "p":
        p_terms = f._terms
    else:
        p_terms = {}
        for pi, coeff in f._terms.items():
            for sigma, weight in _to_p_column(f.basis, pi).items():
                _accumulate(p_terms, sigma, coeff * weight)
    if target == "p":
        return NCSymElement._raw("p", f.degree, p_terms)
    out: dict[SetPartition, Fraction] = {}
    for pi, coeff in p_terms.items():
        for sigma, weight in _from_p_column(target, pi).items():
            _accumulate(out, sigma, coeff * weight)
    return NCSymElement._raw(target, f.degree, out)


def add(f: NCSymElement, g: NCSymElement) -> NCSymElement:
    """Sum of two elements; degrees must match unless one side is zero."""
    if f.degree != g.degree:
        if f.is_zero():
            return g
        if g.is_zero():
            return f
        raise DomainError(
            f"cannot add degree {f.degree} to degree {g.degree}")
    if f.basis != g.basis:
        f = convert(f, "p")
        g = convert(g, "p")
    terms = dict(f._terms)
    for pi, coeff in g._terms.items():
        _accumulate(terms, pi, coeff)
    return NCSymElement._raw(f.basis, f.degree, terms)


def scale(f: NCSymElement, factor) -> NCSymElement:
    factor = Fraction(factor)
    if factor == 0:
        return NCSymElement.zero(f.basis, f.degree)
    return NCSymElement._raw(f.basis, f.degree,
                             {pi: coeff * factor for pi, coeff in f._terms.items()})


def multiply(f: NCSymElement, g: NCSymElement) -> NCSymElement:
    """Product in NCSym; on the p-basis indices concatenate by slash."""
    fp = convert(f, "p")
    gp = convert(g, "p")
    terms: dict[SetPartition, Fraction] = {}
    for pi, a in fp._terms.items():
        for sigma, b in gp._terms.items():
            _accumulate(terms, pi.slash(sigma), a * b)
    return NCSymElement._raw("p", f.degree + g.degree, terms)


def induce(f: NCSymElement) -> NCSymElement:
    """Degree-raising operator: on p indices, adjoin the new top element to
    the block containing the current top.  Returns a p-basis element."""
    if f.degree < 1:
        raise DomainError("induction requires degree at least 1")
    fp = convert(f, "p")
    return NCSymElement._raw(
        "p", f.degree + 1,
        {pi.adjoin_top(): coeff for pi, coeff in fp._terms.items()})


def act(delta: Permutation, f: NCSymElement) -> NCSymElement:
    """Symmetric group action by place permutation; relabels p indices."""
    if delta.n != f.degree:
        raise DomainError("permutation size must equal the element degree")
    fp = convert(f, "p")
    moved = {pi.permuted(delta): coeff for pi, coeff in fp._terms.items()}
    return convert(NCSymElement._raw("p", f.degree, moved), f.basis)


def coefficient(f: NCSymElement, basis: str, pi: SetPartition) -> Fraction:
    """The coefficient of b_pi once f is written in the given basis."""
    if pi.n != f.degree:
        return _ZERO
    return convert(f, basis)._terms.get(pi, _ZERO)


def is_positive_in(f: NCSymElement, basis: str) -> bool:
    """All coefficients nonnegative in the given basis (vacuously for 0)."""
    return all(coeff >= 0 for coeff in convert(f, basis)._terms.values())


def is_negative_in(f: NCSymElement, basis: str) -> bool:
    """All coefficients nonpositive in the given basis (vacuously for 0)."""
    return all(coeff <= 0 for coeff in convert(f, basis)._terms.values())


# ---------------------------------------------------------------------------
# word expansions in k noncommuting variables


def word_expansion(f: NCSymElement, k: int) -> dict[tuple[int, ...], Fraction]:
    """Expand f into words over the alphabet {1, ..., k}.

    The m, p, and e bases expand straight from their defining conditions on
    letter positions; h and x are converted to p first.
    """
    if k < 1:
        raise DomainError("word expansion needs at least one variable")
    source = f if f.basis in ("m", "p", "e") else convert(f, "p")
    out: dict[tuple[int, ...], Fraction] = {}
    for pi, coeff in source._terms.items():
        for word in _basis_term_words(source.basis, pi, k):
            _accumulate(out, word, coeff)
    return out


def _basis_term_words(basis: str, pi: SetPartition, k: int) -> Iterable[tuple[int, ...]]:
    if basis == "p":
        return _memo(_word_cache, (pi, k), lambda: _power_sum_words(pi, k))
    if basis == "m":
        return _monomial_words(pi, k)
    if basis == "e":
        return _elementary_words(pi, k)
    raise DomainError(f"no direct word rule for basis {basis!r}")


def _fill(pi: SetPartition, values) -> tuple[int, ...]:
    word = [0] * pi.n
    for block, value in zip(pi.blocks, values):
        for x in block:
            word[x - 1] = value
    return tuple(word)


def _power_sum_words(pi: SetPartition, k: int) -> dict[tuple[int, ...], int]:
    # every block takes one letter, letters free across blocks
    return {_fill(pi, assignment): 1
            for assignment in product(range(1, k + 1), repeat=len(pi.blocks))}


def _monomial_words(pi: SetPartition, k: int) -> list[tuple[int, ...]]:
    # blocks take pairwise distinct letters
    return [_fill(pi, assignment)
            for assignment in permutations(range(1, k + 1), len(pi.blocks))]


def _elementary_words(pi: SetPartition, k: int) -> list[tuple[int, ...]]:
    # letters distinct inside each block, free across blocks
    choices = [tuple(permutations(range(1, k + 1), len(block))) for block in pi.blocks]
    words = []
    for combo in product(*choices):
        word = [0] * pi.n
        for block, letters in zip(pi.blocks, combo):
            for x, letter in zip(block, letters):
                word[x - 1] = letter
        words.append(tuple(word))
    return words


# ---------------------------------------------------------------------------
# the commuting image


class SymElement:
    """A sparse element of ordinary Sym over integer partitions.

    Supports addition, scaling, and power-sum products; cross-basis
    conversion is deliberately out of scope.
    """

    __slots__ = ("basis", "degree", "_terms")

    def __init__(self, basis: str, degree: int,
                 terms: Mapping[IntegerPartition, object] | Iterable[tuple[IntegerPartition, object]]):
        if basis not in SYM_BASES:
            raise DomainError(f"unknown Sym basis {basis!r}")
        if degree < 0:
            raise DomainError("degree must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict[IntegerPartition, Fraction] = {}
        for lam, coeff in items:
            if not isinstance(lam, IntegerPartition):
                raise DomainError(f"term index {lam!r} is not an integer partition")
            if lam.n != degree:
                raise DomainError(
                    f"index {lam} has size {lam.n} but the element has degree {degree}")
            coeff = Fraction(coeff)
            total = cleaned.get(lam, _ZERO) + coeff
            if total:
                cleaned[lam] = total
            else:
                cleaned.pop(lam, None)
        self.basis = basis
        self.degree = degree
        self._terms = cleaned

    @classmethod
    def _raw(cls, basis, degree, terms):
        self = object.__new__(cls)
        self.basis = basis
        self.degree = degree
        self._terms = terms
        return self

    @classmethod
    def zero(cls, basis: str, degree: int) -> "SymElement":
        return cls._raw(basis, degree, {})

    @property
    def terms(self) -> Mapping[IntegerPartition, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DomainError("cannot add Sym elements of different degrees")
        if self.basis != other.basis:
            raise DomainError("Sym addition requires matching bases")
        terms = dict(self._terms)
        for lam, coeff in other._terms.items():
            total = terms.get(lam, _ZERO) + coeff
            if total:
                terms[lam] = total
            else:
                terms.pop(lam, None)
        return SymElement._raw(self.basis, self.degree, terms)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return SymElement.zero(self.basis, self.degree)
            return SymElement._raw(self.basis, self.degree,
                                   {lam: coeff * other for lam, coeff in self._terms.items()})
        if isinstance(other, SymElement):
            return multiply_sym(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.degree == other.degree
        return (self.basis == other.basis and self.degree == other.degree
                and self._terms == other._terms)

    def __hash__(self) -> int:
        return hash((self.basis, self.degree, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "<SymElement 0>"
        body = " + ".join(f"{coeff}*{self.basis}{lam}"
                          for lam, coeff in sorted(self._terms.items()))
        return f"<SymElement {body}>"


def sym_basis_term(basis: str, lam: IntegerPartition, coeff=1) -> SymElement:
    coeff = Fraction(coeff)
    if coeff == 0:
        return SymElement.zero(basis, lam.n)
    return SymElement._raw(basis, lam.n, {lam: coeff})


def multiply_sym(f: SymElement, g: SymElement) -> SymElement:
    """Power-sum product: indices merge as multisets."""
    if f.basis != "p" or g.basis != "p":
        raise DomainError("Sym products are supported on the power-sum basis only")
    terms: dict[IntegerPartition, Fraction] = {}
    for lam, a in f._terms.items():
        for mu, b in g._terms.items():
            key = IntegerPartition(lam.parts + mu.parts)
            total = terms.get(key, _ZERO) + a * b
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
    return SymElement._raw("p", f.degree + g.degree, terms)


def project(f: NCSymElement) -> SymElement:
    """Let the variables commute.

    On basis terms the image is a scalar multiple of the same-named Sym basis
    element at the shape: the scalar is 1 for p, the product of block-size
    factorials for e and h, and the product of multiplicity factorials for m.
    The x basis has no commuting counterpart here, so x input converts to p.
    """
    source = f if f.basis in SYM_BASES else convert(f, "p")
    out: dict[IntegerPartition, Fraction] = {}
    for pi, coeff in source._terms.items():
        lam = pi.shape()
        if source.basis == "p":
            scalar = 1
        elif source.basis in ("e", "h"):
            scalar = parts_factorial(lam)
        else:
            scalar = multiplicity_factorial(lam)
        total = out.get(lam, _ZERO) + coeff * scalar
        if total:
            out[lam] = total
        else:
            out.pop(lam, None)
    return SymElement._raw(source.basis, f.degree, out)


# ---------------------------------------------------------------------------
# JSON interchange


def element_to_json_dict(f: NCSymElement) -> dict:
    """Interchange form with terms sorted by canonical partition encoding."""
    return {
        "basis": f.basis,
        "degree": f.degree,
        "terms": [
            {"partition": pi.to_text(), "num": coeff.numerator, "den": coeff.denominator}
            for pi, coeff in f.sorted_terms()
        ],
    }


def element_from_json_dict(data: Mapping) -> NCSymElement:
    """Inverse of element_to_json_dict, with validation."""
    try:
        basis = data["basis"]
        degree = data["degree"]
        raw_terms = data["terms"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"element JSON needs basis/degree/terms: {exc}") from exc
    if basis not in BASES:
        raise DomainError(f"unknown basis {basis!r}")
    if not isinstance(degree, int) or degree < 0:
        raise DomainError("degree must be a nonnegative integer")
    terms: dict[SetPartition, Fraction] = {}
    for entry in raw_terms:
        try:
            pi = parse_partition(entry["partition"])
            num = entry["num"]
            den = entry["den"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"bad term entry {entry!r}") from exc
        if not isinstance(num, int) or not isinstance(den, int) or den == 0:
            raise DomainError(f"bad rational in term {entry!r}")
        if pi.n != degree:
            raise DomainError(
                f"term index {pi} does not match element degree {degree}")
        _accumulate(terms, pi, Fraction(num, den))
    return NCSymElement._raw(basis, degree, terms)
