"""Formula AST for the coalition logic of knowledge and duty to warn.

Core constructors: propositions, negation, implication, distributed
knowledge ``Know`` and the two-coalition blame modality ``Blame``.  The
derived connectives (falsum, conjunction, disjunction, equivalence, dual
knowledge) are desugared into the core constructors at build time and never
appear as nodes of their own.  Falsum is encoded as ``~(__true_seed ->
__true_seed)`` over a reserved proposition that user input cannot name.

Also here: the canonical printer (minimal parentheses, inverse of the
parser), subformula enumeration, deterministic subcoalition enumeration,
and the literal expansion of the four minimal-coalition operators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import BadParamsError, UniverseTooLargeError
from .limits import budget

Coalition = frozenset

RESERVED_PREFIX = "__"
TRUE_SEED = "__true_seed"


def coalition(members: Iterable[str] = ()) -> Coalition:
    """Normalize an iterable of agent ids into a coalition (frozenset)."""
    return frozenset(members)


class Formula:
    """Base class of AST nodes.

    Instances are immutable and hashable; equality is structural with
    coalitions compared as sets.  A hash is computed once at construction
    so that deep equality checks can short-circuit.
    """

    __slots__ = ()

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if self.__class__ is not other.__class__ or self._hash != other._hash:
            return False
        return self._eq_fields(other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def _eq_fields(self, other):  # pragma: no cover - abstract
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.__class__.__name__} {render(self)!r}>"


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Prop(Formula):
    name: str
    _hash: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("prop", self.name)))

    def _eq_fields(self, other):
        return self.name == other.name


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Not(Formula):
    child: Formula
    _hash: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("not", self.child._hash)))

    def _eq_fields(self, other):
        return self.child == other.child


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash(("implies", self.left._hash, self.right._hash))
        )

    def _eq_fields(self, other):
        return self.left == other.left and self.right == other.right


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Know(Formula):
    knowers: Coalition
    child: Formula
    _hash: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "knowers", frozenset(self.knowers))
        object.__setattr__(
            self, "_hash", hash(("know", self.knowers, self.child._hash))
        )

    def _eq_fields(self, other):
        return self.knowers == other.knowers and self.child == other.child


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Blame(Formula):
    """``Blame(knowers, actors, f)``: f is true and the knower coalition knew
    a joint action by which the actor coalition could have prevented f.

    In the concrete syntax this is ``B[knowers][actors] f`` (first bracket
    knows, second bracket acts).
    """

    knowers: Coalition
    actors: Coalition
    child: Formula
    _hash: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "knowers", frozenset(self.knowers))
        object.__setattr__(self, "actors", frozenset(self.actors))
        object.__setattr__(
            self,
            "_hash",
            hash(("blame", self.knowers, self.actors, self.child._hash)),
        )

    def _eq_fields(self, other):
        return (
            self.knowers == other.knowers
            and self.actors == other.actors
            and self.child == other.child
        )


# ---------------------------------------------------------------------------
# Derived connectives (desugared on construction).
# ---------------------------------------------------------------------------

def conj(left: Formula, right: Formula) -> Formula:
    """left and right, as ~(left -> ~right)."""
    return Not(Implies(left, Not(right)))


def disj(left: Formula, right: Formula) -> Formula:
    """left or right, as ~left -> right."""
    return Implies(Not(left), right)


def iff(left: Formula, right: Formula) -> Formula:
    """left if and only if right, as the conjunction of both implications."""
    return conj(Implies(left, right), Implies(right, left))


def dual_know(knowers: Iterable[str], child: Formula) -> Formula:
    """``Kd[C] f``: the coalition considers f possible, i.e. ~K[C]~f."""
    return Not(Know(coalition(knowers), Not(child)))


FALSUM = Not(Implies(Prop(TRUE_SEED), Prop(TRUE_SEED)))


def falsum() -> Formula:
    """The falsum encoding; prints as the keyword ``false``."""
    return FALSUM


def verum() -> Formula:
    return Not(FALSUM)


def big_disj(items) -> Formula:
    """Left-associated disjunction; empty disjunction is falsum."""
    items = list(items)
    if not items:
        return FALSUM
    out = items[0]
    for item in items[1:]:
        out = disj(out, item)
    return out


def big_conj(items) -> Formula:
    """Left-associated conjunction; empty conjunction is ~falsum."""
    items = list(items)
    if not items:
        return Not(FALSUM)
    out = items[0]
    for item in items[1:]:
        out = conj(out, item)
    return out


# ---------------------------------------------------------------------------
# Printing.
# ---------------------------------------------------------------------------

_LEVEL_ATOM = 5
_LEVEL_UNARY = 4
_LEVEL_IMPL_LEFT = 2
_LEVEL_IMPL = 1


def _coal_str(members: Coalition) -> str:
    return "[" + ",".join(sorted(members)) + "]"


def render(f: Formula) -> str:
    """Canonical concrete syntax with minimal parentheses.

    ``parse_formula(render(f)) == f`` for every formula reachable from the
    public grammar; coalition members print in sorted order and the falsum
    encoding prints as ``false``.
    """
    return _render(f, 0)


def _render(f: Formula, min_level: int) -> str:
    if isinstance(f, Prop):
        return f.name
    if f == FALSUM:
        return "false"
    if isinstance(f, Not):
        text = "~" + _render(f.child, _LEVEL_UNARY)
        level = _LEVEL_UNARY
    elif isinstance(f, Know):
        text = "K" + _coal_str(f.knowers) + " " + _render(f.child, _LEVEL_UNARY)
        level = _LEVEL_UNARY
    elif isinstance(f, Blame):
        text = (
            "B"
            + _coal_str(f.knowers)
            + _coal_str(f.actors)
            + " "
            + _render(f.child, _LEVEL_UNARY)
        )
        level = _LEVEL_UNARY
    elif isinstance(f, Implies):
        text = (
            _render(f.left, _LEVEL_IMPL_LEFT)
            + " -> "
            + _render(f.right, _LEVEL_IMPL)
        )
        level = _LEVEL_IMPL
    else:  # pragma: no cover - exhaustive match
        raise TypeError(f"not a formula: {f!r}")
    if level < min_level:
        return "(" + text + ")"
    return text


# ---------------------------------------------------------------------------
# Structural utilities.
# ---------------------------------------------------------------------------

def children_of(f: Formula) -> tuple:
    if isinstance(f, (Prop,)):
        return ()
    if isinstance(f, (Not, Know, Blame)):
        return (f.child,)
    return (f.left, f.right)


def subformulas(f: Formula) -> list:
    """All distinct subformulas in post-order, including f itself."""
    seen = set()
    out = []

    def walk(g):
        if g in seen:
            return
        seen.add(g)
        for child in children_of(g):
            walk(child)
        out.append(g)

    walk(f)
    return out


def node_count(f: Formula) -> int:
    """Total number of AST nodes (counting repeats, not deduplicated)."""
    total = 0
    stack = [f]
    while stack:
        g = stack.pop()
        total += 1
        stack.extend(children_of(g))
    return total


def agents_of(f: Formula) -> Coalition:
    """All agents mentioned in coalition annotations of f."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Know):
            out |= g.knowers
        elif isinstance(g, Blame):
            out |= g.knowers | g.actors
    return frozenset(out)


def props_of(f: Formula, include_reserved: bool = False) -> frozenset:
    """All proposition names in f; reserved names excluded by default."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Prop):
            if include_reserved or not g.name.startswith(RESERVED_PREFIX):
                out.add(g.name)
    return frozenset(out)


def subsets_of(members: Iterable[str]) -> list:
    """Every subcoalition, ordered by size then lexicographically."""
    ordered = sorted(members)
    out = []
    for size in range(len(ordered) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(ordered, size))
    return out


def proper_subsets_of(members: Iterable[str]) -> list:
    """Every strict subcoalition (including the empty one), same order."""
    full = frozenset(members)
    return [c for c in subsets_of(full) if c != full]


# ---------------------------------------------------------------------------
# Minimal-coalition operator expansion.
# ---------------------------------------------------------------------------

def _minimal_body(knowers, actors, phi, universe) -> Formula:
    """Shared body: blame holds, no strictly smaller actor coalition works
    for anyone, and no strict knower subcoalition works for these actors."""
    parts = [
        Blame(knowers, actors, phi),
        Not(
            big_disj(
                Blame(e, f, phi)
                for e in subsets_of(universe)
                for f in proper_subsets_of(actors)
            )
        ),
        Not(big_disj(Blame(e, actors, phi) for e in proper_subsets_of(knowers))),
    ]
    return big_conj(parts)


def _estimated_blame_atoms(kind, n_knowers, n_actors, n_universe) -> int:
    if kind == 1:
        return 1 + (2**n_knowers - 1)
    if kind == 2:
        return 1 + (2**n_knowers - 1) * 2**n_universe
    if kind == 3:
        return 1 + 2**n_universe * (2**n_actors - 1) + (2**n_knowers - 1)
    total = 0
    for size in range(n_universe + 1):
        total += math.comb(n_universe, size) * (
            1 + 2**n_universe * (2**size - 1) + (2**n_knowers - 1)
        )
    return total


def expand_minimality(
    kind: int,
    knowers: Iterable[str],
    actors: Optional[Iterable[str]],
    phi: Formula,
    universe: Iterable[str],
    node_budget: Optional[int] = None,
) -> Formula:
    """Expand one of the four minimal-coalition operators into the core
    language, with the big disjunctions/conjunctions over subcoalitions
    written out literally.

    Strict subcoalitions include the empty coalition and exclude the full
    one.  An empty disjunction expands to falsum and an empty conjunction to
    ~falsum.  Kind 4 existentially quantifies the actor coalition, so
    ``actors`` must be None for it.  Raises :class:`UniverseTooLargeError`
    when the estimated expansion exceeds the node budget.
    """
    universe_set = coalition(universe)
    knowers_set = coalition(knowers)
    if kind not in (1, 2, 3, 4):
        raise BadParamsError(f"kind must be 1, 2, 3, or 4, got {kind!r}")
    if not knowers_set <= universe_set:
        raise BadParamsError("knower coalition must be within the agent universe")
    if kind == 4:
        if actors is not None:
            raise BadParamsError(
                "kind 4 quantifies over actor coalitions; pass actors=None"
            )
        actors_set = None
    else:
        if actors is None:
            raise BadParamsError(f"kind {kind} requires an actor coalition")
        actors_set = coalition(actors)
        if not actors_set <= universe_set:
            raise BadParamsError("actor coalition must be within the agent universe")

    limit = budget("expand-nodes", node_budget)
    atoms = _estimated_blame_atoms(
        kind, len(knowers_set), len(actors_set or ()), len(universe_set)
    )
    estimate = atoms * (node_count(phi) + 8)
    if estimate > limit:
        raise UniverseTooLargeError(
            f"expansion of kind {kind} over {len(universe_set)} agents needs "
            f"roughly {estimate} nodes, budget is {limit}"
        )

    if kind == 1:
        return conj(
            Blame(knowers_set, actors_set, phi),
            Not(
                big_disj(
                    Blame(e, actors_set, phi)
                    for e in proper_subsets_of(knowers_set)
                )
            ),
        )
    if kind == 2:
        return conj(
            Blame(knowers_set, actors_set, phi),
            Not(
                big_disj(
                    Blame(e, f, phi)
                    for e in proper_subsets_of(knowers_set)
                    for f in subsets_of(universe_set)
                )
            ),
        )
    if kind == 3:
        return _minimal_body(knowers_set, actors_set, phi, universe_set)
    return big_disj(
        _minimal_body(knowers_set, d, phi, universe_set)
        for d in subsets_of(universe_set)
    )
