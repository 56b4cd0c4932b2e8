"""Evaluation of formulas at plays, validity in a game, randomized
soundness fuzzing of the axiom schemas, and bounded countermodel search.

Truth at a play follows the recursive clauses of the satisfaction
relation: a proposition holds when the play is in its valuation; the
knowledge modality quantifies over every play whose initial state the
coalition cannot distinguish from the current one; blame holds when the
formula is true and some joint action of the actor coalition falsifies it
on every knowledge-compatible play.  Blame witnesses are enumerated in
lexicographic order (sorted actor agents x declared action order) and the
first one found is reported.

An evaluator instance caches modal subresults per initial state within a
single query; this never changes any verdict (knowledge and preventability
depend on the play only through its initial state) and keeps the acceptance
workloads fast.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from . import axioms
from .errors import BadParamsError, ResourceLimitError, UnknownPlayError
from .formula import (
    Blame,
    Coalition,
    Formula,
    Implies,
    Know,
    Not,
    Prop,
    RESERVED_PREFIX,
    agents_of,
    coalition,
    props_of,
)
from .game import ActionProfile, Game, Play, indist_state, make_game
from .limits import budget


@dataclass
class Verdict:
    """Result of a single query.

    ``witness`` is set only for a true top-level blame query (the joint
    action the actors could have used); ``refutation`` only for a failed
    knowledge or validity query (the first falsifying play).
    """

    holds: bool
    witness: Optional[ActionProfile] = None
    refutation: Optional[Play] = None

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": self.witness.as_dict() if self.witness else None,
            "refutation": self.refutation.as_dict() if self.refutation else None,
        }


@dataclass(frozen=True)
class SearchBounds:
    """Model-size bounds plus search mode for fuzzing and countermodels."""

    max_agents: int = 2
    max_initial: int = 2
    max_actions: int = 2
    max_outcomes: int = 2
    max_props: int = 1
    mode: str = "exhaustive"  # or "random"
    seed: Optional[int] = None
    iterations: int = 1000

    def __post_init__(self):
        for name in ("max_agents", "max_initial", "max_actions",
                     "max_outcomes", "max_props"):
            if getattr(self, name) < 1:
                raise BadParamsError(f"{name} must be at least 1")
        if self.mode not in ("exhaustive", "random"):
            raise BadParamsError(f"mode must be exhaustive or random, got {self.mode!r}")
        if self.mode == "random" and self.seed is None:
            raise BadParamsError("random mode requires an explicit seed")


class Evaluator:
    """Evaluates formulas against one game, caching per initial state.

    Caches are keyed by formula value (hashes are precomputed at node
    construction), so structurally equal subformulas share results and the
    evaluator stays sound however long its inputs live.
    """

    def __init__(self, game: Game):
        self.game = game
        self._know: Dict[Tuple[Formula, str], bool] = {}
        self._prevent: Dict[Tuple[Formula, str], Optional[ActionProfile]] = {}
        self._local: Dict[Tuple[Formula, Play], bool] = {}
        self._warned: set = set()

    def check(self, play: Play, f: Formula) -> bool:
        key = (f, play)
        cached = self._local.get(key)
        if cached is not None:
            return cached
        if isinstance(f, Prop):
            value = self.game.prop_holds(f.name, play)
            if (
                f.name not in self.game.valuation
                and not f.name.startswith(RESERVED_PREFIX)
                and f.name not in self._warned
            ):
                self._warned.add(f.name)
                warnings.warn(
                    f"proposition {f.name!r} has no valuation in this game; "
                    "treating it as false everywhere",
                    stacklevel=2,
                )
        elif isinstance(f, Not):
            value = not self.check(play, f.child)
        elif isinstance(f, Implies):
            value = (not self.check(play, f.left)) or self.check(play, f.right)
        elif isinstance(f, Know):
            value = self._know_at(f, play.initial)
        elif isinstance(f, Blame):
            value = (
                self.check(play, f.child)
                and self.preventing_profile(f, play.initial) is not None
            )
        else:  # pragma: no cover - exhaustive match
            raise TypeError(f"not a formula: {f!r}")
        self._local[key] = value
        return value

    def _know_at(self, f: Know, alpha: str) -> bool:
        key = (f, alpha)
        cached = self._know.get(key)
        if cached is None:
            cached = all(
                self.check(other, f.child)
                for other in self.game.plays
                if indist_state(self.game, f.knowers, alpha, other.initial)
            )
            self._know[key] = cached
        return cached

    def preventing_profile(self, f: Blame, alpha: str) -> Optional[ActionProfile]:
        """First joint action of the actors falsifying the body on every
        play the knowers cannot tell apart from alpha, else None."""
        key = (f, alpha)
        if key in self._prevent:
            return self._prevent[key]
        found = None
        for profile in coalition_profiles(self.game, f.actors):
            if all(
                not self.check(other, f.child)
                for other in self.game.plays
                if indist_state(self.game, f.knowers, alpha, other.initial)
                and profile.agrees_with(other.profile)
            ):
                found = profile
                break
        self._prevent[key] = found
        return found

    def refuting_play(self, f: Know, alpha: str) -> Optional[Play]:
        for other in self.game.plays:
            if indist_state(self.game, f.knowers, alpha, other.initial):
                if not self.check(other, f.child):
                    return other
        return None


def coalition_profiles(game: Game, members: Iterable[str]) -> Iterator[ActionProfile]:
    """All joint actions of a coalition, lexicographic over (sorted agents,
    declared action order).  The empty coalition has one empty profile."""
    ordered = sorted(coalition(members))
    for combo in itertools.product(game.actions, repeat=len(ordered)):
        yield ActionProfile.make(dict(zip(ordered, combo)))


def _validate_query(game: Game, f: Formula) -> None:
    game.check_agents(agents_of(f))


def holds(game: Game, play: Play, f: Formula) -> Verdict:
    """Evaluate f at one play of the game.

    Propositions without a valuation are treated as false everywhere (with
    a warning).  Raises UnknownAgentError when f names agents outside the
    game and UnknownPlayError when the play is not in the play relation.
    """
    _validate_query(game, f)
    if not game.has_play(play):
        raise UnknownPlayError(f"not a play of this game: {play}")
    ev = Evaluator(game)
    value = ev.check(play, f)
    witness = None
    refutation = None
    if value and isinstance(f, Blame):
        witness = ev.preventing_profile(f, play.initial)
    if not value and isinstance(f, Know):
        refutation = ev.refuting_play(f, play.initial)
    return Verdict(value, witness=witness, refutation=refutation)


def valid_in_game(game: Game, f: Formula) -> Verdict:
    """True iff f holds at every play; else the first falsifying play in
    declaration order is reported as the refutation."""
    _validate_query(game, f)
    ev = Evaluator(game)
    for play in game.plays:
        if not ev.check(play, f):
            return Verdict(False, refutation=play)
    return Verdict(True)


# ---------------------------------------------------------------------------
# Random sampling of games and formulas.
# ---------------------------------------------------------------------------

_AGENT_NAMES = ("a", "b", "c", "d", "e", "f", "g", "h")
_PROP_NAMES = ("p", "q", "r", "s", "t")


def _random_partition(rng: random.Random, items: List[str]) -> Tuple[Coalition, ...]:
    labels = [rng.randrange(len(items)) for _ in items]
    blocks: Dict[int, set] = {}
    for item, label in zip(items, labels):
        blocks.setdefault(label, set()).add(item)
    return tuple(frozenset(b) for _, b in sorted(blocks.items()))


def sample_game(
    rng: random.Random,
    bounds: SearchBounds,
    agents: Optional[Tuple[str, ...]] = None,
    prop_names: Optional[Tuple[str, ...]] = None,
) -> Game:
    """One random game within the bounds: random partitions, a random serial
    play relation (occasionally nondeterministic), and a random valuation."""
    if agents is None:
        agents = _AGENT_NAMES[: rng.randint(1, bounds.max_agents)]
    n_initial = rng.randint(1, bounds.max_initial)
    states = [f"s{i}" for i in range(n_initial)]
    partitions = {agent: _random_partition(rng, states) for agent in agents}
    actions = tuple(str(i) for i in range(rng.randint(1, bounds.max_actions)))
    n_outcomes = rng.randint(1, bounds.max_outcomes)
    outcomes = tuple(f"o{i}" for i in range(n_outcomes))
    if prop_names is None:
        prop_names = _PROP_NAMES[: rng.randint(1, bounds.max_props)]
    plays = []
    for alpha in states:
        for combo in itertools.product(actions, repeat=len(agents)):
            profile = ActionProfile.make(dict(zip(agents, combo)))
            count = 2 if n_outcomes > 1 and rng.random() < 0.2 else 1
            picked = rng.sample(outcomes, count)
            for omega in picked:
                plays.append(Play(alpha, profile, omega))
    valuation = {
        name: [p for p in plays if rng.random() < 0.5] for name in prop_names
    }
    return make_game(agents, states, partitions, actions, outcomes, plays,
                     valuation)


def random_formula(
    rng: random.Random,
    props: Tuple[str, ...],
    agents: Tuple[str, ...],
    depth: int = 3,
) -> Formula:
    """Random formula of modal depth at most ``depth`` over the given
    propositions and agents."""
    if depth <= 0 or rng.random() < 0.3:
        return Prop(rng.choice(props))
    pick = rng.randrange(4)
    if pick == 0:
        return Not(random_formula(rng, props, agents, depth - 1))
    if pick == 1:
        return Implies(
            random_formula(rng, props, agents, depth - 1),
            random_formula(rng, props, agents, depth - 1),
        )
    if pick == 2:
        return Know(_random_coalition(rng, agents),
                    random_formula(rng, props, agents, depth - 1))
    return Blame(
        _random_coalition(rng, agents),
        _random_coalition(rng, agents),
        random_formula(rng, props, agents, depth - 1),
    )


def _random_coalition(rng: random.Random, agents: Tuple[str, ...]) -> Coalition:
    return frozenset(agent for agent in agents if rng.random() < 0.5)


def sample_instantiation(
    rng: random.Random,
    schema: axioms.Schema,
    game: Game,
    enforce_side_conditions: bool = True,
) -> dict:
    """Random metavariable assignment for a schema over one game.

    With ``enforce_side_conditions`` the assignment is adjusted to satisfy
    the schema's side conditions; without it, disjointness conditions are
    deliberately violated (the coalitions are forced to intersect).
    """
    props = tuple(sorted(game.valuation)) or ("p",)
    agents = tuple(game.agents)
    subst = {
        name: random_formula(rng, props, agents, depth=3)
        for name in schema.formula_vars
    }
    for name in schema.coalition_vars:
        subst[name] = _random_coalition(rng, agents)
    for kind, a, b in schema.side:
        if kind == "subset":
            subst[b] = subst[b] | subst[a]
        elif kind == "disjoint":
            if enforce_side_conditions:
                subst[b] = subst[b] - subst[a]
            elif agents:
                shared = rng.choice(agents)
                subst[a] = subst[a] | {shared}
                subst[b] = subst[b] | {shared}
    return subst


# ---------------------------------------------------------------------------
# Exhaustive enumeration of small games, canonical up to renaming.
# ---------------------------------------------------------------------------
#
# Truth at a play depends on the play only through its initial state, its
# complete profile, and the set of propositions true at it; outcome ids in
# themselves are semantically inert, and two plays of one cell (initial
# state, profile) with the same proposition labels are indistinguishable by
# every formula.  Enumerating, per cell, a nonempty set of proposition
# labels (capped by the outcome bound) therefore covers all games within
# the bounds up to renaming of states/actions/outcomes and duplication of
# equally-labeled plays.  Enumeration order: agent count, then initial-state
# count, then per-agent partitions, then action count, then the per-cell
# label assignment as an odometer (cells in row-major order, label sets in
# (size, index) order).

def _set_partitions(items: List[str]) -> List[Tuple[frozenset, ...]]:
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for part in _set_partitions(rest):
        for i in range(len(part)):
            grown = list(part)
            grown[i] = part[i] | {first}
            out.append(tuple(grown))
        out.append(tuple(part) + (frozenset({first}),))
    return out


def _label_choices(props: Tuple[str, ...], max_outcomes: int) -> List[Tuple[frozenset, ...]]:
    labels = [frozenset(c)
              for size in range(len(props) + 1)
              for c in itertools.combinations(props, size)]
    choices = []
    for size in range(1, min(len(labels), max_outcomes) + 1):
        choices.extend(tuple(c) for c in itertools.combinations(labels, size))
    return choices


def count_models(formula_agents: Tuple[str, ...], props: Tuple[str, ...],
                 bounds: SearchBounds) -> int:
    """Number of candidate models the exhaustive enumeration will visit."""
    total = 0
    n_choices = len(_label_choices(props, bounds.max_outcomes))
    min_agents = max(1, len(formula_agents))
    for n_agents in range(min_agents, max(min_agents, bounds.max_agents) + 1):
        for n_initial in range(1, bounds.max_initial + 1):
            parts = len(_set_partitions([f"s{i}" for i in range(n_initial)]))
            for n_actions in range(1, bounds.max_actions + 1):
                cells = n_initial * n_actions**n_agents
                total += parts**n_agents * n_choices**cells
    return total


def enumerate_games(
    formula_agents: Tuple[str, ...],
    props: Tuple[str, ...],
    bounds: SearchBounds,
    model_budget: Optional[int] = None,
) -> Iterator[Game]:
    """Deterministic exhaustive stream of canonical games within bounds.

    Raises ResourceLimitError upfront when the implied model count exceeds
    the budget.
    """
    total = count_models(formula_agents, props, bounds)
    limit = budget("exhaustive-models", model_budget)
    if total > limit:
        raise ResourceLimitError(
            f"exhaustive search would enumerate {total} models, budget is {limit}"
        )
    base = tuple(sorted(formula_agents))
    extras = tuple(n for n in _AGENT_NAMES if n not in base) + tuple(
        f"z{i}" for i in range(len(base))
    )
    min_agents = max(1, len(base))
    choices_cache = _label_choices(props, bounds.max_outcomes)
    for n_agents in range(min_agents, max(min_agents, bounds.max_agents) + 1):
        agents = (base + extras)[:n_agents] if base else extras[:n_agents]
        for n_initial in range(1, bounds.max_initial + 1):
            states = [f"s{i}" for i in range(n_initial)]
            all_parts = _set_partitions(states)
            for combo in itertools.product(all_parts, repeat=n_agents):
                partitions = dict(zip(agents, combo))
                for n_actions in range(1, bounds.max_actions + 1):
                    actions = tuple(str(i) for i in range(n_actions))
                    cells = [
                        (alpha, ActionProfile.make(dict(zip(agents, acts))))
                        for alpha in states
                        for acts in itertools.product(actions, repeat=n_agents)
                    ]
                    for assignment in itertools.product(
                        choices_cache, repeat=len(cells)
                    ):
                        yield _game_from_labels(
                            agents, states, partitions, actions, cells,
                            assignment, props,
                        )


def _game_from_labels(agents, states, partitions, actions, cells, assignment,
                      props) -> Game:
    n_outcomes = max(len(labels) for labels in assignment)
    outcomes = tuple(f"o{i}" for i in range(n_outcomes))
    plays = []
    valuation = {name: [] for name in props}
    for (alpha, profile), labels in zip(cells, assignment):
        for i, label in enumerate(labels):
            play = Play(alpha, profile, outcomes[i])
            plays.append(play)
            for name in label:
                valuation[name].append(play)
    return make_game(agents, states, partitions, actions, outcomes, plays,
                     valuation)


# ---------------------------------------------------------------------------
# Countermodel search and soundness fuzzing.
# ---------------------------------------------------------------------------

def countermodel_search(
    f: Formula,
    bounds: SearchBounds,
    model_budget: Optional[int] = None,
) -> Optional[Tuple[Game, Play]]:
    """First (game, play) within bounds falsifying f, or None.

    Exhaustive mode walks the documented deterministic enumeration; random
    mode samples seeded games.  The agent universe starts from the agents
    named in f (padded up to the bound); valuations range over the
    propositions occurring in f.
    """
    base_agents = tuple(sorted(agents_of(f)))
    props = tuple(sorted(props_of(f)))
    if len(base_agents) > bounds.max_agents:
        raise BadParamsError(
            f"formula names {len(base_agents)} agents, bound is {bounds.max_agents}"
        )
    if bounds.mode == "exhaustive":
        stream: Iterator[Game] = enumerate_games(base_agents, props, bounds,
                                                 model_budget)
    else:
        stream = _random_game_stream(base_agents, props, bounds)
    for game in stream:
        ev = Evaluator(game)
        for play in game.plays:
            if not ev.check(play, f):
                return game, play
    return None


def _random_game_stream(base_agents, props, bounds) -> Iterator[Game]:
    rng = random.Random(bounds.seed)
    names = base_agents + tuple(n for n in _AGENT_NAMES if n not in base_agents)
    for _ in range(bounds.iterations):
        n_agents = rng.randint(max(1, len(base_agents)), bounds.max_agents)
        yield sample_game(rng, bounds, agents=names[:n_agents],
                          prop_names=props or None)


@dataclass
class FuzzCounterexample:
    """A soundness violation found by fuzzing: game, falsifying play, the
    offending instance, and the metavariable assignment that produced it."""

    schema: str
    game: Game
    play: Play
    instance: Formula
    substitution: dict
    iteration: int


def soundness_fuzz(
    schema: str,
    bounds: SearchBounds,
    enforce_side_conditions: bool = True,
    games_pool: int = 200,
    instantiations_per_game: int = 3,
) -> Optional[FuzzCounterexample]:
    """Search for counterexamples to the validity of an axiom or derived
    lemma schema.  Returns the first counterexample found, or None; any
    non-None result (with side conditions enforced) is a soundness bug.

    Random mode draws each iteration's game from a pool of ``games_pool``
    sampled games and pairs it with a fresh random instantiation.
    Exhaustive mode enumerates canonical games and tries
    ``instantiations_per_game`` seeded instantiations on each.
    """
    try:
        schema_names = axioms.resolve_fuzz_group(schema)
    except KeyError:
        raise BadParamsError(
            f"unknown schema {schema!r}; choose from "
            f"{', '.join(sorted(axioms.FUZZ_GROUPS))}"
        ) from None
    schemas = [axioms.ALL_SCHEMAS[name] for name in schema_names]

    if bounds.mode == "random":
        rng = random.Random(bounds.seed)
        pool_size = max(1, min(games_pool, bounds.iterations))
        pool = [sample_game(rng, bounds) for _ in range(pool_size)]
        for iteration in range(bounds.iterations):
            game = pool[iteration % pool_size]
            result = _try_instance(rng, schemas, game, enforce_side_conditions,
                                   iteration)
            if result is not None:
                return result
        return None

    rng = random.Random(bounds.seed if bounds.seed is not None else 0)
    props = _PROP_NAMES[: bounds.max_props]
    iteration = 0
    for game in enumerate_games((), props, bounds):
        for _ in range(instantiations_per_game):
            result = _try_instance(rng, schemas, game, enforce_side_conditions,
                                   iteration)
            iteration += 1
            if result is not None:
                return result
    return None


def _try_instance(rng, schemas, game, enforce_side_conditions, iteration):
    schema = schemas[rng.randrange(len(schemas))]
    subst = sample_instantiation(rng, schema, game, enforce_side_conditions)
    instance = axioms.instantiate(schema, subst)
    verdict = valid_in_game(game, instance)
    if not verdict.holds:
        return FuzzCounterexample(
            schema=schema.name,
            game=game,
            play=verdict.refutation,
            instance=instance,
            substitution=subst,
            iteration=iteration,
        )
    return None
