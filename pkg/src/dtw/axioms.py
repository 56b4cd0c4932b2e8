"""Axiom schemas: structural patterns over formula and coalition
metavariables, with instantiation, matching, and side conditions.

Matching is purely structural on the desugared core AST (no reasoning
modulo equivalence).  Coalition metavariables bind to concrete coalitions;
union patterns are checked against the bindings made earlier in a
left-to-right traversal, which suffices for every schema defined here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from .formula import Blame, Coalition, Formula, Implies, Know, Not, coalition


# --- pattern nodes ---------------------------------------------------------

@dataclass(frozen=True)
class FVar:
    name: str


@dataclass(frozen=True)
class CVar:
    name: str


@dataclass(frozen=True)
class CUnion:
    left: "CExpr"
    right: "CExpr"


@dataclass(frozen=True)
class CConst:
    members: Coalition


CExpr = Union[CVar, CUnion, CConst]


@dataclass(frozen=True)
class PNot:
    child: "Pattern"


@dataclass(frozen=True)
class PImplies:
    left: "Pattern"
    right: "Pattern"


@dataclass(frozen=True)
class PKnow:
    knowers: CExpr
    child: "Pattern"


@dataclass(frozen=True)
class PBlame:
    knowers: CExpr
    actors: CExpr
    child: "Pattern"


Pattern = Union[FVar, PNot, PImplies, PKnow, PBlame]


def p_conj(a: Pattern, b: Pattern) -> Pattern:
    return PNot(PImplies(a, PNot(b)))


def p_disj(a: Pattern, b: Pattern) -> Pattern:
    return PImplies(PNot(a), b)


def p_dual_know(c: CExpr, f: Pattern) -> Pattern:
    return PNot(PKnow(c, PNot(f)))


# --- schemas ---------------------------------------------------------------

@dataclass(frozen=True)
class Schema:
    name: str
    pattern: Pattern
    formula_vars: Tuple[str, ...]
    coalition_vars: Tuple[str, ...]
    # side conditions: ("subset", small, large) or ("disjoint", a, b)
    side: Tuple[Tuple[str, str, str], ...] = ()


_phi, _psi = FVar("phi"), FVar("psi")
_C, _D, _E, _F = CVar("C"), CVar("D"), CVar("E"), CVar("F")

AXIOM_SCHEMAS: Dict[str, Schema] = {}


def _schema(name, pattern, fvars, cvars, side=()):
    AXIOM_SCHEMAS[name] = Schema(name, pattern, tuple(fvars), tuple(cvars),
                                 tuple(side))


_schema("Truth-K", PImplies(PKnow(_C, _phi), _phi), ("phi",), ("C",))
_schema("Truth-B", PImplies(PBlame(_C, _D, _phi), _phi), ("phi",), ("C", "D"))
_schema(
    "Distributivity",
    PImplies(
        PKnow(_C, PImplies(_phi, _psi)),
        PImplies(PKnow(_C, _phi), PKnow(_C, _psi)),
    ),
    ("phi", "psi"),
    ("C",),
)
_schema(
    "NegIntrospection",
    PImplies(PNot(PKnow(_C, _phi)), PKnow(_C, PNot(PKnow(_C, _phi)))),
    ("phi",),
    ("C",),
)
_schema(
    "Monotonicity-K",
    PImplies(PKnow(_C, _phi), PKnow(_E, _phi)),
    ("phi",),
    ("C", "E"),
    side=(("subset", "C", "E"),),
)
_schema(
    "Monotonicity-B",
    PImplies(PBlame(_C, _D, _phi), PBlame(_E, _F, _phi)),
    ("phi",),
    ("C", "D", "E", "F"),
    side=(("subset", "C", "E"), ("subset", "D", "F")),
)
_schema(
    "NoneToAct",
    PNot(PBlame(_C, CConst(frozenset()), _phi)),
    ("phi",),
    ("C",),
)
_schema(
    "JointResponsibility",
    PImplies(
        p_conj(
            p_dual_know(_C, PBlame(_C, _D, _phi)),
            p_dual_know(_E, PBlame(_E, _F, _psi)),
        ),
        PImplies(
            p_disj(_phi, _psi),
            PBlame(CUnion(_C, _E), CUnion(_D, _F), p_disj(_phi, _psi)),
        ),
    ),
    ("phi", "psi"),
    ("C", "D", "E", "F"),
    side=(("disjoint", "D", "F"),),
)
_schema(
    "StrictConditional",
    PImplies(
        PKnow(_C, PImplies(_phi, _psi)),
        PImplies(PBlame(_C, _D, _psi), PImplies(_phi, PBlame(_C, _D, _phi))),
    ),
    ("phi", "psi"),
    ("C", "D"),
)
_schema(
    "IntrospectionOfBlame",
    PImplies(
        PBlame(_C, _D, _phi),
        PKnow(_C, PImplies(_phi, PBlame(_C, _D, _phi))),
    ),
    ("phi",),
    ("C", "D"),
)

# Derived schemas, fuzzable alongside the axioms.
DERIVED_SCHEMAS: Dict[str, Schema] = {
    "Lemma2": Schema(
        "Lemma2",
        PImplies(PKnow(_C, _phi), PKnow(_C, PKnow(_C, _phi))),
        ("phi",),
        ("C",),
    ),
    "Lemma3": Schema(
        "Lemma3",
        PImplies(
            p_dual_know(_C, PBlame(_C, _D, _phi)),
            PImplies(_phi, PBlame(_C, _D, _phi)),
        ),
        ("phi",),
        ("C", "D"),
    ),
}

ALL_SCHEMAS: Dict[str, Schema] = {**AXIOM_SCHEMAS, **DERIVED_SCHEMAS}

# User-facing fuzz targets: the eight numbered axioms (Truth and
# Monotonicity each cover both of their forms) plus the two derived lemmas.
FUZZ_GROUPS: Dict[str, Tuple[str, ...]] = {
    "Truth": ("Truth-K", "Truth-B"),
    "Distributivity": ("Distributivity",),
    "NegIntrospection": ("NegIntrospection",),
    "Monotonicity": ("Monotonicity-K", "Monotonicity-B"),
    "NoneToAct": ("NoneToAct",),
    "JointResponsibility": ("JointResponsibility",),
    "StrictConditional": ("StrictConditional",),
    "IntrospectionOfBlame": ("IntrospectionOfBlame",),
    "Lemma2": ("Lemma2",),
    "Lemma3": ("Lemma3",),
}
# Each concrete form is addressable directly as well.
for _name in ALL_SCHEMAS:
    FUZZ_GROUPS.setdefault(_name, (_name,))


def resolve_fuzz_group(name: str) -> Tuple[str, ...]:
    """Map a user-supplied schema name to concrete schema names."""
    wanted = name.strip().lower().replace("_", "").replace("-", "")
    for key, members in FUZZ_GROUPS.items():
        if key.lower().replace("-", "") == wanted:
            return members
    raise KeyError(name)


# --- matching and instantiation --------------------------------------------

def _coal_value(expr: CExpr, subst) -> Optional[Coalition]:
    if isinstance(expr, CConst):
        return expr.members
    if isinstance(expr, CVar):
        return subst.get(expr.name)
    left = _coal_value(expr.left, subst)
    right = _coal_value(expr.right, subst)
    if left is None or right is None:
        return None
    return left | right


def _match_coal(expr: CExpr, members: Coalition, subst) -> bool:
    if isinstance(expr, CVar) and expr.name not in subst:
        subst[expr.name] = members
        return True
    value = _coal_value(expr, subst)
    return value is not None and value == members


def _match(pattern: Pattern, f: Formula, subst) -> bool:
    if isinstance(pattern, FVar):
        bound = subst.get(pattern.name)
        if bound is None:
            subst[pattern.name] = f
            return True
        return bound == f
    if isinstance(pattern, PNot):
        return isinstance(f, Not) and _match(pattern.child, f.child, subst)
    if isinstance(pattern, PImplies):
        return (
            isinstance(f, Implies)
            and _match(pattern.left, f.left, subst)
            and _match(pattern.right, f.right, subst)
        )
    if isinstance(pattern, PKnow):
        return (
            isinstance(f, Know)
            and _match_coal(pattern.knowers, f.knowers, subst)
            and _match(pattern.child, f.child, subst)
        )
    if isinstance(pattern, PBlame):
        return (
            isinstance(f, Blame)
            and _match_coal(pattern.knowers, f.knowers, subst)
            and _match_coal(pattern.actors, f.actors, subst)
            and _match(pattern.child, f.child, subst)
        )
    raise TypeError(f"not a pattern: {pattern!r}")


def side_conditions_hold(schema: Schema, subst) -> bool:
    for kind, a, b in schema.side:
        if kind == "subset" and not subst[a] <= subst[b]:
            return False
        if kind == "disjoint" and subst[a] & subst[b]:
            return False
    return True


def match_schema(schema: Schema, f: Formula) -> Optional[dict]:
    """Return the metavariable assignment making f an instance, or None.

    Side conditions are enforced; the assignment maps formula variables to
    formulas and coalition variables to frozensets.
    """
    subst: dict = {}
    if _match(schema.pattern, f, subst) and side_conditions_hold(schema, subst):
        return subst
    return None


def instantiate(schema: Schema, subst) -> Formula:
    """Build the concrete instance of a schema under an assignment."""
    return _build(schema.pattern, subst)


def _build_coal(expr: CExpr, subst) -> Coalition:
    value = _coal_value(expr, subst)
    if value is None:
        raise KeyError(f"unbound coalition variable in {expr!r}")
    return coalition(value)


def _build(pattern: Pattern, subst) -> Formula:
    if isinstance(pattern, FVar):
        return subst[pattern.name]
    if isinstance(pattern, PNot):
        return Not(_build(pattern.child, subst))
    if isinstance(pattern, PImplies):
        return Implies(_build(pattern.left, subst), _build(pattern.right, subst))
    if isinstance(pattern, PKnow):
        return Know(_build_coal(pattern.knowers, subst), _build(pattern.child, subst))
    if isinstance(pattern, PBlame):
        return Blame(
            _build_coal(pattern.knowers, subst),
            _build_coal(pattern.actors, subst),
            _build(pattern.child, subst),
        )
    raise TypeError(f"not a pattern: {pattern!r}")
