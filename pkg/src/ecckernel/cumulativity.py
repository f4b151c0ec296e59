"""Decision procedures for the cumulativity preorder.

`subtype` decides the full preorder structurally on weak-head normal
forms: conversion, universe inclusion (Prop below every Type level),
codomain covariance for Pi (domains invariant under conversion), and
covariance in both Sigma components. `subtype_at_level` is the literal
level-indexed unfolding of the same relation, and `strict_subtype` the
strict part, decided without full normalization when both sides share a
head constructor (the descending-chain demo never normalizes).
"""

from __future__ import annotations

from .reduction import DEFAULT_FUEL, Fuel, conv, normalize, whnf
from .terms import Pi, Prop, Sigma, Term, Type, Var, alpha_eq, free_vars, fresh_name, subst


def universe_level(t: Term) -> int | None:
    """Level of a universe term, with Prop below Type 0; None otherwise."""
    match t:
        case Prop():
            return -1
        case Type(j):
            return j
        case _:
            return None


def _opened(x: str, b1: Term, y: str, b2: Term) -> tuple[Term, Term]:
    # rename two bound bodies apart to a common fresh variable
    if x == y:
        return b1, b2
    z = fresh_name(x, free_vars(b1) | free_vars(b2))
    return subst(b1, x, Var(z)), subst(b2, y, Var(z))


def subtype(a: Term, b: Term, fuel: int | Fuel = DEFAULT_FUEL) -> bool:
    """Decide the cumulativity preorder."""
    return _subtype(a, b, Fuel.coerce(fuel))


def _subtype(a: Term, b: Term, f: Fuel) -> bool:
    if alpha_eq(a, b):
        return True
    ha, hb = whnf(a, f), whnf(b, f)
    la, lb = universe_level(ha), universe_level(hb)
    if la is not None or lb is not None:
        return la is not None and lb is not None and la <= lb
    match ha, hb:
        case (Pi(x, a1, b1), Pi(y, a2, b2)):
            if not conv(a1, a2, f):
                return False
            c1, c2 = _opened(x, b1, y, b2)
            return _subtype(c1, c2, f)
        case (Sigma(x, a1, b1), Sigma(y, a2, b2)):
            if not _subtype(a1, a2, f):
                return False
            c1, c2 = _opened(x, b1, y, b2)
            return _subtype(c1, c2, f)
    if type(ha) is type(hb):
        return conv(ha, hb, f)
    return False


def strict_subtype(a: Term, b: Term, fuel: int | Fuel = DEFAULT_FUEL) -> bool:
    """Decide the strict part: subtype but not convertible."""
    return _strict(a, b, Fuel.coerce(fuel))


def _strict(a: Term, b: Term, f: Fuel) -> bool:
    if alpha_eq(a, b):
        return False
    ha, hb = whnf(a, f), whnf(b, f)
    la, lb = universe_level(ha), universe_level(hb)
    if la is not None or lb is not None:
        return la is not None and lb is not None and la < lb
    match ha, hb:
        case (Pi(x, a1, b1), Pi(y, a2, b2)):
            if not conv(a1, a2, f):
                return False
            c1, c2 = _opened(x, b1, y, b2)
            return _strict(c1, c2, f)
        case (Sigma(x, a1, b1), Sigma(y, a2, b2)):
            c1, c2 = _opened(x, b1, y, b2)
            if not (_subtype(a1, a2, f) and _subtype(c1, c2, f)):
                return False
            return _strict(a1, a2, f) or _strict(c1, c2, f)
    # remaining heads relate only through conversion, which is never strict
    return False


def subtype_at_level(a: Term, b: Term, level: int, fuel: int | Fuel = DEFAULT_FUEL) -> bool:
    """Decide the level-indexed approximation of the preorder.

    Level 0 is conversion plus universe inclusion; each further level
    additionally unfolds one shared Pi head (convertible domains,
    codomains compared one level down) or one shared Sigma head (both
    components compared one level down).
    """
    if level < 0:
        raise ValueError("level must be non-negative")
    return _at_level(a, b, level, Fuel.coerce(fuel))


def _at_level(a: Term, b: Term, i: int, f: Fuel) -> bool:
    if conv(a, b, f):
        return True
    ha, hb = whnf(a, f), whnf(b, f)
    la, lb = universe_level(ha), universe_level(hb)
    if la is not None and lb is not None and la <= lb:
        return True
    if i == 0:
        return False
    match ha, hb:
        case (Pi(x, a1, b1), Pi(y, a2, b2)):
            if not conv(a1, a2, f):
                return False
            c1, c2 = _opened(x, b1, y, b2)
            return _at_level(c1, c2, i - 1, f)
        case (Sigma(x, a1, b1), Sigma(y, a2, b2)):
            if not _at_level(a1, a2, i - 1, f):
                return False
            c1, c2 = _opened(x, b1, y, b2)
            return _at_level(c1, c2, i - 1, f)
    return False


def _head_depth(t: Term) -> int:
    match t:
        case Pi(_, a, b) | Sigma(_, a, b):
            return 1 + max(_head_depth(a), _head_depth(b))
        case _:
            return 0


def min_subtype_level(a: Term, b: Term, fuel: int | Fuel = DEFAULT_FUEL) -> int | None:
    """Least level at which a is below b; None when unrelated.

    The search is bounded by the binder nesting depth of the normal
    forms: each level strips one shared head from both sides.
    """
    f = Fuel.coerce(fuel)
    if alpha_eq(a, b):
        return 0
    if not _subtype(a, b, f):
        return None
    na, nb = normalize(a, f), normalize(b, f)
    bound = min(_head_depth(na), _head_depth(nb))
    for i in range(bound + 1):
        if _at_level(na, nb, i, f):
            return i
    raise AssertionError("subtype holds but no level within the structural bound")
