"""Syntax-directed principal-type inference.

Every subject form has exactly one applicable clause, so accepted terms
get a unique principal type (up to conversion) together with a trace:
a skeleton of the syntax-directed derivation, one node per rule
application, which the kernel module can materialize and expand into a
full kernel derivation.

Universe bookkeeping treats Prop as level -1 while forming Pi and Sigma
types: a Pi whose codomain lands in Prop is itself a Prop (rule Pi1),
any other Pi or Sigma lands in Type max(j, k, 0). Heads needed by a
clause (a universe, a Pi, a Sigma) are exposed by weak-head reduction;
the trace records such conversions as explicit nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cumulativity import subtype, universe_level
from .reduction import DEFAULT_FUEL, Fuel, whnf
from .terms import (
    PROP,
    App,
    Context,
    Judgment,
    Lam,
    Pair,
    Pi,
    Proj1,
    Proj2,
    Prop,
    Sigma,
    Term,
    Type,
    Var,
    alpha_eq,
    free_vars,
    fresh_name,
    subst,
)

UNBOUND_VARIABLE = "UnboundVariable"
NOT_A_FUNCTION = "NotAFunction"
NOT_A_PAIR = "NotAPair"
NOT_A_UNIVERSE = "NotAUniverse"
CUMULATIVITY_VIOLATION = "CumulativityViolation"
INVALID_CONTEXT = "InvalidContext"


class TypeCheckError(Exception):
    """Rejection with a single kind and the offending subterm."""

    def __init__(self, kind: str, offender: Term, detail: str = ""):
        self.kind = kind
        self.offender = offender
        super().__init__(f"{kind}: {detail}" if detail else kind)


@dataclass(frozen=True)
class Trace:
    """One node of the syntax-directed derivation skeleton."""

    rule: str
    judgment: Judgment
    premises: tuple["Trace", ...] = ()
    level: int | None = None


@dataclass(frozen=True)
class InferOutcome:
    principal: Term
    trace: Trace


def _extend(g: Context, binder: str, ty: Term, body: Term) -> tuple[Context, str, Term]:
    # rename the binder when it would collide with a context name
    if g.lookup(binder) is None:
        return g.extend(binder, ty), binder, body
    renamed = fresh_name(binder, set(g.names()) | free_vars(body) | free_vars(ty))
    return g.extend(renamed, ty), renamed, subst(body, binder, Var(renamed))


def infer_universe(g: Context, t: Term, fuel: int | Fuel = DEFAULT_FUEL) -> tuple[Trace, int]:
    """Infer t and expose its principal type as an exact universe.

    Returns the trace (conversion-wrapped so its conclusion type is
    literally Prop or Type j) and the level, -1 standing for Prop.
    Raises NotAUniverse when the principal type has a different head.
    """
    f = Fuel.coerce(fuel)
    tr = _infer(g, t, f)
    ty = tr.judgment.type
    head = whnf(ty, f)
    lvl = universe_level(head)
    if lvl is None:
        raise TypeCheckError(NOT_A_UNIVERSE, t, "principal type is not a universe")
    if not alpha_eq(head, ty):
        tr = Trace("Conv", Judgment(g, t, head), (tr,))
    return tr, lvl


def infer_type(g: Context, t: Term, fuel: int | Fuel = DEFAULT_FUEL) -> InferOutcome:
    """Principal type of t in g; g is assumed valid (see check_context)."""
    f = Fuel.coerce(fuel)
    tr = _infer(g, t, f)
    return InferOutcome(tr.judgment.type, tr)


def _infer(g: Context, t: Term, f: Fuel) -> Trace:
    match t:
        case Prop():
            rule = "C" if g else "Ax"
            return Trace(rule, Judgment(g, t, Type(0)))
        case Type(j):
            return Trace("T", Judgment(g, t, Type(j + 1)), level=j)
        case Var(x):
            ty = g.lookup(x)
            if ty is None:
                raise TypeCheckError(UNBOUND_VARIABLE, t, f"variable {x!r} is not bound")
            return Trace("var", Judgment(g, t, ty))

        case Pi(x, dom, cod):
            dom_tr, j = infer_universe(g, dom, f)
            g2, _, cod2 = _extend(g, x, dom, cod)
            cod_tr, k = infer_universe(g2, cod2, f)
            if k == -1:
                # impredicativity: the codomain lives in Prop, so the Pi does
                return Trace("Pi1", Judgment(g, t, PROP), (dom_tr, cod_tr))
            lvl = max(j, k, 0)
            return Trace("Pi2'", Judgment(g, t, Type(lvl)), (dom_tr, cod_tr), level=lvl)

        case Sigma(x, first, second):
            fst_tr, j = infer_universe(g, first, f)
            g2, _, second2 = _extend(g, x, first, second)
            snd_tr, k = infer_universe(g2, second2, f)
            # a Prop-level component contributes -1 and is absorbed by the 0
            lvl = max(j, k, 0)
            return Trace("Sigma'", Judgment(g, t, Type(lvl)), (fst_tr, snd_tr), level=lvl)

        case Lam(x, ann, body):
            infer_universe(g, ann, f)  # the annotation must be a type
            g2, x2, body2 = _extend(g, x, ann, body)
            body_tr = _infer(g2, body2, f)
            pi = Pi(x2, ann, body_tr.judgment.type)
            return Trace("Lam", Judgment(g, t, pi), (body_tr,))

        case App(fn, arg):
            fn_tr = _infer(g, fn, f)
            fn_ty = whnf(fn_tr.judgment.type, f)
            if not isinstance(fn_ty, Pi):
                raise TypeCheckError(NOT_A_FUNCTION, fn, "applied term has no Pi type")
            if not alpha_eq(fn_ty, fn_tr.judgment.type):
                fn_tr = Trace("Conv", Judgment(g, fn, fn_ty), (fn_tr,))
            arg_tr = _infer(g, arg, f)
            if not subtype(arg_tr.judgment.type, fn_ty.domain, f):
                raise TypeCheckError(
                    CUMULATIVITY_VIOLATION, arg, "argument type is not below the domain"
                )
            result = subst(fn_ty.codomain, fn_ty.var, arg)
            return Trace("App'", Judgment(g, t, result), (fn_tr, arg_tr))

        case Pair(first, second, ann):
            if not isinstance(ann, Sigma):
                raise TypeCheckError(NOT_A_PAIR, t, "pair annotation must be a Sigma type")
            infer_universe(g, ann.first, f)  # annotation components must be types
            fst_tr = _infer(g, first, f)
            snd_tr = _infer(g, second, f)
            g2, _, fam2 = _extend(g, ann.var, ann.first, ann.second)
            fam_tr, k = infer_universe(g2, fam2, f)
            if k == -1:
                raise TypeCheckError(
                    NOT_A_UNIVERSE, ann.second, "pair family must land in a Type universe"
                )
            if not subtype(fst_tr.judgment.type, ann.first, f):
                raise TypeCheckError(
                    CUMULATIVITY_VIOLATION, first, "first component is not below the annotation"
                )
            expected = subst(ann.second, ann.var, first)
            if not subtype(snd_tr.judgment.type, expected, f):
                raise TypeCheckError(
                    CUMULATIVITY_VIOLATION, second, "second component is not below the family"
                )
            return Trace("Pair'", Judgment(g, t, ann), (fst_tr, snd_tr, fam_tr), level=k)

        case Proj1(m):
            m_tr, sig = _sigma_premise(g, m, f)
            return Trace("Proj1", Judgment(g, t, sig.first), (m_tr,))

        case Proj2(m):
            m_tr, sig = _sigma_premise(g, m, f)
            result = subst(sig.second, sig.var, Proj1(m))
            return Trace("Proj2", Judgment(g, t, result), (m_tr,))

    raise TypeError(f"not a term: {t!r}")


def _sigma_premise(g: Context, m: Term, f: Fuel) -> tuple[Trace, Sigma]:
    m_tr = _infer(g, m, f)
    sig = whnf(m_tr.judgment.type, f)
    if not isinstance(sig, Sigma):
        raise TypeCheckError(NOT_A_PAIR, m, "projected term has no Sigma type")
    if not alpha_eq(sig, m_tr.judgment.type):
        m_tr = Trace("Conv", Judgment(g, m, sig), (m_tr,))
    return m_tr, sig


def check_context(g: Context, fuel: int | Fuel = DEFAULT_FUEL) -> None:
    """Raise unless every entry type has a universe as principal type."""
    f = Fuel.coerce(fuel)
    seen: set[str] = set()
    prefix = Context()
    for name, ty in g:
        if name in seen:
            raise TypeCheckError(INVALID_CONTEXT, Var(name), f"duplicate name {name!r}")
        infer_universe(prefix, ty, f)
        seen.add(name)
        prefix = prefix.extend(name, ty)


def check_type(g: Context, t: Term, ascription: Term, fuel: int | Fuel = DEFAULT_FUEL) -> bool:
    """True iff the principal type of t sits below the ascription.

    The ascription itself must be a type in g; failures other than the
    final cumulativity comparison raise.
    """
    f = Fuel.coerce(fuel)
    outcome = infer_type(g, t, f)
    infer_universe(g, ascription, f)
    return subtype(outcome.principal, ascription, f)
