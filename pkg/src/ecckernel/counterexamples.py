"""Concrete demonstration terms.

`level_transfer_triple` gives three nested Sigma types C, A, B with
C below A strictly below B at level 1, while C sits below A only from
level 2 on: relatedness at a level does not transfer down a chain.

`self_application` builds a non-normalizing term: a function that pairs
its argument's self-application under a Sigma, applied to itself. Its
weak-head normal form wraps the same term again, which yields an
infinite strictly descending chain of raw (untypable) terms.
"""

from __future__ import annotations

from .terms import PROP, App, Lam, Sigma, Term, Type, Var


def level_transfer_triple() -> tuple[Term, Term, Term]:
    c = Sigma("x", Sigma("y", PROP, PROP), PROP)
    a = Sigma("x", Sigma("y", PROP, Type(0)), PROP)
    b = Sigma("x", Sigma("y", PROP, Type(0)), Type(0))
    return c, a, b


def self_application() -> Term:
    # the binder annotation is inert for reduction; Type 0 keeps to a
    # single lambda constructor
    fn = Lam("y", Type(0), Sigma("x", Type(0), App(Var("y"), Var("y"))))
    return App(fn, fn)


def descending_chain(steps: int) -> list[Term]:
    """First `steps` stages of the strictly descending chain.

    Stage 1 is the Sigma over Type 0 exposed by head reduction; each
    later stage narrows the outermost remaining Type 0 domain to Prop
    after one more unfolding.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    loop = self_application()
    chain = [Sigma("x", Type(0), loop)]
    tail: Term = loop
    for _ in range(steps - 1):
        tail = Sigma("x", PROP, tail)
        chain.append(tail)
    return chain
