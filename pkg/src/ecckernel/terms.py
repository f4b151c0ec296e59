"""Abstract syntax: terms, contexts, judgments.

Terms are immutable values. Binding is by name, with capture-avoiding
substitution; bound names are freshened deterministically (numeric
suffixes) so printing is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass


class Term:
    """Base class for all term constructors."""


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Prop(Term):
    """The impredicative universe of propositions."""


@dataclass(frozen=True)
class Type(Term):
    """Predicative universe at a non-negative level."""

    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("universe levels are non-negative")


@dataclass(frozen=True)
class Pi(Term):
    var: str
    domain: Term
    codomain: Term


@dataclass(frozen=True)
class Sigma(Term):
    var: str
    first: Term
    second: Term


@dataclass(frozen=True)
class Lam(Term):
    var: str
    annotation: Term
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Pair(Term):
    # annotation carries the full Sigma type so pair rules can read its
    # components syntactically
    first: Term
    second: Term
    annotation: Term


@dataclass(frozen=True)
class Proj1(Term):
    pair: Term


@dataclass(frozen=True)
class Proj2(Term):
    pair: Term


PROP = Prop()


@dataclass(frozen=True)
class Context:
    """Ordered assumptions; earlier entries are in scope for later ones."""

    entries: tuple[tuple[str, Term], ...] = ()

    @classmethod
    def of(cls, *entries: tuple[str, Term]) -> "Context":
        return cls(tuple(entries))

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def lookup(self, name: str) -> Term | None:
        for entry_name, entry_type in self.entries:
            if entry_name == name:
                return entry_type
        return None

    def extend(self, name: str, ty: Term) -> "Context":
        return Context(self.entries + ((name, ty),))

    def pop(self) -> tuple["Context", str, Term]:
        """Split off the last entry; context must be non-empty."""
        name, ty = self.entries[-1]
        return Context(self.entries[:-1]), name, ty

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)


@dataclass(frozen=True)
class Judgment:
    """A typing claim: ctx entails subject having the given type."""

    ctx: Context
    subject: Term
    type: Term


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(x):
            return frozenset((x,))
        case Prop() | Type():
            return frozenset()
        case Pi(x, a, b) | Sigma(x, a, b) | Lam(x, a, b):
            return free_vars(a) | (free_vars(b) - {x})
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Pair(m, n, ann):
            return free_vars(m) | free_vars(n) | free_vars(ann)
        case Proj1(m) | Proj2(m):
            return free_vars(m)
    raise TypeError(f"not a term: {t!r}")


def fresh_name(stem: str, avoid: frozenset[str] | set[str]) -> str:
    """Deterministic fresh name: the stem with the least unused numeric suffix."""
    base = stem.rstrip("0123456789") or stem
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def subst(t: Term, name: str, replacement: Term) -> Term:
    """Capture-avoiding substitution of replacement for the free variable."""
    match t:
        case Var(x):
            return replacement if x == name else t
        case Prop() | Type():
            return t
        case App(f, a):
            return App(subst(f, name, replacement), subst(a, name, replacement))
        case Pair(m, n, ann):
            return Pair(
                subst(m, name, replacement),
                subst(n, name, replacement),
                subst(ann, name, replacement),
            )
        case Proj1(m):
            return Proj1(subst(m, name, replacement))
        case Proj2(m):
            return Proj2(subst(m, name, replacement))
        case Pi(x, a, b):
            x2, b2 = _subst_under(x, b, name, replacement)
            return Pi(x2, subst(a, name, replacement), b2)
        case Sigma(x, a, b):
            x2, b2 = _subst_under(x, b, name, replacement)
            return Sigma(x2, subst(a, name, replacement), b2)
        case Lam(x, a, b):
            x2, b2 = _subst_under(x, b, name, replacement)
            return Lam(x2, subst(a, name, replacement), b2)
    raise TypeError(f"not a term: {t!r}")


def _subst_under(binder: str, body: Term, name: str, replacement: Term):
    if binder == name:
        # the binder shadows the substituted variable
        return binder, body
    if binder in free_vars(replacement) and name in free_vars(body):
        avoid = free_vars(body) | free_vars(replacement) | {name, binder}
        renamed = fresh_name(binder, avoid)
        body = subst(body, binder, Var(renamed))
        binder = renamed
    return binder, subst(body, name, replacement)


def alpha_eq(a: Term, b: Term) -> bool:
    """Equality up to renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a: Term, b: Term, env_a: dict, env_b: dict, depth: int) -> bool:
    # bound variables are compared by binder depth, free ones by name
    match a, b:
        case (Var(x), Var(y)):
            da, db = env_a.get(x), env_b.get(y)
            if da is None and db is None:
                return x == y
            return da == db
        case (Prop(), Prop()):
            return True
        case (Type(j), Type(k)):
            return j == k
        case (
            (Pi(x, a1, b1), Pi(y, a2, b2))
            | (Sigma(x, a1, b1), Sigma(y, a2, b2))
            | (Lam(x, a1, b1), Lam(y, a2, b2))
        ):
            if not _alpha(a1, a2, env_a, env_b, depth):
                return False
            env_a = dict(env_a)
            env_a[x] = depth
            env_b = dict(env_b)
            env_b[y] = depth
            return _alpha(b1, b2, env_a, env_b, depth + 1)
        case (App(f1, x1), App(f2, x2)):
            return _alpha(f1, f2, env_a, env_b, depth) and _alpha(x1, x2, env_a, env_b, depth)
        case (Pair(m1, n1, t1), Pair(m2, n2, t2)):
            return (
                _alpha(m1, m2, env_a, env_b, depth)
                and _alpha(n1, n2, env_a, env_b, depth)
                and _alpha(t1, t2, env_a, env_b, depth)
            )
        case (Proj1(m1), Proj1(m2)) | (Proj2(m1), Proj2(m2)):
            return _alpha(m1, m2, env_a, env_b, depth)
    return False
