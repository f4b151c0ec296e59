"""The stratification of normalizable terms and its descent measure.

Every normalizable term falls into a class: base (its normal form is not
binder-headed) or Pi/Sigma-headed with a nesting level. On top of the
classes sits a multiplicative measure that is invariant under conversion
and strictly increases along the strict cumulativity order, so strictly
descending chains of normalizable terms are always finite.
"""

from ecckernel import (
    PROP,
    Pi,
    Sigma,
    Type,
    classify,
    level_transfer_triple,
    measure,
    print_term,
    strict_subtype,
)

print("-- classes ------------------------------------------------------")
samples = [
    PROP,
    Type(2),
    Pi("x", PROP, PROP),
    Sigma("x", Sigma("y", PROP, PROP), PROP),
    Pi("x", Pi("y", PROP, PROP), Sigma("z", PROP, PROP)),
]
for t in samples:
    cls = classify(t)
    print(f"  {print_term(t):46} {cls.kind.value:5} level={cls.level} measure={cls.measure}")
print()

print("-- the measure on the counterexample triple ----------------------")
c, a, b = level_transfer_triple()
for name, t in (("C", c), ("A", a), ("B", b)):
    print(f"  phi({name}) = {measure(t)}")
print(f"  C < A < B strictly: {strict_subtype(c, a)} {strict_subtype(a, b)}")
print(f"  and the measures agree: {measure(c)} < {measure(a)} < {measure(b)}")
print()

print("-- descents stop within the measure -------------------------------")


def lower_once(t):
    match t:
        case Type(0):
            return PROP
        case Type(j):
            return Type(j - 1)
        case Pi(x, dom, cod):
            low = lower_once(cod)
            return Pi(x, dom, low) if low is not None else None
        case Sigma(x, fst, snd):
            low = lower_once(fst)
            if low is not None:
                return Sigma(x, low, snd)
            low = lower_once(snd)
            return Sigma(x, fst, low) if low is not None else None
    return None


start = Sigma("x", Type(2), Pi("y", PROP, Type(1)))
chain = [start]
while (nxt := lower_once(chain[-1])) is not None:
    assert strict_subtype(nxt, chain[-1])
    chain.append(nxt)

print(f"start   : {print_term(start)}   measure {measure(start)}")
print(f"descended {len(chain) - 1} times, bound was measure - 1 = {measure(start) - 1}")
for t in chain:
    print(f"  {print_term(t):40} measure {measure(t)}")
