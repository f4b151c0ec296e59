"""Terms, substitution, and fuel-bounded reduction.

Builds a few terms by hand, shows capture-avoiding substitution at work,
and walks a reduction to its normal form step by step.
"""

from ecckernel import (
    PROP,
    App,
    Lam,
    Pair,
    Proj1,
    Sigma,
    Type,
    Var,
    alpha_eq,
    normalize,
    print_term,
    step,
    subst,
    whnf,
)

print("-- substitution ------------------------------------------------")
body = Lam("y", PROP, Var("x"))
print(f"term            : {print_term(body)}")
print(f"[y/x] (bad name): {print_term(subst(body, 'x', Var('y')))}")
print("the binder was renamed; the free y stayed free")
print()

print("-- alpha equivalence -------------------------------------------")
id1 = Lam("x", PROP, Var("x"))
id2 = Lam("y", PROP, Var("y"))
print(f"{print_term(id1)}  ~  {print_term(id2)}  ->  {alpha_eq(id1, id2)}")
print()

print("-- reduction, one step at a time -------------------------------")
redex = App(id1, Proj1(Pair(PROP, Type(0), Sigma("z", Type(1), Type(1)))))
cur = redex
while cur is not None:
    print(f"  {print_term(cur)}")
    cur = step(cur)
print(f"normal form: {print_term(normalize(redex))}")
print()

print("-- weak-head vs full normalization ------------------------------")
under_binder = Lam("a", PROP, App(id1, Var("a")))
print(f"term : {print_term(under_binder)}")
print(f"whnf : {print_term(whnf(under_binder))}   (head already stable)")
print(f"nf   : {print_term(normalize(under_binder))}")
