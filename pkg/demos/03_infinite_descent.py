"""An infinite strictly descending chain of raw terms.

The self-application below has no normal form: its weak-head normal form
wraps the term in a fresh Sigma over Type 0, forever. Narrowing each
newly exposed Type 0 domain to Prop gives a chain that strictly descends
in the cumulativity order at every step. No well-typed term behaves like
this; the measure demo (04) shows why typable or normalizable terms
cannot descend forever.
"""

from ecckernel import (
    FuelExhausted,
    descending_chain,
    normalize,
    print_term,
    self_application,
    strict_subtype,
    whnf,
)

loop = self_application()
print(f"loop      = {print_term(loop)}")
print(f"whnf(loop) = {print_term(whnf(loop))}")
print()

try:
    normalize(loop, 10000)
    print("unexpectedly reached a normal form")
except FuelExhausted:
    print("normalize(loop) with fuel 10000: exhausted, as expected")
print()

chain = descending_chain(8)
for i, t in enumerate(chain, start=1):
    print(f"A{i} = {print_term(t)}")
print()
for i in range(len(chain) - 1):
    ok = strict_subtype(chain[i + 1], chain[i], 100)
    print(f"A{i + 2} strictly below A{i + 1} : {ok}")
print()
print("each verdict is decided without normalizing anything: shared heads")
print("are compared structurally and alpha-equal tails short-circuit.")
