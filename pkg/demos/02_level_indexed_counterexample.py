"""Why relatedness at a level does not transfer down a chain.

Three nested Sigma types C, A, B are built so that C sits below A and A
strictly below B at level 1. If being below at level i transferred along
such chains, C would be below A at level 1 as well. It is not: the inner
components Prop and Type 0 only become comparable one level further down,
so C first relates to A at level 2.
"""

from ecckernel import (
    level_transfer_triple,
    min_subtype_level,
    print_term,
    strict_subtype,
    subtype,
    subtype_at_level,
)

c, a, b = level_transfer_triple()
print(f"C = {print_term(c)}")
print(f"A = {print_term(a)}")
print(f"B = {print_term(b)}")
print()

print(f"C below A (full preorder)     : {subtype(c, a)}")
print(f"A below B at level 1          : {subtype_at_level(a, b, 1)}")
print(f"A strictly below B            : {strict_subtype(a, b)}")
print()

print(f"C below A at level 1          : {subtype_at_level(c, a, 1)}   <- the failure")
print(f"C below A at level 2          : {subtype_at_level(c, a, 2)}")
print()

print(f"least level for C below A     : {min_subtype_level(c, a)}")
print(f"least level for A below B     : {min_subtype_level(a, b)}")
print()
print("so: C below A, A strictly below B at level 1, yet C is not below A")
print("at level 1 -- the level cannot be read off the ends of the chain.")
