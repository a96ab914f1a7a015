"""Walk through the special fibre of X_0(169) at 13.

Edixhoven's model has five components.  C1 is exceptional, and contracting
it makes E_1_1 and then F_1_1 exceptional in turn.  What is left is two
genus-1 curves meeting in 7 points.
"""

from x0models import arith
from x0models.fiber import build_edixhoven, fiber_canonical_degree_check
from x0models.minimal import blow_down_composite, canonical_intersections, contract, find_exceptional


def show(fiber, title):
    print(f"\n{title}")
    width = max(len(x) for x in fiber.labels)
    for lab, comp, row in zip(fiber.labels, fiber.components, fiber.matrix.rows):
        cells = " ".join(f"{str(x):>4}" for x in row)
        print(f"  {lab:<{width}}  m={comp.multiplicity:<3} g={comp.genus}  | {cells}")


edi = build_edixhoven(13, 2, 1)
g = arith.genus(169)
show(edi, f"Edixhoven fibre, genus of X_0(169) = {g}")
print("canonical degree:", fiber_canonical_degree_check(edi), "= 2g - 2")

fiber = edi
step = 0
while found := find_exceptional(fiber):
    step += 1
    fiber = contract(fiber, found[0])
    show(fiber, f"after contracting {found[0].label(2)} (step {step})")

assert fiber == blow_down_composite(edi)
print("\nthe one-shot formulas give the same minimal fibre")
print("K . Gamma on the minimal fibre:", [int(x) for x in canonical_intersections(fiber)])
