"""Vertical divisors V_0 and V_inf at a few primes, solved and in closed form."""

from x0models import arith
from x0models.divisors import INF, KERNEL, ZERO, closed_form_vm, rhs_vector, solve_vm
from x0models.minimal import fiber_for_level
from x0models.selfint import finite_part

for N, p in [(23, 23), (169, 13), (875, 5), (875, 7)]:
    fiber = fiber_for_level(N, p)
    g = arith.genus(N)
    u = solve_vm(fiber, g, ZERO)
    v = solve_vm(fiber, g, INF)
    print(f"\nX_0({N}) at p={p}: g={g}, {len(fiber)} components ({fiber.model_tag})")
    print("  rhs for V_0:", [str(x) for x in rhs_vector(fiber, g, ZERO)])
    for lab, w, a, b in zip(fiber.labels, fiber.multiplicities, u.coefficients, v.coefficients):
        print(f"  {lab:<8} w={w:<4} u={str(a):>12} v={str(b):>12}")
    same = u == closed_form_vm(fiber, ZERO) and v == closed_form_vm(fiber, INF)
    print("  solver agrees with closed forms:", same,
          "| w is the multiplicity vector:", closed_form_vm(fiber, KERNEL).coefficients == fiber.multiplicities)

res = finite_part(875)
print(f"\nfinite part of X_0(875): " + " + ".join(f"({c.coeff}) log {c.p}" for c in res.primes))
print(f"  = {res.float_value:.4f}, ratio to g log N = {res.ratio_to_g_logN:.4f}")
