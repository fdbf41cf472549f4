"""Fast paths on the Fermat family: the Hasse-Witt matrix alone settles the
ordinary and superspecial cases, no module assembly needed."""

from eotypes import GradedPoly, classify, field_new, hw_triple, plane_curve


def fermat(p, d):
    field = field_new(p)
    f = GradedPoly.from_terms(field, 3, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1})
    return plane_curve(field, f)


print("elliptic Fermat cubic across small characteristics:")
for p in (5, 7, 11, 13):
    triple = hw_triple(fermat(p, 3))
    print(f"  p={p:>2}: hasse-witt = {triple.A_phi.tolist()}  -> {triple.fast_tag}")

print("\nFermat quartic (genus 3):")
for p in (5, 7, 11, 13):
    result = classify(fermat(p, 4))
    print(f"  p={p:>2}: {result}")
