"""Walk a plane quartic over GF(5) through the whole pipeline.

This is the library's central use case: from a homogeneous equation to the
Ekedahl-Oort invariants of its Jacobian's p-kernel, with every intermediate
object printed along the way.
"""

from eotypes import (assemble_dm, classify, full_fv_matrices, hw_triple,
                     parse_poly, plane_curve, field_new, weyl_word)

F5 = field_new(5)
f = parse_poly("X0^4+X1^4+X2^4+X0^3*X1+X0*X1^2*X2-X1^2*X2^2+3*X1*X2^3", 3, F5)
curve = plane_curve(F5, f)
print("curve: f =", f)
print("genus:", (curve.d - 1) * (curve.d - 2) // 2)

triple = hw_triple(curve)
print("\nHasse-Witt matrix (left action, Frobenius twist):")
print(triple.A_phi)
print("kernel of the operator (echelon rows):")
print(triple.kappa)
print("second operator on the kernel, in dual coordinates:")
print(triple.A_psi)

dm = assemble_dm(triple)
full_F, full_V = full_fv_matrices(dm)
print("\nFrobenius on the 2g-dimensional module (first g columns):")
print(dm.A_F)
print("Verschiebung, forced by the polarization:")
print(full_V)

result = classify(triple)
print("\nclassification:", result)
print("reduced word:", weyl_word(result.weyl))
