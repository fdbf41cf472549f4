import numpy as np
import pytest

from conftest import GOLDEN_AF, GOLDEN_V
from eotypes import (ConstraintError, HWTriple, KraftWord, PolarizedDM,
                     assemble_dm, classify, dm_to_hw, enumerate_polarized_dms,
                     field_new, full_fv_matrices, random_hw_triple, rank,
                     standard_gram, standard_module, symplectic_perp,
                     validate_dm, validate_unpolarized)
from eotypes.dieudonne import _block_diag
from eotypes.semilinear import Subspace


def test_assemble_golden(golden_triple):
    dm = assemble_dm(golden_triple)
    assert dm.A_F.tolist() == GOLDEN_AF


def test_assemble_ordinary_and_superspecial(F5):
    # ordinary: empty kernel forces the complement to be everything
    A_phi = np.array([[1, 0], [0, 2]])
    t = HWTriple(F5, 2, A_phi, np.zeros((0, 2), int), np.zeros((2, 0), int), "ordinary")
    dm = assemble_dm(t)
    assert dm.A_F.tolist() == [[1, 0], [0, 2], [0, 0], [0, 0]]
    # superspecial: zero operator forces kernel coordinates everywhere
    A_psi = np.array([[1, 2], [3, 4]])
    t2 = HWTriple(F5, 2, np.zeros((2, 2), int), np.eye(2, dtype=int), A_psi, "superspecial")
    dm2 = assemble_dm(t2)
    assert dm2.A_F.tolist() == [[0, 0], [0, 0], [3, 4], [1, 2]]


def test_full_fv_golden(golden_triple):
    dm = assemble_dm(golden_triple)
    full_F, full_V = full_fv_matrices(dm)
    assert full_F[:, :3].tolist() == GOLDEN_AF
    assert not full_F[:, 3:].any()
    assert full_V.tolist() == GOLDEN_V
    assert validate_dm(full_F, full_V, dm.gram, dm.field) == []


def test_validate_dm_detects_violations(F5, golden_triple):
    dm = assemble_dm(golden_triple)
    full_F, full_V = full_fv_matrices(dm)
    # single-entry perturbation breaks the pairing identity
    bad_V = full_V.copy()
    bad_V[4, 2] = (bad_V[4, 2] + 1) % 5
    assert "b(Fx,y) != b(x,Vy)^p" in validate_dm(full_F, bad_V, dm.gram, F5)
    # zero V against an invertible block breaks the kernel-image axiom
    viol = validate_dm(np.array([[1, 0], [0, 0]]), np.zeros((2, 2), int),
                       standard_gram(F5, 1), F5)
    assert "Ker F != Im V" in viol


def test_dm_to_hw_roundtrip_golden(F5, golden_triple):
    dm = assemble_dm(golden_triple)
    full_F, full_V = full_fv_matrices(dm)
    t2 = dm_to_hw(full_F, full_V, dm.gram, F5)
    assert classify(t2).weyl == classify(golden_triple).weyl


def test_dm_to_hw_g1_standard_modules(F5):
    # the self-paired supersingular cycle needs a polarization constant with
    # beta^(p-1) = -1, which only exists in the quadratic extension
    F25 = field_new(5, 2)
    beta = next(c for c in range(1, 25)
                if int(F25.pow_int(np.asarray(c), 4)) == F25.from_int(-1))
    gram = np.array([[0, beta], [int(F25.neg(np.asarray(beta))), 0]])
    Fs, Vs = standard_module(("F", "V"), F25)
    assert validate_dm(Fs, Vs, gram, F25) == []
    t = dm_to_hw(Fs, Vs, gram, F25)
    assert t.A_phi.tolist() == [[0]] and t.h == 1 and t.A_psi.shape == (1, 1)
    assert t.A_psi[0, 0] != 0
    # the ordinary dual pair carries the standard form as-is
    Ford = _block_diag([standard_module(("F",), F5)[0], standard_module(("V",), F5)[0]])
    Vord = _block_diag([standard_module(("F",), F5)[1], standard_module(("V",), F5)[1]])
    t2 = dm_to_hw(Ford, Vord, standard_gram(F5, 1), F5)
    assert t2.h == 0 and t2.A_phi[0, 0] != 0


def test_dm_to_hw_rejects_invalid(F5):
    with pytest.raises(ConstraintError):
        dm_to_hw(np.array([[1, 0], [0, 0]]), np.zeros((2, 2), int),
                 standard_gram(F5, 1), F5)


def test_standard_module_fixtures(F5):
    Fm, Vm = standard_module(("F", "V"), F5)
    # F(e_1) = e_2, F(e_2) = 0, V(e_1) = e_2, V(e_2) = 0
    assert Fm.tolist() == [[0, 0], [1, 0]]
    assert Vm.tolist() == [[0, 0], [1, 0]]
    assert validate_unpolarized(Fm, Vm, F5) == []
    Fo, Vo = standard_module(("F",), F5)
    assert Fo.tolist() == [[1]] and Vo.tolist() == [[0]]
    with pytest.raises(ConstraintError):
        standard_module(("F", "V"), F5, a=[1, 0])


def test_standard_module_extension_twist():
    F9 = field_new(3, 2)
    t_code = 3  # generator
    Fm, Vm = standard_module(("F", "V"), F9, a=[t_code, t_code])
    assert validate_unpolarized(Fm, Vm, F9) == []


def test_kraft_word_canonicalization():
    w = KraftWord(("V", "F", "F"))
    assert w.canonical().word == ("F", "F", "V")
    assert w.check_dual().word == ("F", "V", "V")
    assert KraftWord(("F", "V")).is_self_paired_admissible()
    assert not KraftWord(("F", "F")).is_self_paired_admissible()
    assert KraftWord(("F", "F", "V", "V")).is_self_paired_admissible()
    assert not KraftWord(("F", "V", "F", "V")).is_self_paired_admissible()


def test_enumeration_counts_and_axioms():
    F2 = field_new(2)
    sizes = {1: 2, 2: 6, 3: 14}
    for g, expected in sizes.items():
        mods = enumerate_polarized_dms(g)
        assert len(mods) == expected
        for m in mods:
            assert m["F"].shape == (2 * g, 2 * g)
            assert validate_unpolarized(m["F"], m["V"], F2) == []
    with pytest.raises(ConstraintError):
        enumerate_polarized_dms(5)


def test_enumeration_rejects_inadmissible_cycles():
    labels = [m["label"] for m in enumerate_polarized_dms(2)]
    assert not any("cycle[FF]" in lab or "cycle[VV]" in lab for lab in labels)
    assert not any("cycle[FVFV]" in lab for lab in labels)


def test_roundtrip_property_random(F5):
    rng = np.random.default_rng(101)
    for _ in range(100):
        g = int(rng.integers(1, 5))
        t = random_hw_triple(F5, g, rng)
        dm = assemble_dm(t)
        full_F, full_V = full_fv_matrices(dm)
        assert validate_dm(full_F, full_V, dm.gram, F5) == []
        t2 = dm_to_hw(full_F, full_V, dm.gram, F5)
        assert classify(t2).weyl == classify(t).weyl


def test_complement_choice_invariance(F5):
    rng = np.random.default_rng(55)
    for _ in range(100):
        g = int(rng.integers(1, 5))
        t = random_hw_triple(F5, g, rng)
        wd = classify(assemble_dm(t, scan="descending")).weyl
        wa = classify(assemble_dm(t, scan="ascending")).weyl
        assert wd == wa


def test_assembled_image_isotropic(F5):
    rng = np.random.default_rng(61)
    for _ in range(50):
        g = int(rng.integers(1, 5))
        t = random_hw_triple(F5, g, rng)
        dm = assemble_dm(t)
        assert rank(F5, dm.A_F) == g
        image = Subspace.span(F5, dm.A_F.T, ambient=2 * g)
        assert image.is_subspace_of(symplectic_perp(image, dm.gram))


def test_polarized_dm_rejects_dependent_columns(F5):
    with pytest.raises(ConstraintError):
        PolarizedDM(F5, np.zeros((4, 2), int))
