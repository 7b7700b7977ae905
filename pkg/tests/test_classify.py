import random
from math import gcd

import pytest

from apollo.classify import (
    ADMISSIBLE,
    KRONECKER_2_3,
    QUARTIC_TYPES,
    OBSTRUCTION_TABLE,
    Chi4,
    ObstructionFamily,
    PackingType,
    admissible_residues,
    chi2,
    chi2_at,
    chi4,
    chi4_at,
    extended_type,
    lattice_of,
    obstructions_for,
    residue_type,
    rho_of,
)
from apollo.gaussian import GaussianInt, sum_two_squares_all
from apollo.numtheory import kronecker
from apollo.packing import Quadruple, apply_move, form_of, validate
from support import bitmap
from tables import ONE_PER_TYPE, TABLE_ROWS
from test_packing import ORBIT


def test_residue_type_examples():
    assert residue_type(Quadruple(-3, 5, 8, 8)) == (6, 5)
    assert residue_type(Quadruple(-1, 2, 2, 3)) == (8, 11)
    assert residue_type(Quadruple(0, 0, 1, 1)) == (6, 1)


def test_admissible_examples():
    assert admissible_residues(6, 1) == {0, 1, 4, 9, 12, 16}
    assert admissible_residues(8, 11) == {2, 3, 6, 11, 14, 15, 18, 23}
    assert admissible_residues(6, 17) == {0, 8, 9, 12, 17, 20}
    with pytest.raises(ValueError):
        admissible_residues(6, 7)


def test_residue_type_is_orbit_invariant():
    for q in ORBIT:
        assert residue_type(q) == residue_type(apply_move(q, 1))


def test_residue_type_matches_small_enumeration():
    for root in ONE_PER_TYPE.values():
        size, k = residue_type(Quadruple(*root))
        seen = {int(m) % 24 for m in bitmap(tuple(root), 5000).values()}
        assert seen <= ADMISSIBLE[(size, k)]


def test_kronecker_table():
    for r, (k2, k3) in KRONECKER_2_3.items():
        for n in (r, r + 24, r + 480):
            assert (kronecker(2, n), kronecker(3, n)) == (k2, k3)


def test_rho_of():
    assert rho_of(5, 8) == 13
    assert rho_of(2, 3) == 5
    with pytest.raises(ValueError):
        rho_of(4, 6)
    with pytest.raises(ValueError):
        rho_of(0, 1)


def test_chi2_examples():
    assert chi2(Quadruple(-3, 5, 8, 8)) == -1
    assert chi2(Quadruple(-1, 2, 2, 3)) == 1
    assert chi2(Quadruple(-2, 3, 6, 7)) == -1
    # the worked case: circle 5 tangent to 8 gives (8|5)
    assert chi2_at(Quadruple(5, 8, -3, 8)) == kronecker(8, 5) == -1


def test_lattice_example():
    q = Quadruple(1, 12, 1, 4)
    validate(q)
    A, B, C = form_of(q)
    assert A == 13 and sum_two_squares_all(13) == [GaussianInt(3, 2)]
    basis = lattice_of(q)
    assert basis.gram() == (A, B, C)
    assert basis.covolume() == 1


def test_lattice_gram_and_covolume_on_orbit():
    count = 0
    for q in ORBIT:
        for p in range(4):
            n = q[p]
            if n > 0 and n % 2:
                r = Quadruple(n, *(q[i] for i in range(4) if i != p))
                basis = lattice_of(r)
                assert basis.gram() == tuple(form_of(r))
                assert basis.covolume() == n
                count += 1
                break
    assert count == len(ORBIT)


def test_lattice_rejects_nonpositive():
    with pytest.raises(ValueError):
        lattice_of(Quadruple(-1, 2, 2, 3))


def test_chi4_examples():
    assert chi4(Quadruple(-4, 8, 9, 9)) is Chi4.MINUS
    assert chi4(Quadruple(0, 0, 1, 1)) is Chi4.PLUS
    assert chi4(Quadruple(-8, 12, 25, 25)) is Chi4.MINUS
    assert chi4(Quadruple(-3, 5, 8, 8)) is Chi4.NOT_APPLICABLE


def test_extended_type_examples():
    assert extended_type(Quadruple(-4, 5, 20, 21)) == PackingType(6, 5, 1)
    assert extended_type(Quadruple(-5, 7, 18, 18)) == PackingType(8, 7, 1)
    assert extended_type(Quadruple(-16, 32, 33, 41)) == PackingType(6, 17, 1, Chi4.PLUS)
    assert str(extended_type(Quadruple(-16, 32, 33, 41))) == "(6, 17, 1, 1)"


@pytest.mark.parametrize("root,label", [(r, t) for r, t, *_ in TABLE_ROWS])
def test_published_types(root, label):
    assert str(extended_type(Quadruple(*root))) == label


def test_invariants_at_every_circle():
    """chi2 and the chi4 class agree at odd and even circles of each sampled quadruple."""
    rng = random.Random(11)
    for q in rng.sample(ORBIT, 300):
        t = extended_type(q)
        for p in range(4):
            n = q[p]
            if n <= 0:
                continue
            others = [q[i] for i in range(4) if i != p]
            for j in range(3):
                m = others[j]
                if m + n <= 0 or gcd(n, m) != 1:
                    continue
                rest = others[:j] + others[j + 1:]
                r = Quadruple(n, m, *rest)
                assert chi2_at(r) == t.chi2, (q, r)
                if (t.size, t.k) in QUARTIC_TYPES:
                    k = chi4_at(r)
                    assert Chi4.from_exponent(k) is t.chi4, (q, r)
                    assert (-1) ** k == t.chi2


def test_obstruction_examples():
    fams = lambda t: {str(f) for f in obstructions_for(t).families}
    rep = obstructions_for(PackingType(6, 1, -1, Chi4.IMAGINARY))
    assert fams(rep.type) == {"n^2", "2n^2", "3n^2", "6n^2"}
    assert rep.false_classes == (0, 1, 4, 9, 12, 16) and rep.open_classes == ()
    rep = obstructions_for(PackingType(8, 11, 1))
    assert rep.families == () and set(rep.open_classes) == ADMISSIBLE[(8, 11)]
    rep = obstructions_for(PackingType(6, 17, 1, Chi4.MINUS))
    assert fams(rep.type) == {"3n^2", "6n^2", "n^4", "4n^4"}
    assert rep.false_classes == (0, 9, 12)
    rep = obstructions_for(PackingType(6, 5, -1))
    assert fams(rep.type) == {"n^2", "6n^2"}
    assert rep.false_classes == (0, 12) and rep.open_classes == (5, 8, 20, 21)


def test_obstruction_table_classes_follow_from_families():
    """False classes are exactly the admissible residues hit by some family; the rest are open."""
    assert len(OBSTRUCTION_TABLE) == 14
    for key, (quad, quart, false_cls, open_cls) in OBSTRUCTION_TABLE.items():
        adm = ADMISSIBLE[key[:2]]
        hit = {u * w**2 % 24 for u in quad for w in range(24)}
        hit |= {u * w**4 % 24 for u in quart for w in range(24)}
        assert set(false_cls) == hit & adm, key
        assert set(open_cls) == adm - hit, key


def test_every_table_row_has_a_packing():
    types = {label: extended_type(Quadruple(*root)) for label, root in ONE_PER_TYPE.items()}
    assert all(str(t) == label for label, t in types.items())
    assert {t.key for t in types.values()} == set(OBSTRUCTION_TABLE)


def test_packing_type_validation():
    with pytest.raises(ValueError):
        PackingType(6, 7, 1)
    with pytest.raises(ValueError):
        PackingType(6, 5, 0)
    with pytest.raises(ValueError):
        PackingType(6, 5, 1, Chi4.PLUS)
    with pytest.raises(ValueError):
        PackingType(6, 1, 1)
    with pytest.raises(ValueError):
        PackingType(6, 1, -1, Chi4.PLUS)
    assert PackingType(6, 1, -1, Chi4.IMAGINARY).key == (6, 1, -1)


def test_obstruction_family_membership():
    fam = ObstructionFamily(2, 6)
    assert [m for m in range(1, 101) if m in fam] == [6, 24, 54, 96]
    assert [m for m in range(1, 101) if m in ObstructionFamily(4, 1)] == [1, 16, 81]
    assert str(fam) == "6n^2" and str(ObstructionFamily(4, 1)) == "n^4"
    with pytest.raises(ValueError):
        ObstructionFamily(2, 5)
