"""Generating sets shared by the oracle-equivalence tests."""
from nilgrowth import lie_algebra as L
from nilgrowth.groups import (Abelian, Cyclic, FreeNilpotent, GeneratingSet, IntegerHeisenberg, LieLattice,
                              LieProgression, Unitriangular, enumerate_progression)
from nilgrowth.heisenberg import s_family


def _sym(ctx, elems):
    return GeneratingSet.symmetric_closure(ctx, elems)


def _lie_prog(alg, lengths):
    P = LieProgression(alg, lengths)
    return GeneratingSet.symmetric_closure(P.context, enumerate_progression(P.ordered()).elements)


def oracle_instances():
    """(name, generating set, radius); every final ball is at most 10^4."""
    H = IntegerHeisenberg()
    return [
        ("heis-standard", GeneratingSet.standard(H), 8),
        ("heis-twist2", GeneratingSet.standard(IntegerHeisenberg(2)), 7),
        ("heis-xyz", _sym(H, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), 6),
        ("heis-S(1,1)", s_family(1, 1).generating_set(), 4),
        ("heis-S(2,4)", s_family(2, 4).generating_set(), 2),
        ("heis-skew", _sym(H, [(1, 1, 0), (0, 1, 3)]), 6),
        ("z1", GeneratingSet.standard(Abelian(1)), 10),
        ("z1-13", _sym(Abelian(1), [(1,), (3,)]), 12),
        ("z2", GeneratingSet.standard(Abelian(2)), 20),
        ("z2-diag", _sym(Abelian(2), [(1, 0), (1, 1)]), 15),
        ("z3", GeneratingSet.standard(Abelian(3)), 8),
        ("c7", GeneratingSet.standard(Cyclic(7)), 5),
        ("c12", _sym(Cyclic(12), [(5,), (4,)]), 4),
        ("u3", GeneratingSet.standard(Unitriangular(3)), 7),
        ("u4", GeneratingSet.standard(Unitriangular(4)), 5),
        ("free22", GeneratingSet.standard(FreeNilpotent(2, 2)), 6),
        ("free23", GeneratingSet.standard(FreeNilpotent(2, 3)), 4),
        ("free32", GeneratingSet.standard(FreeNilpotent(3, 2)), 3),
        ("lattice-heis", GeneratingSet.standard(LieLattice(L.heisenberg())), 6),
        ("lattice-heis-2e1", GeneratingSet.standard(LieLattice(L.heisenberg(), [(2, 0, 0), (0, 1, 0), (0, 0, 1)])), 5),
        ("lattice-free23", GeneratingSet.standard(LieLattice(L.free_nilpotent(2, 3))), 4),
        ("lie-prog-111", _lie_prog(L.heisenberg(), (1, 1, 1)), 3),
    ]
