"""Independent oracle: the textbook Hochschild cochain complex.

Builds Hom(A^(tensor n), A) on the full tensor powers with the classical
differential, straight from the multiplication table of the algebra, with
no use of the resolution, the pair bases, or the counting formula.  Small
dimensions keep the tensor powers manageable; degrees 0..2 are compared
(degree 2 already exercises every layer of the pipeline).
"""

from stringcoh import CochainComplex, Resolution, basis_P, parse
from stringcoh.generate import generate
from tests_support import bar_dims


def test_bar_complex_agrees_on_small_algebras(a_n):
    cases = [a_n[1][0]]
    cases.append(parse(
        "vertex 0 1 2\narrow a 0 1\narrow b 1 2\nrelation a b\n"
    ))
    for seed in (2, 6, 26, 54):
        cases.append(generate(seed, max_vertices=5, max_arrows=6))
    for pres in cases:
        basis = basis_P(pres)
        assert basis.dim <= 6
        cx = CochainComplex(Resolution(pres, basis))
        pipeline = (cx.hh_matrix() + [0, 0, 0])[:3]
        assert bar_dims(basis, 2) == pipeline
