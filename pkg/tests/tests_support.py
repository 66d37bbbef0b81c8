"""Shared oracle helpers written independently of the package internals
they are meant to check."""

from itertools import product

from stringcoh.linalg import RationalMatrix


def bar_dims(basis, up_to: int) -> list[int]:
    """Hochschild cohomology dimensions 0..up_to via the classical cochain
    complex Hom(A^(tensor n), A) with its alternating-sum differential.

    Only the multiplication table of the algebra is used: mult(p, q) is a
    basis path or None.  Tuples are NOT required to be composable (the
    tensor power is over the ground field).
    """
    paths = list(basis.paths)
    d = len(paths)
    index = {p: i for i, p in enumerate(paths)}
    mult = basis.mult

    def delta(n: int) -> RationalMatrix:
        """The map from n-cochains to (n+1)-cochains."""
        if n == 0:
            # a |-> (x |-> x a - a x)
            mat = RationalMatrix(d * d, d)
            for j, a in enumerate(paths):
                for xi, x in enumerate(paths):
                    xa = mult(x, a)
                    if xa is not None:
                        mat.add_at(xi * d + index[xa], j, 1)
                    ax = mult(a, x)
                    if ax is not None:
                        mat.add_at(xi * d + index[ax], j, -1)
            return mat
        cols_tuples = list(product(range(d), repeat=n))
        col_of = {t: k for k, t in enumerate(cols_tuples)}
        rows_tuples = list(product(range(d), repeat=n + 1))
        row_of = {t: k for k, t in enumerate(rows_tuples)}
        mat = RationalMatrix(len(rows_tuples) * d, len(cols_tuples) * d)

        def add(row_tuple, out_path, col, coeff):
            mat.add_at(row_of[row_tuple] * d + index[out_path], col, coeff)

        for t in cols_tuples:
            for b_i, b in enumerate(paths):
                col = col_of[t] * d + b_i
                # a1 . f(a2 ... a_{n+1})
                for a_i, a in enumerate(paths):
                    ab = mult(a, b)
                    if ab is not None:
                        add((a_i,) + t, ab, col, 1)
                # f(a1, ..., a_i a_{i+1}, ..., a_{n+1}), alternating signs
                for i in range(n):
                    v = paths[t[i]]
                    sign = -1 if (i + 1) % 2 else 1
                    for cut in range(len(v) + 1):
                        x, y = v.prefix(cut), v.suffix(cut)
                        row = t[:i] + (index[x], index[y]) + t[i + 1 :]
                        add(row, b, col, sign)
                # f(a1 ... a_n) . a_{n+1}
                sign = -1 if (n + 1) % 2 else 1
                for a_i, a in enumerate(paths):
                    ba = mult(b, a)
                    if ba is not None:
                        add(t + (a_i,), ba, col, sign)
        return mat

    dims = []
    prev_rank = 0
    for n in range(up_to + 1):
        dn = delta(n)
        dims.append(dn.cols - dn.rank() - prev_rank)
        prev_rank = dn.rank()
    return dims
