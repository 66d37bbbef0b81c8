"""The Hochschild cochain complex of a triangular string algebra.

Applying Hom into the algebra turns degree n of the resolution into the
span of parallel pairs (rho, gamma): rho a degree-n support, gamma a
basis path with the same endpoints.  Pairs are partitioned by whether
gamma shares rho's first and/or last arrow, and decorated by whether all
arrow extensions of gamma on a side fall into the ideal.  The cohomology
dimensions are computed twice: from ranks of the cochain maps, and by
pure counting over that partition.  The two columns must agree in every
degree; a disagreement is reported, never repaired.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import RationalMatrix
from .presentation import PathBasis
from .quiver import Path
from .resolution import ApElement, Resolution


@dataclass(frozen=True)
class ParallelPair:
    """A cochain basis element: a support together with a parallel basis path.

    Classification flags are None in degree 0, where the partition is not
    defined (the only pairs are (e_x, e_x)).
    """

    rho: ApElement
    gamma: Path
    shares_first: bool | None = None
    shares_last: bool | None = None
    left_dead: bool | None = None
    right_dead: bool | None = None
    inner_dead: bool | None = None

    @property
    def degree(self) -> int:
        return self.rho.degree

    @property
    def class_label(self) -> str:
        assert self.shares_first is not None
        return f"({int(self.shares_first)},{int(self.shares_last)})"

    @property
    def label(self) -> str:
        """Decorated name, e.g. ``-(0,0)+`` or ``(1,0)--`` or ``+-(0,1)``."""
        cls = self.class_label
        left = "-" if self.left_dead else "+"
        right = "-" if self.right_dead else "+"
        if cls == "(0,0)":
            return f"{left}{cls}{right}"
        if cls == "(1,0)":
            if not self.right_dead:
                return f"{cls}+"
            return f"{cls}-{'-' if self.inner_dead else '+'}"
        if cls == "(0,1)":
            if not self.left_dead:
                return f"+{cls}"
            return f"{'-' if self.inner_dead else '+'}-{cls}"
        return cls


def classify(basis: PathBasis, rho: ApElement, gamma: Path) -> ParallelPair:
    """Fill the partition class and decorations of one parallel pair.

    Only defined in degree >= 1.  In degree 1 the classes are (1,1) for
    (alpha, alpha) and (0,0) otherwise.  A side decoration is dead when
    every arrow extension of gamma on that side falls into the ideal
    (vacuously dead when no arrow composes).  The inner decoration strips
    the shared arrow and asks the same question one step in.
    """
    n = rho.degree
    assert n >= 1
    sup = rho.support
    if n == 1:
        shares_first = shares_last = gamma == sup
    else:
        assert not gamma.is_trivial, "trivial path parallel to a cycle-free support"
        shares_first = gamma.arrows[0] == sup.arrows[0]
        shares_last = gamma.arrows[-1] == sup.arrows[-1]
    left = _left_dead(basis, gamma)
    right = _right_dead(basis, gamma)
    inner = None
    if n >= 2 and shares_first and not shares_last and right:
        inner = _right_dead(basis, gamma.strip_first())
    if n >= 2 and shares_last and not shares_first and left:
        inner = _left_dead(basis, gamma.strip_last())
    return ParallelPair(rho, gamma, shares_first, shares_last, left, right, inner)


def _left_dead(basis: PathBasis, gamma: Path) -> bool:
    q = basis.pres.quiver
    return all(
        basis.mult(q.arrow_path(b), gamma) is None
        for b in q.in_arrows(gamma.source)
    )


def _right_dead(basis: PathBasis, gamma: Path) -> bool:
    q = basis.pres.quiver
    return all(
        basis.mult(gamma, q.arrow_path(b)) is None
        for b in q.out_arrows(gamma.target)
    )


COUNT_KEYS = (
    "(0,0)", "(1,0)", "(0,1)", "(1,1)",
    "-(0,0)-", "-(0,0)+", "+(0,0)-", "+(0,0)+",
    "(1,0)+", "(1,0)-", "(1,0)--", "(1,0)-+",
    "+(0,1)", "-(0,1)", "--(0,1)", "+-(0,1)",
)


@dataclass
class HHRow:
    degree: int
    dim_formula: int
    dim_matrix: int
    counts: dict[str, int]

    @property
    def agree(self) -> bool:
        return self.dim_formula == self.dim_matrix


@dataclass
class HHTable:
    rows: list[HHRow]
    top: int

    @property
    def dims_formula(self) -> list[int]:
        return [r.dim_formula for r in self.rows]

    @property
    def dims_matrix(self) -> list[int]:
        return [r.dim_matrix for r in self.rows]

    @property
    def agree(self) -> bool:
        return all(r.agree for r in self.rows)


@dataclass
class AuditCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class KerImAudit:
    degree: int
    checks: list[AuditCheck] = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append(AuditCheck(name, passed, detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class CochainComplex:
    """Pair bases, the cochain maps, and both dimension computations."""

    def __init__(self, res: Resolution):
        self.res = res
        self.basis = res.basis
        self.quiver = res.quiver
        self.top = res.top
        self._pairs: dict[int, list[ParallelPair]] = {}
        self._index: dict[int, dict[tuple[Path, Path], int]] = {}
        self._matrices: dict[int, RationalMatrix] = {}
        self._ranks: dict[int, int] = {}

    # -- bases -----------------------------------------------------------

    def pairs(self, n: int) -> list[ParallelPair]:
        """All parallel pairs in degree n, rho in support order then gamma
        in basis order."""
        hit = self._pairs.get(n)
        if hit is not None:
            return hit
        out: list[ParallelPair] = []
        if 0 <= n <= self.top:
            for elem in self.res.ap[n]:
                sup = elem.support
                for gamma in self.basis.between(sup.source, sup.target):
                    if n == 0:
                        assert gamma.is_trivial
                        out.append(ParallelPair(elem, gamma))
                    else:
                        out.append(classify(self.basis, elem, gamma))
        self._pairs[n] = out
        self._index[n] = {(p.rho.support, p.gamma): i for i, p in enumerate(out)}
        return out

    def pair_index(self, n: int) -> dict[tuple[Path, Path], int]:
        self.pairs(n)
        return self._index[n]

    def class_counts(self, n: int) -> dict[str, int]:
        counts = {k: 0 for k in COUNT_KEYS}
        if n == 0:
            return counts
        for p in self.pairs(n):
            counts[p.class_label] += 1
            if p.label != p.class_label:
                counts[p.label] += 1
            if p.class_label == "(1,0)" and p.right_dead:
                counts["(1,0)-"] += 1
            if p.class_label == "(0,1)" and p.left_dead:
                counts["-(0,1)"] += 1
        return counts

    # -- the cochain maps --------------------------------------------------

    def matrix(self, n: int) -> RationalMatrix:
        """The degree-n cochain map on the pair bases (columns in degree
        n-1, rows in degree n).  An entry survives only when the evaluated
        cofactor product stays out of the ideal."""
        hit = self._matrices.get(n)
        if hit is not None:
            return hit
        assert n >= 1
        rows = self.pairs(n)
        cols = self.pairs(n - 1)
        row_index = self.pair_index(n)
        mat = RationalMatrix(len(rows), len(cols))
        if n == 1:
            q = self.quiver
            for j, pair in enumerate(cols):
                x = pair.rho.support.source
                for a in range(q.num_arrows):
                    c = int(q.arrow_target[a] == x) - int(q.arrow_source[a] == x)
                    if c:
                        ap = q.arrow_path(a)
                        mat.add_at(row_index[(ap, ap)], j, c)
        else:
            cols_by_support: dict[Path, list[tuple[int, Path]]] = {}
            for j, pair in enumerate(cols):
                cols_by_support.setdefault(pair.rho.support, []).append(
                    (j, pair.gamma)
                )
            even = n % 2 == 0
            for w in self.res.ap[n] if n <= self.top else []:
                for d in self.res.sub(w):
                    targets = cols_by_support.get(d.element.support)
                    if not targets:
                        continue
                    for j, gamma in targets:
                        if even:
                            prod = self.basis.mult3(d.left, gamma, d.right)
                            coeff = 1
                        elif d.right.is_trivial:
                            prod = self.basis.mult(d.left, gamma)
                            coeff = 1
                        else:
                            assert d.left.is_trivial
                            prod = self.basis.mult(gamma, d.right)
                            coeff = -1
                        if prod is not None:
                            mat.add_at(row_index[(w.support, prod)], j, coeff)
        self._matrices[n] = mat
        return mat

    def rank(self, n: int) -> int:
        hit = self._ranks.get(n)
        if hit is None:
            hit = self._ranks[n] = self.matrix(n).rank()
        return hit

    def nullity(self, n: int) -> int:
        return self.matrix(n).cols - self.rank(n)

    # -- dimensions --------------------------------------------------------

    def hh_matrix(self) -> list[int]:
        """Cohomology dimensions from exact ranks, degrees 0..top."""
        dims = [self.nullity(1)]
        for n in range(1, self.top + 1):
            dims.append(self.nullity(n + 1) - self.rank(n))
        return dims

    def hh_formula(self) -> list[int]:
        """Cohomology dimensions by counting, degrees 0..top.

        Degree 0 is 1 for a connected triangular algebra.  Degree 1 counts
        arrows and fully dead off-diagonal arrow pairs against vertices.
        Higher degrees count the fully dead (0,0) pairs plus the half-dead
        shared-last-arrow pairs whose inner extension survives.
        """
        dims = [1]
        if self.top >= 1:
            c1 = self.class_counts(1)
            dims.append(
                self.quiver.num_arrows + c1["-(0,0)-"] - self.quiver.num_vertices + 1
            )
        for n in range(2, self.top + 1):
            cn = self.class_counts(n)
            dims.append(cn["+-(0,1)"] + cn["-(0,0)-"])
        return dims

    def hh_table(self) -> HHTable:
        formula = self.hh_formula()
        matrix = self.hh_matrix()
        rows = [
            HHRow(n, formula[n], matrix[n], self.class_counts(n))
            for n in range(self.top + 1)
        ]
        return HHTable(rows, self.top)

    # -- kernel/image audit --------------------------------------------------

    def ker_im_audit(self, n: int) -> KerImAudit:
        """Compare ranks against the counting description of the kernel and
        image of the degree-n cochain map, and check the extension
        bijections between decorated classes degree by degree."""
        assert 2 <= n <= self.top + 1
        prev = self.class_counts(n - 1)
        cur = self.class_counts(n)
        audit = KerImAudit(n)

        ker_count = prev["-(0,0)-"] + prev["(1,0)"] + prev["-(0,1)"] + prev["(1,1)"]
        audit.add(
            "kernel-count", self.nullity(n) == ker_count,
            f"nullity {self.nullity(n)} vs counted {ker_count}",
        )
        im_count = cur["--(0,1)"] + cur["(1,0)"] + cur["(1,1)"]
        audit.add(
            "image-count", self.rank(n) == im_count,
            f"rank {self.rank(n)} vs counted {im_count}",
        )
        audit.add(
            "left-extension-bijection", prev["-(0,0)+"] == cur["--(0,1)"],
            f"{prev['-(0,0)+']} vs {cur['--(0,1)']}",
        )
        audit.add(
            "right-extension-bijection", prev["+(0,0)-"] == cur["(1,0)--"],
            f"{prev['+(0,0)-']} vs {cur['(1,0)--']}",
        )
        ok, detail = self._shared_image_check(n)
        audit.add("shared-image-bijection", ok, detail)
        audit.add(
            "phi-count", cur["(1,0)+"] == cur["+(0,1)"],
            f"{cur['(1,0)+']} vs {cur['+(0,1)']}",
        )
        audit.add(
            "psi-count", cur["(1,0)-+"] == cur["+-(0,1)"],
            f"{cur['(1,0)-+']} vs {cur['+-(0,1)']}",
        )
        return audit

    def _shared_image_check(self, n: int) -> tuple[bool, str]:
        """Each basis pair in (1,0)+ of degree n-1 maps to a single signed
        basis pair of class (1,1) in degree n, and those images exhaust
        the (1,1) pairs."""
        mat = self.matrix(n)
        rows = self.pairs(n)
        by_col: dict[int, list[tuple[int, object]]] = {}
        for i, j, v in mat.items():
            by_col.setdefault(j, []).append((i, v))
        hit_rows = set()
        for j, pair in enumerate(self.pairs(n - 1)):
            if pair.label != "(1,0)+":
                continue
            entries = by_col.get(j, [])
            if len(entries) != 1:
                return False, f"column {j} has {len(entries)} entries"
            i, v = entries[0]
            if abs(v) != 1 or rows[i].class_label != "(1,1)":
                return False, f"column {j} image not a signed (1,1) pair"
            if i in hit_rows:
                return False, f"two columns share image row {i}"
            hit_rows.add(i)
        want = {i for i, p in enumerate(rows) if p.class_label == "(1,1)"}
        if hit_rows != want:
            return False, "images do not exhaust the shared-both-arrows pairs"
        return True, ""
