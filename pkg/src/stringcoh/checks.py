"""Whole-pipeline audit: every structural property, one pass/fail each.

This is the single implementation behind the CLI's check command and the
property-based test suite.  Each check is independent; failures carry a
short witness description.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cup import (
    chain_map_audit,
    cocycle_basis,
    cup_table,
    normalize_geq,
    normalize_leq,
)
from .hochschild import CochainComplex
from .linalg import RationalMatrix
from .presentation import Presentation, ValidationReport, basis_P, validate
from .resolution import Resolution


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class Auditor:
    """Builds the full tower over one presentation and runs every audit."""

    def __init__(self, pres: Presentation, max_degree: int | None = None):
        self.pres = pres
        self.report: ValidationReport = validate(pres)
        if not self.report.passed:
            raise ValueError(
                "presentation fails validation: "
                + "; ".join(f"{n}: {d}" for n, d in self.report.failures())
            )
        self.basis = basis_P(pres)
        self.res = Resolution(pres, self.basis, max_degree)
        self.cx = CochainComplex(self.res)

    def run_all(self, mod_primes=(2, 3)) -> list[CheckResult]:
        out = [
            self.check_ap_duality(),
            self.check_sub_cardinality(),
            self.check_d_squared(),
            self.check_exactness(),
            self.check_euler(),
            self.check_partition(),
            self.check_strip(),
            self.check_shared_arrow_bound(),
            self.check_quadratic_degree_two(),
            self.check_hh0(),
            self.check_agreement(),
            self.check_f_squared(),
            self.check_cochain_vs_differential(),
            self.check_ker_im(),
            self.check_tree_criterion(),
            self.check_quadratic_corollary(),
            self.check_chain_maps(),
            self.check_normalization_support(),
            self.check_cup(),
        ]
        out.append(self.log_mod_p_ranks(mod_primes))
        return out

    # -- resolution-level checks -----------------------------------------

    def check_ap_duality(self) -> CheckResult:
        ops = self.res.op_ap_sets()
        if len(ops) != len(self.res.ap):
            return CheckResult("ap-duality", False,
                               f"{len(self.res.ap) - 1} vs {len(ops) - 1} degrees")
        for n in range(2, len(ops)):
            a = {e.support for e in self.res.ap[n]}
            b = {e.support for e in ops[n]}
            if a != b:
                return CheckResult("ap-duality", False, f"degree {n} differs")
            chains = {e.support: (e.chain, e.op_chain) for e in self.res.ap[n]}
            for e in ops[n]:
                if chains[e.support] != (e.chain, e.op_chain):
                    return CheckResult("ap-duality", False,
                                       f"degree {n} chains differ")
        return CheckResult("ap-duality", True)

    def check_sub_cardinality(self) -> CheckResult:
        for n in range(2, self.res.top + 1):
            for w in self.res.ap[n]:
                subs = self.res.sub(w)
                odd = n % 2 == 1
                quadratic = any(len(p) == 2 for p in w.chain)
                if (odd or quadratic) and len(subs) != 2:
                    return CheckResult(
                        "sub-cardinality", False,
                        f"degree {n} support with {len(subs)} divisors",
                    )
        return CheckResult("sub-cardinality", True)

    def check_d_squared(self) -> CheckResult:
        return CheckResult("d-squared", self.res.d_squared_is_zero())

    def check_exactness(self) -> CheckResult:
        dims = self.res.homology_dims()
        return CheckResult("exactness", all(h == 0 for h in dims),
                           f"homology {dims}")

    def check_euler(self) -> CheckResult:
        total = -self.basis.dim
        for n in self.res.degrees():
            chain_dim = len(self.res.bimodule_space(n)[0])
            total += chain_dim if n % 2 == 0 else -chain_dim
        return CheckResult("euler", total == 0, f"alternating sum {total}")

    # -- partition checks ---------------------------------------------------

    def check_partition(self) -> CheckResult:
        for n in range(1, self.res.top + 1):
            counts = self.cx.class_counts(n)
            total = len(self.cx.pairs(n))
            in_classes = sum(counts[k] for k in ("(0,0)", "(1,0)", "(0,1)", "(1,1)"))
            if in_classes != total:
                return CheckResult("partition", False, f"degree {n} not exhaustive")
            dec00 = sum(counts[k] for k in
                        ("-(0,0)-", "-(0,0)+", "+(0,0)-", "+(0,0)+"))
            if dec00 != counts["(0,0)"]:
                return CheckResult("partition", False, f"degree {n} decorations")
            if counts["(1,0)--"] + counts["(1,0)-+"] != counts["(1,0)-"]:
                return CheckResult("partition", False, f"degree {n} refinements")
            if counts["--(0,1)"] + counts["+-(0,1)"] != counts["-(0,1)"]:
                return CheckResult("partition", False, f"degree {n} refinements")
        return CheckResult("partition", True)

    def check_strip(self) -> CheckResult:
        """Shared arrows strip off: a shared-first-arrow pair loses its
        first arrow to a lower-degree pair sharing neither end, and
        likewise on the right and on both sides at once."""
        for n in range(2, self.res.top + 1):
            for p in self.cx.pairs(n):
                if p.class_label == "(1,0)":
                    rho2 = p.rho.support.strip_first()
                    gam2 = p.gamma.strip_first()
                    ok = self._is_00_pair(n - 1, rho2, gam2)
                elif p.class_label == "(0,1)":
                    rho2 = p.rho.support.strip_last()
                    gam2 = p.gamma.strip_last()
                    ok = self._is_00_pair(n - 1, rho2, gam2)
                elif p.class_label == "(1,1)" and n >= 3:
                    rho2 = p.rho.support.strip_first().strip_last()
                    gam2 = p.gamma.strip_first().strip_last()
                    ok = self._is_00_pair(n - 2, rho2, gam2)
                else:
                    continue
                if not ok:
                    return CheckResult(
                        "strip-to-lower-degree", False,
                        f"degree {n} {p.label} does not strip",
                    )
        return CheckResult("strip-to-lower-degree", True)

    def _is_00_pair(self, degree, rho_support, gamma) -> bool:
        elem = self.res.by_support[degree].get(rho_support)
        if elem is None or gamma not in self.basis:
            return False
        if (gamma.source, gamma.target) != (rho_support.source, rho_support.target):
            return False
        if degree == 1:
            return gamma != rho_support
        if gamma.is_trivial:
            return False
        return (gamma.arrows[0] != rho_support.arrows[0]
                and gamma.arrows[-1] != rho_support.arrows[-1])

    def check_shared_arrow_bound(self) -> CheckResult:
        """Parallel pairs share at most one leading and one trailing arrow."""
        for n in range(1, self.res.top + 1):
            for p in self.cx.pairs(n):
                a, b = p.rho.support.arrows, p.gamma.arrows
                pref = _common_prefix(a, b)
                suf = _common_prefix(a[::-1], b[::-1])
                limit = len(a) if a == b else 1
                if pref > limit or suf > limit:
                    return CheckResult(
                        "shared-arrow-bound", False,
                        f"degree {n} pair shares {pref}/{suf} arrows",
                    )
        return CheckResult("shared-arrow-bound", True)

    def check_quadratic_degree_two(self) -> CheckResult:
        c2 = self.cx.class_counts(2) if self.res.top >= 2 else None
        ok = c2 is None or c2["(1,1)"] == 0
        return CheckResult("degree-two-no-shared-both", ok)

    # -- dimension checks ---------------------------------------------------

    def check_hh0(self) -> CheckResult:
        dim0 = self.cx.nullity(1)
        return CheckResult("hh0-is-one", dim0 == 1, f"nullity {dim0}")

    def check_agreement(self) -> CheckResult:
        table = self.cx.hh_table()
        bad = [r.degree for r in table.rows if not r.agree]
        return CheckResult(
            "formula-vs-matrix", not bad,
            "" if not bad else f"disagreement at degrees {bad}",
        )

    def check_f_squared(self) -> CheckResult:
        for n in range(1, self.res.top + 1):
            if not (self.cx.matrix(n + 1) @ self.cx.matrix(n)).is_zero():
                return CheckResult("cochain-map-squares-to-zero", False,
                                   f"degree {n}")
        return CheckResult("cochain-map-squares-to-zero", True)

    def check_cochain_vs_differential(self) -> CheckResult:
        """The cochain matrix must equal the dual of the resolution
        differential: two constructions, one matrix."""
        for n in range(1, self.res.top + 1):
            direct = self.cx.matrix(n)
            dual = self._dualized_differential(n)
            if direct != dual:
                return CheckResult("cochain-vs-differential", False,
                                   f"degree {n}")
        return CheckResult("cochain-vs-differential", True)

    def _dualized_differential(self, n: int) -> RationalMatrix:
        rows = self.cx.pairs(n)
        cols = self.cx.pairs(n - 1)
        row_index = self.cx.pair_index(n)
        cols_by_support = {}
        for j, pair in enumerate(cols):
            cols_by_support.setdefault(pair.rho.support, []).append(
                (j, pair.gamma)
            )
        mat = RationalMatrix(len(rows), len(cols))
        for w, terms in self.res.differential(n).items():
            for t in terms:
                for j, gamma in cols_by_support.get(t.middle.support, []):
                    prod = self.basis.mult3(t.left, gamma, t.right)
                    if prod is not None:
                        mat.add_at(row_index[(w.support, prod)], j, t.coeff)
        return mat

    def check_ker_im(self) -> CheckResult:
        for n in range(2, self.res.top + 2):
            audit = self.cx.ker_im_audit(n)
            if not audit.passed:
                bad = [c for c in audit.checks if not c.passed]
                return CheckResult(
                    "kernel-image-audit", False,
                    f"degree {n}: " + "; ".join(
                        f"{c.name} ({c.detail})" for c in bad),
                )
        return CheckResult("kernel-image-audit", True)

    def check_tree_criterion(self) -> CheckResult:
        dims = self.cx.hh_matrix()
        hh1 = dims[1] if len(dims) > 1 else 0
        if self.pres.quiver.is_tree():
            ok = all(d == 0 for d in dims[1:])
            return CheckResult("tree-criterion", ok,
                               "" if ok else f"tree with dims {dims}")
        ok = hh1 >= 1
        return CheckResult("tree-criterion", ok,
                           "" if ok else "non-tree with zero first cohomology")

    def check_quadratic_corollary(self) -> CheckResult:
        if any(len(r) != 2 for r in self.pres.relations):
            return CheckResult("quadratic-corollary", True, "not quadratic")
        dims = self.cx.hh_matrix()
        for n in range(2, self.res.top + 1):
            counts = self.cx.class_counts(n)
            if counts["+-(0,1)"] != 0 or dims[n] != counts["-(0,0)-"]:
                return CheckResult("quadratic-corollary", False, f"degree {n}")
        return CheckResult("quadratic-corollary", True)

    # -- comparison-map and cup checks ---------------------------------------

    def check_chain_maps(self) -> CheckResult:
        """The displayed lift formula must commute with the differentials
        for every basis cocycle.  Known failure mode: degree-1 cocycles
        with diagonal (alpha, alpha) support where alpha sits strictly
        inside a relation of length >= 3; the lift formula cannot see the
        value there, while the differential route does.  Products of such
        classes are re-verified through a solved lift in the cup table."""
        for m in range(1, self.res.top + 1):
            for k, f in enumerate(cocycle_basis(self.cx, m)):
                if not chain_map_audit(self.cx, f):
                    return CheckResult(
                        "chain-maps", False,
                        f"degree {m} cocycle {k}: formula lift is not a "
                        "chain map (diagonal support inside a long relation)",
                    )
        return CheckResult("chain-maps", True)

    def check_cup(self) -> CheckResult:
        report = cup_table(self.cx)
        self.cup_report = report
        if report.all_zero:
            return CheckResult(
                "cup-vanishing", True,
                f"pairs checked: {report.pairs_checked}",
            )
        fails = report.failures()
        names = [f"({e.deg_g},{e.deg_f}) reps ({e.idx_g},{e.idx_f})"
                 for e in fails]
        bad_reps = [n for n, ok in report.representative_checks if not ok]
        return CheckResult("cup-vanishing", False,
                           "; ".join(names + bad_reps))

    def check_normalization_support(self) -> CheckResult:
        """Normalized cocycles only touch the allowed classes (plus the
        degree-1 diagonal, which has no lower rewriting)."""
        for m in range(1, self.res.top + 1):
            pairs = self.cx.pairs(m)
            for f in cocycle_basis(self.cx, m):
                lo = normalize_leq(self.cx, f)
                hi = normalize_geq(self.cx, f)
                for i in lo.coeffs:
                    if pairs[i].class_label not in ("(0,0)", "(0,1)") and not (
                        m == 1 and pairs[i].class_label == "(1,1)"
                    ):
                        return CheckResult("normalization-support", False,
                                           f"degree {m}")
                for i in hi.coeffs:
                    if pairs[i].class_label not in ("(0,0)", "(1,0)") and not (
                        m == 1 and pairs[i].class_label == "(1,1)"
                    ):
                        return CheckResult("normalization-support", False,
                                           f"degree {m}")
        return CheckResult("normalization-support", True)

    def log_mod_p_ranks(self, primes) -> CheckResult:
        """Informational cross-check: ranks over small prime fields.  A
        mismatch with the rational rank is logged, never asserted."""
        notes = []
        for n in range(1, self.res.top + 2):
            mat = self.cx.matrix(n)
            r = self.cx.rank(n)
            for p in primes:
                rp = mat.rank_mod(p)
                if rp != r:
                    notes.append(f"degree {n}: rank {r} vs {rp} mod {p}")
        return CheckResult(
            "mod-p-rank-log", True,
            "; ".join(notes) if notes else "ranks agree mod "
            + ",".join(str(p) for p in primes),
        )


def _common_prefix(a, b) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def run_all_checks(pres: Presentation, max_degree=None) -> list[CheckResult]:
    return Auditor(pres, max_degree).run_all()
