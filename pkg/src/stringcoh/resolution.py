"""The minimal bimodule resolution of a monomial algebra (Bardzell).

Degree n of the resolution is A (x) kAP_n (x) A over the vertex
subalgebra, where AP_0 is the trivial paths, AP_1 the arrows, and AP_n
for n >= 2 the supports of chains of n-1 relations overlapping greedily
along a directed path.  Both the left-greedy and the dual right-greedy
construction are implemented; they must produce the same supports in
every degree, which the test suite checks.

Along a fixed directed path a minimal generating set is totally ordered:
two relations sharing a source (or target) would divide one another.  The
construction leans on this repeatedly, and asserts it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import RationalMatrix
from .presentation import PathBasis, Presentation
from .quiver import Path, occurrences


@dataclass(frozen=True)
class ApElement:
    """A basis element of kAP_n: a support path plus its two chains.

    ``chain`` lists the overlapping relations (p_1, ..., p_{n-1}) of the
    left-greedy construction; ``op_chain`` the (q^1, ..., q^{n-1}) of the
    dual one, indexed left to right along the support.  Degrees 0 and 1
    have empty chains.
    """

    degree: int
    support: Path
    chain: tuple[Path, ...]
    op_chain: tuple[Path, ...]

    def __post_init__(self):
        if self.degree >= 2:
            assert len(self.chain) == self.degree - 1
            assert len(self.op_chain) == self.degree - 1
            assert len(self.support) >= self.degree
        else:
            assert not self.chain and not self.op_chain
            assert len(self.support) == self.degree


@dataclass(frozen=True)
class SubDivisor:
    """An AP_{n-1} element dividing a support, with its cofactors."""

    element: ApElement
    left: Path
    right: Path


@dataclass(frozen=True)
class BimoduleTerm:
    """One term c * (left (x) middle (x) right) of a bimodule map image.

    The term is zero in A (x) kAP (x) A unless both cofactors avoid the
    ideal; matrix builders drop such terms during reduction.
    """

    coeff: int
    left: Path
    middle: ApElement
    right: Path


def _relations_on(t: Path, relations) -> list[tuple[int, int, Path]]:
    """Relations occurring in t, as (start, end, relation), sorted by start.

    Positions are indices along t; in an acyclic quiver each relation
    occurs at most once.  Starts and ends are strictly increasing: along a
    fixed path, two members of a minimal generating set cannot share a
    source or a target without one dividing the other.
    """
    occ = []
    for r in relations:
        k = len(r)
        for i in range(len(t) - k + 1):
            if t.arrows[i : i + k] == r.arrows:
                occ.append((i, i + k, r))
                break
    occ.sort()
    for (s1, e1, _), (s2, e2, _) in zip(occ, occ[1:]):
        assert s1 < s2 and e1 < e2, "generating set is not minimal on a path"
    return occ


def _forward_prefix_spans(occ, k: int, max_len: int | None):
    """Greedy chain from occ[k]: yield (chain indices, end) per prefix.

    Step 1 admits relations starting strictly inside p_1; later steps
    admit starts in [end(p_{j-1}), end(p_j)).  The minimal-start pick is
    unique because starts are strictly increasing.
    """
    starts = [s for s, _, _ in occ]
    chain = [k]
    yield chain, occ[k][1]
    while max_len is None or len(chain) < max_len:
        if len(chain) == 1:
            lo = occ[k][0] + 1
        else:
            lo = occ[chain[-2]][1]
        hi = occ[chain[-1]][1]
        nxt = None
        for i in range(chain[-1] + 1, len(occ)):
            if lo <= starts[i] < hi:
                nxt = i
                break
            if starts[i] >= hi:
                break
        if nxt is None:
            return
        chain.append(nxt)
        yield chain, occ[nxt][1]


def _op_prefix_spans(occ, k: int, max_len: int | None):
    """Dual greedy chain from occ[k], walking left; yields (chain, start).

    Step 1 admits relations ending strictly inside q_1; later steps admit
    ends in (start(q_j), start(q_{j-1})].  The maximal-end pick is unique
    because ends are strictly increasing.
    """
    ends = [e for _, e, _ in occ]
    chain = [k]
    yield chain, occ[k][0]
    while max_len is None or len(chain) < max_len:
        if len(chain) == 1:
            lo = occ[k][0]
            hi = occ[k][1]  # exclusive
        else:
            lo = occ[chain[-1]][0]
            hi = occ[chain[-2]][0] + 1  # inclusive of start(q_{j-1})
        nxt = None
        for i in range(chain[-1] - 1, -1, -1):
            if lo < ends[i] < hi:
                nxt = i
                break
            if ends[i] <= lo:
                break
        if nxt is None:
            return
        chain.append(nxt)
        yield chain, occ[nxt][0]


class Resolution:
    """AP sets, differentials, and the realized bimodule complex."""

    def __init__(self, pres: Presentation, basis: PathBasis,
                 max_degree: int | None = None):
        self.pres = pres
        self.basis = basis
        self.quiver = pres.quiver
        cap = self.quiver.longest_path_length()
        if max_degree is not None:
            cap = min(cap, max_degree)
        self.cap = cap
        self.ap: list[list[ApElement]] = self._build_ap(cap)
        self.by_support: list[dict[Path, ApElement]] = [
            {e.support: e for e in layer} for layer in self.ap
        ]
        self._sub_cache: dict[tuple[int, Path], list[SubDivisor]] = {}
        self._diff_cache: dict[int, dict[ApElement, list[BimoduleTerm]]] = {}
        self._space_cache: dict[int, tuple[list, dict]] = {}
        self._dmat_cache: dict[int, RationalMatrix] = {}
        self._mu_cache: RationalMatrix | None = None

    # -- construction ---------------------------------------------------

    @property
    def top(self) -> int:
        """Largest degree with a nonempty AP set."""
        return len(self.ap) - 1

    def degrees(self) -> range:
        return range(len(self.ap))

    def _build_ap(self, cap: int) -> list[list[ApElement]]:
        q = self.quiver
        layers: list[list[ApElement]] = [
            [ApElement(0, q.trivial_path(v), (), ()) for v in range(q.num_vertices)]
        ]
        if cap >= 1:
            arrows = sorted(
                (q.arrow_path(a) for a in range(q.num_arrows)),
                key=lambda p: p.sort_key,
            )
            if arrows:
                layers.append([ApElement(1, p, (), ()) for p in arrows])
        found: dict[int, dict[Path, tuple[Path, ...]]] = {}
        for t in q.maximal_paths():
            occ = _relations_on(t, self.pres.relations)
            for k in range(len(occ)):
                start = occ[k][0]
                for chain, end in _forward_prefix_spans(occ, k, cap - 1 if cap else 0):
                    degree = len(chain) + 1
                    if degree > cap:
                        break
                    support = t.subpath(start, end)
                    rels = tuple(occ[i][2] for i in chain)
                    prev = found.setdefault(degree, {})
                    if support in prev:
                        assert prev[support] == rels, (
                            "one support, two different chains"
                        )
                    else:
                        prev[support] = rels
        for degree in range(2, cap + 1):
            if degree not in found:
                break
            layer = []
            for support in sorted(found[degree], key=lambda p: p.sort_key):
                chain = found[degree][support]
                op_chain = self._op_chain_of(support, degree)
                layer.append(ApElement(degree, support, chain, op_chain))
            layers.append(layer)
        return layers

    def _op_chain_of(self, support: Path, degree: int) -> tuple[Path, ...]:
        """Recover the dual chain of a support by running the right-greedy
        construction on the support itself.  The last relation of both
        chains coincides (targets are distinct along a path), and the dual
        walk must reach the source in exactly degree-1 steps."""
        occ = _relations_on(support, self.pres.relations)
        k = next((i for i in range(len(occ)) if occ[i][1] == len(support)), None)
        assert k is not None, "support does not end in a relation"
        last = None
        for chain, start in _op_prefix_spans(occ, k, degree - 1):
            last = (chain, start)
        assert last is not None
        chain, start = last
        assert len(chain) == degree - 1 and start == 0, (
            "dual chain does not span the support"
        )
        return tuple(occ[i][2] for i in reversed(chain))

    def op_ap_sets(self) -> list[list[ApElement]]:
        """AP sets built with the dual construction only (for cross-checks).

        Elements carry the dual chain as found and the left-greedy chain
        recovered from the support.
        """
        q = self.quiver
        layers: list[list[ApElement]] = [list(self.ap[0])]
        if len(self.ap) > 1:
            layers.append(list(self.ap[1]))
        found: dict[int, dict[Path, tuple[Path, ...]]] = {}
        cap = self.cap
        for t in q.maximal_paths():
            occ = _relations_on(t, self.pres.relations)
            for k in range(len(occ)):
                end = occ[k][1]
                for chain, start in _op_prefix_spans(occ, k, cap - 1 if cap else 0):
                    degree = len(chain) + 1
                    if degree > cap:
                        break
                    support = t.subpath(start, end)
                    rels = tuple(occ[i][2] for i in reversed(chain))
                    prev = found.setdefault(degree, {})
                    if support in prev:
                        assert prev[support] == rels
                    else:
                        prev[support] = rels
        for degree in range(2, cap + 1):
            if degree not in found:
                break
            layer = []
            for support in sorted(found[degree], key=lambda p: p.sort_key):
                op_chain = found[degree][support]
                chain = self._forward_chain_of(support, degree)
                layer.append(ApElement(degree, support, chain, op_chain))
            layers.append(layer)
        return layers

    def _forward_chain_of(self, support: Path, degree: int) -> tuple[Path, ...]:
        occ = _relations_on(support, self.pres.relations)
        assert occ and occ[0][0] == 0, "support does not start in a relation"
        last = None
        for chain, end in _forward_prefix_spans(occ, 0, degree - 1):
            last = (chain, end)
        assert last is not None
        chain, end = last
        assert len(chain) == degree - 1 and end == len(support)
        return tuple(occ[i][2] for i in chain)

    # -- divisors and the unique splitting --------------------------------

    def sub(self, w: ApElement) -> list[SubDivisor]:
        """The degree n-1 elements dividing w, with cofactors, left to right.

        Division is strict, but equal supports across consecutive degrees
        cannot happen (the greedy chain is recoverable from the support),
        so any occurrence qualifies.  Odd degrees >= 3 always yield
        exactly two divisors, one flush right and one flush left.
        """
        key = (w.degree, w.support)
        hit = self._sub_cache.get(key)
        if hit is not None:
            return hit
        assert w.degree >= 1
        out = []
        if w.degree - 1 < len(self.ap):
            for e in self.ap[w.degree - 1]:
                for left, right in occurrences(e.support, w.support):
                    if len(left) + len(right) > 0:
                        out.append(SubDivisor(e, left, right))
        out.sort(key=lambda d: (len(d.left), d.element.support.sort_key))
        if w.degree >= 3 and w.degree % 2 == 1:
            assert len(out) == 2, "odd-degree element without exactly 2 divisors"
            assert out[1].right.is_trivial and out[0].left.is_trivial
        self._sub_cache[key] = out
        return out

    def decompose(self, w: ApElement, n: int, m: int) -> tuple[ApElement, Path, ApElement]:
        """The unique splitting support = head * u * tail with head of
        degree n (a chain prefix), tail of degree m (a dual-chain suffix),
        and u a basis path."""
        assert n >= 0 and m >= 0 and n + m == w.degree and n + m >= 2
        sup = w.support
        if n == 0:
            head_sup = sup.prefix(0)
        elif n == 1:
            head_sup = sup.prefix(1)
        else:
            head_end = _occurrence_end(w.chain[n - 2], sup)
            head_sup = sup.prefix(head_end)
        if m == 0:
            tail_sup = sup.suffix(len(sup))
        elif m == 1:
            tail_sup = sup.suffix(len(sup) - 1)
        else:
            tail_start = _occurrence_start(w.op_chain[n], sup)
            tail_sup = sup.suffix(tail_start)
        head = self.by_support[n].get(head_sup)
        tail = self.by_support[m].get(tail_sup)
        assert head is not None and tail is not None, (
            "splitting fell outside the computed AP sets"
        )
        i, j = len(head_sup), len(sup) - len(tail_sup)
        assert i <= j, "head and tail overlap"
        u = sup.subpath(i, j)
        assert u in self.basis, "middle of the splitting is not a basis path"
        return head, u, tail

    # -- differentials ----------------------------------------------------

    def differential(self, n: int) -> dict[ApElement, list[BimoduleTerm]]:
        """The degree-n map of the resolution as formal bimodule terms.

        Even degrees sum over all divisors with their cofactors; odd
        degrees take the flush-right divisor minus the flush-left one;
        degree 1 is alpha (x) e (x) 1 - 1 (x) e (x) alpha.
        """
        assert n >= 1
        hit = self._diff_cache.get(n)
        if hit is not None:
            return hit
        q = self.quiver
        out: dict[ApElement, list[BimoduleTerm]] = {}
        if n < len(self.ap):
            for w in self.ap[n]:
                if n == 1:
                    a = w.support
                    e_t = self.by_support[0][q.trivial_path(a.target)]
                    e_s = self.by_support[0][q.trivial_path(a.source)]
                    out[w] = [
                        BimoduleTerm(1, a, e_t, q.trivial_path(a.target)),
                        BimoduleTerm(-1, q.trivial_path(a.source), e_s, a),
                    ]
                elif n % 2 == 0:
                    out[w] = [
                        BimoduleTerm(1, d.left, d.element, d.right)
                        for d in self.sub(w)
                    ]
                else:
                    first, second = self.sub(w)
                    assert second.right.is_trivial and first.left.is_trivial
                    out[w] = [
                        BimoduleTerm(1, second.left, second.element, second.right),
                        BimoduleTerm(-1, first.left, first.element, first.right),
                    ]
        self._diff_cache[n] = out
        return out

    # -- the realized complex ---------------------------------------------

    def bimodule_space(self, n: int):
        """Basis of A (x) kAP_n (x) A: triples (l, w, r) of basis paths
        around each support, with matching endpoints."""
        hit = self._space_cache.get(n)
        if hit is not None:
            return hit
        basis = []
        if 0 <= n < len(self.ap):
            for w in self.ap[n]:
                for l in self.basis.ending_at(w.support.source):
                    for r in self.basis.starting_at(w.support.target):
                        basis.append((l, w, r))
        index = {trip: i for i, trip in enumerate(basis)}
        self._space_cache[n] = (basis, index)
        return basis, index

    def d_matrix(self, n: int) -> RationalMatrix:
        """The degree-n differential on the realized bases."""
        hit = self._dmat_cache.get(n)
        if hit is not None:
            return hit
        rows, row_index = self.bimodule_space(n - 1)
        cols, _ = self.bimodule_space(n)
        mat = RationalMatrix(len(rows), len(cols))
        diff = self.differential(n)
        mul = self.basis.mult
        for j, (l, w, r) in enumerate(cols):
            for term in diff[w]:
                lp = mul(l, term.left)
                if lp is None:
                    continue
                rp = mul(term.right, r)
                if rp is None:
                    continue
                mat.add_at(row_index[(lp, term.middle, rp)], j, term.coeff)
        self._dmat_cache[n] = mat
        return mat

    def mu_matrix(self) -> RationalMatrix:
        """The augmentation A (x) kAP_0 (x) A -> A, (l, e, r) -> l r."""
        if self._mu_cache is not None:
            return self._mu_cache
        cols, _ = self.bimodule_space(0)
        mat = RationalMatrix(self.basis.dim, len(cols))
        for j, (l, _w, r) in enumerate(cols):
            prod = self.basis.mult(l, r)
            if prod is not None:
                mat.add_at(self.basis.index[prod], j, 1)
        self._mu_cache = mat
        return mat

    def homology_dims(self) -> list[int]:
        """Homology of the augmented complex, one entry per spot.

        Index 0 is the spot at A, index n+1 the spot at degree n.  The
        resolution property is that every entry is zero.
        """
        dims = [len(self.bimodule_space(n)[0]) for n in self.degrees()]
        ranks = [self.mu_matrix().rank()]
        for n in range(1, len(dims)):
            ranks.append(self.d_matrix(n).rank())
        ranks.append(0)
        out = [self.basis.dim - ranks[0]]
        for n in range(len(dims)):
            out.append(dims[n] - ranks[n] - ranks[n + 1])
        return out

    def d_squared_is_zero(self) -> bool:
        for n in range(2, len(self.ap)):
            if not (self.d_matrix(n - 1) @ self.d_matrix(n)).is_zero():
                return False
        if len(self.ap) > 1 and not (self.mu_matrix() @ self.d_matrix(1)).is_zero():
            return False
        return True

    def is_exact(self) -> bool:
        return all(h == 0 for h in self.homology_dims())


def ap_sets(pres: Presentation, max_degree: int | None = None):
    """Per-degree support sets of the resolution, left-greedy construction."""
    from .presentation import basis_P

    return Resolution(pres, basis_P(pres), max_degree).ap


def ap_op_sets(pres: Presentation, max_degree: int | None = None):
    """Per-degree support sets built with the dual construction."""
    from .presentation import basis_P

    return Resolution(pres, basis_P(pres), max_degree).op_ap_sets()


def resolution_check(pres: Presentation) -> list[int]:
    """Homology of the realized augmented complex, one entry per spot;
    all zero exactly when the complex is the resolution it claims to be."""
    from .presentation import basis_P

    return Resolution(pres, basis_P(pres)).homology_dims()


def _occurrence_end(rel: Path, w: Path) -> int:
    """End position of the unique occurrence of rel inside w."""
    k = len(rel)
    for i in range(len(w) - k + 1):
        if w.arrows[i : i + k] == rel.arrows:
            return i + k
    raise AssertionError("chain relation does not occur in its support")


def _occurrence_start(rel: Path, w: Path) -> int:
    k = len(rel)
    for i in range(len(w) - k + 1):
        if w.arrows[i : i + k] == rel.arrows:
            return i
    raise AssertionError("chain relation does not occur in its support")
