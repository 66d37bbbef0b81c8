"""Monomial presentations: the input DSL, validation, and the path basis.

A presentation is a quiver together with a minimal set of paths of length
at least two generating the relation ideal.  The file format is line
oriented; '#' starts a comment and tokens are whitespace separated::

    vertex <name>+            declares vertices (repeatable)
    arrow <name> <src> <tgt>  declares one arrow
    relation <arrow-name>{2,} one monomial relation, arrows left to right

Names match [A-Za-z0-9_]+ and are case sensitive.  Declaration order
defines the canonical integer ids used everywhere downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .quiver import Path, Quiver, compose, occurrences

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Path, ...]

    def in_ideal(self, w: Path) -> bool:
        """Monomial ideal membership: some relation occurs as a factor of w."""
        return any(occurrences(r, w) for r in self.relations)

    def relation_set(self) -> frozenset[Path]:
        return frozenset(self.relations)

    def format_path(self, p: Path) -> str:
        return self.quiver.format_path(p)


def parse(text: str) -> Presentation:
    """Parse the presentation DSL; raises ParseError with a line number."""
    vertex_ids: dict[str, int] = {}
    arrow_ids: dict[str, int] = {}
    arrows: list[tuple[str, int, int]] = []
    relation_lines: list[tuple[list[str], int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "vertex":
            if not args:
                raise ParseError("vertex line needs at least one name", lineno)
            for name in args:
                if not _NAME.match(name):
                    raise ParseError(f"bad vertex name {name!r}", lineno)
                if name in vertex_ids:
                    raise ParseError(f"duplicate vertex {name!r}", lineno)
                vertex_ids[name] = len(vertex_ids)
        elif kind == "arrow":
            if len(args) != 3:
                raise ParseError("arrow line needs: arrow <name> <src> <tgt>", lineno)
            name, src, tgt = args
            if not _NAME.match(name):
                raise ParseError(f"bad arrow name {name!r}", lineno)
            if name in arrow_ids:
                raise ParseError(f"duplicate arrow {name!r}", lineno)
            for v in (src, tgt):
                if v not in vertex_ids:
                    raise ParseError(f"unknown vertex {v!r}", lineno)
            arrow_ids[name] = len(arrows)
            arrows.append((name, vertex_ids[src], vertex_ids[tgt]))
        elif kind == "relation":
            if len(args) < 2:
                raise ParseError("a relation needs at least two arrows", lineno)
            relation_lines.append((args, lineno))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    quiver = Quiver(tuple(vertex_ids), arrows)
    relations = []
    seen = set()
    for names, lineno in relation_lines:
        ids = []
        for name in names:
            if name not in arrow_ids:
                raise ParseError(f"unknown arrow {name!r} in relation", lineno)
            ids.append(arrow_ids[name])
        try:
            rel = quiver.path(quiver.arrow_source[ids[0]], ids)
        except Exception as exc:
            raise ParseError(str(exc), lineno) from None
        if rel in seen:
            raise ParseError("duplicate relation", lineno)
        seen.add(rel)
        relations.append(rel)
    relations.sort(key=lambda p: p.sort_key)
    return Presentation(quiver, tuple(relations))


def parse_file(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append((name, passed, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, ok, detail in self.checks if not ok]


def validate(pres: Presentation) -> ValidationReport:
    """Check the triangular-string hypotheses, one report entry per check.

    Failures are report entries, not exceptions.  The checks: acyclicity;
    connectedness of the underlying graph; relation lengths >= 2;
    minimality of the generating set (no relation divides another); at
    most two arrows in and out of every vertex; and for every arrow a
    unique surviving continuation on each side modulo the ideal.
    """
    q = pres.quiver
    report = ValidationReport()

    acyclic = q.is_acyclic()
    report.add("acyclic", acyclic, "" if acyclic else "oriented cycle found")

    connected = q.is_connected()
    report.add("connected", connected,
               "" if connected else "underlying graph is disconnected")

    short = [r for r in pres.relations if len(r) < 2]
    report.add(
        "relation-lengths",
        not short,
        "" if not short else "relations of length < 2: "
        + ", ".join(pres.format_path(r) for r in short),
    )

    bad_pairs = []
    for r in pres.relations:
        for r2 in pres.relations:
            if r is not r2 and occurrences(r, r2):
                bad_pairs.append((r, r2))
    report.add(
        "minimal-generators",
        not bad_pairs,
        "" if not bad_pairs else "; ".join(
            f"{pres.format_path(a)} divides {pres.format_path(b)}"
            for a, b in bad_pairs
        ),
    )

    s1_bad = [
        v for v in range(q.num_vertices)
        if len(q.out_arrows(v)) > 2 or len(q.in_arrows(v)) > 2
    ]
    report.add(
        "S1",
        not s1_bad,
        "" if not s1_bad else "more than two arrows in or out at vertex "
        + ", ".join(q.vertex_labels[v] for v in s1_bad),
    )

    s2_bad = []
    for a in range(q.num_arrows):
        alpha = q.arrow_path(a)
        succ = [
            b for b in q.out_arrows(q.arrow_target[a])
            if not pres.in_ideal(compose(alpha, q.arrow_path(b)))
        ]
        pred = [
            b for b in q.in_arrows(q.arrow_source[a])
            if not pres.in_ideal(compose(q.arrow_path(b), alpha))
        ]
        if len(succ) > 1:
            s2_bad.append(f"{q.arrow_labels[a]} has surviving continuations "
                          + ", ".join(q.arrow_labels[b] for b in succ))
        if len(pred) > 1:
            s2_bad.append(f"{q.arrow_labels[a]} has surviving predecessors "
                          + ", ".join(q.arrow_labels[b] for b in pred))
    report.add("S2", not s2_bad, "; ".join(s2_bad))

    return report


class PathBasis:
    """The ideal-free paths, in canonical order: the monomial basis of A.

    A path lies in the basis iff no relation divides it, so membership in
    the relation ideal is exactly absence from this set.
    """

    def __init__(self, pres: Presentation):
        q = pres.quiver
        paths: list[Path] = []
        frontier = [q.trivial_path(v) for v in range(q.num_vertices)]
        while frontier:
            paths.extend(frontier)
            nxt = []
            for p in frontier:
                for a in q.out_arrows(p.target):
                    ext = compose(p, q.arrow_path(a))
                    # p is already ideal-free, so only a relation ending at
                    # the new last arrow can kill the extension.
                    if not _dies_at_end(ext, pres.relations):
                        nxt.append(ext)
            nxt.sort(key=lambda p: p.sort_key)
            frontier = nxt
        self.pres = pres
        self.paths = tuple(paths)
        self.index = {p: i for i, p in enumerate(paths)}
        self._by_endpoints: dict[tuple[int, int], list[Path]] = {}
        self._ending_at: dict[int, list[Path]] = {}
        self._starting_at: dict[int, list[Path]] = {}
        for p in paths:
            self._by_endpoints.setdefault((p.source, p.target), []).append(p)
            self._ending_at.setdefault(p.target, []).append(p)
            self._starting_at.setdefault(p.source, []).append(p)

    @property
    def dim(self) -> int:
        return len(self.paths)

    def __contains__(self, p: Path) -> bool:
        return p in self.index

    def between(self, s: int, t: int) -> list[Path]:
        return self._by_endpoints.get((s, t), [])

    def ending_at(self, v: int) -> list[Path]:
        return self._ending_at.get(v, [])

    def starting_at(self, v: int) -> list[Path]:
        return self._starting_at.get(v, [])

    def reduce(self, p: Path) -> Path | None:
        """The image of a path in A: itself if ideal-free, else None (zero)."""
        return p if p in self.index else None

    def mult(self, p: Path, q: Path) -> Path | None:
        """Product of two basis paths in A; None when it falls in the ideal."""
        if p.target != q.source:
            return None
        return self.reduce(compose(p, q))

    def mult3(self, p: Path, q: Path, r: Path) -> Path | None:
        pq = self.mult(p, q)
        return None if pq is None else self.mult(pq, r)


def _dies_at_end(w: Path, relations) -> bool:
    """True iff some relation is a suffix of w (w's proper prefixes are free)."""
    n = len(w)
    for r in relations:
        k = len(r)
        if k <= n and w.arrows[n - k :] == r.arrows:
            return True
    return False


def basis_P(pres: Presentation) -> PathBasis:
    return PathBasis(pres)
