import pytest

from conftest import a_n_text
from stringcoh import ParseError, basis_P, parse, validate
from stringcoh.quiver import compose


def test_parse_two_parallel_arrows():
    pres = parse("vertex 0 1\narrow a 0 1\narrow b 0 1")
    assert pres.quiver.num_vertices == 2
    assert pres.quiver.num_arrows == 2
    assert pres.relations == ()


def test_parse_two_lane_three_steps():
    pres = parse(a_n_text(3))
    assert len(pres.relations) == 4
    assert all(len(r) == 2 for r in pres.relations)


def test_parse_comments_and_blank_lines():
    pres = parse("# heading\n\nvertex 0 1  # two vertices\narrow a 0 1\n")
    assert pres.quiver.num_arrows == 1


def test_parse_short_relation_rejected():
    with pytest.raises(ParseError) as err:
        parse("vertex 0 1\narrow a1 0 1\nrelation a1")
    assert err.value.line == 3


def test_parse_unknown_directive():
    with pytest.raises(ParseError) as err:
        parse("vertices 0 1")
    assert err.value.line == 1


def test_parse_unknown_arrow_in_relation():
    with pytest.raises(ParseError):
        parse("vertex 0 1\narrow a 0 1\nrelation a c")


def test_parse_non_composable_relation():
    text = "vertex 0 1\narrow a 0 1\narrow b 0 1\nrelation a b"
    with pytest.raises(ParseError):
        parse(text)


def test_parse_duplicate_names_rejected():
    with pytest.raises(ParseError):
        parse("vertex 0 0")
    with pytest.raises(ParseError):
        parse("vertex 0 1\narrow a 0 1\narrow a 0 1")


def test_parse_unknown_vertex():
    with pytest.raises(ParseError):
        parse("vertex 0\narrow a 0 9")


def test_validate_two_lane_passes():
    report = validate(parse(a_n_text(3)))
    assert report.passed
    assert {name for name, _, _ in report.checks} == {
        "acyclic", "connected", "relation-lengths",
        "minimal-generators", "S1", "S2",
    }


def test_validate_s2_failure_names_arrow():
    text = "vertex 0 1 2\narrow a 0 1\narrow b 1 2\narrow c 1 2"
    report = validate(parse(text))
    failed = dict((name, detail) for name, detail in report.failures())
    assert set(failed) == {"S2"}
    assert "a" in failed["S2"]


def test_validate_s1_failure_three_parallel():
    text = "vertex 0 1\narrow a 0 1\narrow b 0 1\narrow c 0 1"
    report = validate(parse(text))
    assert {name for name, _ in report.failures()} == {"S1", "S2"} or {
        name for name, _ in report.failures()
    } == {"S1"}
    assert any(name == "S1" for name, _ in report.failures())


def test_validate_cycle_fails():
    report = validate(parse("vertex 0 1\narrow a 0 1\narrow b 1 0"))
    assert any(name == "acyclic" for name, _ in report.failures())


def test_validate_disconnected_fails():
    report = validate(parse("vertex 0 1 2\narrow a 0 1"))
    assert any(name == "connected" for name, _ in report.failures())


def test_validate_non_minimal_generators():
    text = ("vertex 0 1 2 3\narrow a 0 1\narrow b 1 2\narrow c 2 3\n"
            "relation a b\nrelation a b c")
    report = validate(parse(text))
    assert any(name == "minimal-generators" for name, _ in report.failures())


def test_in_ideal_relation_itself():
    pres = parse(a_n_text(3))
    q = pres.quiver
    a1a2 = q.path(0, [0, 2])
    assert pres.in_ideal(a1a2)


def test_in_ideal_mixed_path_survives():
    pres = parse(a_n_text(3))
    q = pres.quiver
    a1b2 = q.path(0, [0, 3])
    assert not pres.in_ideal(a1b2)


def test_in_ideal_trivial_path():
    pres = parse(a_n_text(3))
    assert not pres.in_ideal(pres.quiver.trivial_path(0))


def test_basis_single_vertex():
    basis = basis_P(parse("vertex 0"))
    assert basis.dim == 1


def test_basis_two_parallel_arrows():
    basis = basis_P(parse("vertex 0 1\narrow a 0 1\narrow b 0 1"))
    assert basis.dim == 4


def test_basis_two_lane_three_steps():
    pres = parse(a_n_text(3))
    basis = basis_P(pres)
    assert basis.dim == 16
    by_len = {}
    for p in basis.paths:
        by_len[len(p)] = by_len.get(len(p), 0) + 1
    assert by_len == {0: 4, 1: 6, 2: 4, 3: 2}


def test_basis_factor_closed_and_ordered(corpus):
    for _, pres, basis, _, _ in corpus[:25]:
        paths = set(basis.paths)
        for p in basis.paths:
            assert p.prefix(len(p) - 1) in paths if len(p) else True
            assert p.suffix(1) in paths if len(p) else True
        keys = [p.sort_key for p in basis.paths]
        assert keys == sorted(keys)
        assert all(pres.quiver.trivial_path(v) in paths
                   for v in range(pres.quiver.num_vertices))


def test_basis_agrees_with_ideal_scan(corpus):
    for _, pres, basis, _, _ in corpus[:25]:
        for p in pres.quiver.enumerate_paths():
            assert (p in basis) == (not pres.in_ideal(p))


def test_ideal_absorbs_products(corpus):
    for _, pres, basis, _, _ in corpus[:25]:
        paths = pres.quiver.enumerate_paths()
        for u in paths:
            for v in paths:
                if u.target != v.source:
                    continue
                if pres.in_ideal(u) or pres.in_ideal(v):
                    assert pres.in_ideal(compose(u, v))


def test_unique_continuation_propagates_to_basis(corpus):
    """At most one arrow extends a basis path on each side without
    falling into the ideal."""
    for _, pres, basis, _, _ in corpus[:25]:
        q = pres.quiver
        for gamma in basis.paths:
            if gamma.is_trivial:
                continue
            succ = [b for b in q.out_arrows(gamma.target)
                    if basis.mult(gamma, q.arrow_path(b)) is not None]
            pred = [b for b in q.in_arrows(gamma.source)
                    if basis.mult(q.arrow_path(b), gamma) is not None]
            assert len(succ) <= 1 and len(pred) <= 1
