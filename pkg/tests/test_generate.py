from stringcoh import parse, validate
from stringcoh.generate import generate, generate_dsl


def test_deterministic_per_seed():
    assert generate_dsl(7) == generate_dsl(7)
    assert generate_dsl(7) != generate_dsl(8)


def test_output_parses_and_validates():
    for seed in range(30):
        pres = parse(generate_dsl(seed))
        assert validate(pres).passed


def test_size_bounds():
    for seed in range(30):
        pres = generate(seed, max_vertices=8, max_arrows=10)
        assert 2 <= pres.quiver.num_vertices <= 8
        assert pres.quiver.num_arrows <= 10


def test_tree_mode():
    for seed in range(15):
        pres = generate(seed, tree=True)
        assert pres.quiver.is_tree()
        assert validate(pres).passed


def test_quadratic_mode():
    for seed in range(15):
        pres = generate(seed, quadratic=True)
        assert all(len(r) == 2 for r in pres.relations)
        assert validate(pres).passed


def test_some_presentations_have_long_relations():
    assert any(
        any(len(r) >= 3 for r in generate(seed).relations)
        for seed in range(40)
    )


def test_small_vertex_budget():
    for seed in range(10):
        pres = generate(seed, max_vertices=3, max_arrows=4)
        assert pres.quiver.num_vertices <= 3
        assert validate(pres).passed
