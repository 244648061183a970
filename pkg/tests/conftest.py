import pytest

from latspec.perm import FiniteGroup, Permutation, compose, generate_group, parse_generators


@pytest.fixture(autouse=True)
def _no_ambient_cache(monkeypatch):
    monkeypatch.delenv("LATSPEC_CACHE", raising=False)


def build(degree: int, gens: str) -> FiniteGroup:
    return generate_group(degree, parse_generators(gens, degree))


def naive_closure(perms):
    """Reference closure by raw composition, independent of mul tables."""
    degree = perms[0].degree if perms else 1
    elems = {Permutation.identity(degree)}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in perms:
            y = compose(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return elems


@pytest.fixture(scope="session")
def s3():
    return build(3, "(1,2);(1,2,3)")


@pytest.fixture(scope="session")
def s4():
    return build(4, "(1,2);(1,2,3,4)")


@pytest.fixture(scope="session")
def a4():
    return build(4, "(1,2,3);(2,3,4)")


@pytest.fixture(scope="session")
def d4_order8():
    return build(4, "(1,2,3,4);(1,3)")


@pytest.fixture(scope="session")
def c6():
    return build(6, "(1,2,3,4,5,6)")


@pytest.fixture(scope="session")
def e8():
    return build(6, "(1,2);(3,4);(5,6)")
