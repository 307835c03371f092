from hypothesis import given, strategies as st

from lambdaring.abelian import AbelianGroup, Presentation, smith_normal_form


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(n))


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n + 1)
)


@given(matrices)
def test_smith_form(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


def test_known_group():
    # Z^2 / <(2, 0), (0, 3)> = Z/6
    P = Presentation.from_relations(2, [[2, 0], [0, 3]])
    assert P.group.divisors == (6,)
    assert len({P.canonical((a, b)) for a in range(2) for b in range(3)}) == 6


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_diagonal_presentation_order(ds):
    n = len(ds)
    rel = [[ds[i] if i == j else 0 for j in range(n)] for i in range(n)]
    P = Presentation.from_relations(n, rel)
    order = 1
    for d in ds:
        order *= d
    assert P.group.order == order
    ds2 = P.group.divisors
    assert all(b % a == 0 for a, b in zip(ds2, ds2[1:]))


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3), st.data())
def test_canonical_is_a_homomorphism(ds, data):
    n = len(ds)
    rel = [[ds[i] if i == j else 0 for j in range(n)] for i in range(n)]
    P = Presentation.from_relations(n, rel)
    G = P.group
    e1 = data.draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n))
    e2 = data.draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n))
    s = [a + b for a, b in zip(e1, e2)]
    assert P.canonical(s) == G.add(P.canonical(e1), P.canonical(e2))
    for r in rel:
        assert P.canonical(r) == G.zero()


def test_group_basics():
    G = AbelianGroup((2, 4))
    assert G.order == 8 and G.rank == 2
    assert len(list(G.elements())) == 8
    assert G.element_order((1, 1)) == 4
    assert G.add((1, 3), G.neg((1, 3))) == G.zero()
    assert G.scale(3, (1, 1)) == (1, 3)
