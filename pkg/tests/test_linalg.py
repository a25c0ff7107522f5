import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from anomalion.linalg import is_prime, smith_normal_form, solve_mod


@st.composite
def small_matrix(draw):
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    data = draw(st.lists(st.integers(-6, 6), min_size=rows * cols, max_size=rows * cols))
    return [data[i * cols : (i + 1) * cols] for i in range(rows)]


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_smith_normal_form_factorization(A):
    U, D, V = smith_normal_form(A)
    A = np.array(A, dtype=object)
    U = np.array(U, dtype=object)
    D = np.array(D, dtype=object)
    V = np.array(V, dtype=object)
    assert (U @ A @ V == D).all()
    n = min(D.shape)
    for i in range(n):
        for j in range(len(D[i])):
            if i != j:
                assert D[i][j] == 0
    for i in range(n - 1):
        if D[i][i]:
            assert D[i + 1][i + 1] % D[i][i] == 0
    # unimodular transforms
    assert abs(round(float(np.linalg.det(U.astype(float))))) == 1
    assert abs(round(float(np.linalg.det(V.astype(float))))) == 1


@given(small_matrix(), st.sampled_from([2, 3, 4, 5, 6, 8]), st.data())
@settings(max_examples=150, deadline=None)
def test_solve_mod_roundtrip(A, m, data):
    rows, cols = len(A), len(A[0])
    x = data.draw(st.lists(st.integers(0, m - 1), min_size=cols, max_size=cols))
    b = [sum(A[i][j] * x[j] for j in range(cols)) % m for i in range(rows)]
    sol = solve_mod(A, b, m)
    assert sol is not None
    for i in range(rows):
        assert sum(A[i][j] * int(sol[j]) for j in range(cols)) % m == b[i] % m


def test_solve_mod_unsolvable():
    # 2x = 1 mod 4 has no solution
    assert solve_mod([[2]], [1], 4) is None
    assert solve_mod([[2]], [1], 2) is None
    assert solve_mod([[3]], [1], 5) is not None


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
