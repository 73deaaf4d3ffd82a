"""Sparse exact linear algebra against dense textbook oracles."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hopftrace.linalg import (GF, QQ, DimensionError, LinearMap, LinearSystem, chain, codiagonal, flat_index,
                              flip, identity, kernel, kronecker, multi_index, permute, rank_of_vectors, solve)

GF7 = GF(7)
small = st.integers(-3, 3)


def dense(m):
    return [[m[r, c] for c in range(m.cols)] for r in range(m.rows)]


def naive_matmul(a, b, field):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [[field.normalize(sum(a[i][k] * b[k][j] for k in range(inner))) for j in range(cols)]
            for i in range(rows)]


def naive_kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def naive_rank_mod(grid, p):
    g = [[v % p for v in row] for row in grid]
    rank, col = 0, 0
    ncols = len(g[0]) if g else 0
    while rank < len(g) and col < ncols:
        piv = next((r for r in range(rank, len(g)) if g[r][col]), None)
        if piv is None:
            col += 1
            continue
        g[rank], g[piv] = g[piv], g[rank]
        inv = pow(g[rank][col], -1, p)
        for r in range(len(g)):
            if r != rank and g[r][col]:
                f = g[r][col] * inv
                g[r] = [(x - f * y) % p for x, y in zip(g[r], g[rank])]
        rank += 1
        col += 1
    return rank


def matrices(rows, cols, elems=small):
    return st.lists(st.lists(elems, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


dims = st.integers(1, 4)


@st.composite
def product_triple(draw):
    a, b, c = draw(dims), draw(dims), draw(dims)
    return draw(matrices(a, b)), draw(matrices(b, c))


@given(product_triple())
def test_compose_matches_dense_product(pair):
    a, b = pair
    A, B = LinearMap.from_dense(QQ, a), LinearMap.from_dense(QQ, b)
    assert dense(A @ B) == naive_matmul(a, b, QQ)


@given(product_triple())
def test_compose_over_prime_field(pair):
    a, b = pair
    A, B = LinearMap.from_dense(GF7, a), LinearMap.from_dense(GF7, b)
    expect = naive_matmul([[x % 7 for x in r] for r in a], [[x % 7 for x in r] for r in b], GF7)
    assert dense(A @ B) == expect


@given(dims.flatmap(lambda n: matrices(n, n)), dims.flatmap(lambda n: matrices(n, 2)))
def test_kronecker_matches_dense(a, b):
    assert dense(kronecker(LinearMap.from_dense(QQ, a), LinearMap.from_dense(QQ, b))) == naive_kron(a, b)


@given(st.integers(1, 5).flatmap(lambda r: matrices(r, 4)))
def test_rank_matches_sympy(grid):
    assert LinearMap.from_dense(QQ, grid).rank() == sympy.Matrix(grid).rank()


@given(st.integers(1, 5).flatmap(lambda r: matrices(r, 4, st.integers(0, 6))))
def test_rank_mod_p_matches_elimination_oracle(grid):
    assert LinearMap.from_dense(GF7, grid).rank() == naive_rank_mod(grid, 7)


@given(st.integers(1, 4).flatmap(lambda r: matrices(r, 5)))
def test_rank_nullity(grid):
    m = LinearMap.from_dense(QQ, grid)
    ker = kernel(m)
    assert m.rank() + ker.dim == m.cols
    for v in ker.basis:
        assert all(x == 0 for x in m.apply(v))


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse_is_two_sided(grid):
    m = LinearMap.from_dense(QQ, grid)
    if m.rank() < m.rows:
        assert not m.is_invertible()
        return
    inv = m.inverse()
    assert inv @ m == identity(QQ, m.rows) == m @ inv
    assert dense(inv) == [[QQ(Fraction(int(x.p), int(x.q))) for x in row]
                          for row in sympy.Matrix(grid).inv().tolist()]


@given(product_triple(), dims)
def test_compose_is_associative(pair, k):
    a, b = pair
    A, B = LinearMap.from_dense(QQ, a), LinearMap.from_dense(QQ, b)
    C = LinearMap.from_dense(QQ, [[(i + 2 * j) % 3 - 1 for j in range(k)] for i in range(B.cols)])
    assert (A @ B) @ C == A @ (B @ C)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_permute_moves_basis_vectors(dims_, rnd):
    perm = list(range(len(dims_)))
    rnd.shuffle(perm)
    P = permute(QQ, tuple(dims_), tuple(perm))
    total = P.cols
    for col in range(total):
        idx = multi_index(col, dims_)
        out = [idx[p] for p in perm]
        row = flat_index(out, [dims_[p] for p in perm])
        assert P[row, col] == 1 and sum(1 for v in P.column(col) if v) == 1


def test_flip_is_an_involution():
    assert flip(QQ, 2, 3) @ flip(QQ, 3, 2) == identity(QQ, 6)


def _kron_chain_left(mul, f, g):
    """``(mul (x) id) o (H A H B -> H H A B) o (f (x) g)``: the oracle for codiagonal."""
    N, A, B = mul.rows, f.cols, g.cols
    return chain(kronecker(mul, identity(QQ, A * B)), permute(QQ, (N, A, N, B), (0, 2, 1, 3)), kronecker(f, g))


def _kron_chain_right(mul, f, g, reverse):
    N, A, B = mul.rows, f.cols, g.cols
    order = (3, 1) if reverse else (1, 3)
    return chain(kronecker(identity(QQ, A * B), mul), permute(QQ, (A, N, B, N), (0, 2) + order), kronecker(f, g))


@given(st.integers(1, 2), st.integers(1, 3), st.integers(1, 2), st.data())
def test_codiagonal_matches_kronecker_chain(n, a, b, data):
    mul = LinearMap.from_dense(QQ, data.draw(matrices(n, n * n)))
    fl = LinearMap.from_dense(QQ, data.draw(matrices(n * a, a)))
    gl = LinearMap.from_dense(QQ, data.draw(matrices(n * b, b)))
    assert codiagonal(mul, fl, gl, "left") == _kron_chain_left(mul, fl, gl)
    fr = LinearMap.from_dense(QQ, data.draw(matrices(a * n, a)))
    gr = LinearMap.from_dense(QQ, data.draw(matrices(b * n, b)))
    for rev in (False, True):
        assert codiagonal(mul, fr, gr, "right", reverse=rev) == _kron_chain_right(mul, fr, gr, rev)


def test_linear_system_matches_explicit_equation():
    # unknown U (2x2) with (I_2 (x) U) commuting with a fixed 4x4 matrix
    M = LinearMap.from_dense(QQ, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])
    sys_ = LinearSystem(QQ)
    U = sys_.matrix(2, 2)
    sys_.add_term("c", U, left=M, a=2)
    sys_.add_term("c", U, right=M, a=2, coef=-1)
    sol = sys_.solve()
    for u in sol.as_maps(2, 2):
        assert M @ kronecker(identity(QQ, 2), u) == kronecker(identity(QQ, 2), u) @ M
    # brute force over small integer matrices confirms the dimension
    found = set()
    for a in range(-1, 2):
        for b in range(-1, 2):
            for c in range(-1, 2):
                for d in range(-1, 2):
                    u = LinearMap.from_dense(QQ, [[a, b], [c, d]])
                    if M @ kronecker(identity(QQ, 2), u) == kronecker(identity(QQ, 2), u) @ M:
                        found.add((a, b, c, d))
    assert rank_of_vectors(QQ, found) == sol.dim == 2


def test_solve_rejects_out_of_range_unknowns():
    with pytest.raises(DimensionError):
        solve(QQ, [{3: 1}], 2)


def test_fields():
    assert QQ("6/4") == Fraction(3, 2) and QQ(4) == 4
    assert GF7("1/3") == 5 and GF7(-1) == 6 and GF7.inv(3) == 5
    with pytest.raises(ValueError):
        GF(12)
    with pytest.raises(ZeroDivisionError):
        GF7.inv(0)


def test_shape_errors():
    with pytest.raises(DimensionError):
        LinearMap.from_dense(QQ, [[1, 2]]) @ LinearMap.from_dense(QQ, [[1, 2]])
    with pytest.raises(DimensionError):
        LinearMap(QQ, 2, 2, {5: {0: 1}})


@given(st.data())
def test_kronecker_interchange_law(data):
    # (A (x) B) o (C (x) D) = (A o C) (x) (B o D)
    p, q, r, s, t, u = (data.draw(st.integers(1, 3)) for _ in range(6))
    A = LinearMap.from_dense(QQ, data.draw(matrices(p, q)))
    C = LinearMap.from_dense(QQ, data.draw(matrices(q, r)))
    B = LinearMap.from_dense(QQ, data.draw(matrices(s, t)))
    D = LinearMap.from_dense(QQ, data.draw(matrices(t, u)))
    assert kronecker(A, B) @ kronecker(C, D) == kronecker(A @ C, B @ D)


@given(st.integers(1, 5), st.integers(1, 5))
def test_flip_inverse_up_to_swap(m, n):
    assert flip(QQ, n, m) @ flip(QQ, m, n) == identity(QQ, m * n)
