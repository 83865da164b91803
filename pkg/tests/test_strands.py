from hypothesis import given, settings, strategies as st

from branchedarc.strands import linear_pmc, strands_algebra, torus, weight0_basis

A2 = strands_algebra(2)
KEYS = A2.keys()
key = st.sampled_from(KEYS)


def test_pmc_genus_two():
    Z = linear_pmc(2)
    assert Z.pairs == ((1, 3), (2, 5), (4, 7), (6, 8))
    assert sorted(Z.match) == [1, 1, 2, 2, 3, 3, 4, 4]


def test_census():
    gens = weight0_basis(linear_pmc(2))
    counts = [sum(1 for g in gens if len(g.chords) == r) for r in range(3)]
    assert counts == [6, 28, 179]
    # refined by idempotent the basis is larger
    assert len(KEYS) == 245


def test_torus_relations():
    A = strands_algebra(1)
    (r1,), (r2,), (r3,) = torus("rho1"), torus("rho2"), torus("rho3")
    (r12,), (r23,) = torus("rho12"), torus("rho23")
    assert A.mul(r1, r2) == {r12}
    assert A.mul(r2, r3) == {r23}
    assert not A.mul(r2, r1)
    assert not A.mul(r2, r12)


def test_d_squared_zero():
    assert all(not A2.dv(A2.d(k)) for k in KEYS)


def test_unit():
    u = A2.unit()
    for k in KEYS:
        assert A2.mulv(u, [k]) == {k} == A2.mulv([k], u)


def test_blocks_partition_basis():
    seen = []
    for li in range(6):
        for ri in range(6):
            seen += A2.block(li, ri)
    assert sorted(seen) == sorted(KEYS)


@given(key, key)
@settings(max_examples=300, deadline=None)
def test_leibniz(a, b):
    lhs = A2.dv(A2.mul(a, b))
    rhs = A2.mulv(A2.d(a), [b]) ^ A2.mulv([a], A2.d(b))
    assert lhs == rhs


@given(key, key, key)
@settings(max_examples=300, deadline=None)
def test_associative(a, b, c):
    assert A2.mulv(A2.mul(a, b), [c]) == A2.mulv([a], A2.mul(b, c))
