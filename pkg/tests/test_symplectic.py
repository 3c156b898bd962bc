import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasistab import gf
from quasistab.errors import BudgetError, DimensionError, VerificationError
from quasistab.symplectic import (
    DistanceInfo,
    PauliVector,
    StabilizerCode,
    enumeration_count,
    in_stabilizer_span,
    is_totally_singular,
    logical_representatives,
    min_weight_logical,
    symplectic_dual,
    symplectic_product,
)


def naive_product(u: PauliVector, v: PauliVector) -> int:
    # independent re-statement of the bilinear form
    total = sum(a * d for a, d in zip(u.x, v.z)) + sum(c * b for c, b in zip(v.x, u.z))
    return total % u.p


def random_pauli(rng, n, p=2) -> PauliVector:
    return PauliVector(p, tuple(rng.integers(0, p, n)), tuple(rng.integers(0, p, n)))


# --- symplectic_product -----------------------------------------------------


def test_product_self_mod2_is_zero():
    rng = np.random.default_rng(0)
    for _ in range(50):
        u = random_pauli(rng, 7)
        assert symplectic_product(u, u) == 0


def test_product_five_qubit_shift_pair():
    u = PauliVector.from_string("11000|00101")
    v = PauliVector.from_string("01100|10010")
    assert symplectic_product(u, v) == 0


def test_product_x_vs_z_same_qubit():
    u = PauliVector.from_string("10000|00000")
    v = PauliVector.from_string("00000|10000")
    assert symplectic_product(u, v) == 1


def test_product_mismatch_raises():
    u = PauliVector.from_string("10|00")
    v = PauliVector.from_string("100|000")
    with pytest.raises(DimensionError):
        symplectic_product(u, v)
    w = PauliVector(3, (1, 0), (0, 0))
    with pytest.raises(DimensionError):
        symplectic_product(u, w)


@given(st.integers(0, 10**9))
@settings(max_examples=50)
def test_product_matches_naive_and_symmetric(seed):
    rng = np.random.default_rng(seed)
    p = int(rng.choice([2, 3]))
    u, v = random_pauli(rng, 6, p), random_pauli(rng, 6, p)
    assert symplectic_product(u, v) == naive_product(u, v)
    assert symplectic_product(u, v) == symplectic_product(v, u)


@given(st.integers(0, 10**9))
@settings(max_examples=50)
def test_product_bilinear(seed):
    rng = np.random.default_rng(seed)
    p = int(rng.choice([2, 3]))
    u, v, w = (random_pauli(rng, 5, p) for _ in range(3))
    lhs = symplectic_product(u.add(v), w)
    rhs = (symplectic_product(u, w) + symplectic_product(v, w)) % p
    assert lhs == rhs


# --- total singularity ------------------------------------------------------


def test_five_qubit_generators_totally_singular():
    base = PauliVector.from_string("11000|00101")
    gens = [base.cyclic_shift(t) for t in range(4)]
    ok, pair = is_totally_singular(gens)
    assert ok and pair is None


def test_anticommuting_pair_reported():
    gens = [PauliVector.from_string("10000|00000"), PauliVector.from_string("00000|10000")]
    ok, pair = is_totally_singular(gens)
    assert not ok and pair == (0, 1)


def test_singleton_self_product():
    ok, _ = is_totally_singular([PauliVector.from_string("110|011")])
    assert ok


def test_f3_self_product_can_fail():
    # x.z = 1 mod 3, so (v, v) = 2 != 0
    v = PauliVector(3, (1, 0), (1, 0))
    ok, pair = is_totally_singular([v])
    assert not ok and pair == (0, 0)


# --- duals and logicals -----------------------------------------------------


def test_dual_dimension_and_containment(five, qr13):
    for code, expect in ((five, 6), (qr13, 14)):
        dual = symplectic_dual(code)
        assert len(dual) == 2 * code.n - code.rank == expect
        stacked = np.array([d.as_row() for d in dual])
        reduced, pivots = gf.rref(stacked, 2)
        for g in code.generators:
            assert gf.in_rowspace(reduced, pivots, g.as_row(), 2)
        for d in dual:
            assert all(symplectic_product(d, g) == 0 for g in code.generators)


def test_dual_self_dual_case():
    # rank == n, k = 0: dual is the stabilizer span itself
    gens = [PauliVector.from_string("10|00"), PauliVector.from_string("00|01")]
    code = StabilizerCode.from_generators("toy-k0", gens)
    assert code.k == 0
    dual = symplectic_dual(code)
    assert len(dual) == 2
    reduced, pivots = gf.rref(code.stacked(), 2)
    for d in dual:
        assert gf.in_rowspace(reduced, pivots, d.as_row(), 2)


def test_logicals_empty_for_k0():
    gens = [PauliVector.from_string("10|00"), PauliVector.from_string("00|01")]
    code = StabilizerCode.from_generators("toy-k0", gens)
    assert logical_representatives(code) == ()


def test_logical_pairing_contract(small_codes):
    for code in small_codes:
        pairs = code.logicals
        assert len(pairs) == code.k
        flat = [v for pair in pairs for v in pair]
        for i, (lx, lz) in enumerate(pairs):
            assert symplectic_product(lx, lz) != 0
            assert not in_stabilizer_span(code, lx)
            assert not in_stabilizer_span(code, lz)
            for g in code.generators:
                assert symplectic_product(lx, g) == 0
                assert symplectic_product(lz, g) == 0
        # block pairing: cross products between distinct pairs vanish
        for i, j in itertools.combinations(range(len(flat)), 2):
            if i // 2 == j // 2:
                continue
            assert symplectic_product(flat[i], flat[j]) == 0


def test_logicals_over_f3():
    code = StabilizerCode.from_generators("f3-toy", [PauliVector(3, (1, 1), (0, 0))])
    assert code.k == 1
    (lx, lz), = code.logicals
    assert symplectic_product(lx, lz) != 0


# --- minimum-weight search --------------------------------------------------


def naive_min_weight(code, w_max):
    """Support-major enumeration in a deliberately different order."""
    reduced, pivots = gf.rref(code.stacked(), code.p)
    digits = [(1, 0), (1, 1), (0, 1)] if code.p == 2 else [
        (a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)
    ]
    best = None
    for size in range(1, w_max + 1):
        for support in itertools.combinations(range(code.n), size):
            for assign in itertools.product(digits, repeat=size):
                x = [0] * code.n
                z = [0] * code.n
                for j, (a, b) in zip(support, assign):
                    x[j], z[j] = a, b
                v = PauliVector(code.p, tuple(x), tuple(z))
                if any(symplectic_product(v, g) for g in code.generators):
                    continue
                if gf.in_rowspace(reduced, pivots, v.as_row(), code.p):
                    continue
                best = size if best is None else min(best, size)
                break  # one witness per support suffices for the minimum
        if best is not None:
            return best
    return None


def test_min_weight_five(five):
    scan = min_weight_logical(five, 3)
    assert scan.exact == 3
    assert scan.witness is not None and scan.witness.weight == 3
    assert naive_min_weight(five, 3) == 3


def test_five_quoted_weight3_dual_element(five):
    # the textbook weight-3 representative: commutes with every generator
    # yet sits outside the stabilizer span
    v = PauliVector.from_string("00111|00101")
    assert v.weight == 3
    assert all(symplectic_product(v, g) == 0 for g in five.generators)
    assert not in_stabilizer_span(five, v)


def test_min_weight_matches_naive_oracle(small_codes):
    for code in small_codes:
        if code.n > 10:
            continue
        scan = min_weight_logical(code, 3)
        assert scan.exact == naive_min_weight(code, 3) == 3


def test_min_weight_certifies_floor(qr13):
    scan = min_weight_logical(qr13, 4)
    assert scan.exact is None and scan.no_logical_below == 5


def test_min_weight_budget_guard(five):
    with pytest.raises(BudgetError):
        min_weight_logical(five, 3, budget=10)
    scan = min_weight_logical(five, 3, budget=10, force=True)
    assert scan.exact == 3


def test_enumeration_count():
    assert enumeration_count(5, 1) == 15
    assert enumeration_count(5, 2) == 15 + 90


# --- construction gates -----------------------------------------------------


def test_from_generators_rejects_noncommuting():
    gens = [PauliVector.from_string("10000|00000"), PauliVector.from_string("00000|10000")]
    with pytest.raises(VerificationError):
        StabilizerCode.from_generators("bad", gens)


def test_distance_info_labels():
    assert DistanceInfo(exact=3).label() == "3"
    assert DistanceInfo(lower_bound=6, claimed=11).label() == ">=6 claimed 11"
    assert DistanceInfo().label() == "unknown"


def test_pauli_string_round_trip():
    v = PauliVector.from_string("11000|00101")
    assert v.to_string() == "11000|00101"
    assert v.weight == 4
    assert v.support == (0, 1, 2, 4)
    ex, ez = v.packed()
    assert PauliVector.from_packed(ex, ez, 5) == v
