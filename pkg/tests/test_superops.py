import random
from fractions import Fraction

import pytest

from tring.superops import (
    DualBasisPair,
    PairingError,
    SuperSpace,
    SuperTensor,
    _perm_word,
    _permute_raw,
    compose_permutations,
    es_axiom_check,
    es_compose,
    es_permute,
    even_space,
    mixed_space,
    pair,
    vowa_check,
    vowa_exhaustive,
)


def T(*key):
    return SuperTensor.basis(tuple(key))


def test_space_validation():
    with pytest.raises(PairingError):
        # nonzero pairing across parities
        SuperSpace(["e", "o"], [0, 1], [[1, 1], [1, 0]])
    with pytest.raises(PairingError):
        # odd/odd block must be antisymmetric
        SuperSpace(["o1", "o2"], [1, 1], [[0, 1], [1, 0]])
    mixed_space(3)  # constructs cleanly


def test_compose_all_even_is_plain_contraction():
    space = even_space(2)
    v = T(0, 1, 0)
    w = T(1, 1, 0)
    result = es_compose(space, v, w, 1)
    assert result == SuperTensor(4, {(0, 1, 0, 0): Fraction(1)})
    # b is the identity matrix, so mismatched contraction slots vanish
    assert es_compose(space, T(0, 1), T(0, 0), 1).is_zero()


def test_compose_mixed_example():
    space = mixed_space(3)  # e, o1, o2 with b(o1,o2)=1=-b(o2,o1), b(e,e)=1
    e, o1, o2 = 0, 1, 2
    result = es_compose(space, T(e, o1), T(o2, e), 1)
    assert result == SuperTensor(2, {(e, e): Fraction(1)})
    # parities of the contracted pair differ -> zero
    assert es_compose(space, T(e, o1), T(e, e), 1).is_zero()


def test_compose_sign_from_tail():
    # v tail odd and w odd-total flips the sign:
    # (o1 ? o2 ? o1) composed at slot 1 against (o1 ? e):
    # N = |w|*(|v_2|) = 1*1 = 1
    space = mixed_space(3)
    e, o1, o2 = 0, 1, 2
    result = es_compose(space, T(o1, o2, o1), T(o1, e), 1)
    assert result == SuperTensor(3, {(o1, e, o1): Fraction(1)})
    result = es_compose(space, T(e, o2, o1), T(o1, e), 1)
    # here b(o2, o1) = -1 and N = 1, so the signs cancel
    assert result == SuperTensor(3, {(e, e, o1): Fraction(1)})


def test_permute_identity_and_swap():
    space = mixed_space(3)
    e, o1, o2 = 0, 1, 2
    v = T(e, o1, o2)
    assert es_permute(space, (0, 1, 2), v) == v
    swapped = es_permute(space, (0, 2, 1), v)
    assert swapped == SuperTensor(3, {(e, o2, o1): Fraction(-1)})
    # swapping an even slot with an odd one costs nothing
    assert es_permute(space, (1, 0, 2), v) == SuperTensor(
        3, {(o1, e, o2): Fraction(1)}
    )


def test_braid_words_agree():
    space = mixed_space(3)
    rng = random.Random(3)
    for _ in range(20):
        key = tuple(rng.randrange(3) for _ in range(3))
        a = _permute_raw(space, (0, 1, 0), key)
        b = _permute_raw(space, (1, 0, 1), key)
        assert a == b


def test_permute_group_action():
    from itertools import permutations

    space = mixed_space(3)
    rng = random.Random(9)
    tensor = SuperTensor(
        3,
        {
            tuple(rng.randrange(3) for _ in range(3)): Fraction(rng.randint(1, 4))
            for _ in range(4)
        },
    )
    for pi in permutations(range(3)):
        for rho in permutations(range(3)):
            composed = tuple(pi[rho[i]] for i in range(3))
            lhs = es_permute(space, composed, tensor)
            rhs = es_permute(space, pi, es_permute(space, rho, tensor))
            assert lhs == rhs


def test_pair_values():
    space = mixed_space(3)
    e, o1, o2 = 0, 1, 2
    assert pair(space, T(e, e), T(e, e)) == 1
    # S = |v_2||alpha_1| = 1 here, so the product of b-factors flips sign
    assert pair(space, T(o1, o1), T(o2, o2)) == -1
    assert pair(space, T(e, o1), T(e, o2)) == 1
    zero = SuperTensor(2)
    assert pair(space, T(e, e), zero) == 0


def test_pair_permutation_invariance_even():
    from itertools import permutations, product

    space = mixed_space(3)
    evens = [
        key
        for key in product(range(3), repeat=3)
        if sum(space.parity[i] for i in key) % 2 == 0
    ]
    for perm in permutations(range(3)):
        for vk in evens:
            for ak in evens:
                lhs = pair(
                    space,
                    es_permute(space, perm, T(*vk)),
                    es_permute(space, perm, T(*ak)),
                )
                assert lhs == pair(space, T(*vk), T(*ak))


def test_compose_permutations_examples():
    # identities compose to the identity
    assert compose_permutations((0, 1, 2), (0, 1, 2), 1, 2, 2) == (0, 1, 2, 3)
    # swapping the two upper slots of the outer factor moves the window
    assert compose_permutations((0, 2, 1), (0, 1), 2, 2, 1) == (0, 2, 1)


def test_dual_pair():
    space = mixed_space(3)
    duals = space.dual_pair()
    # dual of o1 is o2, dual of o2 is -o1
    assert duals.dual[1] == (Fraction(0), Fraction(0), Fraction(1))
    assert duals.dual[2] == (Fraction(0), Fraction(-1), Fraction(0))
    with pytest.raises(PairingError):
        DualBasisPair(space, duals.primal, duals.primal)


def test_vowa_even_and_refusal():
    space = even_space(2)
    duals = space.dual_pair()
    assert vowa_check(space, duals, T(0, 1, 0), T(1, 1), 2, (0, 1, 1))
    mixed = mixed_space(3)
    with pytest.raises(ValueError):
        vowa_check(mixed, mixed.dual_pair(), T(0, 1), T(0, 0), 1, (0, 0))


def test_vowa_exhaustive_small():
    ok, checked, counterexample = vowa_exhaustive(mixed_space(2), max_arity=2)
    assert ok, counterexample
    assert checked > 0


def test_axioms_small_mixed():
    reports = es_axiom_check(mixed_space(2), max_arity=2)
    for name, report in reports.items():
        assert report.ok, f"{name}: {report.counterexample}"
        assert report.checked > 0


def test_axioms_small_even():
    reports = es_axiom_check(even_space(2), max_arity=2)
    assert all(r.ok for r in reports.values())
