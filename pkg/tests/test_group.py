import random

import pytest

from markedpcp import group
from markedpcp.instances import CASE_SINGLE, Instance
from markedpcp.morphisms import NotMarkedError, apply, is_immersion
from markedpcp.oracle import BallSpec, enumerate_equaliser, image_ball
from markedpcp.words import GROUP, Alphabet, parse_word, proper_prefixes

from support import morphism, random_group_instance, random_immersion

DG = Alphabet(("x", "y", "z"), GROUP)


def _side_prefix_count(f):
    prefixes = set()
    for l in f.domain.signed_letters():
        prefixes |= proper_prefixes(f.image(l))
    return len(prefixes)


class TestPrefixComplexity:
    def test_worked_pair_is_sixteen(self, immersed_pair):
        assert group.prefix_complexity(immersed_pair) == 16
        assert _side_prefix_count(immersed_pair.g) == 10
        assert _side_prefix_count(immersed_pair.h) == 6

    def test_length_one_images_have_zero(self):
        sigma = Alphabet(("a", "b"), GROUP)
        f = morphism(sigma, DG, "x", "y")
        assert group.prefix_complexity(Instance(f, f)) == 0

    def test_reduced_pair_sides(self, immersed_pair):
        step = group.reduce_group_instance(immersed_pair)
        # the first summand is 2; the second follows the definition and
        # counts the six distinct proper prefixes on the other side
        assert _side_prefix_count(step.after.g) == 2
        assert _side_prefix_count(step.after.h) == 6
        assert group.prefix_complexity(step.after) == 8


class TestIterationBound:
    def test_group_values(self):
        sigma2 = Alphabet(("a", "b"), GROUP)
        delta3 = Alphabet(("x", "y", "z"), GROUP)
        f = morphism(sigma2, delta3, "x", "y")
        assert group.iteration_bound(Instance(f, f)) == 6**4

        one = Alphabet(("a",), GROUP)
        dl = Alphabet(("x",), GROUP)
        f1 = morphism(one, dl, "x")
        assert group.iteration_bound(Instance(f1, f1)) == 4

    def test_monoid_variant(self):
        from markedpcp.words import MONOID

        one = Alphabet(("a",), MONOID)
        d2 = Alphabet(("x", "y"), MONOID)
        f = morphism(one, d2, "x")
        assert group.iteration_bound(Instance(f, f)) == 9


class TestReduceGroupInstance:
    def test_worked_reduction(self, immersed_pair):
        step = group.reduce_group_instance(immersed_pair)
        sigma = immersed_pair.sigma
        assert step.after.sigma.symbols == ("p0", "p1")
        assert step.after.g.images == (parse_word(sigma, "a b^-1"), parse_word(sigma, "c"))
        assert step.after.h.images == (parse_word(sigma, "a b"), parse_word(sigma, "c a c"))
        assert step.after.delta == sigma

    def test_disjoint_first_letters_empty_the_alphabet(self):
        one = Alphabet(("a",), GROUP)
        step = group.reduce_group_instance(
            Instance(morphism(one, DG, "x"), morphism(one, DG, "y"))
        )
        assert len(step.after.sigma) == 0

    def test_non_immersion_rejected(self, unfoldable_map):
        with pytest.raises(NotMarkedError):
            group.reduce_group_instance(Instance(unfoldable_map, unfoldable_map))

    def test_monotonicity_on_random_instances(self):
        rng = random.Random(47)
        for _ in range(60):
            inst = random_group_instance(rng)
            step = group.reduce_group_instance(inst)
            assert group.prefix_complexity(step.after) <= group.prefix_complexity(inst)
            assert len(step.after.sigma) <= len(inst.sigma)


class TestSolvePair:
    def test_equal_morphisms_have_full_image(self):
        sigma = Alphabet(("a", "b"), GROUP)
        g = morphism(sigma, DG, "x y", "z")
        res = group.solve_pair(Instance(g, g))
        ball = BallSpec(4, GROUP)
        assert image_ball(res.embedding, ball) == enumerate_equaliser([g, g], ball)
        assert len(res.basis) == 2

    def test_disjoint_images_give_trivial_equaliser(self):
        one = Alphabet(("a",), GROUP)
        res = group.solve_pair(Instance(morphism(one, DG, "x"), morphism(one, DG, "y")))
        assert res.case == CASE_SINGLE
        assert res.basis == ()

    def test_worked_pair_against_the_oracle(self, immersed_pair):
        res = group.solve_pair(immersed_pair)
        ball = BallSpec(6, GROUP)
        assert image_ball(res.embedding, ball) == enumerate_equaliser(
            [immersed_pair.g, immersed_pair.h], ball
        )

    def test_embedding_is_an_immersion(self):
        rng = random.Random(53)
        for _ in range(30):
            inst = random_group_instance(rng)
            res = group.solve_pair(inst)
            assert is_immersion(res.embedding)
            assert len(res.basis) <= len(inst.sigma)
            for w in res.basis:
                assert apply(inst.g, w) == apply(inst.h, w)

    def test_oracle_matches_on_random_instances(self):
        rng = random.Random(59)
        for _ in range(15):
            inst = random_group_instance(rng, max_rank=2, max_len=3)
            res = group.solve_pair(inst)
            ball = BallSpec(5, GROUP)
            assert image_ball(res.embedding, ball) == enumerate_equaliser(
                [inst.g, inst.h], ball
            )

    def test_non_immersion_rejected(self, unfoldable_map):
        with pytest.raises(NotMarkedError):
            group.solve_pair(Instance(unfoldable_map, unfoldable_map))


class TestStrongEquivalence:
    def test_reduction_preserves_the_equaliser(self):
        rng = random.Random(61)
        for _ in range(25):
            inst = random_group_instance(rng, max_rank=2, max_len=3)
            step = group.reduce_group_instance(inst)
            radius = 5
            inner = enumerate_equaliser(
                [step.after.g, step.after.h], BallSpec(radius, GROUP)
            )
            mapped = [apply(step.g_prime, w) for w in inner]
            assert len(set(mapped)) == len(mapped)
            for image in mapped:
                assert apply(inst.g, image) == apply(inst.h, image)
            outer = enumerate_equaliser([inst.g, inst.h], BallSpec(radius, GROUP))
            assert set(outer) <= set(mapped)


class TestSolveSet:
    def test_two_morphisms_match_pair_solver(self, immersed_pair):
        res_set = group.solve_set(
            [immersed_pair.g, immersed_pair.h], immersed_pair.sigma, immersed_pair.delta
        )
        assert res_set == group.solve_pair(immersed_pair)

    def test_repeated_morphism(self, immersed_pair):
        g = immersed_pair.g
        res = group.solve_set([g, g], immersed_pair.sigma, immersed_pair.delta)
        ball = BallSpec(4, GROUP)
        assert image_ball(res.embedding, ball) == enumerate_equaliser([g], ball)

    def test_duplicate_member_changes_nothing(self, immersed_pair):
        g, h = immersed_pair.g, immersed_pair.h
        res = group.solve_set([g, h, h], immersed_pair.sigma, immersed_pair.delta)
        ball = BallSpec(6, GROUP)
        assert image_ball(res.embedding, ball) == image_ball(
            group.solve_pair(immersed_pair).embedding, ball
        )

    def test_three_way_intersection_against_oracle(self):
        rng = random.Random(67)
        for _ in range(10):
            sigma = Alphabet(("a", "b"), GROUP)
            delta = Alphabet(("x", "y", "z"), GROUP)
            family = [random_immersion(rng, sigma, delta, 3) for _ in range(3)]
            res = group.solve_set(family, sigma, delta)
            ball = BallSpec(5, GROUP)
            assert image_ball(res.embedding, ball) == enumerate_equaliser(family, ball)

    def test_needs_two(self, immersed_pair):
        with pytest.raises(ValueError):
            group.solve_set([immersed_pair.g], immersed_pair.sigma, immersed_pair.delta)
