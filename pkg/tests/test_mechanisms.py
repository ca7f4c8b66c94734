import json
import math

import pytest
from hypothesis import given, strategies as st

from ditkit import (
    AlreadySetError,
    ElementOutOfRangeError,
    Fitness,
    InvalidFitnessError,
    InvalidThresholdError,
    NonPositiveFitnessError,
    Partition,
    ResourceLimitError,
    Scheme,
    SwitchBank,
    SwitchIndexError,
    SwitchState,
    VariantSpace,
    compare_mechanisms,
    consistent_block,
    create,
    discrete,
    dit,
    dual,
    generative_block,
    identify,
    join,
    opposite,
    partition_from_equivalence,
    rst_closure,
    replay,
    run_generative,
    run_selectionist,
    scheme_relations,
    selection_survivors,
    set_switch,
    switch_partition,
    twenty_questions,
)
from ditkit.relations import PairRelation


class TestVariantSpace:
    def test_strings(self):
        space = VariantSpace(3)
        assert space.size == 8
        assert space.to_string(2) == "010"
        assert space.from_string("010") == 2

    def test_bit_indexing_from_rightmost(self):
        space = VariantSpace(3)
        assert space.bit(0b010, 1) == 0
        assert space.bit(0b010, 2) == 1
        assert space.bit(0b010, 3) == 0

    def test_bad_switch_index(self):
        with pytest.raises(SwitchIndexError):
            VariantSpace(3).bit(0, 4)
        with pytest.raises(SwitchIndexError):
            VariantSpace(3).bit(0, 0)


class TestSwitches:
    def test_neutral_bank_is_everything(self):
        bank = SwitchBank.neutral(3)
        assert bank.set_count() == 0
        assert len(consistent_block(bank)) == 8

    def test_setting_halves(self):
        bank = SwitchBank.neutral(3)
        bank = set_switch(bank, 2, 1)
        block = consistent_block(bank)
        assert len(block) == 4
        assert all(VariantSpace(3).bit(v, 2) == 1 for v in block)

    def test_already_set(self):
        bank = set_switch(SwitchBank.neutral(2), 1, 0)
        with pytest.raises(AlreadySetError):
            set_switch(bank, 1, 1)
        flipped = set_switch(bank, 1, 1, overwrite=True)
        assert flipped.state_of(1) == SwitchState.ONE

    def test_switch_partition_blocks(self):
        p = switch_partition(2, 1)
        # rightmost digit: 00,10 together vs 01,11 together
        assert p == Partition(4, (0, 1, 0, 1))
        p2 = switch_partition(2, 2)
        assert p2 == Partition(4, (0, 0, 1, 1))

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_join_of_all_switches_is_discrete(self, k):
        parts = [switch_partition(k, i) for i in range(1, k + 1)]
        total = parts[0]
        for p in parts[1:]:
            total = join(total, p)
        assert total == discrete(2 ** k)

    def test_switch_dits_cover_square(self):
        k = 3
        union = PairRelation.empty(2 ** k)
        for i in range(1, k + 1):
            union = union | dit(switch_partition(k, i))
        assert union == PairRelation.diagonal(2 ** k).complement()

    def test_limit(self):
        with pytest.raises(ResourceLimitError):
            switch_partition(11, 1)


class TestFitness:
    def test_uniform_and_peaked(self):
        f = Fitness.uniform(2)
        assert f.score(0) == f.score(3) == 1.0
        g = Fitness.peaked(2, 0b10, 0.5)
        assert g.score(2) == 1.5
        assert g.score(0) == 1.0
        assert g.argmax_set() == frozenset({2})

    def test_from_text(self):
        f = Fitness.from_text(2, "# comment\n00 1.0\n01 2.0\n10 1.0\n11 1.0\n")
        assert f.score(1) == 2.0

    def test_from_text_requires_coverage(self):
        with pytest.raises(InvalidFitnessError):
            Fitness.from_text(2, "00 1.0\n")

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveFitnessError):
            Fitness(1, (0.0, 1.0))
        with pytest.raises(NonPositiveFitnessError):
            Fitness(1, (math.inf, 1.0))

    def test_peaked_needs_positive_margin(self):
        with pytest.raises(InvalidFitnessError):
            Fitness.peaked(2, 0, 0.0)
        with pytest.raises(ElementOutOfRangeError):
            Fitness.peaked(2, 9, 1.0)


class TestSelectionist:
    def test_peak_survives_alone(self):
        trace = run_selectionist(3, Fitness.peaked(3, 0b010, 1.0), 0.0625, 100)
        assert selection_survivors(trace) == frozenset({0b010})

    def test_weights_conserved_each_step(self):
        trace = run_selectionist(3, Fitness.peaked(3, 5, 0.7), 0.05, 50)
        for step in trace.steps:
            total = sum(step.state["weights"].values())
            assert total == pytest.approx(1.0)

    def test_extinction_is_permanent_and_monotone(self):
        trace = run_selectionist(3, Fitness.peaked(3, 1, 0.9), 0.1, 50)
        seen: set[str] = set()
        for step in trace.steps:
            extinct = set(step.state["extinct"])
            assert seen <= extinct
            for name in extinct:
                assert step.state["weights"][name] == 0.0
            seen = extinct

    def test_top_variant_never_culled(self):
        trace = run_selectionist(2, Fitness.peaked(2, 3, 2.0), 0.2, 50)
        space = VariantSpace(2)
        for step in trace.steps:
            assert space.to_string(3) not in step.state["extinct"]

    def test_tie_keeps_both(self):
        scores = (2.0, 1.0, 2.0, 1.0)
        trace = run_selectionist(2, Fitness(2, scores), 0.1, 100)
        assert selection_survivors(trace) == frozenset({0, 2})

    def test_threshold_bounds(self):
        f = Fitness.uniform(2)
        with pytest.raises(InvalidThresholdError):
            run_selectionist(2, f, 0.0, 10)
        with pytest.raises(InvalidThresholdError):
            run_selectionist(2, f, 0.25, 10)
        with pytest.raises(InvalidThresholdError):
            run_selectionist(2, f, -0.1, 10)

    def test_fitness_universe_mismatch(self):
        with pytest.raises(InvalidFitnessError):
            run_selectionist(3, Fitness.uniform(2), 0.01, 10)

    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=15))
    def test_convergence_for_any_peak(self, k, target):
        target %= 2 ** k
        trace = run_selectionist(k, Fitness.peaked(k, target, 1.0), 0.5 / 2 ** k, 200)
        assert selection_survivors(trace) == frozenset({target})


class TestGenerative:
    def test_worked_scenario(self):
        trace = run_generative(3, [(1, 0), (2, 1), (3, 0)])
        sizes = [len(step.state["block"]) for step in trace.steps]
        assert sizes == [8, 4, 2, 1]
        assert trace.steps[1].state["block"] == ["000", "010", "100", "110"]
        assert generative_block(trace) == frozenset({0b010})

    def test_duplicate_switch_needs_overwrite(self):
        with pytest.raises(AlreadySetError):
            run_generative(2, [(1, 0), (1, 1)])
        trace = run_generative(2, [(1, 0), (1, 1)], overwrite=True)
        assert all(VariantSpace(2).bit(v, 1) == 1 for v in generative_block(trace))

    def test_events_recorded(self):
        trace = run_generative(2, [(2, 1)])
        assert trace.events() == [{"switch": 2, "value": "1"}]


class TestIdentify:
    def test_example(self):
        assert identify(3, [(0, 1)]) == Partition(3, (0, 0, 1))

    def test_out_of_range(self):
        with pytest.raises(ElementOutOfRangeError):
            identify(2, [(0, 5)])

    @given(st.integers(min_value=1, max_value=6), st.data())
    def test_matches_closure_route(self, n, data):
        pool = [(u, v) for u in range(n) for v in range(n)]
        pairs = data.draw(st.lists(st.sampled_from(pool), max_size=10))
        direct = identify(n, pairs)
        via_closure = partition_from_equivalence(
            rst_closure(PairRelation.of(n, pairs))
        )
        assert direct == via_closure


class TestCreate:
    def test_grows_one_at_a_time(self):
        trace = create(3, [2, 0, 2])
        sizes = [len(step.state["members"]) for step in trace.steps]
        assert sizes == [0, 1, 2, 2]
        assert trace.steps[3].event == {"add": 2, "duplicate": True}
        assert trace.final["members"] == [0, 2]

    def test_out_of_range(self):
        with pytest.raises(ElementOutOfRangeError):
            create(2, [3])


class TestTwentyQuestions:
    def test_full_answers_single_out(self):
        assert twenty_questions(3, [0, 1, 0]) == frozenset({0b010})

    def test_partial_answers(self):
        block = twenty_questions(3, [1])
        assert len(block) == 4
        assert all(VariantSpace(3).bit(v, 1) == 1 for v in block)

    def test_no_answers(self):
        assert len(twenty_questions(2, [])) == 4

    def test_too_many_answers(self):
        with pytest.raises(SwitchIndexError):
            twenty_questions(2, [0, 1, 0])


class TestCompare:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_agreement_for_every_target(self, k):
        for target in range(2 ** k):
            result = compare_mechanisms(k, target, 1.0)
            assert result.agreement
            assert selection_survivors(result.selectionist) == frozenset({target})
            assert generative_block(result.generative) == frozenset({target})

    def test_margin_must_be_positive(self):
        with pytest.raises(InvalidFitnessError):
            compare_mechanisms(2, 1, 0.0)

    def test_json_embeds_both_traces(self):
        result = compare_mechanisms(2, 3, 1.0)
        got = json.loads(result.to_json())
        assert got["agreement"] is True
        assert got["target"] == "11"
        assert got["selectionist"]["mechanism"] == "selectionist"
        assert got["selectionist"]["final"]["weights"]["11"] == 1.0
        assert got["generative"]["final"]["block"] == ["11"]


class TestReplay:
    def test_selectionist_replay_is_bit_exact(self):
        trace = run_selectionist(3, Fitness.peaked(3, 2, 1.0), 0.0625, 100)
        again = replay(trace)
        assert again.to_json() == trace.to_json()

    def test_generative_replay(self):
        trace = run_generative(3, [(1, 0), (2, 1), (3, 0)])
        assert replay(trace).to_json() == trace.to_json()

    def test_creationist_replay(self):
        trace = create(4, [1, 3, 1])
        assert replay(trace).to_json() == trace.to_json()


class TestSchemes:
    def test_signatures(self):
        rows = {r.scheme: r for r in scheme_relations()}
        assert rows[Scheme.SELECTIONIST].signature == "U->S"
        assert rows[Scheme.CREATIONIST].signature == "empty->S"
        assert rows[Scheme.IDENTIFICATION].signature == "1->pi"
        assert rows[Scheme.GENERATIVE].signature == "0->pi"

    def test_dual_swaps_element_and_distinction(self):
        assert dual(Scheme.SELECTIONIST) is Scheme.IDENTIFICATION
        assert dual(Scheme.CREATIONIST) is Scheme.GENERATIVE

    def test_opposite_swaps_start(self):
        assert opposite(Scheme.SELECTIONIST) is Scheme.CREATIONIST
        assert opposite(Scheme.IDENTIFICATION) is Scheme.GENERATIVE

    def test_involutions_commute(self):
        for s in Scheme:
            assert dual(dual(s)) is s
            assert opposite(opposite(s)) is s
            assert dual(opposite(s)) is opposite(dual(s))
