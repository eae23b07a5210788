"""Control decisions, closed-loop stepping and verification."""
from __future__ import annotations

import pytest

from forcesynth import (
    Desynchronized,
    DisabledBySupervisor,
    LoopState,
    NotEligibleInPlant,
    decide,
    decide_at,
    initial_state,
    random_walk,
    replay,
    step,
    verify_closed_loop,
)
from forcesynth.control import DISABLE, FORCE
from forcesynth.random_models import corpus
from forcesynth.synthesis import MODE_FC, synthesize


@pytest.fixture(scope="module")
def blue(fig4_product):
    result = synthesize(fig4_product, MODE_FC)
    return result.supervisor, result.forcing_states


def loop_at(sup, plant, history) -> LoopState:
    return LoopState(plant.run(history), sup.run(history), tuple(history))


class TestDecide:
    def test_forcing_state(self, blue, fig4_product):
        sup, forcing = blue
        state = loop_at(sup, fig4_product, ("start_M1", "end_M1", "start_M1"))
        assert state.sup_state == "BI1"
        decision = decide(sup, fig4_product, state, forcing)
        assert decision.mode == FORCE
        assert decision.allowed == {"start_M2"}
        assert decision.preempted == {"end_M1"}
        assert decision.disabled == frozenset()

    def test_initial_state_disable(self, blue, fig4_product):
        sup, forcing = blue
        decision = decide(sup, fig4_product, initial_state(sup, fig4_product), forcing)
        assert decision.mode == DISABLE
        assert "start_M1" in decision.allowed
        assert decision.disabled == frozenset()
        assert decision.preempted == frozenset()

    def test_disable_mode_keeps_all_uncontrollables(self, blue, fig4_product):
        sup, forcing = blue
        decision = decide(sup, fig4_product, initial_state(sup, fig4_product), forcing)
        assert fig4_product.alphabet.uncontrollable <= decision.allowed

    def test_plainly_disabled_event(self, blue, fig4_product):
        # IB1 drops its controllable start_M1 without forcing
        sup, forcing = blue
        state = loop_at(
            sup, fig4_product,
            ("start_M1", "end_M1", "start_M2", "start_M1", "end_M1"),
        )
        assert state.sup_state == "IB1"
        decision = decide(sup, fig4_product, state, forcing)
        assert decision.mode == DISABLE
        assert decision.disabled == {"start_M1"}

    def test_no_forcible_continuation_means_disable(self, blue, fig4_product):
        # at II0 nothing forcible is kept, the first case applies
        sup, _ = blue
        decision = decide_at(sup, fig4_product, "II0", "II0")
        assert decision.mode == DISABLE

    def test_annotation_and_predicate_agree(self, blue, fig4_product, factory_plant):
        for plant in (fig4_product, factory_plant):
            result = synthesize(plant, MODE_FC)
            sup = result.supervisor
            for q in sup.states:
                assert decide_at(sup, plant, q, q, result.forcing_states) == decide_at(
                    sup, plant, q, q
                )

    def test_annotation_and_predicate_agree_on_corpus(self):
        for plant in corpus(99, 40, density=0.6, controllable_prob=0.35,
                            forcible_prob=0.7, marked_prob=0.4):
            result = synthesize(plant, MODE_FC)
            if result.supervisor is None:
                continue
            sup = result.supervisor
            for q in sup.states:
                assert decide_at(sup, plant, q, q, result.forcing_states) == decide_at(
                    sup, plant, q, q
                )

    def test_desynchronized_rejected(self, blue, fig4_product):
        sup, forcing = blue
        bogus = LoopState("II0", "II0", ("start_M1",))
        with pytest.raises(Desynchronized, match="desynchronized"):
            decide(sup, fig4_product, bogus, forcing)


class TestStep:
    def test_forced_event_advances(self, blue, fig4_product):
        sup, forcing = blue
        state = loop_at(sup, fig4_product, ("start_M1", "end_M1", "start_M1"))
        nxt = step(sup, fig4_product, state, "start_M2", forcing)
        assert nxt.plant_state == "BB0"
        assert nxt.sup_state == "BB0"
        assert nxt.history[-1] == "start_M2"

    def test_preempted_event_rejected(self, blue, fig4_product):
        sup, forcing = blue
        state = loop_at(sup, fig4_product, ("start_M1", "end_M1", "start_M1"))
        with pytest.raises(DisabledBySupervisor, match="disabled by supervisor"):
            step(sup, fig4_product, state, "end_M1", forcing)

    def test_plain_step(self, blue, fig4_product):
        sup, forcing = blue
        nxt = step(sup, fig4_product, initial_state(sup, fig4_product), "start_M1", forcing)
        assert nxt.plant_state == "BI0"

    def test_allowed_but_not_eligible(self, blue, fig4_product):
        # end_M2 is uncontrollable, hence allowed, but the plant cannot do it
        sup, forcing = blue
        state = initial_state(sup, fig4_product)
        with pytest.raises(NotEligibleInPlant, match="not eligible in plant"):
            step(sup, fig4_product, state, "end_M2", forcing)


class TestVerifyClosedLoop:
    def test_manufacturing_blue(self, blue, fig4_product):
        sup, forcing = blue
        report = verify_closed_loop(sup, fig4_product, 8, forcing)
        assert report.holds

    def test_small_factory(self, factory_plant):
        result = synthesize(factory_plant, MODE_FC)
        assert verify_closed_loop(
            result.supervisor, factory_plant, 8, result.forcing_states
        ).holds

    def test_corpus(self):
        checked = 0
        for plant in corpus(7, 30, density=0.6, controllable_prob=0.35,
                            forcible_prob=0.7, marked_prob=0.4):
            result = synthesize(plant, MODE_FC)
            if result.supervisor is None:
                continue
            depth = min(len(plant.states) + 3, 8)
            assert verify_closed_loop(
                result.supervisor, plant, depth, result.forcing_states
            ).holds
            checked += 1
        assert checked >= 10

    def test_broken_supervisor_detected(self, fig4_product, blue_supervisor, mfg_alphabet):
        # a supervisor that silently drops an uncontrollable continuation
        # without forcing generates loop strings it cannot follow
        from forcesynth import induced_subautomaton

        gone = {"II2", "IB2"}
        broken = induced_subautomaton(
            fig4_product,
            [q for q in fig4_product.states if q not in gone],
            {
                k: v for k, v in fig4_product.transitions.items()
                if v not in gone and k[0] not in gone
            },
        )
        report = verify_closed_loop(broken, fig4_product, 7)
        assert not report.holds
        assert any(w.clause == "loop-only-string" for w in report.witnesses)


class TestTranscripts:
    def test_replay_matches_hand_trace(self, blue, fig4_product):
        sup, forcing = blue
        transcript = replay(
            sup, fig4_product, ["start_M1", "end_M1", "start_M1", "start_M2"], forcing
        )
        assert [e.after.plant_state for e in transcript] == ["BI0", "II1", "BI1", "BB0"]
        assert transcript[3].decision.mode == FORCE

    def test_replay_rejects_bad_event(self, blue, fig4_product):
        sup, forcing = blue
        with pytest.raises(DisabledBySupervisor):
            replay(sup, fig4_product, ["start_M1", "end_M1", "start_M1", "end_M1"], forcing)

    def test_random_walk_deterministic(self, blue, fig4_product):
        sup, forcing = blue
        one = random_walk(sup, fig4_product, 20, seed=42, forcing_states=forcing)
        two = random_walk(sup, fig4_product, 20, seed=42, forcing_states=forcing)
        assert one == two
        other = random_walk(sup, fig4_product, 20, seed=43, forcing_states=forcing)
        assert [e.event for e in other] != [e.event for e in one] or one == other

    def test_walk_stays_inside_supervisor(self, blue, fig4_product):
        sup, forcing = blue
        for entry in random_walk(sup, fig4_product, 40, seed=7, forcing_states=forcing):
            assert entry.after.sup_state in sup.state_set
            if entry.decision.mode == FORCE:
                assert entry.event in fig4_product.alphabet.forcible
