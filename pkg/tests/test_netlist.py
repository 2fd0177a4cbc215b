"""Circuit-model tests: census, structure, simulation, text round-trip."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tentbits.core import BitWidth, MapConfig, iterate
from tentbits.netlist import (
    DFF,
    MUX,
    XOR2,
    Element,
    Netlist,
    SimState,
    StructuralError,
    build_tent_netlist,
    element_stats,
    export_text,
    parse_text,
    run,
    simulate_cycle,
    validate_structure,
)


class TestCensus:
    def test_eight_bit_counts(self):
        stats = element_stats(build_tent_netlist(8))
        assert stats.counts == {XOR2: 8, DFF: 8, MUX: 1}
        assert stats.total == 17

    def test_smallest_instance(self):
        stats = element_stats(build_tent_netlist(2))
        assert stats.counts == {XOR2: 2, DFF: 2, MUX: 1}
        assert stats.total == 5

    @pytest.mark.parametrize("k,total", [(16, 33), (32, 65), (64, 129)])
    def test_published_totals(self, k, total):
        assert element_stats(build_tent_netlist(k)).total == total

    @pytest.mark.parametrize("k", range(2, 65))
    def test_two_k_plus_one(self, k):
        assert element_stats(build_tent_netlist(k)).total == 2 * k + 1

    def test_describe_formats_census(self):
        assert element_stats(build_tent_netlist(8)).describe() == (
            "XOR2 8, DFF 8, MUX 1, total 17"
        )

    def test_unperturbed_variant_drops_one_gate(self):
        stats = element_stats(build_tent_netlist(8, perturbed=False))
        assert stats.counts[XOR2] == 7
        assert stats.total == 16


class TestStructure:
    @pytest.mark.parametrize("k", (2, 3, 8, 16, 24))
    def test_built_netlists_validate(self, k):
        validate_structure(build_tent_netlist(k))
        validate_structure(build_tent_netlist(k, perturbed=False))

    def test_double_driver_rejected(self):
        circuit = build_tent_netlist(4)
        clash = Element("dup", XOR2, ("b0", "b1"), ("c1",))  # c1 already driven
        bad = Netlist(
            width=circuit.width,
            elements=circuit.elements + (clash,),
            nets=circuit.nets,
            seed_inputs=circuit.seed_inputs,
            load_select=circuit.load_select,
        )
        with pytest.raises(StructuralError, match="driven by both"):
            validate_structure(bad)

    def test_undriven_net_rejected(self):
        circuit = build_tent_netlist(4)
        floating = Element("orphan", XOR2, ("nowhere", "b1"), ("x1",))
        bad = Netlist(
            width=circuit.width,
            elements=circuit.elements + (floating,),
            nets=circuit.nets + ("nowhere", "x1"),
            seed_inputs=circuit.seed_inputs,
            load_select=circuit.load_select,
        )
        with pytest.raises(StructuralError, match="no driver"):
            validate_structure(bad)

    def test_combinational_cycle_rejected(self):
        circuit = build_tent_netlist(4)
        # two XORs feeding each other with no flip-flop in between
        loop_a = Element("loopa", XOR2, ("b0", "y2"), ("y1",))
        loop_b = Element("loopb", XOR2, ("b1", "y1"), ("y2",))
        bad = Netlist(
            width=circuit.width,
            elements=circuit.elements + (loop_a, loop_b),
            nets=circuit.nets + ("y1", "y2"),
            seed_inputs=circuit.seed_inputs,
            load_select=circuit.load_select,
        )
        with pytest.raises(StructuralError, match="combinational cycle"):
            validate_structure(bad)

    def test_element_arity_checked(self):
        with pytest.raises(StructuralError):
            Element("bad", XOR2, ("a",), ("b",))
        with pytest.raises(StructuralError):
            Element("bad", DFF, ("a", "b"), ("c",))
        with pytest.raises(StructuralError):
            Element("bad", "NAND", ("a", "b"), ("c",))

    def test_every_loop_crosses_a_flip_flop(self):
        # the register feedback exists, yet the combinational order resolves
        circuit = build_tent_netlist(8)
        validate_structure(circuit)  # would raise if the cut failed


class TestSimulation:
    def test_load_overrides_state(self):
        circuit = build_tent_netlist(8)
        state = SimState.reset(8)
        loaded = simulate_cycle(circuit, state, load=True, seed=0xA5)
        assert loaded.word == 0xA5
        assert loaded.cycle == 1

    def test_single_run_cycle_matches_word_model(self):
        circuit = build_tent_netlist(8)
        state = simulate_cycle(circuit, SimState.reset(8), load=True, seed=64)
        advanced = simulate_cycle(circuit, state, load=False)
        assert advanced.word == 128

    def test_four_bit_hand_case(self):
        circuit = build_tent_netlist(4)
        state = simulate_cycle(circuit, SimState.reset(4), load=True, seed=0b1000)
        advanced = simulate_cycle(circuit, state, load=False)
        assert advanced.word == 0b1110

    def test_run_seven_step_cycle(self):
        assert run(build_tent_netlist(4), 0b1000, 7) == [8, 14, 3, 6, 13, 5, 11, 8]

    def test_run_fixed_point(self):
        assert run(build_tent_netlist(8), 0, 2) == [0, 0, 0]

    def test_run_upper_branch(self):
        assert run(build_tent_netlist(8), 192, 1) == [192, 126]

    def test_run_is_deterministic(self):
        circuit = build_tent_netlist(8)
        assert run(circuit, 0x5A, 200) == run(circuit, 0x5A, 200)

    @given(st.integers(2, 12), st.randoms())
    @settings(max_examples=40, deadline=None)
    def test_run_matches_iterate(self, k, rnd):
        seed = rnd.randrange(1 << k)
        circuit = build_tent_netlist(k)
        config = MapConfig(width=BitWidth(k))
        assert run(circuit, seed, 50) == iterate(config, seed, 50)

    @pytest.mark.parametrize("seed", (0, 1, 77, 200, 255))
    def test_unperturbed_run_matches_word_model(self, seed):
        circuit = build_tent_netlist(8, perturbed=False)
        config = MapConfig(width=8, perturbed=False)
        assert run(circuit, seed, 300) == iterate(config, seed, 300)

    def test_mismatched_state_rejected(self):
        circuit = build_tent_netlist(8)
        with pytest.raises(ValueError):
            simulate_cycle(circuit, SimState.reset(4), load=False)

    def test_oversized_seed_rejected(self):
        with pytest.raises(ValueError):
            run(build_tent_netlist(4), 16, 1)


class TestTextFormat:
    def test_header_and_line_shape(self):
        text = export_text(build_tent_netlist(4))
        lines = text.strip().splitlines()
        assert lines[0] == "WIDTH 4"
        assert lines[1].split() == ["XOR2", "cmpl1", "c1", "b0", "b1"]
        kinds = [line.split()[0] for line in lines[1:]]
        assert kinds.count("XOR2") == 4
        assert kinds.count("DFF") == 4
        assert kinds.count("MUX") == 1

    def test_round_trip_preserves_structure(self):
        original = build_tent_netlist(8)
        text = export_text(original)
        rebuilt = parse_text(text)
        assert rebuilt.width == original.width
        assert rebuilt.elements == original.elements
        assert rebuilt.seed_inputs == original.seed_inputs
        assert rebuilt.load_select == original.load_select
        assert export_text(rebuilt) == text

    def test_round_trip_simulates_identically(self):
        original = build_tent_netlist(6)
        rebuilt = parse_text(export_text(original))
        assert run(rebuilt, 0b101101 & 0x3F, 100) == run(original, 0b101101 & 0x3F, 100)

    def test_unperturbed_round_trip_keeps_zero_net(self):
        original = build_tent_netlist(5, perturbed=False)
        rebuilt = parse_text(export_text(original))
        assert rebuilt.zero_nets == ("zero",)
        assert run(rebuilt, 13, 60) == run(original, 13, 60)

    def test_missing_header_rejected(self):
        with pytest.raises(StructuralError, match="WIDTH"):
            parse_text("XOR2 g1 c b a\n")

    def test_short_line_rejected(self):
        with pytest.raises(StructuralError, match="short element line"):
            parse_text("WIDTH 4\nXOR2 g1 out\n")

    def test_multiple_muxes_rejected(self):
        base = export_text(build_tent_netlist(2))
        extra = "MUX mux2 q0,q1 load seed0 seed1 c1 p\n"
        with pytest.raises(StructuralError, match="exactly one MUX"):
            parse_text(base + extra)
