"""Command-line behavior: formats, reports, exit codes, determinism."""

import json

import pytest

from tentbits.cli import EXIT_ALL_TESTS_FAILED, EXIT_OK, EXIT_USAGE, main
from tentbits.core import MapConfig, iterate, output_stream


class TestGen:
    def test_csv_rows(self, tmp_path, capsys):
        out = tmp_path / "run.csv"
        code = main(["gen", "--bits", "8", "--seed", "0x40", "--n", "1",
                     "--format", "csv", "--out", str(out)])
        assert code == EXIT_OK
        assert out.read_text().splitlines() == [
            "index,word,value",
            "0,0x40,0.25098039215686274",
            "1,0x80,0.5019607843137255",
        ]

    def test_hex_trajectory(self, capsys):
        code = main(["gen", "--bits", "4", "--seed", "0x8", "--n", "7",
                     "--format", "hex"])
        assert code == EXIT_OK
        captured = capsys.readouterr()
        assert captured.out.split() == ["8", "E", "3", "6", "D", "5", "B", "8"]

    def test_degenerate_seed_warns_but_succeeds(self, capsys):
        code = main(["gen", "--bits", "8", "--seed", "0x00", "--n", "5"])
        assert code == EXIT_OK
        captured = capsys.readouterr()
        assert "degenerate seed" in captured.err
        assert captured.out.split() == ["0"] * 6

    def test_bits_format_taps_msb(self, capsys):
        code = main(["gen", "--bits", "8", "--seed", "0xC0", "--n", "3"])
        assert code == EXIT_OK
        expected = output_stream(iterate(MapConfig(width=8), 0xC0, 3), 8)
        assert capsys.readouterr().out.split() == [str(b) for b in expected]

    def test_lsb_tap(self, capsys):
        code = main(["gen", "--bits", "8", "--seed", "0xC0", "--n", "3",
                     "--tap", "lsb"])
        assert code == EXIT_OK
        expected = output_stream(iterate(MapConfig(width=8), 0xC0, 3), 8, tap="lsb")
        assert capsys.readouterr().out.split() == [str(b) for b in expected]

    def test_raw_packs_bits_msb_first(self, tmp_path):
        out = tmp_path / "run.raw"
        code = main(["gen", "--bits", "8", "--seed", "0x40", "--n", "9",
                     "--format", "raw", "--out", str(out)])
        assert code == EXIT_OK
        bits = output_stream(iterate(MapConfig(width=8), 0x40, 9), 8)
        first = int("".join(map(str, bits[:8])), 2)
        second = int("".join(map(str, bits[8:])) + "000000", 2)
        assert out.read_bytes() == bytes([first, second])

    def test_unperturbed_variant(self, capsys):
        code = main(["gen", "--bits", "8", "--seed", "0x55", "--n", "4",
                     "--format", "hex", "--variant", "unperturbed"])
        assert code == EXIT_OK
        expected = iterate(MapConfig(width=8, perturbed=False), 0x55, 4)
        got = [int(line, 16) for line in capsys.readouterr().out.split()]
        assert got == expected

    def test_identical_invocations_identical_files(self, tmp_path):
        args = ["gen", "--bits", "12", "--seed", "0x5A3", "--n", "500",
                "--format", "csv"]
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        assert main(args + ["--out", str(out_a)]) == EXIT_OK
        assert main(args + ["--out", str(out_b)]) == EXIT_OK
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_random_seed_is_echoed(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code = main(["gen", "--bits", "8", "--seed", "random", "--n", "2",
                     "--format", "csv", "--out", str(out)])
        assert code == EXIT_OK
        assert "seed: 0x" in capsys.readouterr().err

    def test_bad_width_exits_2(self, capsys):
        assert main(["gen", "--bits", "1", "--seed", "0x0", "--n", "1"]) == EXIT_USAGE

    def test_oversized_seed_exits_2(self, capsys):
        assert main(["gen", "--bits", "4", "--seed", "0x10", "--n", "1"]) == EXIT_USAGE

    def test_unparsable_seed_exits_2(self, capsys):
        assert main(["gen", "--bits", "4", "--seed", "pi", "--n", "1"]) == EXIT_USAGE

    def test_unwritable_path_exits_2(self, tmp_path, capsys):
        missing_dir = tmp_path / "nope" / "run.csv"
        code = main(["gen", "--bits", "8", "--seed", "0x40", "--n", "1",
                     "--format", "csv", "--out", str(missing_dir)])
        assert code == EXIT_USAGE


class TestNetlistCommand:
    def test_stats_line(self, capsys):
        assert main(["netlist", "--bits", "8", "--stats"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "XOR2 8, DFF 8, MUX 1, total 17"

    def test_stats_64_bit_total(self, capsys):
        assert main(["netlist", "--bits", "64", "--stats"]) == EXIT_OK
        assert "total 129" in capsys.readouterr().out

    def test_export_round_trips(self, tmp_path, capsys):
        out = tmp_path / "circuit.txt"
        assert main(["netlist", "--bits", "6", "--export", "--out", str(out)]) == EXIT_OK
        from tentbits.netlist import build_tent_netlist, export_text, parse_text

        text = out.read_text()
        assert text == export_text(build_tent_netlist(6))
        assert parse_text(text).width.k == 6

    @pytest.mark.parametrize(
        "bits,seed,fmt",
        [
            ("4", "0x8", "hex"),
            ("8", "0x40", "csv"),
            ("16", "0x5A3C", "raw"),
            ("16", "0x5A3C", "bits"),
        ],
    )
    def test_simulate_matches_gen(self, tmp_path, bits, seed, fmt):
        shared = ["--bits", bits, "--seed", seed, "--n", "200", "--format", fmt]
        gen_out = tmp_path / "word.txt"
        sim_out = tmp_path / "gate.txt"
        assert main(["gen", *shared, "--out", str(gen_out)]) == EXIT_OK
        assert main(["netlist", *shared, "--simulate", "--out", str(sim_out)]) == EXIT_OK
        assert gen_out.read_bytes() == sim_out.read_bytes()

    def test_simulate_requires_seed_and_n(self, capsys):
        assert main(["netlist", "--bits", "8", "--simulate"]) == EXIT_USAGE

    def test_no_action_exits_2(self, capsys):
        assert main(["netlist", "--bits", "8"]) == EXIT_USAGE

    def test_width_out_of_range_exits_2(self, capsys):
        assert main(["netlist", "--bits", "65", "--stats"]) == EXIT_USAGE


class TestAnalyze:
    def test_report_shape_and_values(self, tmp_path, capsys):
        code = main(["analyze", "--bits", "16", "--seed", "0x5A3C", "--n", "4096",
                     "--tests", "entropy,histogram,return-map",
                     "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["width"] == 16
        assert report["seed"] == "0x5A3C"
        assert report["variant"] == "perturbed"
        assert report["backend"] == "word"
        names = [entry["test"] for entry in report["tests"]]
        assert names == ["entropy", "histogram", "return-map"]
        entropy = report["tests"][0]
        assert entropy["value"] > 0.99
        assert sum(entropy["details"]["bit_counts"]) == 4096
        assert (tmp_path / "histogram.csv").exists()
        assert (tmp_path / "return_map.csv").exists()

    def test_autocorr_default_is_bit_stream(self, tmp_path, capsys):
        code = main(["analyze", "--bits", "16", "--seed", "0x5A3C", "--n", "8192",
                     "--tests", "autocorr", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "report.json").read_text())
        entry = report["tests"][0]
        assert entry["parameters"]["series"] == "bits"
        assert entry["details"]["r0"] == 1.0
        assert entry["value"] < 0.05

    def test_autocorr_on_decoded_values(self, tmp_path, capsys):
        code = main(["analyze", "--bits", "16", "--seed", "0x5A3C", "--n", "8192",
                     "--tests", "autocorr", "--autocorr-series", "values",
                     "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "report.json").read_text())
        # the decoded series carries a structural spike at lag k-2
        assert report["tests"][0]["value"] > 0.05

    def test_failing_test_gets_error_entry(self, tmp_path, capsys):
        code = main(["analyze", "--bits", "16", "--seed", "0x5A3C", "--n", "500",
                     "--tests", "lyapunov,entropy", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK  # entropy still succeeds
        report = json.loads((tmp_path / "report.json").read_text())
        by_name = {entry["test"]: entry for entry in report["tests"]}
        assert "error" in by_name["lyapunov"]
        assert "value" in by_name["entropy"]

    def test_all_failures_exit_3(self, tmp_path, capsys):
        code = main(["analyze", "--bits", "16", "--seed", "0x5A3C", "--n", "500",
                     "--tests", "lyapunov", "--out-dir", str(tmp_path)])
        assert code == EXIT_ALL_TESTS_FAILED

    def test_unknown_test_exits_2(self, tmp_path, capsys):
        code = main(["analyze", "--bits", "16", "--seed", "0x5A3C", "--n", "100",
                     "--tests", "spectral", "--out-dir", str(tmp_path)])
        assert code == EXIT_USAGE

    def test_netlist_backend_matches_word(self, tmp_path, capsys):
        word_dir = tmp_path / "word"
        gate_dir = tmp_path / "gate"
        shared = ["analyze", "--bits", "8", "--seed", "0x40", "--n", "2048",
                  "--tests", "entropy,histogram"]
        assert main(shared + ["--out-dir", str(word_dir)]) == EXIT_OK
        assert main(shared + ["--backend", "netlist", "--out-dir", str(gate_dir)]) == EXIT_OK
        word_report = json.loads((word_dir / "report.json").read_text())
        gate_report = json.loads((gate_dir / "report.json").read_text())
        assert word_report["tests"] == gate_report["tests"]

    def test_determinism(self, tmp_path, capsys):
        dir_a = tmp_path / "a"
        dir_b = tmp_path / "b"
        shared = ["analyze", "--bits", "16", "--seed", "0xBEEF", "--n", "4096",
                  "--tests", "entropy,autocorr,histogram"]
        assert main(shared + ["--out-dir", str(dir_a)]) == EXIT_OK
        assert main(shared + ["--out-dir", str(dir_b)]) == EXIT_OK
        assert (dir_a / "report.json").read_bytes() == (dir_b / "report.json").read_bytes()
        assert (dir_a / "autocorr.csv").read_bytes() == (dir_b / "autocorr.csv").read_bytes()


class TestCycles:
    def test_single_seed_period(self, capsys):
        assert main(["cycles", "--bits", "4", "--seed", "0x8"]) == EXIT_OK
        captured = capsys.readouterr()
        assert "0x8,0,7,false" in captured.out
        assert "max period: 7" in captured.err

    def test_fixed_point_seed(self, capsys):
        assert main(["cycles", "--bits", "8", "--seed", "0x00"]) == EXIT_OK
        captured = capsys.readouterr()
        assert "0x00,0,1,true" in captured.out

    def test_exhaustive_summary(self, capsys):
        assert main(["cycles", "--bits", "4", "--exhaustive"]) == EXIT_OK
        captured = capsys.readouterr()
        assert "zero-reaching seeds: 2" in captured.err
        assert len(captured.out.splitlines()) == 17  # header + 16 seeds

    def test_exhaustive_to_file(self, tmp_path, capsys):
        out = tmp_path / "cycles.csv"
        assert main(["cycles", "--bits", "4", "--exhaustive", "--out", str(out)]) == EXIT_OK
        assert out.read_text().splitlines()[0] == "seed,transient,period,reaches_zero"

    def test_exhaustive_width_bound(self, capsys):
        assert main(["cycles", "--bits", "24", "--exhaustive"]) == EXIT_USAGE

    def test_requires_mode(self, capsys):
        assert main(["cycles", "--bits", "8"]) == EXIT_USAGE


class TestCompare:
    def test_published_rows(self, capsys):
        assert main(["compare", "16", "32", "64"]) == EXIT_OK
        out = capsys.readouterr().out
        lines = [" ".join(line.split()) for line in out.splitlines()]
        assert "this work 16 33 2.063" in lines
        assert "this work 32 65 2.031" in lines
        assert "this work 64 129 2.016" in lines
        assert "Khani & Ahmadi (2013) 10 55 5.500" in lines
        assert "Sreenath & Narayanan (2018) 32 161 5.031" in lines
        assert "Sreenath & Narayanan (2018) 64 321 5.016" in lines

    def test_default_widths(self, capsys):
        assert main(["compare"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "2.063" in out and "2.031" in out and "2.016" in out

    def test_eight_bit_ratio(self, capsys):
        assert main(["compare", "8"]) == EXIT_OK
        assert "this work 8 17 2.125" in [
            " ".join(line.split()) for line in capsys.readouterr().out.splitlines()
        ]

    def test_width_out_of_range(self, capsys):
        assert main(["compare", "70"]) == EXIT_USAGE

    def test_printed_ratio_matches_exact_ratio(self, capsys):
        # three printed decimals stay within 5e-4 of elements/bits; the
        # bound is tight at half-ulp cases, so compare in exact rationals
        from fractions import Fraction

        assert main(["compare", *map(str, range(2, 65))]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()[1:]
        for line in lines:
            parts = line.split()
            bits, elements = int(parts[-3]), int(parts[-2])
            ratio = Fraction(parts[-1])
            assert abs(ratio - Fraction(elements, bits)) <= Fraction(5, 10_000)


def test_usage_error_exits_2(capsys):
    assert main(["gen", "--bits", "8"]) == EXIT_USAGE  # missing required args


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate"]) == EXIT_USAGE
