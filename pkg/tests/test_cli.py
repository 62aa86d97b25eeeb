import json
import math

import pytest

from cylmeasure import jsonio
from cylmeasure.cli import main
from cylmeasure.errors import InputError
from cylmeasure.measure_core import Interval
from cylmeasure.sequences import ConstantPlusPower, Geometric, Prefixed

CONST1 = '{"constant": {"rho": 1.0}}'
CONST2 = '{"constant": {"rho": 2.0}}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_envelope(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestJsonDecoding:
    def test_decay_round_trip_variants(self):
        docs = [
            {"constant": {"rho": 1.5}},
            {"power": {"c": 1.0, "p": 2.0}},
            {"geometric": {"c": 1.0, "q": 0.5}},
            {"constant_plus_power": {"base": 1.0, "c": 1.0, "p": 1.0}},
            {"prefixed": {"prefix": [2.0, 3.0], "tail": {"constant": {"rho": 1.0}}}},
            {"tabulated": {"values": [1.0, 0.5]}},
        ]
        decoded = [jsonio.decode_decay(d) for d in docs]
        assert isinstance(decoded[2], Geometric)
        assert isinstance(decoded[3], ConstantPlusPower)
        assert isinstance(decoded[4], Prefixed)

    def test_unknown_variant_names_path(self):
        with pytest.raises(InputError, match="cov.gauss"):
            jsonio.decode_decay({"gauss": {"rho": 1.0}})

    def test_unknown_key_names_path(self):
        with pytest.raises(InputError, match="cov.constant.sigma"):
            jsonio.decode_decay({"constant": {"rho": 1.0, "sigma": 2.0}})

    def test_missing_key_names_path(self):
        with pytest.raises(InputError, match="cov.power.p"):
            jsonio.decode_decay({"power": {"c": 1.0}})

    def test_interval_infinities_as_strings(self):
        cyl = jsonio.decode_cylinder(
            {"base": [{"index": 3, "boxes": [["-inf", 0.0]]}]}
        )
        assert cyl.base[0][1][0] == Interval(-math.inf, 0.0)

    def test_bad_infinity_string_rejected(self):
        with pytest.raises(InputError, match="expected a number"):
            jsonio.decode_cylinder(
                {"base": [{"index": 1, "boxes": [["infinity", 0.0]]}]}
            )

    def test_spec_example_document(self):
        rule = jsonio.decode_measure_spec({"identical": {"gaussian": {"rho": 1.0}}})
        cyl = jsonio.decode_cylinder(
            {"base": [{"index": 1, "boxes": [[0.0, 0.5]]}]}
        )
        assert rule.component(7).rho == 1.0
        assert cyl.indices == (1,)

    def test_encode_handles_infinities_and_complex(self):
        assert jsonio.encode_value(math.inf) == "inf"
        assert jsonio.encode_value(-math.inf) == "-inf"
        assert jsonio.encode_value(1 + 2j) == {"re": 1.0, "im": 2.0}


class TestCliSubcommands:
    def test_moment_wick_payload(self, capsys):
        env = run_envelope(
            capsys, "moment", "--cov", CONST1, "--vectors", "e1,e1,e1,e1"
        )
        assert env["payload"]["moment"] == 3.0
        assert env["subcommand"] == "moment"

    def test_moment_with_mc_oracle(self, capsys):
        env = run_envelope(
            capsys,
            "moment",
            "--cov", CONST1,
            "--vectors", "e1,e1",
            "--mc-samples", "50000",
            "--seed", "3",
        )
        mc = env["payload"]["mc"]
        assert abs(mc["estimate"] - 1.0) < 5 * mc["standard_error"]
        assert mc["seed"] == 3

    def test_equivalence_white_noise(self, capsys):
        env = run_envelope(
            capsys, "equivalence", "--cov-a", CONST1, "--cov-b", CONST2
        )
        assert env["payload"]["verdict"] == "singular"

    def test_kernel_at_zero(self, capsys):
        env = run_envelope(
            capsys, "kernel", "--spec", '{"massive_free_1d": {"m": 1.0}}', "--at", "0"
        )
        assert env["payload"]["value"] == 0.5

    def test_kernel_regularity(self, capsys):
        env = run_envelope(
            capsys, "kernel", "--spec", '{"white_noise": {"sigma": 1.0}}', "--regularity"
        )
        assert env["payload"]["regularity"] == "nowhere-signed-measure"

    def test_kernel_fourier_numeric_failure_exits_3(self, capsys):
        code, _, err = run_cli(
            capsys, "kernel", "--fourier", "1.0", "0.0", "--cutoff", "10", "--tol", "1e-9"
        )
        assert code == 3
        assert "numeric failure" in err

    def test_product_cylinder(self, capsys):
        env = run_envelope(
            capsys,
            "product",
            "--spec", '{"identical": {"uniform": {"a": 0.0, "b": 1.0}}}',
            "--cylinder",
            '{"base": [{"index": 1, "boxes": [[0.0, 0.5]]}, {"index": 2, "boxes": [[0.0, 0.5]]}]}',
        )
        assert env["payload"]["probability"] == 0.25

    def test_product_countable_tail(self, capsys):
        env = run_envelope(
            capsys,
            "product",
            "--spec", '{"identical": {"uniform": {"a": 0.0, "b": 1.0}}}',
            "--tail", '{"one_minus_geometric": {"c": 1.0, "q": 0.5}}',
        )
        assert abs(env["payload"]["value"] - 0.288788) < 1e-6
        assert env["payload"]["verdict"] == "converged"

    def test_consistency_subcommand(self, capsys):
        doc = json.dumps(
            [
                {
                    "indices": [1],
                    "cells": [
                        {"boxes": [[["-inf", 0.0]]], "p": 0.5},
                        {"boxes": [[[0.0, "inf"]]], "p": 0.5},
                    ],
                },
                {
                    "indices": [1, 2],
                    "cells": [
                        {"boxes": [[["-inf", 0.0]], [["-inf", "inf"]]], "p": 0.5},
                        {"boxes": [[[0.0, "inf"]], [["-inf", "inf"]]], "p": 0.5},
                    ],
                },
            ]
        )
        env = run_envelope(capsys, "consistency", "--marginals", doc)
        assert env["payload"]["consistent"] is True

    def test_shift_admissible(self, capsys):
        env = run_envelope(
            capsys,
            "shift-admissible",
            "--cov", CONST1,
            "--shift", '{"power": {"c": 1.0, "p": 1.0}}',
        )
        assert env["payload"]["admissible"] is True

    def test_shift_admissible_tabulated_is_input_error(self, capsys):
        code, _, err = run_cli(
            capsys,
            "shift-admissible",
            "--cov", CONST1,
            "--shift", '{"tabulated": {"values": [1.0]}}',
        )
        assert code == 2
        assert "tail" in err

    def test_support_with_mc_trace(self, capsys):
        env = run_envelope(
            capsys,
            "support",
            "--cov", CONST1,
            "--weights", '{"power": {"c": 1.0, "p": 1.0}}',
            "--mc", "400", "150",
            "--seed", "5",
        )
        assert env["payload"]["report"]["verdict"] == "supported"
        assert env["payload"]["mc"]["kind"] == "plateau"

    def test_hs_check(self, capsys):
        env = run_envelope(
            capsys, "hs-check", "--weights", '{"power": {"c": 1.0, "p": 1.0}}'
        )
        assert env["payload"]["hilbert_schmidt"] is True

    def test_bohr_independence(self, capsys):
        env = run_envelope(
            capsys,
            "bohr",
            "--freqs", "1.0,1.4142135623730951",
            "--check-independence", "100",
        )
        assert env["payload"]["independent"] is True
        assert env["payload"]["bound"] == 100

    def test_bohr_integral_catalog(self, capsys):
        env = run_envelope(
            capsys, "bohr", "--freqs", "1.0,1.4142135623730951", "--integral", "char:1,-1"
        )
        value = env["payload"]["value"]
        assert abs(complex(value["re"], value["im"])) < 1e-8

    def test_chi_payload(self, capsys):
        env = run_envelope(
            capsys, "chi", "--cov", CONST1, "--xi", '{"entries": [[1, 1.0]]}'
        )
        assert env["payload"]["chi"] == pytest.approx(math.exp(-0.5))

    def test_rn_density_payload(self, capsys):
        env = run_envelope(
            capsys,
            "rn-density",
            "--cov", CONST1,
            "--shift", '{"entries": [[1, 1.0]]}',
            "--x", "[1.0]",
        )
        assert env["payload"]["density"] == pytest.approx(math.exp(0.5))


class TestCliContracts:
    def test_sample_requires_seed(self, capsys):
        code, _, _ = run_cli(capsys, "sample", "--cov", CONST1, "--n", "4")
        assert code == 2

    def test_schema_violation_exits_2_naming_key(self, capsys):
        code, _, err = run_cli(
            capsys, "chi", "--cov", '{"constant": {"rho": 1.0, "junk": 2}}',
            "--xi", '{"entries": []}',
        )
        assert code == 2
        assert "junk" in err

    def test_negative_tolerance_exits_2(self, capsys):
        code, _, _ = run_cli(
            capsys, "equivalence", "--cov-a", CONST1, "--cov-b", CONST2, "--tol", "-1"
        )
        assert code == 2

    def test_payload_bytes_deterministic(self, capsys):
        argv = ("sample", "--cov", CONST1, "--n", "8", "--seed", "99")
        env1 = run_envelope(capsys, *argv)
        env2 = run_envelope(capsys, *argv)
        p1 = json.dumps(env1["payload"], sort_keys=True)
        p2 = json.dumps(env2["payload"], sort_keys=True)
        assert p1 == p2
        assert env1["inputs_digest"] == env2["inputs_digest"]

    def test_inputs_echo_reparses(self, capsys):
        env = run_envelope(
            capsys, "equivalence", "--cov-a", CONST1, "--cov-b", CONST2
        )
        jsonio.decode_decay(env["inputs"]["cov_a"])
        jsonio.decode_decay(env["inputs"]["cov_b"])

    def test_csv_emission_for_sample(self, capsys):
        code, out, _ = run_cli(
            capsys, "sample", "--cov", CONST1, "--n", "3", "--seed", "1", "--out", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "index,value"
        assert len(lines) == 4

    def test_csv_emission_for_mc_trace(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "support",
            "--cov", CONST1,
            "--weights", CONST1,
            "--mc", "400", "150",
            "--seed", "2",
            "--out", "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == "n,mean_partial_sum"

    def test_csv_without_trace_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "chi", "--cov", CONST1, "--xi", '{"entries": []}', "--out", "csv"
        )
        assert code == 2
        assert "tabular" in err

    def test_selftest_quick_passes(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--level", "quick", "--seed", "7")
        assert code == 0
        assert out.count("[PASS]") == 11

    def test_file_input_via_at_path(self, capsys, tmp_path):
        path = tmp_path / "cov.json"
        path.write_text(CONST1)
        env = run_envelope(
            capsys, "chi", "--cov", f"@{path}", "--xi", '{"entries": []}'
        )
        assert env["payload"]["chi"] == 1.0
