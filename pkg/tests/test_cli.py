import json

import pytest

jsonschema = pytest.importorskip("jsonschema")

from importlib import resources

from flipent import Gf2Matrix, GroundStateCoeffs, named_partition
from flipent.cli import main, parse_partition_spec, parse_state_spec
from flipent.lattice import build_torus, lattice_to_document
from flipent.verify import default_suite, verify_partitions


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_schema(name):
    ref = resources.files("flipent") / "schemas" / name
    return json.loads(ref.read_text())


class TestSpecParsers:
    def test_partition_grammar(self, torus_k3):
        for spec, size in [
            ("chain", 3),
            ("ladder", 3),
            ("cross", 6),
            ("vertical", 9),
            ("spin:4", 1),
            ("pair:0,9", 2),
            ("links:0,1,2", 3),
            ("rect:0,0,1,1", 4),
        ]:
            parsed = parse_partition_spec(torus_k3, spec)
            assert parsed.partition.size_a == size

    def test_loop_spec_round_trip(self, torus_k3):
        rect = parse_partition_spec(torus_k3, "rect:1,1,1,1")
        loop_ids = ",".join(map(str, rect.partition.a_links()))
        loop = parse_partition_spec(torus_k3, f"loop:{loop_ids}")
        assert loop.partition == rect.partition

    def test_bad_partition_specs(self, torus_k3):
        for spec in ("blob", "rect:1,1", "pair:3", "links:", "spin:99"):
            with pytest.raises(ValueError):
                parse_partition_spec(torus_k3, spec)

    def test_state_specs(self):
        _, c, basis = parse_state_spec("xi:1,0")
        assert basis and c.a10 == 1
        _, c, basis = parse_state_spec("coeffs:0.6,0,0.8j,0")
        assert not basis
        assert abs(c.a10 - 0.8j) < 1e-12
        _, c1, _ = parse_state_spec("random:7")
        _, c2, _ = parse_state_spec("random:7")
        assert c1 == c2

    def test_coeffs_norm_gate(self):
        # slightly off-normal input is renormalized, far-off is rejected
        parse_state_spec("coeffs:1.0000001,0,0,0")
        with pytest.raises(ValueError):
            parse_state_spec("coeffs:2,0,0,0")


class TestEntropyCommand:
    def test_cross_k4(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "entropy",
            "--lattice", "torus:k=4",
            "--partition", "cross",
            "--state", "xi:0,0",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["S_bits"] == 7
        assert payload["S"] == 7.0
        jsonschema.validate(payload, load_schema("entropy.schema.json"))

    def test_generic_chain_alpha_half(self, capsys):
        inv = 1 / 2**0.5
        code, out, _ = run_cli(
            capsys,
            "entropy",
            "--lattice", "torus:k=3",
            "--partition", "chain",
            "--state", f"coeffs:{inv},{inv},0,0",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["S"] == pytest.approx(3.0, abs=1e-12)

    def test_rect_disk_report(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "entropy",
            "--lattice", "torus:k=5",
            "--partition", "rect:1,1,2,2",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["S_bits"] == 7
        assert payload["L"] == 8
        assert payload["S_geometric"] == 7

    def test_vertical_mismatch_exits_1(self, capsys):
        code, _, err = run_cli(
            capsys,
            "entropy",
            "--lattice", "torus:k=3",
            "--partition", "vertical",
        )
        assert code == 1
        assert "disagree" in err

    def test_oracle_cross_check(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "entropy",
            "--lattice", "torus:k=2",
            "--partition", "ladder",
            "--oracle",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["oracle_S"] == pytest.approx(2.0, abs=1e-9)

    def test_input_error_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "entropy", "--lattice", "torus:k=1", "--partition", "chain"
        )
        assert code == 2
        assert "error" in err

    def test_resource_cap_exit_3(self, capsys):
        code, _, err = run_cli(
            capsys,
            "entropy",
            "--lattice", "torus:k=3",
            "--partition", "chain",
            "--oracle",
            "--max-links", "4",
        )
        assert code == 3


class TestVerifyCommand:
    def test_k2_full_suite(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--lattice", "torus:k=2", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["results"]) == 254
        assert payload["max_deviation"] < 1e-9
        assert payload["passed"]

    def test_corrupted_generators_fail_with_name(self, torus_k2):
        stars = [int(m) for m in build_torus(2).star_masks()]
        stars[0] ^= 0b11  # break one generator
        bad = Gf2Matrix(stars, 8)
        results = verify_partitions(
            torus_k2,
            {"chain": named_partition(torus_k2, "chain")},
            GroundStateCoeffs.xi(0, 0),
            generators=bad,
        )
        assert not results[0].passed
        assert results[0].name == "chain"

    def test_k4_rejected(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--lattice", "torus:k=4")
        assert code == 2

    def test_suite_contents_k3(self, torus_k3):
        suite = default_suite(torus_k3)
        assert set(suite) == {
            "single_spin",
            "chain",
            "ladder",
            "cross",
            "rect:0,0,1,1",
        }


class TestScanCommand:
    def test_exhaustive_k2_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "scan", "--lattice", "torus:k=2", "--mode", "exhaustive"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("partition,size_A")
        assert len(lines) == 255  # header + all proper bipartitions
        s_values = [int(line.rsplit(",", 5)[1]) for line in lines[1:]]
        assert min(s_values) == 1

    def test_byte_identical_reruns(self, capsys):
        args = (
            "scan",
            "--lattice", "torus:k=6",
            "--mode", "disks",
            "--count", "10",
            "--seed", "3",
        )
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_disks_json_schema_and_bounds(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "scan",
            "--lattice", "torus:k=8",
            "--mode", "disks",
            "--count", "25",
            "--seed", "7",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, load_schema("scan.schema.json"))
        for row in payload["rows"]:
            assert row["lower_bound"] <= row["S_bits"] <= row["upper_bound"]
            assert row["S_bits"] == row["S_closed_form"]

    def test_table1_mode(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "scan",
            "--lattice", "torus:k=6",
            "--mode", "table1",
            "--format", "json",
        )
        assert code == 0
        rows = {r["partition"]: r for r in json.loads(out)["rows"]}
        assert rows["chain"]["S_closed_form"] == 5.0
        assert rows["ladder"]["S_closed_form"] == 6.0
        assert rows["cross"]["S_closed_form"] == 11.0
        assert rows["vertical"]["S_closed_form"] == 35.0  # published value
        assert rows["vertical"]["S_bits"] == 25  # exact rank value
        assert rows["rect:0,0,2,2"]["S_bits"] == 7

    def test_sampled_requires_seed(self, capsys):
        code, _, err = run_cli(
            capsys,
            "scan",
            "--lattice", "torus:k=3",
            "--mode", "sampled",
            "--count", "5",
        )
        assert code == 2

    def test_exhaustive_cap_exit_3(self, capsys):
        code, _, _ = run_cli(
            capsys,
            "scan",
            "--lattice", "torus:k=4",
            "--mode", "exhaustive",
            "--scan-cap", "10",
        )
        assert code == 3


class TestLatticeInfoCommand:
    def test_torus_info(self, capsys):
        code, out, _ = run_cli(
            capsys, "lattice-info", "--lattice", "torus:k=3", "--format", "json"
        )
        assert code == 0
        info = json.loads(out)
        assert info["n_sites"] == 9
        assert info["n_links"] == 18
        assert info["ground_degeneracy"] == 4

    def test_document_file(self, capsys, tmp_path):
        doc = tmp_path / "torus2.lat"
        doc.write_text(lattice_to_document(build_torus(2)))
        code, out, _ = run_cli(
            capsys, "lattice-info", "--lattice", str(doc), "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["genus"] == 1

    def test_malformed_document_exit_2(self, capsys, tmp_path):
        doc = tmp_path / "broken.lat"
        doc.write_text("LATTICE v1 open\nSITES\n0\n1\nLINKS\n0 7\nPLAQUETTES\n")
        code, _, err = run_cli(capsys, "lattice-info", "--lattice", str(doc))
        assert code == 2
        assert "line 6" in err
