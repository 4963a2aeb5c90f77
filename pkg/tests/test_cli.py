import json
import subprocess
import sys

from permutiple.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def base4_anagram_multiplicands(limit):
    """Values whose base-4 digits match those of their triple; direct scan."""
    out = []
    for a in range(1, limit + 1):
        def digits(x):
            ds = []
            while x:
                x, d = divmod(x, 4)
                ds.append(d)
            return sorted(ds)

        if digits(a) == digits(3 * a):
            out.append(a)
    return out


class TestGraphCommands:
    def test_mother_graph_dot(self, capsys):
        code, out, _ = run_cli(capsys, "mother-graph", "-n", "3", "-b", "4")
        assert code == 0
        assert out.count("->") == 12

    def test_hs_graph_json(self, capsys):
        code, out, _ = run_cli(capsys, "hs-graph", "-n", "4", "-b", "10", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["edges"]["0->3"] == ["(2,8)", "(6,9)"]

    def test_hs_multigraph_text(self, capsys):
        code, out, _ = run_cli(capsys, "hs-multigraph", "-n", "3", "-b", "4", "--format", "text")
        assert code == 0
        assert len(out.strip().splitlines()) == 1 + 12

    def test_usage_error_for_bad_multiplier(self, capsys):
        code, _, err = run_cli(capsys, "mother-graph", "-n", "1", "-b", "10")
        assert code == 2
        assert "multiplier" in err

    def test_missing_required_flag(self, capsys):
        code, _, err = run_cli(capsys, "mother-graph", "-n", "4")
        assert code == 2
        assert "--base" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "graph.dot"
        code, out, _ = run_cli(
            capsys, "mother-graph", "-n", "3", "-b", "4", "-o", str(target)
        )
        assert code == 0
        assert out == ""
        assert target.read_text().count("->") == 12

    def test_byte_determinism(self, capsys):
        _, first, _ = run_cli(capsys, "hs-graph", "-n", "4", "-b", "10", "--format", "dot")
        _, second, _ = run_cli(capsys, "hs-graph", "-n", "4", "-b", "10", "--format", "dot")
        assert first == second


class TestSearchCommands:
    def test_find_and_oracle_agree(self, capsys):
        code, found, _ = run_cli(capsys, "find", "-n", "3", "-b", "4", "--length", "4")
        assert code == 0
        code, scanned, _ = run_cli(capsys, "oracle", "-n", "3", "-b", "4", "--length", "4")
        assert code == 0
        assert found == scanned
        for line in found.strip().splitlines():
            payload = json.loads(line)
            assert payload["value"] % 3 == 0

    def test_allow_leading_zero_flag(self, capsys):
        _, strict, _ = run_cli(capsys, "find", "-n", "3", "-b", "4", "--length", "2")
        _, loose, _ = run_cli(
            capsys, "find", "-n", "3", "-b", "4", "--length", "2", "--allow-leading-zero"
        )
        assert len(loose.splitlines()) > len(strict.splitlines())

    def test_scan_limit_flag(self, capsys):
        code, _, err = run_cli(
            capsys, "oracle", "-n", "4", "-b", "10", "--length", "5", "--scan-limit", "100"
        )
        assert code == 1
        assert "limit" in err

    def test_scan_limit_env(self, capsys, monkeypatch):
        monkeypatch.setenv("PERMUTIPLE_SCAN_LIMIT", "100")
        code, _, err = run_cli(capsys, "oracle", "-n", "4", "-b", "10", "--length", "5")
        assert code == 1
        assert "limit" in err

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("PERMUTIPLE_SCAN_LIMIT", "100")
        code, out, _ = run_cli(
            capsys, "oracle", "-n", "4", "-b", "10", "--length", "5",
            "--scan-limit", str(10**8),
        )
        assert code == 0
        assert out


class TestConfig:
    def test_config_supplies_values(self, capsys, tmp_path):
        config = tmp_path / "run.conf"
        config.write_text("multiplier=3\nbase=4\nlength=4\n# comment\n")
        code, out, _ = run_cli(capsys, "find", "--config", str(config))
        assert code == 0
        assert out

    def test_flags_beat_config(self, capsys, tmp_path):
        config = tmp_path / "run.conf"
        config.write_text("multiplier=3\nbase=4\nformat=text\n")
        code, out, _ = run_cli(capsys, "mother-graph", "--config", str(config), "--format", "dot")
        assert code == 0
        assert out.startswith("digraph")

    def test_unknown_key(self, capsys, tmp_path):
        config = tmp_path / "run.conf"
        config.write_text("bogus=1\n")
        code, _, err = run_cli(capsys, "mother-graph", "--config", str(config))
        assert code == 2
        assert "bogus" in err


class TestVerify:
    def test_success_with_carries(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--seed", "4x10:87912=4*21978")
        assert code == 0
        payload = json.loads(out)
        assert payload["carries"] == [0, 3, 3, 3, 0]

    def test_explicit_sigma(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--seed", "4x10:87912=4*21978", "--sigma", "4,3,2,1,0"
        )
        assert code == 0
        assert json.loads(out)["sigma"] == [4, 3, 2, 1, 0]

    def test_failure_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--seed", "4x10:12345=4*13245")
        assert code == 1
        assert json.loads(out)["verified"] is False

    def test_bad_seed_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--seed", "whatever")
        assert code == 2
        assert err

    def test_wide_base_comma_seed(self, capsys):
        # 594 = 3 * 198 in base 12, digit multiset {1, 4, 6} on both sides
        code, out, _ = run_cli(capsys, "verify", "--seed", "3x12:4,1,6=3*1,4,6")
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == 594
        assert payload["digits"] == [4, 1, 6]


class TestSymmetryCommands:
    def test_siblings(self, capsys):
        code, out, _ = run_cli(capsys, "siblings", "--seed", "4x10:86712=4*21678")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["dihedral"]) == 4
        assert [entry["shift"] for entry in payload["reflective"]] == [1, 2]

    def test_class_has_72_lines(self, capsys):
        code, out, _ = run_cli(capsys, "class", "--seed", "4x10:727119288=4*181779822")
        assert code == 0
        assert len(out.strip().splitlines()) == 72

    def test_symmetries(self, capsys):
        code, out, _ = run_cli(capsys, "symmetries", "--seed", "4x10:727119288=4*181779822")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["fixing_symmetries"]) == 2

    def test_closure(self, capsys):
        code, out, _ = run_cli(capsys, "closure", "--seed", "4x10:86712=4*21678")
        assert code == 0
        payload = json.loads(out)
        assert payload["reflection_exists"] is True
        assert payload["closure_symmetric"] is True
        assert len(payload["closure_edges"]) == 8

    def test_closure_without_reflection(self, capsys):
        code, out, _ = run_cli(capsys, "closure", "--seed", "4x10:00=4*00")
        assert code == 1
        assert json.loads(out)["reflection_exists"] is False


class TestOeisCheck:
    def test_clean_cross_check(self, capsys, tmp_path):
        multiplicands = base4_anagram_multiplicands(4**7)
        assert multiplicands, "expected base-4 anagram multiplicands below 4**7"
        bfile = tmp_path / "b.txt"
        bfile.write_text(
            "".join(f"{i} {a}\n" for i, a in enumerate(multiplicands, start=1))
        )
        code, out, _ = run_cli(
            capsys, "oeis-check", "--bfile", str(bfile), "-n", "3", "-b", "4",
            "--length", "8",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["misses"] == []
        assert payload["extras"] == []
        assert payload["matches"]

    def test_mismatch_reported(self, capsys, tmp_path):
        bfile = tmp_path / "b.txt"
        bfile.write_text("1 5\n")  # 15 is not a base-4 permutiple value
        code, out, _ = run_cli(
            capsys, "oeis-check", "--bfile", str(bfile), "-n", "3", "-b", "4",
            "--length", "4",
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["misses"] == [15]

    def test_empty_bfile(self, capsys, tmp_path):
        bfile = tmp_path / "b.txt"
        bfile.write_text("# nothing\n")
        code, out, _ = run_cli(
            capsys, "oeis-check", "--bfile", str(bfile), "-n", "3", "-b", "4",
            "--length", "4",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["matches"] == [] and payload["misses"] == [] and payload["extras"] == []

    def test_bad_bfile_is_usage_error(self, capsys, tmp_path):
        bfile = tmp_path / "b.txt"
        bfile.write_text("2 5\n1 7\n")
        code, _, err = run_cli(
            capsys, "oeis-check", "--bfile", str(bfile), "-n", "3", "-b", "4",
            "--length", "4",
        )
        assert code == 2
        assert "line 2" in err


class TestEntryPoint:
    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "permutiple.cli", "verify", "--seed", "4x10:87912=4*21978"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["value"] == 87912

    def test_byte_identical_across_processes(self):
        argv = [sys.executable, "-m", "permutiple.cli", "find", "-n", "4", "-b", "10", "--length", "4"]
        first = subprocess.run(argv, capture_output=True)
        second = subprocess.run(argv, capture_output=True)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout

    def test_json_lines_round_trip(self, capsys):
        from permutiple.serialize import record_from_json

        code, out, _ = run_cli(capsys, "find", "-n", "4", "-b", "10", "--length", "4")
        assert code == 0
        for line in out.strip().splitlines():
            record = record_from_json(line)
            assert record.value() == json.loads(line)["value"]
