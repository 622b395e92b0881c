import json
import shutil

from cubiclat import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lattice_info(capsys):
    code, out, _ = run(capsys, "lattice", "info", "E6")
    assert code == 0
    assert "det: 3\n" in out and "discriminant_group: [3]" in out and "roots: 72" in out
    code, out, _ = run(capsys, "lattice", "info", "U")
    assert "det: -1\n" in out and "discriminant_group: []" in out
    code, out, _ = run(capsys, "lattice", "info", "B1")
    assert "det: 2/3\n" in out


def test_usage_errors(capsys):
    assert run(capsys, "lattice", "info", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "search", "--dmod", "4", "--n-from", "1", "--n-to", "2", "--out", "x")[0] == 2
    assert run(capsys, "theta", "table", "--kmax", "6000", "--out", "x.csv")[0] == 2
    assert run(capsys, "verify")[0] == 2


def test_theta_table(capsys, tmp_path):
    out_csv = tmp_path / "t.csv"
    code, out, _ = run(capsys, "theta", "table", "--kmax", "60", "--out", str(out_csv))
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "k,N_M1capT,N_M2capT,N_M3capT,4N1-10N2-15N3"
    assert len(lines) == 61
    assert lines[46].startswith("46,600,")


def test_check_commands(capsys):
    code, out, _ = run(capsys, "check", "lemma68")
    assert code == 0 and "OK" in out
    code, out, _ = run(capsys, "check", "three-squares", "--max", "5000")
    assert code == 0


def test_search_then_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--dmod", "2", "--n-from", "19", "--n-to", "20", "--out", str(tmp_path))
    assert code == 0
    files = sorted(tmp_path.glob("*.json"))
    assert [f.name for f in files] == ["d2_n0019.json", "d2_n0020.json"]
    assert "general_type" in out and "nonneg_kodaira" in out
    code, out, _ = run(capsys, "verify", *map(str, files))
    assert code == 0


def test_thread_count_does_not_change_output(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    ra = run(capsys, "search", "--dmod", "0", "--n-from", "19", "--n-to", "21", "--out", str(a))
    rb = run(capsys, "search", "--dmod", "0", "--n-from", "19", "--n-to", "21", "--out", str(b), "--threads", "2")
    assert ra[:2] == rb[:2]
    for f in sorted(a.glob("*.json")):
        assert f.read_bytes() == (b / f.name).read_bytes()


def test_exhaustion_exit_code(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--dmod", "2", "--n-from", "30", "--n-to", "30",
                       "--out", str(tmp_path), "--max-candidates", "5")
    assert code == 3
    assert "budget exhausted" in out


def test_verify_mutated_certificate(capsys, tmp_path):
    src = cli.golden_certificates()[0]
    obj = json.loads(src.read_text())
    obj["alpha"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1
    assert "invalid[" in out
    garbage = tmp_path / "garbage.json"
    garbage.write_bytes(src.read_bytes()[:-20])
    code, out, _ = run(capsys, "verify", str(garbage))
    assert code == 1 and "invalid[schema]" in out


def test_fixture_dir_override(capsys, tmp_path, monkeypatch):
    src = cli.golden_certificates()[0]
    shutil.copy(src, tmp_path / src.name)
    monkeypatch.setenv(cli.FIXTURE_ENV, str(tmp_path))
    assert cli.golden_certificates() == [tmp_path / src.name]
    assert run(capsys, "verify", "--golden")[0] == 0
