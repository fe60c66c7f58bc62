"""Command-line interface: subcommands, formats, and exit codes."""

import json

import pytest

from planeforest.cli import EXIT_CRITERION, EXIT_INVALID, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_degseq_check_ok(capsys):
    code, out = run(capsys, "degseq", "check", "--counts", '{"0": 4, "2": 2}')
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["counts"] == {"0": 4, "2": 2}


def test_degseq_check_invalid(capsys):
    code, _ = run(capsys, "degseq", "check", "--counts", '{"2": 3}')
    assert code == EXIT_INVALID
    code, _ = run(capsys, "degseq", "check", "--counts", "not json")
    assert code == EXIT_INVALID


def test_degseq_make_writes_file(tmp_path, capsys):
    out_file = tmp_path / "s.json"
    code, _ = run(
        capsys, "degseq", "make", "--p", "geometric:0.5", "--n", "500",
        "--c", "8", "--seed", "3", "--out", str(out_file),
    )
    assert code == EXIT_OK
    obj = json.loads(out_file.read_text())
    counts = {int(k): v for k, v in obj["counts"].items()}
    assert sum(counts.values()) == 500
    assert sum((1 - i) * v for i, v in counts.items()) == 8


def test_sample_forest_json(tmp_path, capsys):
    ds = tmp_path / "s.json"
    ds.write_text('{"counts": {"0": 4, "2": 2}}')
    code, out = run(capsys, "sample", "forest", "--degseq", str(ds), "--seed", "1", "--count", "3")
    assert code == EXIT_OK
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 3
    for obj in lines:
        assert sum(len(t) for t in obj["trees"]) == 6


def test_sample_forest_csv_summary(tmp_path, capsys):
    ds = tmp_path / "s.json"
    ds.write_text('{"counts": {"0": 40, "2": 18, "3": 1}}')
    code, out = run(
        capsys, "sample", "forest", "--degseq", str(ds), "--seed", "4",
        "--count", "5", "--format", "csv", "--top", "2",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "replicate,tau_n,size_1,size_2,largest_is_marked"
    assert len(lines) == 6


def test_sample_is_deterministic(tmp_path, capsys):
    ds = tmp_path / "s.json"
    ds.write_text('{"counts": {"0": 4, "2": 2}}')
    _, a = run(capsys, "sample", "mcf", "--degseq", str(ds), "--seed", "9", "--count", "4")
    _, b = run(capsys, "sample", "mcf", "--degseq", str(ds), "--seed", "9", "--count", "4")
    assert a == b


def test_codec_encode_decode_round_trip(capsys):
    code, out = run(capsys, "codec", "encode", "--tree", "[2, 3, 0, 0, 0, 1, 0]")
    assert code == EXIT_OK
    bridge = json.loads(out)
    assert bridge[-1] == -1 and all(v >= 0 for v in bridge[:-1])
    code, out = run(capsys, "codec", "decode", "--bridge", json.dumps(bridge))
    assert code == EXIT_OK
    assert json.loads(out)["lex"] == [2, 3, 0, 0, 0, 1, 0]


def test_codec_rotate_default_is_first_argmin(capsys):
    code, out = run(capsys, "codec", "rotate", "--bridge", "[0, -1, -1, -2, -1, 1, 0, -1]")
    assert code == EXIT_OK
    values = json.loads(out)
    # the default shift is the first-argmin one, so the result is an FPB
    assert values[-1] == -1 and all(v >= 0 for v in values[:-1])


def test_codec_split_walk(capsys):
    code, out = run(capsys, "codec", "split", "--walk", "[0, 1, 0, -1, 0, -1, -2]")
    assert code == EXIT_OK
    segments = json.loads(out)
    assert segments == [[0, 1, 0, -1], [0, 1, 0, -1]]


def test_codec_invalid_input(capsys):
    code, _ = run(capsys, "codec", "decode", "--bridge", "[0, 5]")
    assert code == EXIT_INVALID


def test_limit_sample_tau(capsys):
    code, out = run(capsys, "limit", "sample-tau", "--sigma", "1.4142", "--count", "5", "--seed", "2")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "tau"
    values = [float(x) for x in lines[1:]]
    assert len(values) == 5
    assert all(v > 0 for v in values)


def test_limit_excursions(capsys):
    code, out = run(
        capsys, "limit", "excursions", "--sigma", "1.4142", "--count", "2",
        "--dt", "0.001", "--top", "3", "--seed", "5",
    )
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 2
    for row in rows:
        assert len(row["lengths"]) == 3
        assert row["lengths"] == sorted(row["lengths"], reverse=True)


def test_verify_exit_codes(tmp_path, capsys):
    # a tiny run with default tolerances: exit code reflects pass/fail only
    out_file = tmp_path / "report.json"
    code, _ = run(
        capsys, "verify", "walk", "--p", "geometric:0.5", "--n", "4000",
        "--cn", "8", "--reps", "200", "--seed", "11", "--out", str(out_file),
    )
    assert code in (EXIT_OK, EXIT_CRITERION)
    report = json.loads(out_file.read_text())
    assert report["name"] == "walk"
    assert report["params"]["n"] == 4000


def test_verify_cn_exponent(capsys):
    code, out = run(
        capsys, "verify", "tau", "--p", "geometric:0.5", "--n", "4000",
        "--cn-exp", "0.35", "--reps", "50", "--seed", "12",
    )
    assert code in (EXIT_OK, EXIT_CRITERION)
    report = json.loads(out)
    assert report["params"]["cn"] == int(4000**0.35)


def test_unknown_subcommand_fails(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])
