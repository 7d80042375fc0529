import json
from fractions import Fraction

import pytest

from ousgeom import campaign as camp
from ousgeom.cli import build_expression, main
from ousgeom.constructions import linf_space
from ousgeom.io import (
    FileFormatError,
    dump_skeleton,
    dump_space,
    norm_from_text,
    skeleton_from_text,
    space_from_text,
)
from ousgeom.space import make_space

L3_TEXT = '{"dim": 3, "states": [["1","0","0"],["0","1","0"],["0","0","1"]], "unit": [1, 1, 1]}'
SQUARE_SKELETON = '{"dim": 2, "head": [1, 1], "points": [[0, 0], [1, 1], [1, 0], [0, 1]]}'
CUBE_SKELETON = json.dumps(
    {"dim": 3, "head": [1, 1, 1], "points": [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)]}
)


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "l3": L3_TEXT,
        "l2": '{"dim": 2, "states": [[1, 0], [0, 1]], "unit": [1, 1]}',
        "square": SQUARE_SKELETON,
        "cube": CUBE_SKELETON,
        "empty": '{"dim": 2, "head": [1, 1], "points": []}',
        "abs": '{"dim": 1, "functionals": [[1]]}',
        "float": '{"dim": 2,\n "states": [[1, 0], [0, 0.5]], "unit": [1, 1]}',
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_space_file_round_trip():
    V = space_from_text(L3_TEXT)
    assert V == linf_space(3)
    W = make_space([(2, 1), (Fraction(-1, 3), 1)], (1, 1))
    assert space_from_text(dump_space(W)) == W
    spec = skeleton_from_text(SQUARE_SKELETON)
    assert skeleton_from_text(dump_skeleton(spec)) == spec
    assert norm_from_text('{"dim": 2, "functionals": [["1", "1/2"], [0, 1]]}').norm((2, 0)) == 2


@pytest.mark.parametrize(
    "text,where",
    [
        ('{"dim": 1,\n "states": [[0.5]], "unit": [1]}', "line 2, column 14"),
        ('{"dim": 1, "states": [["1"]], "unit": ["2.5"]}', "line 1, column 40"),
        ('{"dim": 1, "states": [["1"]], "unit": [1e3]}', "line 1, column 40"),
    ],
)
def test_inexact_literals_are_located(text, where):
    with pytest.raises(FileFormatError, match=where):
        space_from_text(text)


def test_malformed_files_are_reported():
    with pytest.raises(FileFormatError, match="line 1"):
        space_from_text('{"dim": 1, "states": [[1]], ')
    with pytest.raises(FileFormatError, match="missing field 'unit'"):
        space_from_text('{"dim": 1, "states": [[1]]}')
    with pytest.raises(FileFormatError, match="unit not interior"):
        space_from_text('{"dim": 2, "states": [[1, 0], [-1, 0]], "unit": [1, 0]}')
    with pytest.raises(FileFormatError, match="nonempty"):
        skeleton_from_text('{"dim": 2, "head": [1, 1], "points": []}')


def test_construction_expressions(files):
    assert build_expression("linf:2") == linf_space(2)
    assert build_expression("sum:linf:1,linf:1") == linf_space(2)
    nested = build_expression(f"adjoin:(sum:(linf:1),linf:1),{files['abs']}")
    assert nested.dim == 3 and nested.construction.kind == "adjoin"
    assert build_expression(f"sum:{files['l2']},linf:1") == linf_space(3)


def test_analyze_command(capsys, files):
    code, out, _ = run(capsys, "analyze", "--space", files["l3"], "--vector", "(0,1/2,1)")
    assert code == 0 and "periphery = true" in out
    code, out, _ = run(capsys, "analyze", "--space", files["l2"], "--vector", "1,1")
    assert code == 0 and "canopy = true" in out and "periphery = false" in out
    code, _, err = run(capsys, "analyze", "--space", files["l2"], "--vector", "0.5,1")
    assert code == 2 and "0.5" in err
    code, _, err = run(capsys, "analyze", "--space", files["float"], "--vector", "1,1")
    assert code == 2 and "line 2" in err


def test_skeleton_commands(capsys, files):
    code, out, _ = run(capsys, "verify-skeleton", "--skeleton", files["square"])
    assert code == 0 and "all axioms hold" in out
    code, out, _ = run(capsys, "generate", "--skeleton", files["square"])
    assert code == 0 and "periphery exact" in out
    code, out, _ = run(capsys, "verify-skeleton", "--skeleton", files["cube"])
    assert code == 1 and "axiom 2 violated at lambda in (" in out
    code, _, err = run(capsys, "verify-skeleton", "--skeleton", files["empty"])
    assert code == 2 and "nonempty" in err


def test_geometry_commands(capsys, files, tmp_path):
    code, out, _ = run(capsys, "decompose", "--space", "linf:3", "--vector", "3,1,-1")
    assert code == 0 and "w = (0, 1/2, 1)" in out and "mu = -4" in out
    code, _, err = run(capsys, "decompose", "--space", "linf:3", "--vector", "2,2,2")
    assert code == 2 and "axis vector" in err
    code, out, _ = run(capsys, "plane", "--space", "linf:3", "--base", "0,1/2,1", "--vector", "3,1,-1")
    assert code == 0 and "(3, -1)" in out
    code, out, _ = run(capsys, "verify-embedding", "--space", "linf:3", "--vector", "1,0,1/2;0,1,1")
    assert code == 1 and "(b)" in out
    code, out, _ = run(capsys, "find-embedding", "--space", "linf:3", "--n", "3")
    assert code == 0 and "found" in out
    code, out, _ = run(capsys, "find-embedding", "--space", "linf:2", "--n", "3")
    assert code == 1 and "not found at vertex resolution" in out
    target = tmp_path / "built.json"
    code, _, _ = run(capsys, "construct", "--expr", "sum:linf:1,linf:2", "--out", str(target))
    assert code == 0 and space_from_text(target.read_text()) == linf_space(3)


def test_usage_errors_exit_with_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "analyze", "--vector", "1")
    assert code == 2 and "--space" in err
    code, _, _ = run(capsys, "campaign", "--property", "unknown")
    assert code == 2
    code, _, _ = run(capsys, "construct", "--expr", "linf:x")
    assert code == 2


def test_random_space_command_is_deterministic(capsys):
    first = run(capsys, "random-space", "--seed", "7", "--dim", "3", "--n", "5")
    second = run(capsys, "random-space", "--seed", "7", "--dim", "3", "--n", "5")
    assert first == second and first[0] == 0
    V = space_from_text(first[1])
    assert V.dim == 3


def test_random_space_postconditions():
    for seed in range(5):
        V = camp.random_space(seed, 2, 3)
        assert V.dim == 2 and all(sum(f) == 1 for f in V.states)
        assert camp.random_space(seed, 2, 3) == V
    W = camp.random_space(11, 4, 8)
    assert camp.classify(W, W.unit).in_canopy
    with pytest.raises(ValueError):
        camp.random_space(0, 3, 2)


def test_campaign_reports_are_byte_identical(capsys):
    a = run(capsys, "campaign", "--property", "line-norm", "--trials", "15", "--seed", "4")
    b = run(capsys, "campaign", "--property", "line-norm", "--trials", "15", "--seed", "4")
    assert a == b and a[0] == 0 and "failures: 0" in a[1]
    code, out, _ = run(capsys, "campaign", "--property", "line-norm", "--trials", "2", "--timing")
    assert "elapsed:" in out


def test_failures_replay_from_their_seed(monkeypatch):
    def flaky(rng):
        x = rng.randrange(1000)
        return [camp._fail(f"x={x}", "even", "odd")] if x % 2 else []

    monkeypatch.setitem(camp.PROPERTIES, "flaky", flaky)
    report = camp.run_campaign("flaky", 20, seed=9)
    assert report.failures
    for f in report.failures:
        replayed = camp.replay("flaky", f["seed"])
        assert replayed and replayed[0]["inputs"] == f["inputs"]
    assert camp.run_campaign("flaky", 20, seed=9).failures == report.failures


def test_campaign_exit_code_on_failure(capsys, monkeypatch):
    monkeypatch.setitem(camp.PROPERTIES, "always-fails", lambda rng: [camp._fail("x", 1, 2)])
    code, out, _ = run(capsys, "campaign", "--property", "always-fails", "--trials", "2")
    assert code == 1 and "failures: 2" in out
    seed = camp.trial_seed(0, 0)
    code, out, _ = run(capsys, "campaign", "--property", "always-fails", "--replay", str(seed))
    assert code == 1 and "failures: 1" in out


@pytest.mark.parametrize("name", sorted(camp.PROPERTIES))
def test_every_registered_property_passes_a_short_campaign(name):
    trials = 2 if name in ("lemma33-equivalence", "direct-sum") else 4
    report = camp.run_campaign(name, trials, seed=21)
    assert report.failures == []
