import json
import logging
import os
import threading

import pytest

from steinberg_demazure import cli, demazure
from steinberg_demazure.charring import AffineCharacter, Character
from steinberg_demazure.demazure import demazure_character
from steinberg_demazure.rootdata import build
from steinberg_demazure.store import (
    CharacterCache,
    RunConfig,
    cache_key,
    character_from_dict,
    character_to_dict,
    load_config,
    parse_config,
)


@pytest.fixture
def cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("STEINBERG_DEMAZURE_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_serialization_roundtrip():
    g2 = build("G", 2)
    chi = demazure_character(g2, 1, (1, 1))
    assert character_from_dict(json.loads(json.dumps(character_to_dict(chi)))) == chi
    graded = demazure_character(g2, 1, (1, 1), graded=True)
    assert character_from_dict(character_to_dict(graded)) == graded
    frac = AffineCharacter(1, {((1,), 0): 1, ((0,), __import__("fractions").Fraction(-1, 4)): 2})
    assert character_from_dict(character_to_dict(frac)) == frac


def test_cache_put_get_version_and_corruption(tmp_path, caplog):
    cache = CharacterCache(tmp_path)
    key = cache_key("A", 1, 1, (2,), False)
    chi = Character({(2,): 1, (0,): 2, (-2,): 1})
    assert cache.get(key) is None
    path = cache.put(key, chi)
    assert cache.get(key) == chi
    assert CharacterCache(tmp_path, version=99).get(key) is None
    entry = json.loads(path.read_text())
    entry["value"]["terms"][0][-1] = 7
    path.write_text(json.dumps(entry))
    with caplog.at_level(logging.WARNING):
        assert cache.get(key) is None
    assert "corrupt" in caplog.text
    assert cache.gc() == 1
    assert not path.exists()


def test_concurrent_writers(tmp_path):
    cache = CharacterCache(tmp_path)
    key = cache_key("A", 2, 1, (1, 1), False)
    chi = demazure_character(build("A", 2), 1, (1, 1))
    threads = [threading.Thread(target=cache.put, args=(key, chi)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert cache.get(key) == chi
    assert [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")] == []


def test_config(tmp_path):
    f = tmp_path / "run.conf"
    f.write_text("# defaults\nbrute_bound = 4\noutput = json\n")
    cfg = load_config(str(f), output="csv")
    assert cfg.brute_bound == 4 and cfg.output == "csv"
    assert RunConfig().convention == "bourbaki"
    with pytest.raises(ValueError):
        parse_config("nonsense = 1")


def test_cli_dim_and_char(cache_env, capsys):
    assert run(["dim", "--type", "A", "--rank", "1", "--level", "1", "--lambda", "2"],
               capsys)[:2] == (0, "4\n")
    code, out, _ = run(["char", "--type", "A", "--rank", "1", "--level", "1", "--lambda", "0"],
                       capsys)
    assert code == 0 and out == "1 e(0)\n"


def test_cli_json_roundtrip_and_warm_cache(cache_env, capsys):
    argv = ["char", "--type", "B", "--rank", "2", "--level", "1", "--lambda", "1,1",
            "--format", "json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    _, third, _ = run(argv, capsys)
    a, b, c = (json.loads(x) for x in (first, second, third))
    assert a["cache"] == "miss" and b["cache"] == "hit"
    assert set(a) == {"query", "result", "elapsed_ms", "cache"}
    assert character_from_dict(a["result"]) == demazure_character(build("B", 2), 1, (1, 1))
    b.pop("elapsed_ms"), c.pop("elapsed_ms")
    assert json.dumps(b, sort_keys=True) == json.dumps(c, sort_keys=True)


def test_cli_exit_codes(cache_env, capsys):
    assert run(["dim", "--type", "A", "--rank", "1", "--level", "1", "--lambda", "2,3"],
               capsys)[0] == 2
    assert run(["dim", "--type", "Q", "--rank", "1", "--level", "1", "--lambda", "2"],
               capsys)[0] == 2
    assert run(["bogus"], capsys)[0] == 2
    # earlier tests may have memoised this character in-process
    demazure._character_mod_delta.cache_clear()
    assert run(["--term-budget", "3", "--no-cache", "char", "--type", "A", "--rank", "2",
                "--level", "1", "--lambda", "2,2"], capsys)[0] == 3
    assert run(["verify-table", "--fixture", "e8_l2.csv"], capsys)[0] == 1
    assert run(["key-construct", "--type", "E", "--rank", "6", "--level", "1",
                "--lambda", "0,0,0,0,0,0"], capsys)[0] == 2


def test_cli_subcommands(cache_env, capsys, tmp_path):
    code, out, _ = run(["verify-table", "--fixture", "f4_l2.csv", "--figure",
                        str(tmp_path / "f4.png")], capsys)
    assert code == 0 and "64/64" in out and (tmp_path / "f4.png").stat().st_size > 0
    code, out, _ = run(["char", "--type", "G", "--rank", "2", "--level", "1", "--lambda", "1,0",
                        "--figure", str(tmp_path / "g2.png")], capsys)
    assert code == 0 and (tmp_path / "g2.png").exists()
    assert run(["tensor", "--type", "A", "--rank", "2", "--nu", "1,1", "--mu1", "1,0",
                "--mu2", "0,1"], capsys)[1] == "1\n"
    assert run(["key-search", "--type", "A", "--rank", "2", "--level", "1", "--lambda", "1,1"],
               capsys)[1] == "(1,0)\n"
    assert run(["key-construct", "--type", "G", "--rank", "2", "--level", "1", "--lambda", "1,0"],
               capsys)[1] == "(1,0)\n"
    assert run(["verify-steinberg", "--type", "A", "--rank", "2", "--level", "2", "--grid", "2"],
               capsys)[0] == 0
    assert run(["qsystem", "--type", "A", "--rank", "2", "--level", "2", "--node", "1",
                "--lambda", "1,1"], capsys)[:2] == (0, "holds\n")
    assert run(["qsystem", "--type", "A", "--rank", "3", "--level", "1", "--node", "2",
                "--classical"], capsys)[0] == 0
    assert run(["schur", "--type", "A", "--rank", "2", "--level", "2", "--node", "1",
                "--mu", "0,1"], capsys)[0] == 0
    code, out, _ = run(["prime", "--type", "A", "--rank", "1", "--level", "1", "--lambda", "2",
                        "--format", "json"], capsys)
    assert json.loads(out)["result"]["verdict"] == "factored"
    code, out, _ = run(["decompose", "--type", "A", "--rank", "1", "--level", "1",
                        "--lambda", "2", "--format", "csv"], capsys)
    assert out == "2,1\n0,1\n"
    assert run(["cache", "gc"], capsys)[0] == 0
