import json

import pytest

from repetilab import io as sysio
from repetilab.cli import main, parse_kv
from repetilab.families import lemma1_system, uniform_pow2_system
from repetilab.model import Extract, NUSystem


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def lemma1_file(tmp_path):
    p = tmp_path / "lemma1.json"
    p.write_text(sysio.dumps(lemma1_system(2)))
    return str(p)


def test_parse_kv():
    assert parse_kv("n=16,seed=7") == {"n": 16, "seed": 7}
    assert parse_kv("d=1:3") == {"d": [1, 2, 3]}


def test_expand(capsys, lemma1_file):
    assert run(capsys, "expand", "--system", lemma1_file)[:2] == (0, "cbabaa\n")
    assert run(capsys, "expand", "--system", lemma1_file, "--prefix", "3")[1] == "cba\n"
    assert run(capsys, "expand", "--system", lemma1_file, "--slice", "c,3,2,4")[1] == "bab\n"


def test_expand_hex(capsys, tmp_path):
    L = lemma1_system(1).replace(coding={"a": "\x01", "b": "b", "c": "c"})
    p = tmp_path / "s.json"
    p.write_text(sysio.dumps(L))
    assert run(capsys, "expand", "--system", str(p), "--hex")[1] == "cb\\x01\n"


def test_classify(capsys, lemma1_file, tmp_path):
    assert run(capsys, "classify", "--system", lemma1_file)[1] == \
        "prolongable(c) identity-coding ℓ_m ℓ_d ℓ_p\n"
    p = tmp_path / "u.json"
    p.write_text(sysio.dumps(uniform_pow2_system(3)))
    out = run(capsys, "classify", "--system", str(p))[1]
    assert "expanding uniform" in out and "ℓ_e" in out and "ℓ_u" in out


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{oops")
    code, _, err = run(capsys, "classify", "--system", str(p))
    assert code == 2 and "malformed JSON" in err


def test_validate_cycle(capsys, tmp_path):
    loop = Extract("a", 2, 1, 1)
    p = tmp_path / "nu.json"
    p.write_text(sysio.dumps(NUSystem("a", {"a": (loop,)}, ("a",), 1, 2)))
    code, out, _ = run(capsys, "validate", "--system", str(p), "--format", "json")
    assert code == 1
    assert json.loads(out)["cycle"] == ["a(2)[1:1]", "a(2)[1:1]"]
    code, out, _ = run(capsys, "validate", "--system", str(p))
    assert "extraction cycle" in out


def test_validate_ok(capsys, lemma1_file):
    assert run(capsys, "validate", "--system", lemma1_file)[:2] == (0, "ok\n")


def test_measure(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("abab\n")
    code, out, _ = run(capsys, "measure", "--input", str(p), "--format", "json")
    row = json.loads(out)
    assert code == 0 and row["r"] == 2 and row["z"] == 3 and row["delta"] == 2.0
    out = run(capsys, "measure", "--family", "kociumaka:n=16", "--measures", "r,runs")[1]
    header, line = out.strip().splitlines()
    assert header.startswith("source,n,delta_num,delta_den,delta,r,z,z_no,z_e,runs_w")
    assert line == "kociumaka:n=16,16,,,,8,,,,7"
    assert run(capsys, "measure")[0] == 2


def test_family(capsys, tmp_path):
    assert run(capsys, "family", "--name", "lemma1", "--param", "d=2")[1] == "cbabaa\n"
    out = tmp_path / "sys.json"
    run(capsys, "family", "--name", "lemma1", "--param", "d=2", "--emit", "system", "-o", str(out))
    assert sysio.load(out) == lemma1_system(2)
    assert run(capsys, "family", "--name", "kociumaka", "--param", "n=16", "--emit", "system")[0] == 2


def test_bruteforce(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("abab")
    code, out, _ = run(capsys, "bruteforce", "--what", "bms", "--input", str(p))
    assert code == 0 and json.loads(out)["b"] == 3
    out = json.loads(run(capsys, "bruteforce", "--what", "lsystem", "--input", str(p))[1])
    assert out["found"] and sysio.from_dict(out["system"]).length == 4
    code = run(capsys, "bruteforce", "--what", "bms", "--input", str(p), "--budget", "limit=2")[0]
    assert code == 3


def test_prefix_longer_than_expansion_fails(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(sysio.dumps(lemma1_system(2).replace(length=100)))
    assert run(capsys, "expand", "--system", str(p))[0] == 1


def test_experiment(capsys, tmp_path):
    out = tmp_path / "e.csv"
    code = run(capsys, "experiment", "--name", "zeros-one", "--grid", "16", "--seed", "9",
               "--no-timestamp", "--output", str(out))[0]
    text = out.read_text()
    assert code == 0
    assert text.startswith("# repetilab 0.1.0 experiment=zeros-one seed=9 bwt_mode=rotations\n")


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
