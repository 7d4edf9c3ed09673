import json
import os
import subprocess
import sys

import pytest

from knotcert import certify as cf
from knotcert.cli import RunConfig, main, minimal_threshold, scan_main_constants
from knotcert.codec import canonical_pd, pd_to_gauss, record_to_json, serialize_gauss, serialize_pd
from knotcert.families import torus_2p

from conftest import corpus_path

TREFOIL = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"


def lines(path):
    return [json.loads(x) for x in path.read_text().splitlines()]


def run(tmp_path, *args):
    out = tmp_path / "out.jsonl"
    code = main([*args, "--out", str(out), "--no-timestamp"])
    return code, lines(out) if out.exists() else []


def test_invariants_on_trefoil(tmp_path):
    src = tmp_path / "trefoil.txt"
    src.write_text(TREFOIL + "\n")
    code, out = run(tmp_path, "invariants", "--format", "pd", str(src))
    assert code == 0
    header, rec = out
    assert header == {"type": "run", "command": "invariants"}
    inv = rec["invariants"]
    assert (inv["a2"], inv["four_v3"], inv["det"]) == (1, 1, 3)


def test_stdin_input(corpus):
    text = f"3_1\t{TREFOIL}\n"
    res = subprocess.run([sys.executable, "-m", "knotcert.cli", "invariants", "--no-timestamp", "-"],
                         input=text, capture_output=True, text=True, check=True)
    rec = json.loads(res.stdout.splitlines()[1])
    assert rec["name"] == "3_1" and rec["invariants"]["det"] == 3
    jl = "\n".join(record_to_json(r) for r in corpus[:3]) + "\n"
    res = subprocess.run([sys.executable, "-m", "knotcert.cli", "invariants", "--format", "jsonl",
                          "--no-timestamp", "-"], input=jl, capture_output=True, text=True, check=True)
    assert [json.loads(x)["name"] for x in res.stdout.splitlines()[1:]] == [r.name for r in corpus[:3]]


def test_gauss_and_dt_inputs(tmp_path, corpus):
    g = tmp_path / "k.gauss"
    g.write_text("\n".join(f"{r.name}\t{serialize_gauss(pd_to_gauss(r.pd))}" for r in corpus[1:6]) + "\n")
    code, out = run(tmp_path, "invariants", "--format", "gauss", str(g))
    assert code == 0
    assert [r["invariants"]["det"] for r in out[1:]] == [r.expected["det"] for r in corpus[1:6]]
    d = tmp_path / "k.dt"
    d.write_text("4_1: 4 6 8 2\n")
    code, out = run(tmp_path, "invariants", "--format", "dt", str(d))
    assert code == 0 and out[1]["name"] == "4_1" and out[1]["invariants"]["det"] == 5


def test_empty_corpus(tmp_path):
    src = tmp_path / "empty.jsonl"
    src.write_text("")
    code, out = run(tmp_path, "invariants", str(src))
    assert code == 0 and out == []


def test_malformed_line_is_itemised(tmp_path, corpus):
    src = tmp_path / "bad.jsonl"
    src.write_text("\n".join([record_to_json(corpus[1]), "{nope", record_to_json(corpus[2])]) + "\n")
    code, out = run(tmp_path, "invariants", str(src))
    assert code == 2
    assert [r["ok"] for r in out[1:]] == [True, False, True]


def test_max_crossings_is_per_knot(tmp_path, corpus):
    src = tmp_path / "c.jsonl"
    src.write_text("\n".join(record_to_json(r) for r in corpus[:8]) + "\n")
    code, out = run(tmp_path, "invariants", "--max-crossings", "5", str(src))
    assert code == 2
    assert [r["ok"] for r in out[1:]] == [r.pd.c <= 5 for r in corpus[:8]]
    assert "ResourceLimit" in next(r["error"] for r in out[1:] if not r["ok"])


def test_certify_figure_eight_and_torus(tmp_path):
    src = tmp_path / "k.txt"
    src.write_text("fig8\tX[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]\n")
    code, out = run(tmp_path, "certify", "--format", "pd", str(src))
    assert code == 0
    verdicts = {c["criterion"]: c["verdict"] for c in out[1]["certificates"]}
    assert all(verdicts[c] == cf.VIOLATED for c in cf.CCS_CRITERIA)
    src.write_text("T(2,9)\t" + serialize_pd(canonical_pd(torus_2p(9).crossings)) + "\n")
    code, out = run(tmp_path, "certify", "--format", "pd", "--criterion", "main", str(src))
    assert [c["verdict"] for c in out[1]["certificates"]] == [cf.VIOLATED]
    assert out[-1]["type"] == "summary"


def test_certify_summary_counts(tmp_path):
    code, out = run(tmp_path, "certify", "--criterion", "thm-i", "--criterion", "thm-ii", corpus_path())
    assert code == 0
    summary = out[-1]["verdicts"]
    assert summary[cf.THM_I] == {cf.CERTIFIED: 100, cf.VIOLATED: 92, cf.INCONCLUSIVE: 58}
    assert summary[cf.THM_II] == {cf.CERTIFIED: 28, cf.VIOLATED: 222}


def test_parallel_equals_serial(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["certify", corpus_path(), "--jobs", "1", "--no-timestamp", "--out", str(a)]) == 0
    assert main(["certify", corpus_path(), "--jobs", "3", "--no-timestamp", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timestamp_only_in_header(tmp_path, corpus):
    src = tmp_path / "c.jsonl"
    src.write_text(record_to_json(corpus[1]) + "\n")
    out = tmp_path / "o.jsonl"
    main(["invariants", str(src), "--out", str(out)])
    first, second = lines(out)
    assert "timestamp" in first and "timestamp" not in second


def test_verify_bounds(tmp_path, corpus):
    code, out = run(tmp_path, "verify-bounds", corpus_path())
    assert code == 0 and out[-1] == {"type": "summary", "knots": 250, "violations": 0}
    bad = json.loads(record_to_json(corpus[4]))
    bad["signature"] += 2
    src = tmp_path / "bad.jsonl"
    src.write_text(json.dumps(bad) + "\n")
    code, out = run(tmp_path, "verify-bounds", str(src))
    assert code == 3
    assert out[1]["violations"] == ["signature == expected"]


def test_verify_bounds_with_det_reports_small_twist_failures(tmp_path, corpus):
    src = tmp_path / "c.jsonl"
    src.write_text(record_to_json(next(r for r in corpus if r.name == "4_1")) + "\n")
    code, out = run(tmp_path, "verify-bounds", "--with-det", str(src))
    assert code == 3 and "det-key < det" in out[1]["violations"]


def test_scan_main_constants(tmp_path):
    code, out = run(tmp_path, "scan-main-constants", "64..100")
    assert code == 0
    rows = [r for r in out if "tw" in r]
    assert len(rows) == 37 and all(r["X"] and r["Y"] and r["X_lemma"] and r["Y_lemma"] for r in rows)
    code, out = run(tmp_path, "scan-main-constants", "2..10")
    assert not any(r["Y"] for r in out if "tw" in r)
    code, out = run(tmp_path, "scan-main-constants", "10..2")
    assert [r for r in out if "tw" in r] == [] and out[-1]["threshold"] is None


def test_threshold():
    rows = scan_main_constants(40, 70)
    assert minimal_threshold(rows) == 53
    assert minimal_threshold(rows, ("X_lemma", "Y_lemma")) == 58


def test_bad_config():
    with pytest.raises(ValueError):
        RunConfig("certify", (), jobs=0)
    with pytest.raises(SystemExit):
        main(["certify", "--criterion", "bogus", corpus_path()])


def test_entry_point(tmp_path):
    env = dict(os.environ, CERTIFY_JOBS="2")
    src = tmp_path / "t.txt"
    src.write_text(TREFOIL + "\n")
    res = subprocess.run([sys.executable, "-m", "knotcert.cli", "invariants", "--format", "pd", "--no-timestamp",
                          str(src)], capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert json.loads(res.stdout.splitlines()[1])["invariants"]["det"] == 3
