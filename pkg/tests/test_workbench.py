import json

import pytest

from stabext import cli
from stabext.workbench import (
    SUITES,
    CorpusEntry,
    SuiteReport,
    Workbench,
    default_corpus_dir,
    generate_corpus,
    load_corpus,
    run_suite,
)

TAGS = ("PAPER:", "TRIVIAL:", "DERIVED:")


def test_shipped_corpus_regenerates_identically(tmp_path):
    generate_corpus(tmp_path)
    shipped = default_corpus_dir()
    for f in sorted(shipped.rglob("*.json")):
        rel = f.relative_to(shipped)
        assert (tmp_path / rel).read_text() == f.read_text(), rel


def test_every_claim_has_provenance(corpus):
    for e in corpus.values():
        for c in e.expected.get("claims", []):
            assert c["provenance"].startswith(TAGS), (e.name, c)
            if c["provenance"].startswith("DERIVED:"):
                assert len(c["provenance"]) > len("DERIVED: "), "derived values name their oracle"


def test_fixture_provenance(corpus):
    fx = corpus["qext-q2"].expected["fixture"]
    assert fx["chosen"] == {"a": 1, "b": 0, "u": ["0", "1", "1", "0", "0", "0", "0", "0"]}
    assert fx["candidates"][0]["verdict"].startswith("Infinite")


def test_entry_roundtrip(corpus, tmp_path):
    e = corpus["nak2-F3"]
    d = e.save(tmp_path)
    back = CorpusEntry.load(d)
    assert list(back.modules) == list(e.modules)
    assert all(back.modules[k].action == e.modules[k].action for k in e.modules)


def test_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("STABEXT_CORPUS", str(tmp_path))
    assert default_corpus_dir() == tmp_path
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "missing")


def test_report_statuses():
    rep = SuiteReport("x", "statement", {"window": 20})
    rep.add("a", True, value=1)
    rep.skip("b", "no range")
    assert rep.status == "pass" and rep.counts() == {"pass": 1, "fail": 0, "skipped": 1}
    rep.add("c", False)
    assert rep.status == "fail"
    rep.timings["seconds"] = 1.5
    assert "timings" not in rep.to_json() and "timings" in rep.to_json(include_timings=True)


def test_claims_suite(wb):
    rep = run_suite("claims", wb)
    assert rep.status == "pass", rep.failures


def test_reports_are_deterministic(corpus):
    texts = []
    for _ in range(2):
        wb = Workbench(load_corpus(), radius=2)
        texts.append(run_suite("tubes", wb).dumps() + run_suite("dimension_shift", wb).dumps())
    assert texts[0] == texts[1]


def test_unknown_suite(wb):
    with pytest.raises(KeyError):
        run_suite("nonsense", wb)


def test_suite_headers_describe_statements(wb):
    rep = run_suite("tubes", wb)
    assert rep.statement and rep.params["window"] == 20
    # headers state the mathematics itself rather than citing labels
    import inspect

    from stabext import workbench

    src = inspect.getsource(workbench)
    for word in ("Lemma", "Proposition", "Theorem", "Remark", "\u00a7"):
        assert word not in src


# ---------------------------------------------------------------------------
# command line


def _run(capsys, *argv):
    code = cli.main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_cli_extdeg(capsys):
    code, out = _run(capsys, "extdeg", "trunc3-F3", "M1", "--window", "20", "--guard", "8")
    assert code == 0 and out["verdict"] == "Infinite" and out["period"] == 2
    code, out = _run(capsys, "extdeg", "trunc3-F3", "A")
    assert out["verdict"] == "MinusInfinity"
    code, out = _run(capsys, "extdeg", "qext-q2", "M", "--guard", "10")
    assert (out["verdict"], out["m"]) == ("Finite", 1)


def test_cli_validate(capsys, tmp_path):
    code, out = _run(capsys, "validate", "trunc3-F3")
    assert code == 0 and out["ok"] and out["symmetric"]
    code, out = _run(capsys, "validate", "a2-F2")
    assert code == 1 and out["symmetric"] is False


def test_cli_input_errors(capsys, tmp_path):
    bad = tmp_path / "algebra.json"
    bad.write_text('{"dim": 3}')
    code, out = _run(capsys, "validate", str(bad))
    assert code == 2 and "algebra.json" in out["error"] and "field" in out["error"]
    code, out = _run(capsys, "ext", "trunc3-F3", "M1", "nope")
    assert code == 2 and "nope" in out["error"]


def test_cli_ext_and_ar(capsys, tmp_path):
    code, out = _run(capsys, "ext", "trunc3-F3", "M1", "M1", "--range", "1:4")
    assert out["ext"] == {"1": 1, "2": 1, "3": 1, "4": 1}
    target = tmp_path / "ar.json"
    code, out = _run(capsys, "ar", "trunc3-F3", "M2", "--radius", "2", "--json-out", str(target))
    assert code == 0 and out["sequence"]["alpha"] == 1
    assert len(out["component"]["vertices"]) == 2
    assert json.loads(target.read_text()) == out


def test_cli_verify(capsys):
    code, out = _run(capsys, "verify", "tubes")
    assert code == 0 and out["status"] == "pass"
    code, out = _run(capsys, "verify", "bogus")
    assert code == 2
