import json

import pytest

from dialign.cli import main
from dialign.synth import make_benchmark_corpus, make_coords

HEADER = "location\tword\tsource\ttranscription\tcognate_id\texclusion"

GROUPS_6 = (
    "loc01\tFR\nloc02\tFR\nloc03\tDU-FR\nloc04\tGR\nloc05\tLS\nloc06\tLS\n"
)


@pytest.fixture(scope="module")
def corpus_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "corpus.tsv"
    path.write_text(
        make_benchmark_corpus(n_locations=6, words_per_location=8),
        encoding="utf-8",
    )
    return path


def worked_example_corpus(tmp_path):
    path = tmp_path / "corpus.tsv"
    path.write_text(
        "\n".join(
            [
                HEADER,
                "kampen\tstraat\tolder\tstrodə\tstraat\t-",
                "kampen\tstraat\tnewer\tstrɔət\tstraat\t-",
                "standard\tstraat\tstandard\tstrat\tstraat\t-",
            ]
        )
        + "\n",
        encoding="utf-8",
    )
    return path


def test_align_worked_example_binary(tmp_path):
    corpus = worked_example_corpus(tmp_path)
    out = tmp_path / "out"
    rc = main(
        ["align", "--corpus", str(corpus), "--out-dir", str(out), "--mode", "binary"]
    )
    assert rc == 0
    csv_text = (out / "change_records.csv").read_text(encoding="utf-8")
    assert csv_text.splitlines()[0] == "location,word,conv,div,alignment_length"
    assert f"kampen,straat,{2/7:.6f},{1/7:.6f},7" in csv_text
    dump = (out / "alignments.txt").read_text(encoding="utf-8")
    assert "older\ts\tt\tr\to\t-\td\tə" in dump
    assert "newer\ts\tt\tr\tɔ\tə\tt\t-" in dump
    assert "standard\ts\tt\tr\ta\t-\tt\t-" in dump
    assert "direction\tstable\tstable\tstable\tneutr.\tdiv.\tconv.\tconv." in dump


def test_align_empty_corpus_exit_code(tmp_path):
    corpus = tmp_path / "corpus.tsv"
    corpus.write_text(HEADER + "\n", encoding="utf-8")
    rc = main(
        ["align", "--corpus", str(corpus), "--out-dir", str(tmp_path / "o"), "--mode", "binary"]
    )
    assert rc == 1


def test_align_missing_file_exit_code(tmp_path):
    rc = main(
        ["align", "--corpus", str(tmp_path / "nope.tsv"), "--out-dir", str(tmp_path / "o"), "--mode", "binary"]
    )
    assert rc == 1


def test_config_errors(tmp_path, corpus_path):
    rc = main(
        ["align", "--corpus", str(corpus_path), "--out-dir", str(tmp_path / "o"), "--mode", "load"]
    )
    assert rc == 2
    rc = main(
        [
            "align", "--corpus", str(corpus_path), "--out-dir", str(tmp_path / "o"),
            "--mode", "binary", "--pmi-table", "x.tsv",
        ]
    )
    assert rc == 2


def test_pmi_subcommand_and_load_mode(tmp_path, corpus_path):
    out = tmp_path / "pmi"
    rc = main(["pmi", "--corpus", str(corpus_path), "--out-dir", str(out)])
    assert rc == 0
    log_text = (out / "pmi_log.txt").read_text(encoding="utf-8")
    assert "converged\ttrue" in log_text
    table = out / "pmi_table.tsv"
    assert table.exists()

    out2 = tmp_path / "aligned"
    rc = main(
        [
            "align", "--corpus", str(corpus_path), "--out-dir", str(out2),
            "--mode", "load", "--pmi-table", str(table),
        ]
    )
    assert rc == 0
    assert (out2 / "change_records.csv").exists()


def test_pmi_max_iter_one_logs_nonconvergence(tmp_path, corpus_path):
    out = tmp_path / "pmi1"
    rc = main(
        ["pmi", "--corpus", str(corpus_path), "--out-dir", str(out), "--max-iter", "1"]
    )
    assert rc == 0
    assert "converged\tfalse" in (out / "pmi_log.txt").read_text(encoding="utf-8")


def test_full_pipeline_determinism(tmp_path, corpus_path):
    groups = tmp_path / "groups.tsv"
    groups.write_text(GROUPS_6, encoding="utf-8")
    coords = tmp_path / "coords.tsv"
    coords.write_text(make_coords(6), encoding="utf-8")

    outputs = []
    for run in ("run1", "run2"):
        out = tmp_path / run
        rc = main(
            ["align", "--corpus", str(corpus_path), "--out-dir", str(out), "--mode", "pmi", "--seed", "7"]
        )
        assert rc == 0
        rep = tmp_path / (run + "_rep")
        rc = main(
            [
                "report", "--records", str(out / "change_records.csv"),
                "--groups", str(groups), "--coords", str(coords),
                "--out-dir", str(rep), "--n-perm", "999", "--seed", "7",
            ]
        )
        assert rc == 0
        blob = b""
        for name in ("change_records.csv", "alignments.txt", "pmi_table.tsv"):
            blob += (out / name).read_bytes()
        for name in ("summary.txt", "contrasts.csv", "geo.csv"):
            blob += (rep / name).read_bytes()
        outputs.append(blob)
    assert outputs[0] == outputs[1]


def test_report_outputs(tmp_path, corpus_path):
    out = tmp_path / "a"
    main(["align", "--corpus", str(corpus_path), "--out-dir", str(out), "--mode", "binary"])
    groups = tmp_path / "groups.tsv"
    groups.write_text(GROUPS_6, encoding="utf-8")
    rep = tmp_path / "rep"
    rc = main(
        [
            "report", "--records", str(out / "change_records.csv"),
            "--groups", str(groups), "--out-dir", str(rep),
            "--n-perm", "999", "--seed", "1",
        ]
    )
    assert rc == 0
    summary = (rep / "summary.txt").read_text(encoding="utf-8")
    assert summary.startswith("group\tn_records")
    contrasts = (rep / "contrasts.csv").read_text(encoding="utf-8").splitlines()
    assert contrasts[0] == "measure,statistic,p_value,n_permutations,direction"
    assert len(contrasts) == 3
    manifest = json.loads((rep / "run_manifest.json").read_text(encoding="utf-8"))
    assert "config" in manifest and "inputs" in manifest


def test_report_missing_group_map(tmp_path, corpus_path):
    out = tmp_path / "a"
    main(["align", "--corpus", str(corpus_path), "--out-dir", str(out), "--mode", "binary"])
    rc = main(
        [
            "report", "--records", str(out / "change_records.csv"),
            "--groups", str(tmp_path / "missing.tsv"), "--out-dir", str(tmp_path / "r"),
        ]
    )
    assert rc == 1
