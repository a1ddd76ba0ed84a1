"""Command-line surface: wire formats, render invariants, exit codes."""

import json

import pytest

from scroll_ulrich.cli import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    build_parser,
    main,
    render_json,
    render_markdown,
)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_segre_rows(capsys):
    code, out, _ = run(["classify", "--a", "0", "--b", "0", "--c", "1..3"], capsys)
    assert code == EXIT_OK
    report = json.loads(out)
    rows = report["tables"][0]["rows"]
    assert len(rows) == 18  # three cells with six bundles each
    assert report["meta"]["bundles"] == 18


def test_classify_two_bundles(capsys):
    code, out, _ = run(["classify", "--a", "1", "--b", "2", "--c", "4"], capsys)
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["meta"]["bundles"] == 2


def test_classify_skipped_cell(capsys):
    code, out, _ = run(["classify", "--a", "0", "--b", "0", "--c", "0"], capsys)
    report = json.loads(out)
    assert code == EXIT_OK
    rows = report["tables"][0]["rows"]
    assert len(rows) == 1 and rows[0][3] == "skipped"


def test_classify_normalize(capsys):
    code, out, _ = run(
        ["classify", "--a", "2", "--b", "0", "--c", "4", "--normalize"], capsys
    )
    report = json.loads(out)
    rows = report["tables"][0]["rows"]
    assert all(row[0] == 0 and row[1] == 2 and row[3] == "normalized" for row in rows)


def test_cohom_values(capsys):
    code, out, _ = run(["cohom", "--params", "0,1,2", "--div", "0,2,-3"], capsys)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["tables"][0]["rows"][0][2] == 6  # h1
    assert report["meta"]["serre_reversal_ok"] is True

    code, out, _ = run(["cohom", "--params", "0,0,1", "--div", "0,0,0"], capsys)
    assert json.loads(out)["tables"][0]["rows"][0][1:5] == [1, 0, 0, 0]

    code, out, _ = run(["cohom", "--params", "1,1,3", "--div=-1,5,9"], capsys)
    assert json.loads(out)["tables"][0]["rows"][0][1:5] == [0, 0, 0, 0]


def test_cohom_bad_inputs(capsys):
    code, _, err = run(["cohom", "--params", "0,0,0", "--div", "0,0,0"], capsys)
    assert code == EXIT_USAGE and "very ample" in err
    code, _, err = run(["cohom", "--params", "0,0,1", "--div", "1,2"], capsys)
    assert code == EXIT_USAGE


def test_chow_triple(capsys):
    code, out, _ = run(
        ["chow", "--params", "1,1,3", "--d1", "1,1,3", "--d2", "1,1,3", "--d3", "1,1,3"],
        capsys,
    )
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["meta"]["degree"] == 12
    assert report["tables"][0]["rows"][1] == ["d1.d2.d3", 12]


def test_ext_table_case2_row(capsys):
    code, out, _ = run(["ext-table", "--a", "0", "--b", "1", "--c", "3"], capsys)
    assert code == EXIT_OK
    report = json.loads(out)
    records = {t["name"]: t for t in report["tables"]}["rank2-extensions"]
    case2 = [r for r in records["rows"] if r[3] == 2]
    ext_dims = {r[8] for r in case2}
    assert 12 in ext_dims  # ext^1(L, L^U) = 3(2c - b - 1)
    preds = {t["name"]: t for t in report["tables"]}["moduli-predictions"]
    row2 = [r for r in preds["rows"] if r[3] == 2][0]
    assert row2[4] == "exact" and row2[5] == 17


def test_ext_table_case1_dim_five(capsys):
    code, out, _ = run(["ext-table", "--a", "1", "--b", "1", "--c", "3"], capsys)
    assert code == EXIT_OK
    report = json.loads(out)
    preds = {t["name"]: t for t in report["tables"]}["moduli-predictions"]
    row1 = [r for r in preds["rows"] if r[3] == 1][0]
    assert row1[4] == "exact" and row1[5] == 5


def test_tower_report(capsys):
    code, out, _ = run(
        ["tower-report", "--a", "0", "--b", "0", "--c", "1", "--rmax", "4"], capsys
    )
    assert code == EXIT_OK
    report = json.loads(out)
    chern = [t for t in report["tables"] if t["name"] == "tower-chern"][0]
    assert [row[9] for row in chern["rows"]] == [0, 5, 8, 17]
    h1 = [t for t in report["tables"] if t["name"] == "tower-h1"][0]
    assert [row[4] for row in h1["rows"]] == [3, 3, 5, 5]


def test_instanton_cli(capsys):
    code, out, _ = run(["instanton", "--c", "2"], capsys)
    assert code == EXIT_OK
    rows = json.loads(out)["tables"][0]["rows"]
    betas = [r for r in rows if r[1] == "beta"]
    assert len(betas) == 3 and all(r[7] == 9 for r in betas)


def test_json_round_trip(capsys):
    _, out, _ = run(["classify", "--a", "0", "--b", "1", "--c", "2..3"], capsys)
    parsed = json.loads(out)
    assert json.dumps(parsed, sort_keys=True, indent=2) + "\n" == out


def test_markdown_and_json_carry_identical_content(capsys):
    args = ["ext-table", "--a", "0", "--b", "0", "--c", "2"]
    _, json_out, _ = run(args, capsys)
    _, md_out, _ = run(args + ["--format", "markdown"], capsys)
    report = json.loads(json_out)

    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        return "" if v is None else str(v)

    md_rows = [
        [cell.strip() for cell in line.strip().strip("|").split("|")]
        for line in md_out.splitlines()
        if line.startswith("| ") and " --- " not in line
    ]
    json_rows = []
    for t in report["tables"]:
        json_rows.append(t["columns"])
        json_rows.extend([[fmt(v) for v in row] for row in t["rows"]])
    assert md_rows == json_rows


def test_verify_small_grid(capsys):
    code, out, err = run(["verify", "--a", "0", "--b", "1", "--c", "2..3"], capsys)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["meta"]["failed"] == 0


def test_verify_self_test_negative_control(capsys):
    code, out, err = run(
        ["verify", "--a", "0", "--b", "0", "--c", "1", "--self-test"], capsys
    )
    assert code == EXIT_VERIFY_FAILED
    report = json.loads(out)
    assert report["meta"]["failed"] == 1
    rows = [t for t in report["tables"] if t["name"] == "checks"][0]["rows"]
    assert any("self-test" in r[3] for r in rows)


def test_verify_parallel_env(capsys, monkeypatch):
    monkeypatch.setenv("SCROLL_ULRICH_JOBS", "2")
    code, out, _ = run(["verify", "--a", "0..1", "--b", "0..1", "--c", "3", "--normalize"], capsys)
    assert code == EXIT_OK


def test_empty_grid_is_usage_error(capsys):
    code, _, err = run(["verify", "--a", "0", "--b", "5", "--c", "2"], capsys)
    assert code == EXIT_USAGE


def test_bad_range_is_usage_error(capsys):
    code, _, err = run(["classify", "--a", "3..1", "--b", "0", "--c", "5"], capsys)
    assert code == EXIT_USAGE and "range" in err


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([])
    assert exc.value.code == EXIT_USAGE


def test_csv_format(capsys):
    code, out, _ = run(
        ["classify", "--a", "1", "--b", "2", "--c", "4", "--format", "csv"], capsys
    )
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("table,a,b,c,")
    assert len(lines) == 3  # header + two bundles
