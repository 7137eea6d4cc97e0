import json

import pytest

from multifan import cli

_SQUARE = """
{
  "rank": 2,
  "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
  "cones": [
    {"rays": [1, 2], "weight": 1},
    {"rays": [2, 3], "weight": 1},
    {"rays": [3, 4], "weight": 1},
    {"rays": [1, 4], "weight": 1}
  ],
  "supports": {"unit": [1, 1, 1, 1], "skew": [-1, 2, 3, 2]}
}
"""

_WEIGHTED_PLANE = """
{
  "rank": 2,
  "rays": [[1, 0], [0, 1], [-1, -2]],
  "cones": [{"rays": [1, 2]}, {"rays": [2, 3]}, {"rays": [1, 3]}],
  "supports": {"unit": [1, 1, 1], "corner": [1, 0, 0]}
}
"""

_HALF_LINE = '{"rank": 1, "rays": [[1]], "cones": [{"rays": [1]}]}'


@pytest.fixture
def square(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(_SQUARE)
    return str(path)


@pytest.fixture
def weighted(tmp_path):
    path = tmp_path / "weighted.json"
    path.write_text(_WEIGHTED_PLANE)
    return str(path)


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _report(capsys, argv, expect=0):
    code, out, err = _run(capsys, argv)
    assert code == expect, (code, err)
    return json.loads(out)


def test_validate_square(capsys, square):
    report = _report(capsys, ["validate", square])
    results = report["results"]
    assert results["complete"] is True
    assert results["degree"] == 1
    assert results["faces_per_cardinality"] == {"1": 4, "2": 4}
    assert results["supports"] == ["skew", "unit"]
    assert report["input_sha256"]


def test_validate_half_line(capsys, tmp_path):
    path = tmp_path / "half.json"
    path.write_text(_HALF_LINE)
    report = _report(capsys, ["validate", str(path)])
    assert report["results"]["pre_complete"] is False
    assert report["results"]["degree"] is None


def test_validate_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rank": 2, "rays": [[1, 0]], "cones": [{"rays": [1, 9]}]}')
    code, out, err = _run(capsys, ["validate", str(path)])
    assert code == 2
    assert "cones[0].rays[1]" in err


def test_ehrhart_polynomial_mode(capsys, square):
    report = _report(capsys, ["ehrhart", square, "unit", "--nu-check", "5"])
    assert report["results"]["mode"] == "polynomial"
    assert report["results"]["coefficients"] == [4, 4, 1]
    assert len(report["checks"]) == 5
    assert all(c["ok"] for c in report["checks"])


def test_ehrhart_quasi_polynomial_fallback(capsys, weighted):
    report = _report(capsys, ["ehrhart", weighted, "corner", "--nu-check", "4"])
    assert report["results"]["mode"] == "per-dilation-counts"
    counts = [entry["count"] for entry in report["results"]["dilations"]]
    assert counts == [2, 4, 6, 9]
    assert "warning" in report["results"]


def test_count_and_face_count(capsys, square):
    report = _report(capsys, ["count", square, "skew"])
    assert report["results"]["formula"] == 15
    assert report["results"]["bruteforce"] == 15
    report = _report(capsys, ["count", square, "unit", "--face", "1"])
    assert report["results"]["formula"] == 3
    report = _report(capsys, ["count", square, "2,1,1,1"])
    assert report["results"]["formula"] == 12


def test_volume(capsys, square):
    report = _report(capsys, ["volume", square, "unit"])
    assert report["results"]["volume"] == 4
    report = _report(capsys, ["volume", square, "unit", "--face", "2"])
    assert report["results"]["volume"] == 2


def test_todd_genus_report(capsys, tmp_path):
    path = tmp_path / "interval.json"
    path.write_text(
        '{"rank": 1, "rays": [[1], [-1]],'
        ' "cones": [{"rays": [1], "weight": 2}, {"rays": [2], "weight": 2}]}'
    )
    report = _report(capsys, ["todd", str(path)])
    assert report["results"]["genus"] == 2
    assert report["results"]["degree"] == 2
    names = [c["name"] for c in report["checks"]]
    assert "genus-equals-degree" in names


def test_morelli_face_classes(capsys, weighted):
    report = _report(
        capsys,
        ["morelli", weighted, "--k", "1", "--planes", "2", "--xs", "faces", "--seed", "5"],
    )
    plane = report["results"]["planes"][0]
    assert plane["certificates"] == [
        "rank-one-face-intersections",
        "nonzero-line-pairings",
        "nonzero-wedge-pairings",
        "face-covector-surjectivity",
    ]
    assert plane["mu"]["x1"] == {"{1}": 1, "{2}": 0, "{3}": 0}
    assert all(v == 0 for v in plane["residuals"].values())


def test_morelli_cohomology_mode(capsys, square):
    report = _report(
        capsys, ["morelli", square, "--k", "2", "--planes", "1", "--cohomology"]
    )
    for plane in report["results"]["planes"]:
        for residual in plane["residuals"].values():
            assert all(x == 0 for x in residual)


def test_morelli_reports_are_reproducible(capsys, square):
    argv = ["morelli", square, "--k", "1", "--planes", "3", "--seed", "7"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second
    _, third, _ = _run(capsys, ["morelli", square, "--k", "1", "--planes", "3", "--seed", "8"])
    assert third != first


def test_subdivide_check_document_mode(capsys, square):
    report = _report(capsys, ["subdivide-check", square, "--ray", "1,1"])
    assert len(report["results"]["children"]) == 2
    assert all(c["ok"] for c in report["checks"])


def test_subdivide_check_inline_and_noop(capsys):
    report = _report(capsys, ["subdivide-check", "1,0;0,1", "--ray", "2,1"])
    sample = report["results"]["samples"][0]
    assert set(sample["residual"]) == {"-2", "-1", "0", "1", "2"}
    assert all(v == 0 for v in sample["residual"].values())
    report = _report(capsys, ["subdivide-check", "1,0;0,1"])
    assert report["results"]["children"] == [report["results"]["parent"]]


def test_subdivide_check_rejects_outside_rays(capsys):
    code, _, err = _run(capsys, ["subdivide-check", "1,0;0,1", "--ray=-1,2"])
    assert code == 2
    assert "not strictly inside" in err


def test_unknown_support_fails(capsys, square):
    code, _, err = _run(capsys, ["count", square, "nosuch"])
    assert code == 2
    assert "unknown support" in err


def test_failed_check_exits_one(capsys, square, monkeypatch):
    monkeypatch.setattr(cli, "count_bruteforce", lambda P: 999)
    code, out, _ = _run(capsys, ["count", square, "unit"])
    assert code == 1
    assert json.loads(out)["ok"] is False
