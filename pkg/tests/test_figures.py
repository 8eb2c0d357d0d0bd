from pathlib import Path

import pytest

from advstd.figures import FIGURE_IDS, render_figure

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("fid", FIGURE_IDS)
def test_golden(fid):
    expected = (GOLDEN / f"{fid}.txt").read_bytes()
    assert render_figure(fid).encode("utf-8") == expected


def test_every_golden_file_has_a_figure():
    assert sorted(p.stem for p in GOLDEN.glob("*.txt")) == sorted(FIGURE_IDS)


def test_unknown_figure():
    with pytest.raises(KeyError):
        render_figure("fig2")


def test_key_lines():
    assert "  P: {aPb}" in render_figure("fig3").splitlines()
    assert "split cycle defeats: {aPb, bPc}" in render_figure("fig6")
    assert "locked: {aPb, bPc}" in render_figure("fig5")
    ex39 = render_figure("ex3.9").splitlines()[1:]
    assert [line.split()[-1] for line in ex39] == ["xNz", "zPx", "zPx", "xNz"]
