import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from convextomo.cli import run_cli
from convextomo.errors import ParseError
from convextomo.filling import FillMode, init_partition, run_filling
from convextomo.hull import Point
from convextomo.hvpoly import BAD_GUY
from convextomo.lattice import LatticeSet
from convextomo.render import (
    parse_set_file,
    render_ascii_partition,
    render_ascii_set,
    render_svg_partition,
    render_svg_set,
)

sets_in_grid = st.frozensets(
    st.tuples(st.integers(0, 5), st.integers(0, 5)).map(lambda t: Point(*t)),
    min_size=1, max_size=20,
).map(LatticeSet)


class TestParseRender:
    @given(sets_in_grid)
    @settings(max_examples=150, deadline=None)
    def test_ascii_round_trip(self, s):
        text = render_ascii_set(s, 6, 6)
        parsed, m, n = parse_set_file(text)
        assert parsed == s
        assert (m, n) == (6, 6)

    def test_ascii_orientation(self):
        text = render_ascii_set(LatticeSet.of([(0, 0), (2, 1)]), 3, 2)
        assert text.splitlines() == ["..#", "#.."]

    def test_point_list_format(self):
        parsed, m, n = parse_set_file("# 3 2\n0 0\n2 1\n")
        assert parsed == LatticeSet.of([(0, 0), (2, 1)])
        assert (m, n) == (3, 2)

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_set_file("..#\n.q.\n")
        assert exc.value.line == 2 and exc.value.column == 2

    def test_point_outside_grid(self):
        with pytest.raises(ParseError):
            parse_set_file("# 2 2\n5 0\n")

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_set_file("# a b\n")

    def test_empty_file(self):
        with pytest.raises(ParseError):
            parse_set_file("   \n")


class TestSvg:
    def test_set_svg_contains_points(self):
        svg = render_svg_set(LatticeSet.of([(0, 0), (1, 1)]), 2, 2, cell=10)
        assert svg.startswith("<svg")
        assert svg.count("<circle") == 2

    def test_partition_svg_layers(self):
        p = init_partition(15, 16, BAD_GUY.placement)
        run_filling(p, BAD_GUY.h, BAD_GUY.v, FillMode.HV_POLYOMINO)
        svg = render_svg_partition(p, cell=12, show_hull=True,
                                   correspondences=[(Point(0, 0), Point(3, 0), "h")])
        assert "<polygon" in svg  # kernel hull outline
        assert "<line" in svg
        assert svg.count("<circle") == 15 * 16


def run(args):
    import io
    from contextlib import redirect_stdout, redirect_stderr

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run_cli(args)
    return code, out.getvalue(), err.getvalue()


class TestCli:
    def test_reconstruct2_square(self):
        code, out, _ = run(["reconstruct2", "--h", "2 2", "--v", "2 2"])
        assert code == 0
        assert out.strip().splitlines() == ["##", "##"]

    def test_reconstruct1_no(self):
        code, out, _ = run(["reconstruct1", "--v", "1 5 1 5 1"])
        assert code == 1 and out.strip() == "NO"

    def test_reconstruct1_unsupported(self):
        code, _, err = run(["reconstruct1", "--v", "1 0 1"])
        assert code == 2 and "UNSUPPORTED" in err

    def test_badguy_report(self):
        code, out, _ = run(["badguy"])
        assert code == 0
        assert "switching components: 1" in out
        assert "aggregation: UNSAT" in out

    def test_badguy_svg(self, tmp_path):
        target = tmp_path / "trace.svg"
        code, out, _ = run(["badguy", "--svg", str(target)])
        assert code == 0 and target.exists()
        assert target.read_text().startswith("<svg")

    def test_xray_and_roundtrip_through_reconstruct2(self, tmp_path):
        f = tmp_path / "set.txt"
        f.write_text(".#.\n###\n.#.\n")
        code, out, _ = run(["xray", str(f)])
        assert code == 0
        lines = dict(line.split(": ") for line in out.strip().splitlines())
        code2, out2, _ = run(["reconstruct2", "--h", lines["h"], "--v", lines["v"]])
        assert code2 == 0

    def test_classify(self, tmp_path):
        f = tmp_path / "set.txt"
        f.write_text("#.\n.#\n")  # descending diagonal pair
        code, out, _ = run(["classify", str(f)])
        assert code == 0
        assert "digital_convex: yes" in out
        assert "polyomino: no" in out
        assert "fatness: fat" in out

    def test_classify_thin(self, tmp_path):
        f = tmp_path / "set.txt"
        f.write_text("..#\n.#.\n#..\n")
        code, out, _ = run(["classify", str(f)])
        assert code == 0 and "fatness: thin" in out and "witness: 1 1" in out

    def test_hvpoly_solution(self):
        code, out, _ = run(["hvpoly", "--h", "2 2", "--v", "2 2"])
        assert code == 0 and out.strip().splitlines() == ["##", "##"]

    def test_oracle_subcommands(self):
        assert run(["oracle", "dt1", "--v", "2 1 2"])[0] == 0
        assert run(["oracle", "dt1", "--v", "1 5 1 5 1"])[0] == 1
        assert run(["oracle", "dt2", "--h", "2 2", "--v", "2 2", "--fat"])[0] == 0
        assert run(["oracle", "hvpoly", "--h", "1 1", "--v", "1 1"])[0] == 1

    def test_render_ascii_and_svg(self, tmp_path):
        f = tmp_path / "set.txt"
        f.write_text("##\n##\n")
        code, out, _ = run(["render", "--input", str(f), "--format", "ascii"])
        assert code == 0 and out.strip().splitlines() == ["##", "##"]
        target = tmp_path / "out.svg"
        code, out, _ = run(["render", "--input", str(f), "--format", "svg", "--out", str(target)])
        assert code == 0 and target.read_text().startswith("<svg")

    def test_render_layers(self, tmp_path):
        f = tmp_path / "set.txt"
        f.write_text(".#.\n###\n.#.\n")
        code, out, _ = run(["render", "--input", str(f), "--format", "svg",
                            "--layers", "points,hull"])
        assert code == 0 and "<polygon" in out
        code, _, err = run(["render", "--input", str(f), "--layers", "bogus"])
        assert code == 2 and "layers" in err

    def test_parse_error_exit_2(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("..q\n")
        code, _, err = run(["render", "--input", str(f)])
        assert code == 2 and "parse error" in err

    def test_missing_file_exit_2(self):
        code, _, err = run(["xray", "/nonexistent/set.txt"])
        assert code == 2

    def test_fuzz_smoke(self):
        code, out, _ = run(["fuzz", "--seed", "1", "--count", "8", "--max-size", "4"])
        assert code == 0
        assert "0 mismatches" in out

    def test_jobs_flag(self):
        code, out, _ = run(["reconstruct2", "--h", "1 3 1", "--v", "1 3 1", "--jobs", "2"])
        assert code == 0

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "convextomo.cli", "reconstruct1", "--v", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "#\n#\n#".replace("\n", "\n")
