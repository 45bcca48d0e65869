import json

import numpy as np
import pytest

from entangled_rates.cli import build_figure, main
from entangled_rates.io import RunManifest, read_csv, read_manifest, render_svg, write_csv, write_manifest, LinePanel
from entangled_rates.rates import AtomConfig, Geometry, rate
from entangled_rates.states import channel
from entangled_rates.sweep import Axis, SweepSpec, run_sweep


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line)


# -- rate --------------------------------------------------------------------


def test_rate_examples(capsys):
    code, out, _ = run(capsys, "rate", "--from", "s", "--to", "g", "--geometry", "free", "--d1", "0", "--d2", "0", "--omega0", "2")
    assert code == 0 and kv(out)["total"] == "0.636620"
    code, out, _ = run(capsys, "rate", "--from", "a", "--to", "g", "--geometry", "mirror", "--d1", "1", "--d2", "1", "--omega0", "2")
    assert code == 0 and float(kv(out)["total"]) == 0.0
    code, out, _ = run(
        capsys, "rate", "--from", "s", "--to", "g", "--geometry", "cavity", "--L", "7", "--d1", "2", "--d2", "5", "--omega0", "2"
    )
    assert code == 0 and float(kv(out)["total"]) == 0.0


def test_rate_json(capsys):
    code, out, _ = run(capsys, "rate", "--from", "s", "--to", "g", "--d2", "1.5", "--json")
    rec = json.loads(out)
    assert code == 0
    assert set(rec) == {"self1", "self2", "cross", "total", "channel", "geometry", "d1", "d2", "L", "omega0"}
    assert rec["total"] == rate(channel("s", "g", 2.0), AtomConfig(0.0, 1.5), Geometry.free()).total


def test_rate_wavelength_units(capsys):
    code, out, _ = run(capsys, "rate", "--from", "s", "--to", "g", "--d2", "0.25", "--units", "wavelength", "--json")
    assert json.loads(out)["d2"] == pytest.approx(np.pi / 4)


@pytest.mark.parametrize(
    "argv",
    [
        ["rate", "--from", "s", "--to", "g", "--geometry", "cavity", "--L", "7", "--d1", "8"],
        ["rate", "--from", "s", "--to", "g", "--geometry", "cavity"],
        ["rate", "--from", "s", "--to", "g", "--geometry", "mirror", "--d1", "-1"],
        ["rate", "--from", "x", "--to", "g"],
        ["rate", "--from", "s", "--to", "g", "--omega0", "0"],
        ["figure", "fig9"],
        ["scan"],
        ["scan", "--axis", "d:0:1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv, tmp_path):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["rate", "--geometry", "torus"])
    assert exc.value.code == 2


# -- scan --------------------------------------------------------------------


def test_scan_free_columns(capsys, tmp_path):
    out = tmp_path / "free.csv"
    code, _, _ = run(capsys, "scan", "--axis", "d:0:6:60", "--units", "wavelength", "--out", str(out))
    assert code == 0
    header = out.read_text().splitlines()[0].split(",")
    assert header[:1] == ["d"] and "rate_sg_total" in header and "rate_ag_total" in header


def test_scan_cavity_row_major(capsys, tmp_path):
    out = tmp_path / "cav.csv"
    run(capsys, "scan", "--geometry", "cavity", "--L", "7", "--axis", "d1:0:7:5", "--axis2", "d2:0:7:4", "--out", str(out))
    data = read_csv(out)
    assert list(data)[:2] == ["d1", "d2"]
    assert len(data["d1"]) == 20
    assert np.all(data["d1"][:4] == data["d1"][0])


def test_scan_config_and_override(capsys, tmp_path):
    cfg = tmp_path / "scan.ini"
    out = tmp_path / "cfg.csv"
    cfg.write_text(f"geometry = mirror\nchannels = sg\naxis = d1:0:2:10\nd2 = 0.5\nout = {out}\n")
    assert run(capsys, "scan", "--config", str(cfg))[0] == 0
    data = read_csv(out)
    assert "rate_sg_total" in data and "rate_ag_total" not in data
    assert run(capsys, "scan", "--config", str(cfg), "--channels", "ag")[0] == 0
    assert "rate_ag_total" in read_csv(out)


def test_scan_manifest_rerun_is_byte_identical(capsys, tmp_path):
    out = tmp_path / "first.csv"
    run(capsys, "scan", "--geometry", "cavity", "--L", "7", "--axis", "d1:0:7:12", "--axis2", "d2:0:7:12", "--out", str(out))
    manifest_path = out.with_suffix(".manifest.json")
    first = out.read_bytes()
    out.unlink()
    assert run(capsys, "scan", "--manifest", str(manifest_path))[0] == 0
    assert out.read_bytes() == first
    m = read_manifest(manifest_path)
    assert m.subcommand == "scan" and m.outputs == ["first.csv"] and len(m.digest) == 64


def test_csv_round_trip_reproduces_rates(tmp_path):
    sg = channel("s", "g", 2.0)
    spec = SweepSpec(Geometry.cavity(15.0), (sg,), Axis("d1", 0.0, 15.0, 9), Axis("d2", 0.0, 15.0, 7))
    res = run_sweep(spec)
    path = write_csv(res, tmp_path / "rt.csv")
    data = read_csv(path)
    for d1, d2, total in zip(data["d1"], data["d2"], data["rate_sg_total"]):
        assert rate(sg, AtomConfig(d1, d2), Geometry.cavity(15.0)).total == total


def test_manifest_round_trip(tmp_path):
    m = RunManifest("scan", {"b": 1, "a": [1, 2]}, outputs=["x.csv"])
    path = write_manifest(m, tmp_path / "m.json")
    back = read_manifest(path)
    assert back == m


# -- figure, verify, s-profile ----------------------------------------------


def test_figure_outputs_are_byte_identical(capsys, tmp_path):
    for name, steps in (("fig2", 120), ("fig3", 10), ("fig4", 101), ("fig5", 12)):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(capsys, "figure", name, "--outdir", str(a), "--steps", str(steps))[0] == 0
        assert run(capsys, "figure", name, "--outdir", str(b), "--steps", str(steps))[0] == 0
        for ext in ("svg", "csv"):
            assert (a / f"{name}.{ext}").read_bytes() == (b / f"{name}.{ext}").read_bytes()


def test_figure_contents():
    _, svg2 = build_figure("fig2", 50)
    assert svg2.count("<polyline") == 2
    assert 'stroke-dasharray="6,4"' in svg2
    assert 'viewBox="0 0 800 600"' in svg2
    res5, svg5 = build_figure("fig5", 8)
    assert svg5.count("R_sg / g^2, L =") == 3 and svg5.count("R_ag / g^2, L =") == 3
    assert sorted(set(res5.coords["L"])) == [7.0, 15.0, 23.0]
    res4, svg4 = build_figure("fig4", 51)
    assert svg4.count("<polyline") == 3


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "100", "--seed", "42")
    assert code == 0 and "0 fail" in out
    code, out, _ = run(capsys, "verify", "--samples", "1", "--force-resonance")
    assert code == 0 and "flagged" in out and "0 fail" in out
    code, out, _ = run(capsys, "verify", "--samples", "3", "--tolerance", "0", "--quadrature-samples", "0")
    assert code == 1 and "fail" in out


def test_s_profile_command(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert run(capsys, "s-profile", "--L", "7", "15", "--z-steps", "21", "--out", str(out))[0] == 0
    data = read_csv(out)
    assert len(data["S"]) == 42
    assert out.with_suffix(".manifest.json").exists()
    assert run(capsys, "s-profile", "--delta-omega", "1.0", "--out", str(out))[0] == 2


def test_render_svg_is_plain_text():
    svg = render_svg([LinePanel("t", "x", "y", [([0, 1], [0, 1], "dotted", "a<b")])], 1, 1)
    assert svg.startswith("<?xml") and svg.endswith("</svg>\n")
    assert "a&lt;b" in svg
