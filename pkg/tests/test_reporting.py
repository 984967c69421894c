import json

import pytest

from noma_irsa.dist import parse_distribution
from noma_irsa.frames import ScenarioConfig
from noma_irsa.harness import analyze_point, run_point_detailed, run_sweep_detailed
from noma_irsa.harness import ScenarioBase, SweepSpec
from noma_irsa.power import build_power_config
from noma_irsa.reporting import (
    CSV_COLUMNS,
    ReportError,
    build_manifest,
    config_hash,
    emit_csv,
    manifest_path,
    read_csv,
    render_csv,
    write_manifest,
)

D2 = parse_distribution("x^2")


def sample_records():
    cfg = ScenarioConfig(n_slots=100, load=0.8, epsilon=0.05, n_satellites=1,
                         dist=D2, n_frames=10, master_seed=5)
    sim = run_point_detailed(cfg)
    ana = analyze_point(cfg)
    return [sim.record, ana], [sim]


def test_header_is_stable_contract():
    assert CSV_COLUMNS == (
        "g", "k", "epsilon", "n", "dist", "frames", "users_total",
        "users_decoded", "plr", "plr_ci_low", "plr_ci_high", "plr_bound",
        "p_eps", "throughput", "eta",
    )


def test_render_csv_layout():
    records, _ = sample_records()
    text = render_csv(records)
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[-1] == ""  # trailing newline, unix line ends
    assert "\r" not in text
    # analyze sorts before simulate at the same (g, k)
    assert lines[1].split(",")[5] == "0"
    assert lines[2].split(",")[5] == "10"


def test_render_csv_nine_significant_digits():
    records, _ = sample_records()
    row = render_csv(records).split("\n")[1].split(",")
    p_eps = row[CSV_COLUMNS.index("p_eps")]
    assert p_eps == "6.14892042e-25"


def test_render_csv_rejects_empty():
    with pytest.raises(ReportError, match="no records"):
        render_csv([])


def test_csv_round_trip(tmp_path):
    records, _ = sample_records()
    out = tmp_path / "r.csv"
    emit_csv(records, out)
    back = read_csv(out)
    assert len(back) == len(records)
    # 9 significant digits re-render byte-identically
    assert render_csv(back) == out.read_text()
    for a, b in zip(back, sorted(records, key=lambda r: r.sort_key())):
        assert a.mode == b.mode
        assert a.users_decoded == b.users_decoded
        assert a.plr == pytest.approx(b.plr, rel=1e-8)


def test_read_csv_rejects_wrong_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ReportError, match="header"):
        read_csv(bad)


def test_config_hash_canonical():
    a = config_hash({"x": 1, "y": [1, 2]})
    b = config_hash({"y": [1, 2], "x": 1})
    c = config_hash({"x": 2, "y": [1, 2]})
    assert a == b
    assert a != c
    assert len(a) == 64


def test_manifest_contents(tmp_path):
    spec = SweepSpec(
        base=ScenarioBase(n_slots=100, epsilon=0.05, dist=D2,
                          power=build_power_config(1.0), n_frames=5, master_seed=3),
        loads=(0.5, 0.8),
        modes=("simulate", "analyze"),
        k_values=(1,),
    )
    records, details = run_sweep_detailed(spec)
    data = {"n_slots": 100, "epsilon": 0.05}
    man = build_manifest(records, details, data, master_seed=3, threads=2,
                         de_perspective="node")
    assert man.master_seed == 3
    assert man.config_sha256 == config_hash(data)
    assert man.backend in ("numba", "numpy")
    assert len(man.points) == 4
    sim_points = [p for p in man.points if p["mode"] == "simulate"]
    ana_points = [p for p in man.points if p["mode"] == "analyze"]
    assert all("plr_bootstrap_ci" in p for p in sim_points)
    assert all("plr_bootstrap_ci" not in p for p in ana_points)

    csv_path = tmp_path / "out.csv"
    written = write_manifest(man, csv_path)
    assert written == manifest_path(csv_path)
    assert written.name == "out.csv.manifest.json"
    loaded = json.loads(written.read_text())
    assert loaded["tool_version"] == man.tool_version
    assert loaded["points"] == list(man.points)
