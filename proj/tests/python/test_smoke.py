import os
import pathlib

import pytest

import hybridmem as hm

DATA = pathlib.Path(os.environ.get("HYBRIDMEM_TEST_DATA", pathlib.Path(__file__).parent.parent / "data"))


def test_parse_trace_line():
    a = hm.parse_trace_line("R 0x1000")
    assert a.op == hm.Op.Read
    assert a.address == 4096
    assert a.page == 1
    assert hm.parse_trace_line("# comment") is None
    with pytest.raises(hm.TraceParseError):
        hm.parse_trace_line("X 0x10")


def test_defaults_and_capacities():
    cfg = hm.Config()
    assert cfg.policy == "two_lru"
    assert cfg.page_factor == 64
    assert hm.derive_capacities(1000) == (75, 675)
    assert hm.Config.from_text(cfg.to_text()) == cfg
    with pytest.raises(hm.ConfigError):
        hm.Config.from_text("dram_fraction = 0\n")


def test_cost_models():
    c = hm.EventCounters()
    c.n_total = c.n_hit_dram_read = 10
    assert hm.compute_amat(c)["total"] == 50.0
    w = hm.EventCounters()
    w.n_total = w.n_hit_nvm_write = 4
    assert hm.compute_appr_dynamic(w)["total"] == 32.0
    w.n_mig_dram_to_nvm = 10
    assert hm.nvm_write_breakdown(w, 64)["migrations"] == 640


def test_synthetic_is_deterministic():
    spec = hm.SyntheticSpec(n_accesses=2000, n_pages=50, read_ratio=0.7, seed=3)
    assert hm.generate_synthetic(spec) == hm.generate_synthetic(spec)


def test_simulate_all_policies():
    spec = hm.SyntheticSpec(n_accesses=20000, n_pages=400, hot_fraction=0.15, hot_access_fraction=0.9,
                            read_ratio=0.3, seed=7)
    reports = {p: hm.simulate(policy=p, synthetic=spec, run_id=p) for p in hm.POLICIES}
    for name, r in reports.items():
        assert r["policy"] == name
        assert r["counters"]["n_total"] == 20000
    assert reports["clock_dwf"]["nvm_writes"]["breakdown"]["requests"] == 0
    assert reports["two_lru"]["nvm_writes"]["breakdown"]["faults"] == 0


def test_simulate_trace_file_and_accesses():
    r = hm.simulate(policy="dram_lru", trace_path=str(DATA / "small.trace"))
    assert r["distinct_pages"] == 5
    acc = [hm.MemoryAccess(hm.Op.Read, 0), hm.MemoryAccess(hm.Op.Write, 0)]
    r = hm.simulate(policy="dram_lru", accesses=acc)
    assert r["counters"]["n_hit_dram_write"] == 1
    with pytest.raises(ValueError):
        hm.simulate()


def test_run_plan():
    doc = hm.run_plan(str(DATA / "plan.json"))
    ids = [r["run_id"] for r in doc["runs"]]
    assert ids == sorted(ids)
    assert doc["failed_runs"] == []
    dram = next(c for c in doc["comparison"] if c["run_id"] == "dram")
    assert dram["power_vs_dram_only"] == pytest.approx(1.0)
