import numpy as np
import pytest

from entrocert.certify import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SKIPPED,
    TestConfig,
    _derived_hessian_witness,
    reverify_counterexample,
    run_suite,
    test_condition13,
    test_entropic,
    test_equivalence_13_vs_hessian,
    test_gap_superadditive,
    test_principle1_concavity,
    test_subentropic_order_k,
    uniqueness_pipeline,
    worst_exit_code,
)
from entrocert.expr import parse
from entrocert.functions import lookup

CFG = TestConfig(seed=99, samples=12)


def test_config_validation():
    with pytest.raises(ValueError):
        TestConfig(seed=1, samples=0)
    with pytest.raises(ValueError):
        TestConfig(seed=1, tol=0.0)
    with pytest.raises(ValueError):
        TestConfig(seed=1, eig_range=(0.0, 1.0))
    with pytest.raises(ValueError):
        TestConfig(seed=1, eig_range=(5.0, 1.0))
    with pytest.raises(ValueError):
        TestConfig(seed=1, dims=())
    with pytest.raises(ValueError):
        TestConfig(seed=1, dims=(9,))
    with pytest.raises(ValueError):
        TestConfig(seed=1, bipartite=((2, 9),))
    cfg = TestConfig(seed=1, dims=[2, 4], bipartite=[[2, 2]])
    assert cfg.dims == (2, 4) and cfg.bipartite == ((2, 2),)


def test_config_dict_round_trip():
    from entrocert.certify import config_from_dict

    cfg = TestConfig(seed=5, dims=(3,), samples=7, tol=1e-7, eig_range=(0.5, 2.0))
    assert config_from_dict(cfg.as_dict()) == cfg


def test_outcomes_are_deterministic():
    a = test_condition13(lookup("tlogt"), CFG)
    b = test_condition13(lookup("tlogt"), CFG)
    assert a == b  # dataclass equality, including float margins bit-for-bit


def test_thread_count_does_not_change_results(monkeypatch):
    f = lookup("neglog")
    monkeypatch.delenv("ENTROPIC_THREADS", raising=False)
    serial = test_entropic(f, CFG)
    monkeypatch.setenv("ENTROPIC_THREADS", "3")
    threaded = test_entropic(f, CFG)
    assert serial == threaded


def test_square_condition13_constant_margin():
    recorder = []
    out = test_condition13(lookup("square"), CFG, recorder=recorder)
    assert out.verdict == FAIL
    assert out.counterexample is not None
    assert len(recorder) == out.trials_run
    for _, _, _, margin, _ in recorder:
        assert margin == pytest.approx(-0.5, abs=1e-12)
    m = reverify_counterexample(lookup("square"), out.counterexample)
    assert m == pytest.approx(-0.5, abs=1e-12)


def test_fail_witness_stays_stable_as_budget_grows():
    small = test_condition13(lookup("square"), TestConfig(seed=3, samples=4))
    large = test_condition13(lookup("square"), TestConfig(seed=3, samples=30))
    assert small.verdict == large.verdict == FAIL
    # the first violating trial is unchanged, so the dumped witness is too
    assert small.counterexample == large.counterexample


def test_tlogt_quick_battery_all_pass():
    outs, fit = run_suite(lookup("tlogt"), "all", CFG)
    assert all(o.verdict == PASS for o in outs)
    assert fit is not None and fit["slope"] == pytest.approx(1.0, abs=1e-9)
    assert worst_exit_code(outs) == 0


def test_equivalence_counts_all_evaluated_instances():
    out = test_equivalence_13_vs_hessian(lookup("tlogt"), CFG)
    assert out.verdict == PASS
    assert out.trials_run == len(CFG.dims) * CFG.samples


def test_affine_degenerates_to_skipped():
    f = lookup("affine")
    assert test_condition13(f, CFG).verdict == SKIPPED
    assert test_equivalence_13_vs_hessian(f, CFG).verdict == SKIPPED
    assert test_gap_superadditive(f, CFG).verdict == SKIPPED
    assert test_principle1_concavity(f, CFG).verdict == PASS
    res = uniqueness_pipeline(f, CFG)
    assert res.outcome.verdict == SKIPPED and res.fit is None
    outs, _ = run_suite(f, "all", CFG)
    assert worst_exit_code(outs) == 2


def test_scalar_convexity_precheck_short_circuits():
    f = parse("-(t^2)").as_function()  # concave: fails before any sampling
    out = test_principle1_concavity(f, CFG)
    assert out.verdict == FAIL
    assert out.counterexample["kind"] == "scalar-convexity"
    assert reverify_counterexample(f, out.counterexample) < -CFG.tol / 2


def test_neglog_pipeline_stops_at_matrix_entropy():
    res = uniqueness_pipeline(lookup("neglog"), TestConfig(seed=7, samples=25))
    assert [s.name for s in res.stages] == [
        "principle1",
        "gap-superadditive",
        "condition13",
        "matrix-entropy",
    ]
    assert res.outcome.verdict == FAIL
    assert "matrix-entropy" in res.outcome.detail
    assert res.fit is None


def test_expected_fail_not_found_is_inconclusive():
    out = test_entropic(lookup("neglog"), TestConfig(seed=11, samples=4))
    assert out.verdict == INCONCLUSIVE
    assert out.counterexample is None


def test_subentropic_padding_orders():
    # derived escalation manufactures order-k witnesses out of an order-2 one
    f = lookup("square")
    for k in (2, 3, 4):
        res = _derived_hessian_witness(f, CFG, k)
        assert res is not None and res.margin < -CFG.tol
        payload = res.witness
        assert len(payload["rhos"]) == k and len(payload["hs"]) == k
        assert reverify_counterexample(f, payload) < -CFG.tol / 2


def test_subentropic_order_validation():
    with pytest.raises(ValueError):
        test_subentropic_order_k(lookup("tlogt"), 1, CFG)


def test_run_suite_rejects_unknown_token():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite(lookup("tlogt"), "bogus", CFG)


def test_worst_exit_code_ordering():
    from entrocert.certify import TestOutcome

    mk = lambda v: TestOutcome("x", "f", v, 0.0, 1)
    assert worst_exit_code([mk(PASS), mk(PASS)]) == 0
    assert worst_exit_code([mk(PASS), mk(INCONCLUSIVE)]) == 2
    assert worst_exit_code([mk(SKIPPED)]) == 2
    assert worst_exit_code([mk(INCONCLUSIVE), mk(FAIL)]) == 1


def test_reverify_synthetic_payload_kinds():
    tlogt = lookup("tlogt")
    exp = lookup("exp")
    square = lookup("square")
    # gap shapes that the sampled suites rarely dump, checked directly
    assert reverify_counterexample(exp, {"kind": "gap-monotone", "t": 1.0, "s": 2.0}) < 0
    assert reverify_counterexample(square, {"kind": "gap-zero", "t": 1e-6}) < 0
    assert reverify_counterexample(tlogt, {"kind": "gap-zero", "t": 1e-6}) > 0
    assert reverify_counterexample(lookup("neglog"), {"kind": "uniqueness-fit"}) < 0
    assert reverify_counterexample(tlogt, {"kind": "uniqueness-fit"}) == pytest.approx(
        0.0, abs=1e-12
    )
    with pytest.raises(ValueError, match="unknown counterexample kind"):
        reverify_counterexample(tlogt, {"kind": "nonsense"})


def test_reverify_equivalence_agreement_sign():
    from entrocert.hermitian import matrix_to_json, random_hermitian, random_pd

    rng = np.random.default_rng(8)
    rho = random_pd(2, (0.5, 2.0), rng)
    sigma = random_pd(2, (0.5, 2.0), rng)
    h = random_hermitian(2, rng)
    payload = {
        "kind": "equivalence",
        "rho": matrix_to_json(rho),
        "sigma": matrix_to_json(sigma),
        "h1": matrix_to_json(h),
        "h2": matrix_to_json(h),
    }
    # square: superoperator margin and Hessian margin are both negative
    assert reverify_counterexample(lookup("square"), payload) > 0


def test_gap_superadditive_covers_square_example():
    out = test_gap_superadditive(lookup("square"), CFG)
    assert out.verdict == FAIL
    assert out.min_margin == pytest.approx(-0.5, abs=1e-12)
    assert out.counterexample["kind"] == "gap-superadditive"
