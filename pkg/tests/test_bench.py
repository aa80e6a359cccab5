import math

import numpy as np
import pytest

from tucksketch.bench import (
    ALGORITHMS,
    CSV_HEADER,
    BenchReport,
    BenchRow,
    ExperimentConfig,
    build_source_tensor,
    read_csv,
    run_bench,
    write_csv,
)
from tucksketch.imageio import save_image_tensor
from tucksketch.metrics import psnr
from tucksketch.tucker import reconstruct


def small_hilbert_config(**overrides):
    base = dict(
        experiment="unit",
        source="hilbert",
        algorithms=("thosvd", "sketch"),
        rank_sets=((2, 2, 2), (4, 4, 4)),
        dims=(10, 10, 10),
        trials=3,
        base_seed=7,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_row_cardinality():
    report = run_bench(small_hilbert_config())
    # 2 ranks x 2 algorithms x 3 trials
    assert len(report.rows) == 12


def test_error_columns_reproducible():
    cfg = small_hilbert_config(algorithms=("rsthosvd", "subsketch"))
    a = run_bench(cfg)
    b = run_bench(cfg)
    for ra, rb in zip(a.rows, b.rows):
        assert ra.rel_error == rb.rel_error
        assert ra.algorithm == rb.algorithm
        assert ra.seed == rb.seed
        assert ra.wall_ms > 0 and rb.wall_ms > 0


def test_trial_seeds_xor_base():
    report = run_bench(small_hilbert_config(algorithms=("sketch",), trials=4))
    seeds = [row.seed for row in report.rows[:4]]
    assert seeds == [7 ^ 0, 7 ^ 1, 7 ^ 2, 7 ^ 3]


def test_algorithm_names_canonical():
    report = run_bench(small_hilbert_config(algorithms=tuple(ALGORITHMS)))
    names = {row.algorithm for row in report.rows}
    assert names == {
        "THOSVD",
        "STHOSVD",
        "R-STHOSVD",
        "Sketch-STHOSVD",
        "sub-Sketch-STHOSVD",
    }


def test_errors_descend_with_rank():
    cfg = small_hilbert_config(
        algorithms=("thosvd",), rank_sets=((2, 2, 2), (4, 4, 4), (6, 6, 6)), trials=1
    )
    errs = [row.rel_error for row in run_bench(cfg).rows]
    assert errs[0] > errs[1] > errs[2]


def test_aggregate_mean():
    cfg = small_hilbert_config(algorithms=("sketch",), trials=5, aggregate="mean")
    report = run_bench(cfg)
    assert len(report.rows) == 2  # one per rank tuple
    raw = run_bench(small_hilbert_config(algorithms=("sketch",), trials=5))
    for agg_row, ranks in zip(report.rows, ((2, 2, 2), (4, 4, 4))):
        members = [r.rel_error for r in raw.rows if r.ranks == ranks]
        assert agg_row.rel_error == pytest.approx(float(np.mean(members)))
        assert agg_row.seed is None


def test_gaussian_and_sparse_sources():
    g = ExperimentConfig(
        experiment="g",
        source="gaussian",
        algorithms=("sthosvd",),
        rank_sets=((3, 3, 3),),
        dims=(8, 8, 8),
    )
    assert len(run_bench(g).rows) == 1
    s = ExperimentConfig(
        experiment="s",
        source="sparse",
        algorithms=("sthosvd",),
        rank_sets=((3, 3, 3),),
        dims=(20, 20, 20),
        gamma=5.0,
    )
    assert len(run_bench(s).rows) == 1


def test_noise_fields_change_tensor():
    cfg = small_hilbert_config(algorithms=("thosvd",), trials=1)
    clean = run_bench(cfg).rows[0].rel_error
    noisy = run_bench(small_hilbert_config(algorithms=("thosvd",), trials=1, delta=1e-2)).rows[0].rel_error
    assert noisy > clean
    snr = run_bench(small_hilbert_config(algorithms=("thosvd",), trials=1, snr_db=10.0)).rows[0].rel_error
    assert snr > clean


def test_image_experiment_psnr_matches_oracle(tmp_path):
    rng = np.random.default_rng(0)
    img = rng.uniform(0, 255, size=(24, 18, 3))
    path = tmp_path / "img.ppm"
    save_image_tensor(img, path)
    cfg = ExperimentConfig(
        experiment="img",
        source="image",
        algorithms=("sthosvd",),
        rank_sets=((6, 6, 3),),
        image_path=str(path),
    )
    x, peak = build_source_tensor(cfg)
    assert peak == 255.0
    report = run_bench(cfg)
    row = report.rows[0]
    from tucksketch.config import ApproxConfig
    from tucksketch.tucker import sthosvd

    model = sthosvd(x, ApproxConfig(target_ranks=(6, 6, 3)))
    assert row.psnr == pytest.approx(psnr(x, reconstruct(model), 255.0), abs=1e-9)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        small_hilbert_config(source="nope")
    with pytest.raises(ValueError):
        small_hilbert_config(algorithms=("thosvd", "bogus"))
    with pytest.raises(ValueError):
        small_hilbert_config(rank_sets=())
    with pytest.raises(ValueError):
        small_hilbert_config(trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(
            experiment="x",
            source="image",
            algorithms=("thosvd",),
            rank_sets=((2, 2, 2),),
        )


# ------------------------------------------------------------------- CSV


def sample_report():
    return BenchReport(
        [
            BenchRow("e", "THOSVD", (10, 10, 10), None, None, None, 0.0, None, 12.5),
            BenchRow(
                "e",
                "sub-Sketch-STHOSVD",
                (10, 10, 10),
                (12, 12, 12),
                1,
                42,
                2.7354e-06,
                math.inf,
                3.25,
            ),
        ]
    )


def test_csv_header_and_formats(tmp_path):
    path = tmp_path / "r.csv"
    write_csv(sample_report(), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "experiment,algorithm,ranks,sketch_sizes,q,seed,rel_error,psnr,wall_ms"
    assert lines[1] == "e,THOSVD,10x10x10,,,,0.000000e+00,,1.250000e+01"
    assert lines[2] == (
        "e,sub-Sketch-STHOSVD,10x10x10,12x12x12,1,42,2.735400e-06,inf,3.250000e+00"
    )


def test_csv_empty_report(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv(BenchReport([]), path)
    assert path.read_text().splitlines() == [",".join(CSV_HEADER)]


def test_csv_roundtrip(tmp_path):
    path = tmp_path / "rt.csv"
    report = sample_report()
    write_csv(report, path)
    back = read_csv(path)
    assert len(back.rows) == 2
    for orig, parsed in zip(report.rows, back.rows):
        assert parsed.experiment == orig.experiment
        assert parsed.algorithm == orig.algorithm
        assert parsed.ranks == orig.ranks
        assert parsed.sketch_sizes == orig.sketch_sizes
        assert parsed.q == orig.q
        assert parsed.seed == orig.seed
        if orig.psnr is None:
            assert parsed.psnr is None
        else:
            assert parsed.psnr == orig.psnr or math.isinf(parsed.psnr)
        assert parsed.rel_error == pytest.approx(orig.rel_error, rel=1e-6)
        assert parsed.wall_ms == pytest.approx(orig.wall_ms, rel=1e-6)


def test_csv_roundtrip_of_real_run(tmp_path):
    report = run_bench(small_hilbert_config(trials=2))
    path = tmp_path / "real.csv"
    write_csv(report, path)
    back = read_csv(path)
    assert len(back.rows) == len(report.rows)
    for orig, parsed in zip(report.rows, back.rows):
        assert parsed.rel_error == pytest.approx(orig.rel_error, rel=1e-6)
        assert parsed.ranks == orig.ranks


def test_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("nope,nope\n")
    with pytest.raises(ValueError):
        read_csv(path)
