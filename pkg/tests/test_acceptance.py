"""Exit criteria for the package; one summary line per criterion is printed
at the end of the pytest run."""

import math
import time
from fractions import Fraction as F

import numpy as np
import pytest

from multihom.assembly import all_events, event_probability, find_extrema, probability_of_u, scan
from multihom.cli import main, table1_text
from multihom.decomposition import decompose, InputSpec, weights_from_u
from multihom.oracle import oracle_distribution
from multihom.scattering import detection_table
from multihom.spectral import OverlapModel

MODEL = OverlapModel.from_filter(4e-9, 780e-9)

TABLE1 = {
    (1, (2, 0)): (F(1, 2), F(1, 4)),
    (1, (1, 1)): (F(0), F(1, 2)),
    (2, (4, 0)): (F(3, 8), F(3, 16), F(1, 16)),
    (2, (2, 2)): (F(1, 4), F(1, 8), F(3, 8)),
}


def test_1_table1_exact(criterion, capsys):
    criterion("1 Table 1 exact reproduction (10 entries, exact + float <= 1e-14, < 1 s)")
    t0 = time.perf_counter()
    assert main(["table1"]) == 0
    printed = capsys.readouterr().out
    exact = {k: detection_table(k, exact=True) for k in (1, 2)}
    floats = {k: detection_table(k) for k in (1, 2)}
    n_entries = 0
    for (k, event), row in TABLE1.items():
        got = tuple(exact[k][j][event] for j in range(k, -1, -1))
        assert got == row
        for j, want in zip(range(k, -1, -1), row):
            assert abs(floats[k][j][event] - float(want)) <= 1e-14
        cells = "\t".join(str(v) for v in row)
        assert f"({event[0]},{event[1]})\t{cells}" in printed
        n_entries += len(row)
    assert n_entries == 10
    assert printed == table1_text()
    assert time.perf_counter() - t0 < 1.0


def test_2_hom_dip(criterion):
    criterion("2 HOM dip: P11(0)=0, P11(u=0)=1/2, curve=(1-u)/2 within 1e-12 (< 1 s)")
    t0 = time.perf_counter()
    assert event_probability(1, 1.0, (1, 1)) == 0.0
    assert probability_of_u(1, 0.0, (1, 1)) == 0.5
    xs = np.linspace(-400e-6, 400e-6, 101)
    res = scan(1, MODEL, xs, [(1, 1)])
    assert res.column((1, 1))[50] == 0.0
    assert np.max(np.abs(res.column((1, 1)) - (1 - res.alpha_sq) / 2)) <= 1e-12
    alphas = np.linspace(0, 1, 101)
    curve = [event_probability(1, a, (1, 1)) for a in alphas]
    assert np.max(np.abs(np.array(curve) - (1 - alphas**2) / 2)) <= 1e-12
    assert time.perf_counter() - t0 < 1.0


def test_3_non_monotonicity_certificate(criterion):
    criterion("3 (2,2) minimum u*=2/3 (1e-8), P*=5/24 (1e-12), below both endpoints (< 1 s)")
    t0 = time.perf_counter()
    rep = find_extrema(2, (2, 2), model=MODEL)
    assert rep.p_zero_delay == pytest.approx(1 / 4, abs=1e-15)
    assert rep.p_infinite_delay == pytest.approx(3 / 8, abs=1e-15)
    assert rep.classification == "non-monotonic"
    (ext,) = rep.extrema
    assert ext.kind == "min"
    assert abs(ext.u - 2 / 3) <= 1e-8
    assert abs(ext.p - 5 / 24) <= 1e-12
    assert ext.p < rep.p_zero_delay and ext.p < rep.p_infinite_delay
    assert ext.x[0] == -ext.x[1] and ext.x[1] > 0
    assert time.perf_counter() - t0 < 1.0


def test_4_bunching_monotonicity(criterion):
    criterion("4 bunching (N,0) strictly increasing in u for k=1..3; k=2 closed form 1e-12")
    u = np.linspace(0, 1, 1001)
    for k in (1, 2, 3):
        p = probability_of_u(k, u, (2 * k, 0))
        assert np.all(np.diff(p) > 0), k
    p2 = probability_of_u(2, u, (4, 0))
    assert np.max(np.abs(p2 - (u**2 / 16 + u / 4 + 1 / 16))) <= 1e-12


def test_5_oracle_equivalence(criterion):
    criterion("5 oracle vs assembly, k=1..3, all events, 21 alphas: max |dP| <= 1e-12 (< 10 s)")
    t0 = time.perf_counter()
    worst = 0.0
    for k in (1, 2, 3):
        for alpha in np.linspace(0, 1, 21):
            ref = oracle_distribution(k, alpha)
            for e in all_events(k):
                worst = max(worst, abs(ref.get(e, 0.0) - event_probability(k, alpha, e)))
    assert worst <= 1e-12
    assert time.perf_counter() - t0 < 10.0


def test_6_weight_structure(criterion):
    criterion("6 weights: sum 1 (1e-14) on 101 alphas, k-1 inter terms, inter peaks at u=j/k")
    alphas = np.linspace(0, 1, 101)
    fine_u = np.linspace(0, 1, 100001)
    for k in range(1, 7):
        for a in alphas:
            terms = decompose(InputSpec(k, a))
            assert abs(sum(t.weight for t in terms) - 1.0) <= 1e-14
            assert sum(t.label == "inter" for t in terms) == k - 1
        w = weights_from_u(k, fine_u)
        for i, j in enumerate(range(k, -1, -1)):
            if 0 < j < k:
                assert abs(fine_u[np.argmax(w[:, i])] - j / k) <= 1e-5


def test_7_hierarchy(criterion):
    criterion("7 (4,0) hierarchy p_indis > p_inter > p_dist (3/8 > 3/16 > 1/16)")
    t = detection_table(2, exact=True)
    assert (t[2][(4, 0)], t[1][(4, 0)], t[0][(4, 0)]) == (F(3, 8), F(3, 16), F(1, 16))
    assert t[2][(4, 0)] > t[1][(4, 0)] > t[0][(4, 0)]


def test_8_figure_pack(criterion, tmp_path):
    criterion("8 figures byte-identical across runs; W_inter dominates around u = 1/2 in weights_N4")
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["figures", "--out-dir", str(a)]) == 0
    assert main(["figures", "--out-dir", str(b)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert len(names) == 5
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()

    lines = (a / "weights_N4.csv").read_text().splitlines()
    header = lines[0].split(",")
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    col = {name: rows[:, i] for i, name in enumerate(header)}
    dominant = (col["W_inter"] > col["W_indis"]) & (col["W_inter"] > col["W_dist"])
    assert dominant.any()
    u = col["alpha_sq"]
    assert np.all((u[dominant] > 1 / 3) & (u[dominant] < 2 / 3))
    near_half = np.argmin(np.abs(u - 0.5))
    assert dominant[near_half]

    tail = (a / "probs_N4.csv").read_text().splitlines()
    h = tail[0].split(",")
    far = 5 * math.sqrt(2) * MODEL.length_scale * 1e6
    for ln in tail[1:]:
        vals = dict(zip(h, map(float, ln.split(","))))
        if abs(vals["x_um"]) >= far:
            assert abs(vals["P_2_2"] - 0.375) <= 1e-6
