"""Scratch calibration sweep for the default schedule preset (not shipped)."""
import itertools
import time

from annealnoise import AnnealingSchedule
from annealnoise.experiments import run_table

SEEDS = list(range(50))


def evaluate(sched):
    t0 = time.perf_counter()
    table = run_table(SEEDS, schedule=sched)
    dt = time.perf_counter() - t0
    report = {"time": dt}
    for fn in ("square", "sqrt"):
        means = [(a.noise_percent, a.mean_final_error) for a in table.aggregates if a.function == fn]
        base = means[0][1]
        impr = {lvl: (base - m) / base * 100 for lvl, m in means}
        gaps = [means[i][1] - means[i + 1][1] for i in range(len(means) - 1)]
        report[fn] = {
            "base": base,
            "impr": impr,
            "mono": all(g > 0 for g in gaps),
            "min_gap_rel": min(g / base * 100 for g in gaps),
        }
    return report


def verdict(r):
    sq = max(r["square"]["impr"][0.5], r["square"]["impr"][1.0])
    sq_ok = sq >= 10
    s = r["sqrt"]
    s_ok = s["mono"] and s["impr"][4.0] >= 10
    return sq_ok and s_ok, sq


for t0v, alpha, steps, tf, ms in itertools.product(
    (0.1,), (0.4,), (150, 250), (0.002, 0.004, 0.008), (0.08, 0.1, 0.12)
):
    sched = AnnealingSchedule(t0v, alpha, steps, tf, ms)
    r = evaluate(sched)
    ok, sq = verdict(r)
    s = r["sqrt"]
    print(
        f"t0={t0v} a={alpha} s={steps} tf={tf} ms={ms}: "
        f"sq_base={r['square']['base']:.3f} sq_best={sq:5.1f}% | "
        f"sqrt_base={s['base']:.3f} sqrt4={s['impr'][4.0]:5.1f}% mono={s['mono']} "
        f"min_gap={s['min_gap_rel']:4.2f}% | {r['time']:4.1f}s {'<< PASS' if ok else ''}"
    )
