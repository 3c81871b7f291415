#!/usr/bin/env python3
"""Entanglement sudden death at increasing bath temperatures.

The same initial state |1,0><1,0| is evolved under an exponential memory
kernel (gamma0 = 0.1) for three temperature pairs.  Hot baths do not merely
damp the concurrence: past a threshold it hits exactly zero at a finite time
and stays zero over an interval before (possibly) reviving toward its
steady-state value.
"""

import numpy as np

from spinbath import (
    InitialState,
    ModelParams,
    PostMarkovPropagator,
    concurrence_trajectory,
    eigensystem,
    initial_density,
    rates,
)

temperature_pairs = ((0.2, 0.5), (1.2, 1.5), (2.2, 2.5))
rho0 = initial_density(InitialState(p0=0.0, p1=0.0, p2=1.0))
t = np.linspace(0.0, 3000.0, 3001)

curves = {}
for t1, t2 in temperature_pairs:
    params = ModelParams(eps1=1.5, eps2=1.1, K=1.0, gamma1=0.001, gamma2=0.001, T1=t1, T2=t2)
    es = eigensystem(params)
    prop = PostMarkovPropagator.build(es, rates(es, params), 0.1)
    traj = concurrence_trajectory(prop, rho0, t)
    curves[(t1, t2)] = traj.concurrence

    c = traj.concurrence
    zero_spans = []
    in_zero = False
    for i in range(1, len(c)):
        if c[i] == 0.0 and c[i - 1] > 0.0:
            start = t[i]
            in_zero = True
        elif in_zero and c[i] > 0.0:
            zero_spans.append((start, t[i - 1]))
            in_zero = False
    if in_zero:
        zero_spans.append((start, t[-1]))
    if zero_spans:
        spans = ", ".join(f"[{a:.0f}, {b:.0f}]" for a, b in zero_spans[:3])
        print(f"T = ({t1}, {t2}): C_max = {c.max():.4f}, dead intervals {spans}")
    else:
        print(f"T = ({t1}, {t2}): C_max = {c.max():.4f}, no sudden death")

header = "t," + ",".join(f"T{t1}_{t2}" for t1, t2 in temperature_pairs)
table = np.column_stack([t] + list(curves.values()))
np.savetxt("sudden_death.csv", table, delimiter=",", header=header, comments="")
print("wrote sudden_death.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for (t1, t2), c in curves.items():
        ax.plot(t, c, lw=1.0, label=f"T1 = {t1}, T2 = {t2}")
    ax.set_xlabel("t")
    ax.set_ylabel("concurrence C(t)")
    ax.set_title("Hotter baths: damped entanglement and sudden death")
    ax.legend()
    fig.tight_layout()
    fig.savefig("sudden_death.png", dpi=150)
    print("wrote sudden_death.png")
