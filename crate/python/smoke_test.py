#!/usr/bin/env python3
"""Smoke test for the wightman_py extension module.

Builds nothing itself: run `cargo build -p wightman-py --release` first.
The script locates the cdylib in target/, exposes it under the importable
module name, and drives the main entry points end to end.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    candidates = [
        ROOT / "target" / "release" / "libwightman_py.so",
        ROOT / "target" / "debug" / "libwightman_py.so",
        ROOT / "target" / "release" / "libwightman_py.dylib",
        ROOT / "target" / "debug" / "libwightman_py.dylib",
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit(
        "no built extension found; run `cargo build -p wightman-py --release` first"
    )


def import_module():
    lib = locate_cdylib()
    stage = Path(tempfile.mkdtemp(prefix="wightman-py-"))
    shutil.copy2(lib, stage / "wightman_py.so")
    sys.path.insert(0, str(stage))
    import wightman_py  # noqa: E402

    return wightman_py


def approx(got, want, rel, what):
    if want == 0:
        ok = abs(got) < rel
    else:
        ok = abs(got - want) / abs(want) < rel
    status = "ok" if ok else "FAIL"
    print(f"  [{status}] {what}: {got:.6g} (expected {want:.6g}, rel {rel:g})")
    if not ok:
        sys.exit(1)


def main():
    w = import_module()
    print("imported", w.__name__)

    two_pi = 2.0 * math.pi

    # kernel evaluation: inertial vacuum at unit separation
    k = w.vacuum_inertial()
    re, im = k.eval(1.0, 1e-9)
    approx(re, -1.0 / (4.0 * math.pi**2), 1e-9, "vacuum kernel w(1)")

    # accelerated kernel: spectral detailed-balance ratio at the Unruh beta
    acc = w.vacuum_accelerated(1.0)
    up, _ = acc.fourier(1.0, method="closed")
    down, _ = acc.fourier(-1.0, method="closed")
    approx(up / down, math.exp(-two_pi), 1e-12, "Boltzmann ratio w~(1)/w~(-1)")
    q_up, _ = acc.fourier(1.0, method="quadrature")
    approx(q_up, up, 1e-6, "quadrature vs closed-form transform")

    # detector response and EDR temperature
    p_up, p_down = w.response(acc, 1.0, 0.01, 30.0)
    approx(p_up / p_down, math.exp(-two_pi), 0.02, "EDR at T=30")
    pairs, verdict = w.edr_sweep(acc, 1.0, 0.01, [5.0, 10.0, 20.0, 40.0])
    print(f"  sweep verdict: {verdict}")
    approx(pairs[-1][1], two_pi, 0.02, "terminal beta_hat")

    # residual checks
    approx(
        w.detailed_balance_residual(acc, two_pi, 5.0 / two_pi, 21),
        0.0,
        1e-3,
        "detailed-balance residual",
    )
    approx(
        w.anti_periodicity_residual(acc, two_pi, 5.0, 100),
        0.0,
        1e-8,
        "anti-periodicity residual",
    )

    # thermal kernel and smeared variant
    th = w.thermal_inertial(2.0)
    pairs, verdict = w.edr_sweep(th, 1.0, 0.01, [10.0, 20.0, 40.0])
    approx(pairs[-1][1], 2.0, 0.02, "thermal beta_hat")

    sm = w.smeared_accelerated(1.0, 0.01)
    p_up, p_down = w.response(sm, 1.0, 0.01, 30.0, route="direct")
    approx(-math.log(p_up / p_down), two_pi, 0.02, "smeared beta_hat at T=30")

    # derivative coupling reaches the same temperature
    d = w.derivative_coupled(acc)
    pairs, _ = w.edr_sweep(d, 1.0, 0.01, [10.0, 20.0, 40.0])
    approx(pairs[-1][1], two_pi, 0.02, "derivative-coupled beta_hat")

    # geometry + units
    approx(w.fermi_walker_drift(1.0, 10.0), 0.0, 1e-9, "Fermi-Walker drift")
    approx(w.rindler_round_trip(1.0, 1.3, 0.4, -0.2, 0.7), 0.0, 1e-12, "wedge round trip")
    approx(w.unruh_temperature(two_pi), 1.0, 1e-12, "natural Unruh temperature")
    approx(w.unruh_temperature(1e20, units="si"), 0.4055, 1e-3, "SI Unruh temperature")

    print("smoke test passed")


if __name__ == "__main__":
    main()
