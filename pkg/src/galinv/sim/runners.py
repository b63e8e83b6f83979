"""Potential-based runs of the linear systems with residual diagnostics.

The first-order systems carry constraints, so the runner treats them as
diagnostics: potentials are reconstructed from sources by spectral Poisson
solves at every step (signs fixed so that the catalog residuals vanish for
potential fields; they are printed in each run header), time derivatives are
centered differences of consecutive solves, and the stored snapshots carry
the resulting field multiplets.  Residual infinity-norms per equation plus
energy/momentum/continuity diagnostics go to diagnostics.csv.
"""

import csv
import os

import numpy as np

from ..errors import GalinvError
from . import spectral, stencil
from .snapshot import Snapshot, write_snapshot
from .sources import check_continuity_compat, check_magnetic_compat

SIGN_CONVENTIONS = {
    "magnetic": "Lap A = -e j, Lap A0 = -e j0, H = curl A, E = dt A - grad A0",
    "electric": "Lap A4 = -e j4, E = -grad A4, curl H = e j - dt E (Coulomb gauge)",
    "extended": "Lap A = +e j, Lap A0 = +e j0, dt A4 = +div A, "
    "(B, N, W, R) = (dt A4, dt A - grad A0, -curl A, grad A4)",
}


def _vnorm(V):
    return spectral.inf_norm(V)


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(c, a):
    return tuple(c * x for x in a)


class RunResult:
    def __init__(self, system, rep, grid, sign_note):
        self.system = system
        self.rep = rep
        self.grid = grid
        self.sign_note = sign_note
        self.snapshots = []
        self.diagnostics = []  # dicts per output time

    def residual_max(self, name=None):
        vals = []
        for row in self.diagnostics:
            for k, v in row.items():
                if k.startswith("res_") and (name is None or k == "res_" + name):
                    vals.append(v)
        return max(vals) if vals else 0.0

    def write(self, outdir):
        os.makedirs(outdir, exist_ok=True)
        for i, snap in enumerate(self.snapshots):
            write_snapshot(os.path.join(outdir, "state_%04d.snap" % i), snap)
        if self.diagnostics:
            cols = list(self.diagnostics[0].keys())
            with open(os.path.join(outdir, "diagnostics.csv"), "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["# " + self.sign_note])
                w.writerow(cols)
                for row in self.diagnostics:
                    w.writerow([row[c] for c in cols])


def _output_times(t_end, dt, outputs):
    if outputs:
        return list(outputs)
    n = max(1, int(round(t_end / dt)))
    stride = max(1, n // 8)
    return [k * dt for k in range(0, n + 1, stride)]


def run_magnetic(grid, sources, t_end, dt, e=1.0, outputs=None):
    """Magnetic limit: Coulomb-gauge potentials from the current.

    At each output time: Lap A = -e j, Lap A0 = -e j0, H = curl A,
    E = dt A - grad A0 (centered in time); residuals of all four equations
    are reported.
    """
    if dt <= 0:
        raise GalinvError("dt must be positive")
    times = _output_times(t_end, dt, outputs)
    check_magnetic_compat(sources, grid, times[:: max(1, len(times) // 3)])
    res = RunResult("magnetic", "D(2,0,0)", grid, SIGN_CONVENTIONS["magnetic"])

    def potentials(t):
        j = sources.vector("j", t)
        j0 = sources.scalar("j0", t)
        A = tuple(spectral.poisson_solve(-e * c, grid) for c in j)
        A0 = spectral.poisson_solve(-e * j0, grid)
        return A, A0

    for t in times:
        Am, _ = potentials(t - dt)
        A, A0 = potentials(t)
        Ap, _ = potentials(t + dt)
        H = spectral.curl(A, grid)
        dA = tuple((p - m) / (2 * dt) for p, m in zip(Ap, Am))
        E = _vsub(dA, spectral.grad(A0, grid))
        Hm = spectral.curl(Am, grid)
        Hp = spectral.curl(Ap, grid)
        dH = tuple((p - m) / (2 * dt) for p, m in zip(Hp, Hm))
        j = sources.vector("j", t)
        j0 = sources.scalar("j0", t)
        r_far = _vsub(spectral.curl(E, grid), dH)
        r_ge = spectral.div(E, grid) - e * j0
        r_am = _vsub(spectral.curl(H, grid), _vscale(e, j))
        r_gh = spectral.div(H, grid)
        energy = grid.integrate(0.5 * sum(c * c for c in E + H))
        mom = [grid.integrate(c) for c in _cross_np(E, H)]
        res.snapshots.append(Snapshot("magnetic", "D(2,0,0)", grid.N, grid.h, t, list(E + H)))
        res.diagnostics.append(
            {
                "t": t,
                "res_F": _vnorm(r_far),
                "res_GE": spectral.inf_norm(r_ge),
                "res_AM": _vnorm(r_am),
                "res_GH": spectral.inf_norm(r_gh),
                "divcurl": _discrete_identity(A, grid),
                "energy": energy,
                "momentum_x": mom[0],
                "momentum_y": mom[1],
                "momentum_z": mom[2],
                "continuity": "",
            }
        )
    return res


def run_electric(grid, sources, t_end, dt, e=1.0, outputs=None):
    """Electric limit: E from the scalar potential, H from the curl solve."""
    if dt <= 0:
        raise GalinvError("dt must be positive")
    times = _output_times(t_end, dt, outputs)
    check_continuity_compat(sources, grid, times[:: max(1, len(times) // 3)], dt)
    res = RunResult("electric", "D(2,0,0)", grid, SIGN_CONVENTIONS["electric"])

    def efield(t):
        A4 = spectral.poisson_solve(-e * sources.scalar("j4", t), grid)
        return _vscale(-1.0, spectral.grad(A4, grid))

    for t in times:
        Em = efield(t - dt)
        E = efield(t)
        Ep = efield(t + dt)
        dE = tuple((p - m) / (2 * dt) for p, m in zip(Ep, Em))
        j = sources.vector("j", t)
        j4 = sources.scalar("j4", t)
        S = _vsub(_vscale(e, j), dE)
        H = spectral.curl_solve(S, grid)
        r_am = _vsub(tuple(a + b for a, b in zip(spectral.curl(H, grid), dE)), _vscale(e, j))
        r_ge = spectral.div(E, grid) - e * j4
        r_ce = spectral.curl(E, grid)
        r_gh = spectral.div(H, grid)
        energy = grid.integrate(0.5 * sum(c * c for c in E + H))
        mom = [grid.integrate(c) for c in _cross_np(E, H)]
        res.snapshots.append(Snapshot("electric", "D(2,0,0)", grid.N, grid.h, t, list(E + H)))
        res.diagnostics.append(
            {
                "t": t,
                "res_AM": _vnorm(r_am),
                "res_GE": spectral.inf_norm(r_ge),
                "res_CE": _vnorm(r_ce),
                "res_GH": spectral.inf_norm(r_gh),
                "divcurl": _discrete_identity(H, grid),
                "energy": energy,
                "momentum_x": mom[0],
                "momentum_y": mom[1],
                "momentum_z": mom[2],
                "continuity": "",
            }
        )
    return res


def run_extended(grid, sources, t_end, dt, e=1.0, outputs=None):
    """Ten-component system via the five-potential.

    A and A0 are Poisson-diagnosed from the current each step; A4 integrates
    dt A4 = div A by explicit midpoint; fields and all seven residuals are
    reported, plus the energy density, momentum density, and the discrete
    defect of the exact energy law (which carries the source work term
    e (B j0 - N.j)).
    """
    if dt <= 0:
        raise GalinvError("dt must be positive")
    nsteps = int(round(t_end / dt))
    check_continuity_compat(
        sources, grid, [k * dt for k in range(0, nsteps + 1, max(1, nsteps // 3))]
    )
    res = RunResult("extended", "D(3,1,1)", grid, SIGN_CONVENTIONS["extended"])

    def vecpot(t):
        j = sources.vector("j", t)
        return tuple(spectral.poisson_solve(e * c, grid) for c in j)

    def scapot(t):
        return spectral.poisson_solve(e * sources.scalar("j0", t), grid)

    out_times = sorted(set(_output_times(t_end, dt, outputs)))
    wanted = set()
    for t in out_times:
        k = int(round(t / dt))
        wanted.update((k - 1, k, k + 1))

    # integrate dt A4 = div A by explicit midpoint over the step lattice,
    # one step beyond each end so every output has t +- dt neighbors
    A4_at = {}
    A4 = spectral.poisson_solve(e * sources.scalar("j4", 0.0), grid)
    if 0 in wanted:
        A4_at[0] = A4.copy()
    if -1 in wanted:
        Ah = vecpot(-0.5 * dt)
        A4_at[-1] = A4 - dt * spectral.div(Ah, grid)
    cur = A4
    for k in range(nsteps + 1):
        if k > 0:
            Ah = vecpot((k - 0.5) * dt)
            cur = cur + dt * spectral.div(Ah, grid)
            if k in wanted:
                A4_at[k] = cur.copy()
    if (nsteps + 1) in wanted:
        Ah = vecpot((nsteps + 0.5) * dt)
        A4_at[nsteps + 1] = cur + dt * spectral.div(Ah, grid)

    def fields_at(k):
        t = k * dt
        A = vecpot(t)
        A0 = scapot(t)
        dA = tuple((p - m) / (2 * dt) for p, m in zip(vecpot(t + dt), vecpot(t - dt)))
        W = _vscale(-1.0, spectral.curl(A, grid))
        N = _vsub(dA, spectral.grad(A0, grid))
        R = spectral.grad(A4_at[k], grid)
        B = spectral.div(A, grid)  # equals dt A4 by the gauge integration
        return A, B, N, W, R

    for t in out_times:
        k = int(round(t / dt))
        A, B, N, W, R = fields_at(k)
        _, Bm, Nm, Wm, Rm = fields_at(k - 1)
        _, Bp, Np, Wp, Rp = fields_at(k + 1)
        j = sources.vector("j", t)
        j0 = sources.scalar("j0", t)
        j4 = sources.scalar("j4", t)
        dB = (Bp - Bm) / (2 * dt)
        dW = tuple((p - m) / (2 * dt) for p, m in zip(Wp, Wm))
        dR = tuple((p - m) / (2 * dt) for p, m in zip(Rp, Rm))
        row = {"t": t}
        r_C = dB - spectral.div(N, grid) - e * j0
        r_U = tuple(a + b - e * c for a, b, c in zip(dR, spectral.curl(W, grid), j))
        r_N = tuple(a + b for a, b in zip(dW, spectral.curl(N, grid)))
        r_W = _vsub(dR, spectral.grad(B, grid))
        row["res_C"] = spectral.inf_norm(r_C)
        row["res_U"] = _vnorm(r_U)
        row["res_N"] = _vnorm(r_N)
        row["res_W"] = _vnorm(r_W)
        row["res_A"] = spectral.inf_norm(spectral.div(R, grid) - e * j4)
        row["res_R"] = _vnorm(spectral.curl(R, grid))
        row["res_B"] = spectral.inf_norm(spectral.div(W, grid))
        T00 = 0.5 * (B * B + sum(c * c for c in W))
        flux = _vsub(_cross_np(N, W), tuple(B * c for c in N))
        Ta0 = tuple(B * r + c for r, c in zip(R, _cross_np(R, W)))
        row["energy"] = grid.integrate(T00)
        mom = [grid.integrate(c) for c in Ta0]
        row["momentum_x"], row["momentum_y"], row["momentum_z"] = mom
        T00m = 0.5 * (Bm * Bm + sum(c * c for c in Wm))
        T00p = 0.5 * (Bp * Bp + sum(c * c for c in Wp))
        dT = (T00p - T00m) / (2 * dt)
        work = e * (B * j0 - sum(a * b for a, b in zip(N, j)))
        cont = dT + spectral.div(flux, grid) - work
        row["continuity"] = spectral.inf_norm(cont)
        row["divcurl"] = _discrete_identity(A, grid)
        res.diagnostics.append(row)
        comps = [B] + list(N) + list(W) + list(R)
        res.snapshots.append(Snapshot("extended", "D(3,1,1)", grid.N, grid.h, t, comps))
    return res


def _cross_np(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _discrete_identity(A, grid):
    """|div_c(curl_c A)|_inf, scaled: exact central-difference identity."""
    c = stencil.curl_c(A, grid.h)
    scale = max(1.0, spectral.inf_norm(c)) / grid.h
    return spectral.inf_norm(stencil.div_c(c, grid.h)) / scale
