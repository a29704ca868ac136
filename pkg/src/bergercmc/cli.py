"""Command-line frontend: constants, classifications, figure data, selftest.

Exit codes: 0 success, 2 configuration errors, 3 numerical-contract
failures (with the failing invariant named).  Output is byte-stable across
runs for identical configurations; CSV floats use the shortest round-trip
representation.  The default output directory is BERGERCMC_OUT or the
current directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import selfcheck
from .ambient import ContractViolation, total_volume
from .cmc_spheres import (ConsistencyError, QuadratureError, ReconstructionError,
                          area_sphere, is_embedded, reconstruct_meridian)
from .isoperimetry import (crossing_alpha, isoperimetric_candidate,
                           sphere_profile, torus_profile)
from .regions import alpha_curve_csv, critical_constants, theorem_area_note
from .stability import (alpha0, classify_sphere, jacobi_spectrum,
                        sphere_stability_boundary)
from .svgplot import polyline_svg
from .tori import (CutoffError, classify_torus, lambda1_closed_form, torus_data,
                   torus_spectrum, torus_stability_threshold)

NUMERICAL_ERRORS = (ConsistencyError, ReconstructionError, QuadratureError,
                    CutoffError)


def _outdir(args) -> Path:
    out = Path(args.out or os.environ.get("BERGERCMC_OUT", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_boundary_csv(path, rows, header):
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def cmd_constants(args) -> int:
    a0 = alpha0()
    t0, a1, ah = critical_constants()
    ca = crossing_alpha()
    for name, val in (("alpha0", a0), ("alpha1", a1), ("t0", t0),
                      ("alpha_hyperbolic", ah), ("crossing_alpha", ca)):
        print(f"{name} = {val:.12g}")
    return 0


def cmd_sphere(args) -> int:
    verdict = classify_sphere(args.alpha, args.H)
    area = area_sphere(args.alpha, args.H)
    spec = jacobi_spectrum(args.alpha, args.H, k_max=args.k_max, n=args.n)
    print(f"sphere alpha={args.alpha:.12g} H={args.H:.12g}")
    print(f"verdict = {'stable' if verdict.stable else 'unstable'}")
    print(f"koiso_integral = {verdict.margin:.12g}")
    print(f"area = {area:.12g}")
    print(f"index = {spec.index}")
    print(f"nullity = {spec.nullity}")
    print(f"spectral_gap = {spec.gap:.12g}")
    out = _outdir(args) / f"sphere_spectrum_alpha{args.alpha:g}_H{args.H:g}.csv"
    spec.to_csv(out)
    print(f"wrote {out}")
    if args.meridian_n:
        m = reconstruct_meridian(args.alpha, args.H, (-args.x_max, args.x_max),
                                 args.meridian_n)
        r = is_embedded(m)
        tag = ("embedded" if r.embedded else
               "non-embedded" if r.embedded is False else "undecided")
        print(f"embeddedness = {tag} (margin {r.margin:.6g}, "
              f"crossings {r.crossings})")
        mpath = _outdir(args) / f"meridian_alpha{args.alpha:g}_H{args.H:g}.csv"
        m.to_csv(mpath)
        print(f"wrote {mpath}")
    return 0


def cmd_torus(args) -> int:
    verdict = classify_torus(args.alpha, args.H)
    lam1 = lambda1_closed_form(args.alpha, args.H)
    td = torus_data(args.alpha, args.H)
    spec = torus_spectrum(td, N=args.N)
    if abs(spec.lambda1 - lam1) > 1e-10 * max(1.0, lam1):
        raise ConsistencyError(
            f"torus lambda1: enumeration {spec.lambda1} vs closed form {lam1}")
    print(f"torus alpha={args.alpha:.12g} H={args.H:.12g}")
    print(f"verdict = {'stable' if verdict.stable else 'unstable'}")
    print(f"lambda1 = {lam1:.12g}")
    print(f"jacobi_margin = {verdict.margin:.12g}")
    out = _outdir(args) / f"torus_spectrum_alpha{args.alpha:g}_H{args.H:g}.csv"
    spec.to_csv(out)
    print(f"wrote {out}")
    return 0


def cmd_regions(args) -> int:
    out = _outdir(args)
    a0 = alpha0()
    t0, a1, ah = critical_constants()
    print(f"t0 = {t0:.12g}")
    print(f"alpha1 = {a1:.12g}")
    print(f"alpha_hyperbolic = {ah:.12g}")
    print(theorem_area_note())

    grid2 = np.linspace(a0 * 0.02, a0 * 0.995, args.n)
    rows2 = sphere_stability_boundary(grid2)
    _write_boundary_csv(out / "figure2_sphere_boundary.csv", rows2, "alpha,H_of_alpha")

    grid3 = np.linspace(0.004, 1.0 / 3.0, args.n)
    rows3 = [(a, torus_stability_threshold(a)) for a in grid3]
    _write_boundary_csv(out / "figure3_torus_boundary.csv", rows3, "alpha,H_threshold")

    alpha_curve_csv(out / "alpha_roots.csv")
    if args.format == "csv+svg":
        polyline_svg(out / "figure2_sphere_boundary.svg",
                     [(rows2[:, 0], rows2[:, 1], "H(alpha)")],
                     title="Sphere stability boundary", xlabel="alpha", ylabel="H")
        r3 = np.asarray(rows3)
        polyline_svg(out / "figure3_torus_boundary.svg",
                     [(r3[:, 0], r3[:, 1], "H*(alpha)")],
                     title="Torus stability boundary", xlabel="alpha", ylabel="H")
    print(f"wrote {out / 'figure2_sphere_boundary.csv'}")
    print(f"wrote {out / 'figure3_torus_boundary.csv'}")
    print(f"wrote {out / 'alpha_roots.csv'}")
    return 0


def cmd_embeddedness(args) -> int:
    out = _outdir(args)
    alphas = [float(a) for a in args.alphas.split(",")]
    Hs = [float(h) for h in args.Hs.split(",")]
    rows = []
    for a in alphas:
        for H in Hs:
            m = reconstruct_meridian(a, H, (-args.x_max, args.x_max), args.n)
            r = is_embedded(m)
            flag = 1 if r.embedded else (0 if r.embedded is False else -1)
            rows.append((a, H, flag, r.margin))
            print(f"alpha={a:g} H={H:g}: "
                  f"{'embedded' if flag == 1 else 'non-embedded' if flag == 0 else 'undecided'} "
                  f"(margin {r.margin:.6g})")
    path = out / "figure1_embeddedness.csv"
    with open(path, "w", newline="") as fh:
        fh.write("alpha,H,embedded,margin\n")
        for a, H, flag, margin in rows:
            fh.write(f"{a!r},{H!r},{flag},{float(margin)!r}\n")
    print(f"wrote {path}")
    return 0


def cmd_profiles(args) -> int:
    out = _outdir(args)
    alphas = ([float(a) for a in args.alphas.split(",")] if args.alphas
              else [0.25, crossing_alpha(), 0.14, 0.06])
    for a in alphas:
        sp = sphere_profile(a, H_max=args.H_max, n=args.n)
        tp = torus_profile(a, H_max=args.H_max, n=args.n)
        path = out / f"figure4_profiles_alpha{a:.6g}.csv"
        with open(path, "w", newline="") as fh:
            fh.write("family,H,area,volume\n")
            for prof in (sp, tp):
                for h, ar, v in zip(prof.H, prof.area, prof.volume):
                    fh.write(f"{prof.family},{float(h)!r},{float(ar)!r},{float(v)!r}\n")
        if sp.notes:
            print(f"alpha={a:.6g}: {sp.notes}")
        if args.format == "csv+svg":
            polyline_svg(out / f"figure4_profiles_alpha{a:.6g}.svg",
                         [(sp.volume, sp.area, "sphere"), (tp.volume, tp.area, "torus")],
                         title=f"area vs volume, alpha={a:.6g}",
                         xlabel="enclosed volume", ylabel="area")
        print(f"wrote {path}")
    return 0


def cmd_candidate(args) -> int:
    rep = isoperimetric_candidate(args.alpha, args.V)
    print(f"alpha={args.alpha:.12g} V={args.V:.12g} (total={total_volume(args.alpha):.12g})")
    print(f"candidate = {rep.family}")
    print(f"H = {rep.H:.12g}")
    print(f"area = {rep.area:.12g}")
    if rep.notes:
        print(f"notes: {rep.notes}")
    return 0


def cmd_selftest(args) -> int:
    failures = selfcheck.run(verbose=True)
    if failures:
        print(f"FAILED invariants: {', '.join(failures)}", file=sys.stderr)
        return 3
    print("all invariants passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergercmc",
                                 description="CMC sphere/torus stability in Berger spheres")
    ap.add_argument("--out", default=None, help="output directory (default: $BERGERCMC_OUT or .)")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("constants", help="the five reproduced constants")

    sp = sub.add_parser("sphere", help="classify a CMC sphere, spectrum + area")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--H", type=float, required=True)
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--n", type=int, default=4000)
    sp.add_argument("--meridian-n", type=int, default=0,
                    help="also reconstruct the meridian on this many samples "
                         "(CSV export + embeddedness verdict)")
    sp.add_argument("--x-max", type=float, default=8.0)

    tp = sub.add_parser("torus", help="classify a CMC flat torus, lambda1 + spectrum")
    tp.add_argument("--alpha", type=float, required=True)
    tp.add_argument("--H", type=float, required=True)
    tp.add_argument("--N", type=int, default=12)

    rg = sub.add_parser("regions", help="stability boundary curves (figures 2 and 3)")
    rg.add_argument("--n", type=int, default=60)
    rg.add_argument("--format", choices=("csv", "csv+svg"), default="csv")

    em = sub.add_parser("embeddedness", help="embeddedness scan (figure 1)")
    em.add_argument("--alphas", default="0.01,0.02,0.04,0.08,0.12")
    em.add_argument("--Hs", default="0,0.5,1,1.5,2")
    em.add_argument("--n", type=int, default=3000)
    em.add_argument("--x-max", type=float, default=9.0)

    pr = sub.add_parser("profiles", help="area/volume profiles (figure 4)")
    pr.add_argument("--alphas", default=None)
    pr.add_argument("--H-max", type=float, default=20.0)
    pr.add_argument("--n", type=int, default=300)
    pr.add_argument("--format", choices=("csv", "csv+svg"), default="csv")

    cd = sub.add_parser("candidate", help="least-area stable candidate at a volume")
    cd.add_argument("--alpha", type=float, required=True)
    cd.add_argument("--V", type=float, required=True)

    sub.add_parser("selftest", help="run the invariant suite; exit 0 iff all pass")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "constants": cmd_constants,
        "sphere": cmd_sphere,
        "torus": cmd_torus,
        "regions": cmd_regions,
        "embeddedness": cmd_embeddedness,
        "profiles": cmd_profiles,
        "candidate": cmd_candidate,
        "selftest": cmd_selftest,
    }[args.command]
    try:
        return handler(args)
    except (ContractViolation, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NUMERICAL_ERRORS as exc:
        print(f"numerical contract failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
