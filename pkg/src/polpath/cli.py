"""Command-line front end.

One subcommand per reproduction; data files (CSV/JSON) are the
contract and are byte-stable for a given seed, SVG plots are optional
and best-effort.  With no --out the data text goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import diffraction, hom, is_gate, nogo, pipeline, protocol, verify


def _json_line(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        print(f"wrote {out}")


def _svg_path(out) -> Path:
    return Path(out).with_suffix(".svg")


def _try_pyplot():
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("svg skipped: matplotlib is not installed", file=sys.stderr)
        return None
    return plt


def _cmd_figure2(args) -> int:
    if args.svg and args.out is None:
        print("error: --svg needs --out", file=sys.stderr)
        return 2
    grid = np.linspace(0.0, 180.0, args.steps)
    _emit(pipeline.figure2_csv(grid), args.out)
    if args.svg:
        plt = _try_pyplot()
        if plt is not None:
            rows = pipeline.figure2_data(grid)
            fig, ax = plt.subplots(figsize=(7, 4))
            ax.plot(grid, [r[1] for r in rows], label="no measurement")
            ax.plot(grid, [r[2] for r in rows], label="transmitted subcase")
            ax.plot(grid, [r[3] for r in rows], label="absorbed subcase")
            ax.plot(grid, [r[4] for r in rows], "--", label="subcase mix")
            ax.set_xlabel("far measurement angle (deg)")
            ax.set_ylabel("crossing share n_s")
            ax.legend()
            fig.tight_layout()
            fig.savefig(_svg_path(args.out))
            plt.close(fig)
            print(f"wrote {_svg_path(args.out)}")
    return 0


def _cmd_nogo(args) -> int:
    grid = np.linspace(0.0, 180.0, args.steps)
    gap = nogo.verify_nogo(n_samples=100, alpha_grid=grid, seed=args.seed)
    _emit(
        _json_line(
            {
                "max_gap": gap,
                "n_modifier_pairs": 100,
                "n_alpha": args.steps,
                "seed": args.seed,
            }
        ),
        args.out,
    )
    return 0


def _slits_curve(preset: str, case: str) -> diffraction.ScanCurve:
    geom = diffraction.PRESETS[preset]
    grid = diffraction.default_detector_grid(geom)
    if case == "navg45":
        return diffraction.normalized_average(geom, ("II_a_45", "II_b_45"), grid)
    if case == "navg90":
        return diffraction.normalized_average(geom, ("II_a_90", "II_b_90"), grid)
    return diffraction.detector_scan(geom, case, grid)


def _cmd_slits(args) -> int:
    if args.svg and args.out is None:
        print("error: --svg needs --out", file=sys.stderr)
        return 2
    curve = _slits_curve(args.preset, args.case)
    _emit(diffraction.curve_csv(curve), args.out)
    if args.svg:
        plt = _try_pyplot()
        if plt is not None:
            fig, ax = plt.subplots(figsize=(7, 4))
            ax.plot(curve.x_um, curve.intensity)
            ax.set_xlabel("detector position (um)")
            ax.set_ylabel("intensity")
            ax.set_title(f"{args.preset} {args.case}")
            fig.tight_layout()
            fig.savefig(_svg_path(args.out))
            plt.close(fig)
            print(f"wrote {_svg_path(args.out)}")
    return 0


def _cmd_phase_effect(args) -> int:
    geom = diffraction.PRESETS[args.preset]
    x_um = diffraction.PRESET_X_UM[args.preset] if args.x is None else args.x
    effect = diffraction.phase_shifter_effect(geom, x_um, args.dl1, args.dl2)
    _emit(
        _json_line(
            {
                "preset": args.preset,
                "x_um": x_um,
                "dl1_um": args.dl1,
                "dl2_um": args.dl2,
                "effect": effect,
            }
        ),
        args.out,
    )
    return 0


def _cmd_hom(args) -> int:
    st = hom.simulate_hom(args.case, args.photons, seed=args.seed)
    _emit(
        _json_line(
            {
                "case": st.case_id,
                "n": st.n_pulse_pairs,
                "coincidence_rate": st.coincidence_rate,
                "identical_fraction": st.identical_fraction,
                "non_identical_fraction": st.non_identical_fraction,
                "epsilon": st.epsilon,
            }
        ),
        args.out,
    )
    return 0


def _cmd_is_gate(args) -> int:
    _emit(
        _json_line({"case": args.case, "n_s": is_gate.run_is_case(args.case)}),
        args.out,
    )
    return 0


def _cmd_transmit(args) -> int:
    bits = tuple(int(b) for b in np.random.default_rng(args.seed).integers(0, 2, 64))
    plan = protocol.TransmissionPlan(
        bits=bits,
        photons_per_window=args.photons,
        windows_per_bit=args.windows_per_bit,
    )
    result = protocol.transmit(plan, gate=args.gate, seed=args.seed)
    if args.out is not None and str(args.out).endswith(".csv"):
        _emit(protocol.window_csv(result), args.out)
    else:
        _emit(_json_line(result.to_json_dict()), args.out)
    return 0


def _cmd_meta(args) -> int:
    try:
        ent = protocol.meta_info_scenario(
            "entangled", args.gate, args.photons, seed=args.seed, alpha_deg=args.alpha
        )
        single = protocol.meta_info_scenario(
            "single", args.gate, args.photons, seed=args.seed, alpha_deg=args.alpha
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(
        _json_line(
            {
                "gate": args.gate,
                "alpha_deg": args.alpha,
                "entangled": ent,
                "single": single,
            }
        ),
        args.out,
    )
    return 0


def _cmd_verify_all(args) -> int:
    report = verify.run_all(args.out, seed=args.seed, svg=args.svg)
    for line in report.lines():
        print(line)
    for note in report.notes:
        print(f"note: {note}")
    return 0 if report.all_passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polpath",
        description="entangled-pair path-interference simulator and self-checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("figure2", help="detection-ratio curves over the far angle")
    p.add_argument("--steps", type=int, default=181)
    p.add_argument("--out", default=None)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=_cmd_figure2)

    p = sub.add_parser("nogo", help="scaled-gate average identity gap")
    p.add_argument("--steps", type=int, default=181)
    p.add_argument("--seed", type=int, default=protocol.DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_nogo)

    p = sub.add_parser("slits", help="three-slit detector curves")
    p.add_argument("--preset", choices=sorted(diffraction.PRESETS), default="a6")
    p.add_argument(
        "--case",
        choices=sorted(diffraction.FIELD_CASES) + ["navg45", "navg90"],
        default="navg45",
    )
    p.add_argument("--out", default=None)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=_cmd_slits)

    p = sub.add_parser("phase-effect", help="two-setting shifter detection ratio")
    p.add_argument("--preset", choices=sorted(diffraction.PRESETS), default="a7")
    p.add_argument("--dl1", type=float, default=0.3)
    p.add_argument("--dl2", type=float, default=0.0)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_phase_effect)

    p = sub.add_parser("hom", help="pulsed two-photon coincidence statistics")
    p.add_argument("--case", choices=hom.CASE_IDS, default="deg90")
    p.add_argument("--photons", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=protocol.DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_hom)

    p = sub.add_parser("is-gate", help="arm-interference gate forward yield")
    p.add_argument("--case", choices=is_gate.CASE_IDS, default="deg90")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_is_gate)

    p = sub.add_parser("transmit", help="windowed link run over 64 random bits")
    p.add_argument("--gate", choices=protocol.GATE_KINDS, default="pibs")
    p.add_argument("--photons", type=int, default=1000)
    p.add_argument("--windows-per-bit", type=int, default=3)
    p.add_argument("--seed", type=int, default=protocol.DEFAULT_SEED)
    p.add_argument("--out", default=None, help=".csv for per-window table, else JSON")
    p.set_defaults(func=_cmd_transmit)

    p = sub.add_parser("meta", help="entangled-vs-single source classification")
    p.add_argument("--gate", choices=protocol.GATE_KINDS, default="pibs")
    p.add_argument("--photons", type=int, default=10_000)
    p.add_argument("--alpha", type=float, default=45.0)
    p.add_argument("--seed", type=int, default=protocol.DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_meta)

    p = sub.add_parser("verify-all", help="run every numbered self-check")
    p.add_argument("--out", default="verify_out")
    p.add_argument("--seed", type=int, default=protocol.DEFAULT_SEED)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
