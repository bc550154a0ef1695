"""Command-line front end.

    gitplane curve --in cusp.json --point 0,0,1
    gitplane hulsbergen --in config.json --jump-curve --check-unstable
    gitplane monad --in pair.json --jump-divisor --instability
    gitplane chern --r 2 --c1 0 --c2 5
    gitplane replay report.json

Reports are canonical JSON (sorted keys) so equal inputs give equal bytes.
Exit status: 0 completed, 2 input error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .algebra.linalg import Subspace, random_sl
from .curves import (
    PlaneCurve,
    ProjectivePoint,
    analyze_curve,
    check_point_instability,
    instability_threshold,
    is_nonsingular,
    multiplicity_at,
)
from .hulsbergen import (
    DUAL_NAMES,
    DegenerateJumpCurve,
    DualLinePoint,
    equivariance_check,
    is_stable_config,
    jump_curve,
    jump_curve_form,
    points_on_line,
    rank2_unstable_check,
    richest_line,
    secant_vanishing,
    splitting_on_line,
)
from .monads import (
    LINE_NAMES,
    LineFunctional,
    MonadPair,
    alpha_injectivity,
    composite_components,
    h0_splitting_count,
    jump_divisor,
    k_prime,
    large_m_verdict,
    lstar_intersection,
    phi_line,
    search_destabilizing_lines,
    sl_v_instability,
)
from .serialization import (
    InputError,
    certificate_from_json,
    certificate_to_json,
    config_from_json,
    curve_from_json,
    frac_text,
    frac_to_json,
    matrix_from_json,
    matrix_to_json,
    monad_from_json,
    parse_triple,
    point_to_json,
    poly_from_json,
    poly_to_json,
    subspace_from_json,
    subspace_to_json,
    vector_from_json,
)
from .sheaves import (
    ChernData,
    euler_characteristic,
    reduced_hilbert_polynomial,
    semistable_h1_table,
)

log = logging.getLogger("gitplane")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3

COMMANDS = ("curve", "hulsbergen", "monad", "chern")


class InvariantViolation(RuntimeError):
    """A computed result failed its own consistency check."""


@dataclass
class AnalysisRequest:
    command: str
    data: dict
    options: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def input_hash(data) -> str:
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()


# ---------------------------------------------------------------------------
# per-command analysis


def _triple_json(t) -> list:
    return [frac_text(x) for x in t]


def _triple_opt(value) -> tuple | None:
    if value is None:
        return None
    if isinstance(value, str):
        return parse_triple(value)
    return tuple(vector_from_json(value, 3))


def _run_curve(req: AnalysisRequest) -> dict:
    curve = curve_from_json(req.data)
    n = curve.degree
    out: dict[str, Any] = {
        "degree": n,
        "form": str(curve.form),
        "threshold": frac_text(Fraction(2 * n, 3)),
        "required_multiplicity": instability_threshold(n),
    }
    point = _triple_opt(req.options.get("point"))
    if point is not None:
        p = ProjectivePoint(point)
        cert = check_point_instability(curve, p)
        out.update(point=point_to_json(p), multiplicity=multiplicity_at(curve, p),
                   verdict="unstable" if cert else "inconclusive",
                   certificate=certificate_to_json(cert) if cert else None)
        return out
    analysis = analyze_curve(curve)
    out.update(verdict=analysis.verdict,
               candidates=[point_to_json(p) for p in analysis.candidates],
               nonsingular=analysis.nonsingular,
               certificate=certificate_to_json(analysis.certificate)
               if analysis.certificate else None)
    if analysis.certificate:
        out["multiplicity"] = analysis.certificate.multiplicity
    return out


def _run_hulsbergen(req: AnalysisRequest) -> dict:
    datum = config_from_json(req.data)
    config = datum.config
    opts = req.options
    out: dict[str, Any] = {"n": config.n, "stable_configuration": is_stable_config(config)}
    c = config.chern_data()
    out["chern"] = {"r": c.rank, "c1": c.c1, "c2": c.c2, "chi": euler_characteristic(c)}
    if opts.get("jump_curve"):
        form = jump_curve_form(datum)
        if form.is_zero():
            raise DegenerateJumpCurve(
                "jump-curve formula is identically zero for this configuration and coefficients")
        curve = PlaneCurve(form)
        out["jump_curve"] = {
            "degree": curve.degree,
            "terms": poly_to_json(form),
            "text": form.format(DUAL_NAMES),
            "nonsingular": is_nonsingular(curve),
            "secant_vanishing": secant_vanishing(datum),
        }
    line_opt = _triple_opt(opts.get("line"))
    if opts.get("splitting"):
        if line_opt is None:
            raise InputError("--splitting needs --line")
        line = DualLinePoint(line_opt)
        d, e = splitting_on_line(config, line)
        out["splitting"] = {"line": _triple_json(line.coords),
                            "points_on_line": points_on_line(config, line),
                            "degrees": [d, e]}
    if opts.get("check_unstable"):
        line = DualLinePoint(line_opt) if line_opt is not None else richest_line(config)
        v = rank2_unstable_check(config, line, datum.coefficients)
        out["instability"] = {
            "line": _triple_json(line.coords),
            "d": v.d,
            "n": v.n,
            "verdict": v.verdict,
            "jump_curve_multiplicity": v.jump_curve_multiplicity,
            "certificate": certificate_to_json(v.curve_certificate)
            if v.curve_certificate else None,
        }
    if opts.get("equivariance"):
        mats = []
        if opts.get("matrix") is not None:
            mats.append(matrix_from_json(opts["matrix"]))
        rng = random.Random(req.seed)
        mats += [random_sl(3, rng) for _ in range(int(opts.get("random_matrices", 0)))]
        if not mats:
            raise InputError("--equivariance needs --matrix or --random-matrices")
        out["equivariance"] = [{"matrix": matrix_to_json(g), "holds": equivariance_check(datum, g)}
                               for g in mats]
    return out


def _vprime_opt(value, n_ambient: int = 3) -> Subspace | None:
    """A line ``"a,b,c"`` (V' = its kernel) or a list of spanning vectors."""
    if value is None:
        return None
    if isinstance(value, str):
        return LineFunctional(parse_triple(value)).kernel()
    if isinstance(value, dict) and "basis" in value:
        value = value["basis"]
    return subspace_from_json(value, n_ambient)


def _run_monad(req: AnalysisRequest) -> dict:
    M = monad_from_json(req.data)
    opts = req.options
    n = M.n
    out: dict[str, Any] = {"n": n, "r": M.r, "dimensions": list(M.dimensions())}
    if opts.get("check_condition"):
        if M.B is None:
            out["condition"] = {"holds": True, "vacuous": True}
        else:
            comps = composite_components(M.A, M.B)
            out["condition"] = {"holds": all(c.is_zero() for c in comps), "vacuous": False,
                                "components": [matrix_to_json(c) for c in comps]}
    if opts.get("jump_divisor"):
        D = jump_divisor(M)
        out["jump_divisor"] = {"identically_zero": D.is_zero(), "degree": n,
                               "terms": poly_to_json(D), "text": D.format(LINE_NAMES)}
    line_opt = _triple_opt(opts.get("line"))
    if opts.get("phi"):
        if line_opt is None:
            raise InputError("--phi needs --line")
        out["phi"] = {"line": _triple_json(line_opt),
                      "matrix": matrix_to_json(phi_line(M, line_opt)),
                      "h0": h0_splitting_count(M, line_opt)}
    if opts.get("instability"):
        vp = _vprime_opt(opts.get("vprime"))
        block: dict[str, Any] = {}
        if vp is None:
            search = search_destabilizing_lines(M, seed=req.seed)
            block["search"] = {
                "checked": [{"line": _triple_json(l.coords), "h0": h} for l, h in search.checked],
                "complete_for_rational_lines": search.complete_for_rational_lines,
            }
            if search.best_line is None:
                block["verdict"] = "inconclusive"
                out["instability"] = block
                return _finish_monad(M, out, opts, req)
            vp = search.best_line.kernel()
        block.update(_vprime_report(M, vp))
        out["instability"] = block
    return _finish_monad(M, out, opts, req)


def _vprime_report(M: MonadPair, vp: Subspace) -> dict:
    if vp.dim == 2:
        v = large_m_verdict(M, vp)
        return {"v_prime": subspace_to_json(vp), "dim_v_prime": 2,
                "line": _triple_json(LineFunctional.annihilating(vp).coords),
                "dim_k_prime": v.dim_k_prime, "threshold": frac_text(v.threshold),
                "dim_l_prime": v.dim_l_prime, "m_min": v.m_min,
                "chain": list(v.chain), "verdict": v.verdict,
                "k_prime": subspace_to_json(k_prime(M, vp))}
    v = sl_v_instability(M, vp)
    return {"v_prime": subspace_to_json(vp), "dim_v_prime": v.dim_v_prime,
            "dim_k_prime": v.dim_k_prime, "verdict": v.verdict,
            "lemma_violation": v.lemma_violation}


def _finish_monad(M: MonadPair, out: dict, opts: dict, req: AnalysisRequest) -> dict:
    if opts.get("validate_lemmas"):
        rng = random.Random(req.seed)
        vs = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
        vs += [tuple(rng.randint(-5, 5) or 1 for _ in range(3)) for _ in range(4)]
        rows = []
        for v in vs:
            row = {"v": _triple_json(v), "alpha_injective": alpha_injectivity(M, v)}
            if M.r < M.n:
                row["lstar_intersection"] = lstar_intersection(M, v)
            rows.append(row)
        out["lemmas"] = {
            "checks": rows,
            "violations": sum(1 for r in rows
                              if not r["alpha_injective"] or r.get("lstar_intersection", 0)),
        }
    return out


def _chern_data(req: AnalysisRequest) -> ChernData:
    d = req.data
    try:
        return ChernData(int(d["r"]), int(d["c1"]), int(d["c2"]))
    except KeyError as exc:
        raise InputError(f"chern data is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _quadratic_text(coeffs) -> str:
    parts = []
    for c, mono in zip(coeffs, ("m^2", "m", "")):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        body = str(abs(c)) + (" " + mono if mono else "")
        parts.append(f"{sign} {body}")
    text = " ".join(parts) or "0"
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _run_chern(req: AnalysisRequest) -> dict:
    c = _chern_data(req)
    p = reduced_hilbert_polynomial(c)
    out: dict[str, Any] = {
        "r": c.rank, "c1": c.c1, "c2": c.c2,
        "chi": euler_characteristic(c),
        "hilbert": {"quadratic": frac_to_json(p.quadratic), "linear": frac_to_json(p.linear),
                    "constant": frac_to_json(p.constant),
                    "text": _quadratic_text(p.coefficients())},
        "slope": frac_text(p.slope),
        "dimensions": None,
    }
    try:
        t = semistable_h1_table(c.rank, c.c2, c.c1)
        out["h1_table"] = list(t.as_tuple())
        out["vanishing"] = list(t.vanishing)
        if c.c1 == 0:
            out["dimensions"] = [c.c2, c.c2, c.c2 - c.rank]
    except ValueError as exc:
        out["h1_table"] = None
        out["h1_table_error"] = str(exc)
    return out


_RUNNERS = {"curve": _run_curve, "hulsbergen": _run_hulsbergen,
            "monad": _run_monad, "chern": _run_chern}


def run(request: AnalysisRequest, timing: bool = False) -> dict:
    """Analyse a request; the report embeds the input so it can be replayed."""
    start = time.perf_counter()
    try:
        results = _RUNNERS[request.command](request)
    except (InputError, DegenerateJumpCurve):
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    report = {
        "tool": "gitplane",
        "version": __version__,
        "command": request.command,
        "seed": request.seed,
        "options": request.options,
        "input": request.data,
        "input_sha256": input_hash(request.data),
        "results": results,
    }
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return report


# ---------------------------------------------------------------------------
# replay


def _check_curve_cert(curve: PlaneCurve, cert_json) -> bool:
    try:
        cert = certificate_from_json(cert_json)
    except InputError:
        return False
    return cert.verify(curve)


def _replay_checks(report: dict) -> bool:
    cmd = report["command"]
    res = report["results"]
    data = report["input"]
    if cmd == "curve":
        curve = curve_from_json(data)
        if res["verdict"] == "unstable":
            return res.get("certificate") is not None and _check_curve_cert(curve, res["certificate"])
        return True
    if cmd == "hulsbergen":
        datum = config_from_json(data)
        ok = True
        if "jump_curve" in res:
            jc = res["jump_curve"]
            ok &= poly_from_json(jc["terms"], jc["degree"]) == jump_curve_form(datum)
            ok &= jc["secant_vanishing"] == secant_vanishing(datum)
        if "instability" in res:
            blk = res["instability"]
            line = DualLinePoint(tuple(Fraction(x) for x in blk["line"]))
            d, _ = splitting_on_line(datum.config, line)
            ok &= d == blk["d"]
            if blk["verdict"] == "unstable":
                ok &= 3 * d > 2 * datum.config.n
                cert = blk.get("certificate")
                ok &= cert is not None and _check_curve_cert(jump_curve(datum), cert)
        for row in res.get("equivariance", []):
            ok &= equivariance_check(datum, matrix_from_json(row["matrix"])) == row["holds"]
        return bool(ok)
    if cmd == "monad":
        M = monad_from_json(data)
        blk = res.get("instability")
        if blk and "v_prime" in blk:
            vp = subspace_from_json(blk["v_prime"], 3)
            kp = k_prime(M, vp).dim
            if kp != blk["dim_k_prime"]:
                return False
            claimed = blk["verdict"].startswith("unstable")
            if claimed != (vp.dim == 2 and 3 * kp > vp.dim * M.n):
                return False
            if vp.dim == 2:
                l = LineFunctional.annihilating(vp)
                if h0_splitting_count(M, l) != kp:
                    return False
        return True
    return True


def replay(report: dict) -> bool:
    """Re-verify every certificate and re-derive the results from the input."""
    try:
        if report.get("tool") != "gitplane":
            return False
        if report.get("version") != __version__:
            log.warning("report was written by version %s, replaying with %s",
                        report.get("version"), __version__)
        if input_hash(report["input"]) != report["input_sha256"]:
            return False
        if not _replay_checks(report):
            return False
        req = AnalysisRequest(report["command"], report["input"], report.get("options", {}),
                              report.get("seed", 0))
        return run(req)["results"] == report["results"]
    except (InputError, KeyError, TypeError, ValueError):
        return False


# ---------------------------------------------------------------------------
# argument handling


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gitplane", description=__doc__.splitlines()[0] if __doc__ else None)
    ap.add_argument("--version", action="version", version=f"gitplane {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        p.add_argument("--in", dest="input", required=needs_input, help="input JSON file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["json"], default="json")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock time (reports are then not byte-stable)")

    p = sub.add_parser("curve", help="stability of a plane curve")
    common(p)
    p.add_argument("--point", help="test only this point, as x,y,z")

    p = sub.add_parser("hulsbergen", help="rank-2 bundles from point configurations")
    common(p)
    p.add_argument("--jump-curve", action="store_true")
    p.add_argument("--splitting", action="store_true")
    p.add_argument("--line", help="line a0,a1,a2 in dual coordinates")
    p.add_argument("--check-unstable", action="store_true")
    p.add_argument("--equivariance", action="store_true")
    p.add_argument("--matrix", help="JSON file with a determinant-1 3x3 matrix")
    p.add_argument("--random-matrices", type=int, default=0)

    p = sub.add_parser("monad", help="monad / Kronecker pair data")
    common(p)
    p.add_argument("--check-condition", action="store_true")
    p.add_argument("--jump-divisor", action="store_true")
    p.add_argument("--phi", action="store_true")
    p.add_argument("--line", help="line l1,l2,l3")
    p.add_argument("--instability", action="store_true")
    p.add_argument("--vprime", help="JSON file with a basis of V', or a line l1,l2,l3")
    p.add_argument("--validate-lemmas", action="store_true")

    p = sub.add_parser("chern", help="Chern-class bookkeeping")
    common(p, needs_input=False)
    p.add_argument("--r", type=int)
    p.add_argument("--c1", type=int)
    p.add_argument("--c2", type=int)

    p = sub.add_parser("replay", help="re-verify a report")
    p.add_argument("report")
    return ap


def request_from_args(args: argparse.Namespace) -> AnalysisRequest:
    opts: dict[str, Any] = {}
    if args.command == "chern":
        if args.input:
            data = _load_json(args.input)
        else:
            if None in (args.r, args.c1, args.c2):
                raise InputError("chern needs --in or all of --r, --c1, --c2")
            data = {"r": args.r, "c1": args.c1, "c2": args.c2}
        return AnalysisRequest("chern", data, opts, args.seed)
    data = _load_json(args.input)
    if args.command == "curve":
        if args.point:
            opts["point"] = args.point
    elif args.command == "hulsbergen":
        for key in ("jump_curve", "splitting", "check_unstable", "equivariance"):
            if getattr(args, key):
                opts[key] = True
        if args.line:
            opts["line"] = args.line
        if args.matrix:
            opts["matrix"] = _load_json(args.matrix)
        if args.random_matrices:
            opts["random_matrices"] = args.random_matrices
    elif args.command == "monad":
        for key in ("check_condition", "jump_divisor", "phi", "instability", "validate_lemmas"):
            if getattr(args, key):
                opts[key] = True
        if args.line:
            opts["line"] = args.line
        if args.vprime:
            opts["vprime"] = _load_json(args.vprime) if Path(args.vprime).is_file() else args.vprime
    return AnalysisRequest(args.command, data, opts, args.seed)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "replay":
            ok = replay(_load_json(args.report))
            sys.stdout.write(canonical({"replay": ok}))
            return EXIT_OK if ok else EXIT_INVARIANT
        report = run(request_from_args(args), timing=args.timing)
        if not replay(report):
            raise InvariantViolation("the report does not replay against its own input")
    except (InputError, DegenerateJumpCurve) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (InvariantViolation, AssertionError) as exc:
        log.error("invariant violation: %s", exc)
        return EXIT_INVARIANT
    text = canonical(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
