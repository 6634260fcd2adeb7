"""Command-line front end.

Exit codes: 0 success, 1 verification or certificate failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from . import bentset as bs
from .boolfun import AnfParseError, BooleanFunction, from_anf, is_bent, walsh_spectrum
from .modrank import M31, is_prime
from .mub import MubFormatError, MubSet, MubVerificationError, from_bent_set, product, verify_mub_set
from .unextend import BudgetError, MODULAR_MAX_H, certify_strongly_unextendible, search_unbiased_vector

log = logging.getLogger("mubcert")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20160416


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    h: Optional[int] = None
    inputs: tuple = ()
    out: Optional[Path] = None
    method: Optional[str] = None
    prime: int = M31
    tolerance: float = 1e-9
    seed: int = DEFAULT_SEED
    threads: int = 1
    verbosity: int = 0
    as_json: bool = False


def _emit(cfg: RunConfig, text: str, doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True) if cfg.as_json else text)


def _write(path: Optional[Path], text: str) -> None:
    if path is None:
        return
    try:
        path.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _load_mubs(path: Path) -> MubSet:
    try:
        return MubSet.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except MubFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _bent_set(h: int, source: str, threads: int) -> bs.BentSet:
    if source == "paper-h2":
        if h != 2:
            raise UsageError("--bent-source paper-h2 requires --h 2")
        return bs.paper_bent_set_h2()
    if not 1 <= h <= bs.MAX_H:
        raise UsageError(f"--h must be in 1..{bs.MAX_H}")
    return bs.kerdock_construct(h, threads=threads)


def cmd_construct(cfg: RunConfig, source: str) -> int:
    bent = _bent_set(cfg.h, source, cfg.threads)
    mubs = from_bent_set(bent, check=False)
    report = verify_mub_set(mubs)
    if cfg.out is not None:
        _write(cfg.out, json.dumps(mubs.to_json()) + "\n")
    _emit(cfg, f"b={mubs.b} d={mubs.d}\n{report.summary()}",
          {"b": mubs.b, "d": mubs.d, "ok": report.ok, "out": str(cfg.out) if cfg.out else None})
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(cfg: RunConfig, mode: Optional[str]) -> int:
    mubs = _load_mubs(cfg.inputs[0])
    report = verify_mub_set(mubs, mode=mode, tolerance=cfg.tolerance)
    lines = [report.summary()] + [v.describe() for v in report.violations]
    _emit(cfg, "\n".join(lines), report.to_json())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_certify(cfg: RunConfig, source: str, allow_large: bool) -> int:
    method = cfg.method or ("both" if cfg.h <= MODULAR_MAX_H else "structural")
    if method != "structural" and cfg.h > MODULAR_MAX_H and not allow_large:
        raise UsageError(f"full-matrix elimination is budgeted for h <= {MODULAR_MAX_H}; "
                         "pass --allow-large or use --method structural")
    if not is_prime(cfg.prime) or cfg.prime == 2:
        raise UsageError(f"--prime must be an odd prime, got {cfg.prime}")
    bent = _bent_set(cfg.h, source, cfg.threads)
    try:
        cert = certify_strongly_unextendible(bent, method, cfg.prime, allow_large=allow_large,
                                             threads=cfg.threads)
    except BudgetError as exc:
        raise UsageError(str(exc)) from exc
    _write(cfg.out, cert.dumps() + "\n")
    _emit(cfg, cert.summary(), cert.to_json())
    return EXIT_OK if cert.certified else EXIT_FAIL


def cmd_wht(cfg: RunConfig, anf: str, m: int) -> int:
    try:
        f = from_anf(anf, m)
    except (AnfParseError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    values = walsh_spectrum(f).tolist()
    if m % 2:
        _emit(cfg, " ".join(map(str, values)) + "\nbent: undefined for odd m",
              {"spectrum": values, "bent": None})
        return EXIT_USAGE
    bent = is_bent(f)
    _emit(cfg, " ".join(map(str, values)) + f"\nbent: {str(bent).lower()}",
          {"spectrum": values, "bent": bent})
    return EXIT_OK


def cmd_bentset(cfg: RunConfig, action: str, source: str) -> int:
    if action == "construct":
        bent = _bent_set(cfg.h, source, cfg.threads)
        _write(cfg.out, json.dumps(bent.to_json()) + "\n")
        _emit(cfg, f"h={bent.h} size={len(bent)}: pass",
              {"h": bent.h, "size": len(bent), "ok": True})
        return EXIT_OK
    path = cfg.inputs[0]
    try:
        doc = json.loads(path.read_text())
        funcs = [BooleanFunction.from_bits(s) for s in doc["functions"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    try:
        verdict = bs.verify_bent_set(funcs, threads=cfg.threads)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    _emit(cfg, verdict.describe(),
          {"ok": verdict.ok, "pairs_checked": verdict.pairs_checked,
           "pair": verdict.pair, "witness_u": verdict.witness_u,
           "witness_value": verdict.witness_value})
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_product(cfg: RunConfig) -> int:
    m1, m2 = (_load_mubs(p) for p in cfg.inputs)
    try:
        out = product(m1, m2)
    except MubVerificationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    _write(cfg.out, json.dumps(out.to_json()) + "\n")
    _emit(cfg, f"b={out.b} d={out.d}: pass", {"b": out.b, "d": out.d, "ok": True})
    return EXIT_OK


def cmd_search(cfg: RunConfig, restarts: int, iterations: int) -> int:
    mubs = _load_mubs(cfg.inputs[0])
    try:
        res = search_unbiased_vector(mubs, restarts, iterations, cfg.seed)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    _emit(cfg, f"best residual {res.residual:.6g} over {restarts} restarts",
          {"residual": res.residual, "restart_residuals": res.restart_residuals,
           "phases": res.phases.tolist()})
    return EXIT_OK


def fixture_text() -> str:
    return resources.files("mubcert").joinpath("data/c4_5mubs.json").read_text()


def build_parser() -> argparse.ArgumentParser:
    def common(defaults: bool) -> argparse.ArgumentParser:
        # accepted before or after the subcommand; the sub-level copy must not clobber
        # a value given at the top level, hence SUPPRESS there
        p = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        p.add_argument("-v", "--verbose", action="count", default=dflt(0))
        p.add_argument("--json", action="store_true", default=dflt(False),
                       help="machine-readable report on stdout")
        p.add_argument("--threads", type=int, default=dflt(1))
        return p

    parser = argparse.ArgumentParser(prog="mubcert", description=__doc__.splitlines()[0],
                                     parents=[common(True)])
    shared = common(False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return subparsers.add_parser(name, parents=[shared], **kw)

    p = add("construct", help="build the MUB set of a bent set")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--bent-source", choices=("kerdock", "paper-h2"), default="kerdock")
    p.add_argument("--out", type=Path)

    p = add("verify", help="verify a MUB set JSON file")
    p.add_argument("path", type=Path)
    p.add_argument("--mode", choices=("exact", "tolerance"))
    p.add_argument("--tolerance", type=float, default=1e-9)

    p = add("certify", help="rank certificate of strong unextendibility")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--method", choices=("modular", "structural", "both"))
    p.add_argument("--prime", type=int, default=M31)
    p.add_argument("--bent-source", choices=("kerdock", "paper-h2"), default="kerdock")
    p.add_argument("--allow-large", action="store_true",
                   help=f"permit full-matrix elimination for h > {MODULAR_MAX_H}")
    p.add_argument("--out", type=Path)

    p = add("wht", help="Walsh-Hadamard spectrum of an ANF expression")
    p.add_argument("--anf", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("bentset", help="construct or verify bent sets")
    p.add_argument("action", choices=("construct", "verify"))
    p.add_argument("path", type=Path, nargs="?", help="bent set JSON (verify)")
    p.add_argument("--h", type=int)
    p.add_argument("--source", choices=("kerdock", "paper-h2"), default="kerdock")
    p.add_argument("--out", type=Path)

    p = add("product", help="tensor-product construction of two MUB sets")
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)
    p.add_argument("--out", type=Path)

    p = add("search", help="numerical search for an unbiased vector (diagnostic)")
    p.add_argument("path", type=Path)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("fixture", help="write the bundled five-MUB set in C^4")
    p.add_argument("--out", type=Path)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig(
        command=args.command, h=getattr(args, "h", None), out=getattr(args, "out", None),
        method=getattr(args, "method", None), prime=getattr(args, "prime", M31),
        tolerance=getattr(args, "tolerance", 1e-9), seed=getattr(args, "seed", DEFAULT_SEED),
        threads=max(1, args.threads), verbosity=args.verbose, as_json=args.json,
    )
    log.debug("config %s", cfg)
    try:
        if args.command == "construct":
            return cmd_construct(cfg, args.bent_source)
        if args.command == "verify":
            cfg.inputs = (args.path,)
            return cmd_verify(cfg, args.mode)
        if args.command == "certify":
            if args.h < 1:
                raise UsageError("--h must be positive")
            return cmd_certify(cfg, args.bent_source, args.allow_large)
        if args.command == "wht":
            return cmd_wht(cfg, args.anf, args.m)
        if args.command == "bentset":
            if args.action == "construct" and args.h is None:
                raise UsageError("bentset construct needs --h")
            if args.action == "verify":
                if args.path is None:
                    raise UsageError("bentset verify needs a path")
                cfg.inputs = (args.path,)
            return cmd_bentset(cfg, args.action, args.source)
        if args.command == "product":
            cfg.inputs = (args.first, args.second)
            return cmd_product(cfg)
        if args.command == "search":
            cfg.inputs = (args.path,)
            return cmd_search(cfg, args.restarts, args.iterations)
        if args.command == "fixture":
            text = fixture_text()
            if cfg.out is None:
                sys.stdout.write(text)
            else:
                _write(cfg.out, text)
            return EXIT_OK
    except UsageError as exc:
        print(f"mubcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
