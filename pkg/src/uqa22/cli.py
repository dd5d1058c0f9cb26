"""Command-line front end.

Subcommands: ``weight`` (compute a weight function, optionally with its
mode expansion), ``rmatrix`` (pairing-tensor factors and Cartan
coefficients), ``blocks`` (dump any scalar building block), and
``verify`` (run a verification suite).  JSON artifacts are canonical and
cached by a content key; repeated invocations with the same
configuration return byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from . import render
from .blocks import ArgList, build_block, build_kernel, build_matrices, build_tilde_block
from .projection import (
    MINUS,
    PLUS,
    mode_expand,
    weight_minus_closed,
    weight_plus_closed,
)
from .qfield import qnum, qpow
from .rmatrix import assemble_R, cartan_coeff
from .verify import SUITE_NAMES, run_suite

SCHEMA_VERSION = 1

_SCALES = {"1": qnum(1), "-q": qpow(1, -1), "-q^-1": qpow(-1, -1),
           "q": qpow(1), "q^2": qpow(2), "q^3": qpow(3), "-q^3": qpow(3, -1)}


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _cache_dir(args) -> Path | None:
    if getattr(args, "no_cache", False):
        return None
    if args.cache_dir:
        return Path(args.cache_dir)
    env = os.environ.get("UQA22_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "uqa22"


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cached(args, key_fields: dict, compute):
    """Return the canonical JSON text for a computation, via the cache."""
    key_fields = dict(key_fields, schema=SCHEMA_VERSION)
    key = hashlib.sha256(
        json.dumps(key_fields, sort_keys=True).encode()).hexdigest()
    cdir = _cache_dir(args)
    if cdir is not None:
        path = cdir / f"{key}.json"
        if path.exists():
            text = path.read_text()
            try:
                json.loads(text)
                return text
            except ValueError:
                print(f"warning: corrupt cache entry {path}; recomputing",
                      file=sys.stderr)
    text = _canonical_json(compute())
    if cdir is not None:
        _atomic_write(cdir / f"{key}.json", text)
    return text


def _emit(args, text: str):
    if args.out:
        _atomic_write(Path(args.out), text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_weight(args) -> int:
    sign = PLUS if args.sign == "plus" else MINUS
    if args.format == "latex":
        _emit(args, render.latex_weight(args.n, sign))
        return 0
    if args.format == "latex-summary":
        _emit(args, render.latex_weight_summary(args.n, sign))
        return 0

    def compute():
        fn = weight_plus_closed if sign == PLUS else weight_minus_closed
        w = fn(args.n, args.depth)
        out = {
            "schema": f"uqa22/weight/v{SCHEMA_VERSION}",
            "sign": args.sign,
            "n": args.n,
            "depth": args.depth,
            "expr": w.expr.to_json(),
        }
        if args.modes:
            out["window"] = args.window
            out["modes"] = mode_expand(w, args.window).to_json()
        return out

    key = {"cmd": "weight", "sign": args.sign, "n": args.n,
           "depth": args.depth,
           "modes": bool(args.modes),
           "window": args.window if args.modes else None}
    text = _cached(args, key, compute)
    if args.format == "text":
        data = json.loads(text)
        from .ncalg import NCExpr
        lines = [f"weight {data['sign']} n={data['n']} depth={data['depth']}",
                 str(NCExpr.from_json(data["expr"]))]
        if args.modes:
            lines.append("modes:")
            lines.append(str(NCExpr.from_json(data["modes"])))
        _emit(args, "\n".join(lines))
    else:
        _emit(args, text)
    return 0


def _cmd_rmatrix(args) -> int:
    def compute():
        factors = assemble_R(args.order, args.depth, args.window,
                             args.cartan_order)
        return {
            "schema": f"uqa22/rmatrix/v{SCHEMA_VERSION}",
            "order": args.order,
            "depth": args.depth,
            "window": args.window,
            "factors": [
                {"name": "r_plus_21", "tensor": factors[0].to_json()},
                {"name": "h_token", "token": factors[1].name},
                {"name": "cartan_21", "tensor": factors[2].to_json()},
                {"name": "r_minus", "tensor": factors[3].to_json()},
            ],
            "cartan_coeffs": [
                [k, cartan_coeff(k).value.to_json()]
                for k in range(1, args.window + 1)
            ],
        }

    key = {"cmd": "rmatrix", "order": args.order, "depth": args.depth,
           "window": args.window, "cartan_order": args.cartan_order}
    text = _cached(args, key, compute)
    if args.format == "text":
        data = json.loads(text)
        lines = [f"R-matrix factors, order {data['order']}, "
                 f"window {data['window']}"]
        for fac in data["factors"]:
            if "token" in fac:
                lines.append(f"-- {fac['name']}: {fac['token']}")
                continue
            lines.append(f"-- {fac['name']}:")
            from .rmatrix import TensorExpr
            tensor = TensorExpr.from_json(fac["tensor"])
            for (l, r), c in tensor.sorted_terms():
                lw = " ".join(f"{s.family}[{s.index}]" for s in l) or "1"
                rw = " ".join(f"{s.family}[{s.index}]" for s in r) or "1"
                lines.append(f"   ({lw}) (x) ({rw})   *   {c}")
        _emit(args, "\n".join(lines))
    else:
        _emit(args, text)
    return 0


def _parse_row(text: str):
    return tuple(int(x) for x in text.split(",")) if text else ()


def _cmd_blocks(args) -> int:
    kind = args.kind
    if kind in ("alpha", "beta", "gamma"):
        if args.i is None or args.j is None:
            raise SystemExit(f"uqa22: {kind} needs --i and --j")
        fr = build_kernel(kind, _SCALES[args.scale], args.i, args.j, args.n)
    elif kind == "matrices":
        m, v, w = build_matrices(_SCALES[args.scale], args.n)
        out = {
            "schema": f"uqa22/matrices/v{SCHEMA_VERSION}",
            "c": args.scale,
            "n": args.n,
            "M": [[e.to_json() for e in row] for row in m],
            "V": [e.to_json() for e in v],
            "W": [e.to_json() for e in w],
        }
        _emit(args, _canonical_json(out))
        return 0
    else:
        if args.k is None or args.target is None:
            raise SystemExit(f"uqa22: {kind} needs --row, --k and --target")
        row = _parse_row(args.row)
        arglist = ArgList(row, args.target)
        if kind.endswith("-tilde"):
            fr = build_tilde_block(kind[:-6], arglist, args.k, args.n)
        else:
            fr = build_block(kind, arglist, args.k, args.n)
    if args.format == "latex":
        _emit(args, render.latex_ratio(fr))
    else:
        _emit(args, _canonical_json(
            {"schema": f"uqa22/block/v{SCHEMA_VERSION}", "kind": kind,
             "value": fr.to_json()}))
    return 0


def _cmd_verify(args) -> int:
    rep = run_suite(args.suite, n=args.n, depth=args.depth,
                    window=args.window, seed=args.seed)
    text = _canonical_json(rep.to_json())
    if args.report:
        _atomic_write(Path(args.report), text)
    status = "ok" if rep.passed else "FAILED"
    print(f"suite {rep.suite}: {rep.cases} cases, "
          f"{len(rep.failures)} failures [{status}]")
    for f in rep.failures:
        print(f"  fail: {f['case']}  {f['detail']}")
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="uqa22",
        description="Exact weight functions and R-matrix factors for the "
                    "twisted quantum affine algebra of type A2(2).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_choices):
        sp.add_argument("--out", help="write the artifact to this path")
        sp.add_argument("--cache-dir", help="cache directory "
                        "(default: $UQA22_CACHE_DIR or ~/.cache/uqa22)")
        sp.add_argument("--no-cache", action="store_true",
                        help="bypass the artifact cache")
        sp.add_argument("--format", choices=fmt_choices,
                        default=fmt_choices[0])

    w = sub.add_parser("weight", help="compute a weight function")
    w.add_argument("sign", choices=("plus", "minus"))
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--depth", type=int, default=6)
    w.add_argument("--modes", action="store_true",
                   help="also emit the mode expansion")
    w.add_argument("--window", type=int, default=4)
    common(w, ("json", "latex", "latex-summary", "text"))
    w.set_defaults(fn=_cmd_weight)

    r = sub.add_parser("rmatrix", help="pairing-tensor factors")
    r.add_argument("--order", type=int, default=1)
    r.add_argument("--depth", type=int, default=4)
    r.add_argument("--window", type=int, default=4)
    r.add_argument("--cartan-order", type=int, default=1)
    common(r, ("json", "text"))
    r.set_defaults(fn=_cmd_rmatrix)

    b = sub.add_parser("blocks", help="dump a scalar building block")
    b.add_argument("kind", choices=(
        "rho", "lambda", "mu", "nu",
        "rho-tilde", "lambda-tilde", "mu-tilde", "nu-tilde",
        "alpha", "beta", "gamma", "matrices"))
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--row", default="", help="comma-separated row indices")
    b.add_argument("--k", type=int, help="distinguished row index")
    b.add_argument("--target", type=int)
    b.add_argument("--i", type=int, help="kernel numerator variable")
    b.add_argument("--j", type=int, help="kernel denominator variable")
    b.add_argument("--scale", default="1", choices=tuple(_SCALES),
                   help="kernel argument scale or matrix parameter c")
    common(b, ("json", "latex"))
    b.set_defaults(fn=_cmd_blocks)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITE_NAMES)
    v.add_argument("--n", type=int)
    v.add_argument("--depth", type=int)
    v.add_argument("--window", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report", help="write the JSON report to this path")
    v.set_defaults(fn=_cmd_verify)

    return p


def _validate(args):
    for name, low in (("n", 1), ("depth", 0), ("window", 1),
                      ("order", 0), ("k", 1), ("target", 1)):
        val = getattr(args, name, None)
        if val is not None and val < low:
            raise SystemExit(f"uqa22: --{name} must be at least {low}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _validate(args)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
