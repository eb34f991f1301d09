"""Command-line interface.

Exit codes: 0 on success or a passing verification, 1 when a verification
fails (the witness is printed), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bibd import from_bibd, to_bibd, verify_bibd, verify_splittable_bibd
from .bmsph import construct_bmsph, decompose, verify_exhaustive, verify_structural
from .constructions import IncidenceMatrix, OrthogonalArray, field_of_order, oa_from_affine_plane, plane_from_oa
from .eqlines import LineSet, extend_exhaustive, extract_lines, saturation_ratio, structured_extensions
from .errors import (
    BadResidueClass,
    BadSelectionSize,
    IndexOutOfRange,
    KindMismatch,
    NotPrimePower,
    ParseError,
    SplithadError,
)
from .exactmat import BlockedMatrix
from .io import dumps, read_artifact, write_artifact
from .quaternary import QuatMatrix, construct_quaternary, q_verify, question1_probe
from .regular_embed import embed, regularize

__all__ = ["main", "run", "build_parser", "read_artifact", "write_artifact"]


class _UsageError(Exception):
    pass


def _emit(obj, out: str | None) -> None:
    if out is None:
        sys.stdout.write(dumps(obj))
    else:
        write_artifact(obj, out)
        print(f"wrote {out}")


def _blocked(path: str) -> BlockedMatrix:
    obj = read_artifact(path, expect="phm")
    if not isinstance(obj, BlockedMatrix):
        raise _UsageError(f"{path}: header has no block width")
    return obj


def _report(rep, label: str) -> int:
    if rep.passed:
        extra = f" values {list(rep.observed)}" if rep.observed else ""
        print(f"PASS {label}: {rep.checks_run} checks{extra}")
        return 0
    print(f"FAIL {label}: {rep.witness}")
    return 1


def _selection(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated block indices, got {text!r}") from None


def _sampling(args) -> dict:
    if args.mode == "sample":
        if args.seed is None:
            raise _UsageError("--mode sample requires --seed")
        return {"mode": "sample", "samples": args.samples, "seed": args.seed}
    return {"mode": "all"}


def cmd_construct(args) -> int:
    _emit(construct_bmsph(args.p), args.output)
    return 0


def cmd_verify(args) -> int:
    h = _blocked(args.path)
    if args.mode == "structural":
        return _report(verify_structural(h), "structural")
    return _report(verify_exhaustive(h, **_sampling(args)), args.mode)


def cmd_decompose(args) -> int:
    h = _blocked(args.path)
    oa, cores, rowp = decompose(h)
    _emit(oa, args.output)
    if args.output is not None:
        stem = Path(args.output)
        for i, L in enumerate(cores):
            core_path = stem.with_name(f"{stem.stem}.core{i}.phm")
            write_artifact(L, core_path)
            print(f"wrote {core_path}")
    negated = np.flatnonzero(rowp.signs < 0).tolist()
    print(f"negated rows: {negated}")
    return 0


def cmd_regularize(args) -> int:
    _emit(regularize(_blocked(args.path)).matrix, args.output)
    return 0


def cmd_embed(args) -> int:
    _emit(embed(regularize(_blocked(args.path))), args.output)
    return 0


def cmd_bibd_to(args) -> int:
    _emit(to_bibd(_blocked(args.path)), args.output)
    return 0


def cmd_bibd_from(args) -> int:
    _emit(from_bibd(read_artifact(args.path, expect="bibd")), args.output)
    return 0


def cmd_verify_bibd(args) -> int:
    d = read_artifact(args.path, expect="bibd")
    if args.mode == "structural":
        return _report(verify_bibd(d), "bibd")
    return _report(verify_splittable_bibd(d, **_sampling(args)), f"splittable bibd ({args.mode})")


def cmd_lines(args) -> int:
    if args.select is None:
        raise _UsageError("lines needs --select")
    ls = extract_lines(_blocked(args.path), args.select)
    print(f"{len(ls)} lines in dimension {ls.dimension}, |cos| = {ls.cosine}")
    _emit(ls, args.output)
    return 0


def cmd_extend(args) -> int:
    ls = read_artifact(args.path, expect="lines")
    out = extend_exhaustive(ls)
    print(f"extended {len(ls)} -> {len(out)} lines in dimension {out.dimension}")
    _emit(LineSet(out.vectors[len(ls) :], out.target_abs_inner), args.output)
    return 0


def cmd_extensions(args) -> int:
    h = _blocked(args.path)
    rep = structured_extensions(h)
    print(
        f"{len(rep.survivors)} of {rep.candidates_tested} structured candidates survive; "
        f"jointly survivable pairs: {len(rep.surviving_pairs)}"
    )
    if args.output is not None and rep.survivors:
        write_artifact(np.array(rep.survivors), args.output)
        print(f"wrote {args.output}")
    return 0


def cmd_plane(args) -> int:
    if args.path is not None:
        oa = read_artifact(args.path, expect="oa")
    elif args.p is not None:
        oa = oa_from_affine_plane(field_of_order(args.p))
    else:
        raise _UsageError("plane needs an oa file or --p")
    _emit(plane_from_oa(oa), args.output)
    return 0


def cmd_quat_construct(args) -> int:
    _emit(construct_quaternary(args.q), args.output)
    return 0


def cmd_quat_verify(args) -> int:
    if args.mode == "structural":
        raise _UsageError("quat-verify supports --mode exhaustive or sample")
    h = read_artifact(args.path, expect="qhm")
    code = _report(q_verify(h, **_sampling(args)), f"quaternary ({args.mode})")
    probe = question1_probe(h)
    print(f"decomposition probe: {'succeeded' if probe.succeeded else 'failed'} ({probe.detail})")
    return code


def cmd_ratio(args) -> int:
    count, bound, ratio = saturation_ratio(args.p)
    print(f"{count} / {bound} = {ratio} ~ {float(ratio):.6f}")
    return 0


def cmd_info(args) -> int:
    obj = read_artifact(args.path)
    if isinstance(obj, BlockedMatrix):
        print(f"phm {obj.shape[0]}x{obj.shape[1]}, block width {obj.block_width}")
    elif isinstance(obj, np.ndarray):
        print(f"phm {obj.shape[0]}x{obj.shape[1]}, unblocked")
    elif isinstance(obj, QuatMatrix):
        print(f"qhm {obj.shape[0]}x{obj.shape[1]}, block width {obj.block_width}")
    elif isinstance(obj, OrthogonalArray):
        print(f"oa {obj.runs} runs, {obj.factors} factors, {obj.levels} levels")
    elif isinstance(obj, IncidenceMatrix):
        print(f"bibd (v, b, r, k, lam) = {obj.params}, block width {obj.block_width}")
    else:
        print(f"lines {len(obj)} in dimension {obj.dimension}, |cos| = {obj.cosine}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splithad", description="Balancedly multi-splittable partial Hadamard matrices."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, *, path=False, opt_path=False, output=True, mode=None, p=False, q=False, select=False):
        sp = sub.add_parser(name, help=help)
        if path:
            sp.add_argument("path")
        if opt_path:
            sp.add_argument("path", nargs="?")
        if p:
            sp.add_argument("--p", type=int, required=not opt_path)
        if q:
            sp.add_argument("--q", type=int, required=True)
        if mode is not None:
            sp.add_argument("--mode", choices=("structural", "exhaustive", "sample"), default=mode)
            sp.add_argument("--samples", type=int, default=10_000)
            sp.add_argument("--seed", type=int)
        if select:
            sp.add_argument("--select", type=_selection)
        if output:
            sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)

    add("construct", cmd_construct, "build the matrix for a prime power p = 3 mod 4", p=True)
    add("verify", cmd_verify, "check a blocked sign matrix", path=True, output=False, mode="structural")
    add("decompose", cmd_decompose, "recover the orthogonal array and cores", path=True)
    add("regularize", cmd_regularize, "rescale to block row sums 1", path=True)
    add("embed", cmd_embed, "complete to a Hadamard matrix of order p(p+1)", path=True)
    add("bibd-to", cmd_bibd_to, "convert to a BIBD incidence matrix", path=True)
    add("bibd-from", cmd_bibd_from, "convert a BIBD incidence matrix back", path=True)
    add("verify-bibd", cmd_verify_bibd, "check a BIBD and its splitting property", path=True, output=False,
        mode="exhaustive")
    add("lines", cmd_lines, "equiangular lines from a half-selection", path=True, select=True)
    add("extend", cmd_extend, "maximum exhaustive extension of a line set", path=True)
    add("extensions", cmd_extensions, "structured rows that extend every half-selection", path=True)
    add("plane", cmd_plane, "projective plane from an orthogonal array", opt_path=True, p=True)
    add("quat-construct", cmd_quat_construct, "quaternary matrix for a prime power q = 1 mod 4", q=True)
    add("quat-verify", cmd_quat_verify, "check a quaternary matrix", path=True, output=False, mode="exhaustive")
    add("ratio", cmd_ratio, "constructed line count against the relative bound", output=False, p=True)
    add("info", cmd_info, "describe an artifact file", path=True, output=False)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, KindMismatch, _UsageError, OSError, BadResidueClass, NotPrimePower, BadSelectionSize,
            IndexOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SplithadError, ValueError) as exc:
        print(f"FAIL: {exc}")
        return 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
