"""Command-line entry point: ``mdsclass <command> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on usage or parse
errors.  Output is plain ``key=value`` text so runs can be diffed.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import io
from .canon import aut_group, canonicalize, transporter_between
from .classify import ConsistencyError, bootstrap_registry, classify_step, load_registry, save_registry
from .codes import hamming_bound, singleton_bound
from .gf import SUPPORTED_ORDERS
from .latin import is_linear_code

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Lengths beyond these need --stretch (hours to CPU-years).
DESK_LIMITS = {2: 3, 3: 4, 4: 5, 5: 6, 7: 3, 8: 3, 9: 3}


@dataclass
class RunConfig:
    q: int
    to: int
    start: int = 3
    registry_dir: Path | None = None
    workers: int = 1
    stretch: bool = False
    out: Path | None = None

    def validate(self) -> None:
        if self.q not in SUPPORTED_ORDERS and self.q != 6:
            raise ValueError(f"q={self.q} is not supported")
        if self.to < 3 or self.start < 3 or self.start > self.to:
            raise ValueError("need 3 <= --from <= --to")
        if self.workers < 1:
            raise ValueError("--workers must be positive")
        if self.start > 3 and self.registry_dir is None:
            raise ValueError("--from needs --registry-dir holding the earlier registry")
        if not self.stretch and self.to > DESK_LIMITS.get(self.q, 4):
            raise ValueError(f"q={self.q} beyond n={DESK_LIMITS.get(self.q, 4)} needs --stretch")


def _say(line: str, out) -> None:
    print(line, flush=True)
    if out is not None:
        out.write(line + "\n")


def cmd_classify(cfg: RunConfig) -> int:
    cfg.validate()
    log = None
    if cfg.out is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        log = (cfg.out / f"classify_q{cfg.q}.txt").open("w")
    try:
        if cfg.start == 3:
            reg = bootstrap_registry(cfg.q)
        else:
            reg = load_registry(cfg.registry_dir, cfg.start)
        if cfg.registry_dir is not None:
            save_registry(reg, cfg.registry_dir)
        _say(f"n={reg.n} classes={reg.size} aut={','.join(map(str, reg.aut_orders))}", log)
        while reg.n < cfg.to and reg.size:
            t0 = time.perf_counter()
            reg, rep = classify_step(reg, cfg.workers)
            if cfg.registry_dir is not None:
                save_registry(reg, cfg.registry_dir)
            _say(f"n={reg.n} classes={reg.size} aut={','.join(map(str, reg.aut_orders))} "
                 f"seeds={rep.seeds_found}/{rep.seeds_kept} codes={rep.codes_found} "
                 f"seconds={time.perf_counter() - t0:.1f}", log)
            for k, a, b, ok in rep.consistency:
                _say(f"  consistency k={k} {a} {b} {'ok' if ok else 'FAIL'}", log)
            if not rep.consistent:
                raise ConsistencyError(f"N_k mismatch at n={reg.n}")
        for n in range(reg.n + 1, cfg.to + 1):
            _say(f"n={n} classes=0", log)
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        if log is not None:
            log.close()
    return EXIT_OK


def cmd_verify_appendix(translations: int = 8) -> int:
    from .appendix8 import fingerprint_summary, verify_suite

    def show(r):
        print(f"{r.name}: perfect={r.perfect} mds={r.mds} "
              f"subspace={sum(r.subspace_translations)}/{len(r.subspace_translations)} "
              f"tuple_linear={r.tuple_linear} {fingerprint_summary(r.fingerprint)}", flush=True)

    rep = verify_suite(translations, log=show)
    print(f"fingerprints_distinct={rep.fingerprints_distinct}")
    for f in rep.failures():
        print(f"FAIL {f}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_canon(path: Path, out: Path | None) -> int:
    res = canonicalize(io.read_code(path))
    text = io.format_code(res.canon)
    if out is not None:
        out.write_text(text)
        Path(str(out) + ".map").write_text(io.format_map(res.transporter))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_aut(path: Path) -> int:
    print(f"aut_order={aut_group(canonicalize(io.read_code(path))).order()}")
    return EXIT_OK


def cmd_equiv(a: Path, b: Path, out: Path | None) -> int:
    C, D = io.read_code(a), io.read_code(b)
    if (C.q, C.n) != (D.q, D.n):
        raise ValueError(f"dimension mismatch: (q,n)=({C.q},{C.n}) vs ({D.q},{D.n})")
    g = transporter_between(C, D) if C.size == D.size else None
    print(f"equivalent={'yes' if g is not None else 'no'}")
    if g is not None and out is not None:
        out.write_text(io.format_map(g))
    return EXIT_OK


def cmd_linearity(path: Path, out: Path | None) -> int:
    C = io.read_code(path)
    w = is_linear_code(C)
    print(f"linear={'yes' if w is not None else 'no'}")
    if w is not None and out is not None:
        lines = [f"{w.q} {len(w.alphas)} {len(w.betas)}"]
        lines += ["alpha " + " ".join(map(str, a)) for a in w.alphas]
        lines += ["beta " + " ".join(map(str, b)) for b in w.betas]
        lines += ["coeffs " + " ".join(map(str, row)) for row in w.coeffs]
        out.write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_bounds(n: int, d: int, q: int) -> int:
    print(f"hamming={hamming_bound(n, d, q)} singleton={singleton_bound(n, d, q)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdsclass", description="Classify and verify small MDS codes.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", help="classify (n, q^(n-2), 3)_q codes for n = 3..to")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--to", type=int, required=True)
    c.add_argument("--from", dest="start", type=int, default=3, help="resume from a saved length")
    c.add_argument("--registry-dir", type=Path)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--stretch", action="store_true", help="allow the heavy q=7,8 steps")
    c.add_argument("--out", type=Path)

    v = sub.add_parser("verify-appendix", help="check the three nonlinear perfect 8-ary codes")
    v.add_argument("--translations", type=int, default=8)

    for name in ("canon", "aut", "linearity"):
        s = sub.add_parser(name)
        s.add_argument("file", type=Path)
        if name != "aut":
            s.add_argument("--out", type=Path)

    e = sub.add_parser("equiv")
    e.add_argument("file_a", type=Path)
    e.add_argument("file_b", type=Path)
    e.add_argument("--out", type=Path, help="write g with g A = B here")

    b = sub.add_parser("bounds")
    b.add_argument("n", type=int)
    b.add_argument("d", type=int)
    b.add_argument("q", type=int)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.cmd == "classify":
            return cmd_classify(RunConfig(args.q, args.to, args.start, args.registry_dir,
                                          args.workers, args.stretch, args.out))
        if args.cmd == "verify-appendix":
            return cmd_verify_appendix(args.translations)
        if args.cmd == "canon":
            return cmd_canon(args.file, args.out)
        if args.cmd == "aut":
            return cmd_aut(args.file)
        if args.cmd == "equiv":
            return cmd_equiv(args.file_a, args.file_b, args.out)
        if args.cmd == "linearity":
            return cmd_linearity(args.file, args.out)
        return cmd_bounds(args.n, args.d, args.q)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
