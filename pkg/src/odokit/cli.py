"""Command-line front end.

Subcommands: inspect, verify, ktheory, kgraph.  Exit codes: 0 when every check
passes, 1 on a verification failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from odokit import kgraph, qs, skew
from odokit.kgraph import KGraphError, OdometerSpec
from odokit.ktheory import spectral
from odokit.report import FAIL, Report

MAX_S = 12  # cap on |S| for the Q_S checks
RNG_NAME = "python random.Random (MT19937)"


@dataclass
class RunConfig:
    moduli: tuple[int, ...]
    samples: int = 1000
    seed: int = 0
    z_bound: int = 200
    format: str = "text"

    @property
    def spec(self) -> OdometerSpec:
        return OdometerSpec(self.moduli)


class UsageError(Exception):
    pass


def parse_moduli(text: str) -> tuple[int, ...]:
    try:
        mods = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--moduli expects comma-separated integers, got {text!r}") from None
    if not mods:
        raise UsageError("--moduli must list at least one modulus")
    if any(n < 2 for n in mods):
        raise UsageError(f"every modulus must be >= 2, got {text}")
    return mods


def spec_header(cfg: RunConfig) -> dict[str, Any]:
    spec = cfg.spec
    return {
        "moduli": list(spec.moduli),
        "k": spec.k,
        "N": spec.N,
        "g_lambda": kgraph.g_lambda(spec),
        "seed": cfg.seed,
        "rng": RNG_NAME,
    }


# commands


def cmd_inspect(cfg: RunConfig) -> Report:
    spec = cfg.spec
    report = Report()
    report.info("k", spec.k)
    report.info("moduli", list(spec.moduli))
    report.info("N", spec.N)
    report.info("g_lambda", kgraph.g_lambda(spec))
    report.info(
        "conjecture",
        "applicable (k >= 2)" if spec.k >= 2 else "out of hypothesis (needs k >= 2)",
    )
    return report


def cmd_verify(cfg: RunConfig) -> Report:
    spec = cfg.spec
    S = sorted(set(spec.moduli))
    if len(S) > MAX_S:
        raise UsageError(f"at most {MAX_S} distinct moduli are supported for the Q_S checks")
    report = Report()
    report.extend(kgraph.check_axioms(spec, cfg.samples, cfg.seed), "self-similarity ")
    report.extend(skew.check_skew_axioms(spec, cfg.samples, cfg.seed), "skew product ")
    report.extend(qs.verify_qs_relations(S), "Q_S ")

    for n in S:
        bad = None
        for z in range(-cfg.z_bound, cfg.z_bound + 1):
            r = qs.verify_lemma46(n, z)
            if not r.ok:
                bad = r.failures()[0].counterexample | {"z": z}
                break
        report.add(f"s_n* u^z s_n vanishes iff n does not divide z (n={n})", bad is None,
                   {"n": n, "z_bound": cfg.z_bound}, bad)

    for n in S:
        for m in S:
            report.extend(qs.verify_prop47(n, m), "")

    rng = random.Random(cfg.seed)
    bad = None
    count = min(cfg.samples, 500)
    for _ in range(count):
        deg = tuple(rng.randint(0, 3) for _ in range(spec.k))
        mu = kgraph.PathWord(spec, deg, rng.randrange(kgraph.weight(spec, deg)))
        g = rng.randint(-mu.weight, mu.weight)
        r = qs.verify_covariance(g, mu)
        if not r.ok:
            bad = {"g": g, "mu": str(mu)}
            break
    report.add("covariance u_g s_mu = s_{g.mu} u_{g|mu}", bad is None, {"samples": count}, bad)

    bad = None
    letters = [qs.Letter("u")] + [qs.Letter("s", n) for n in S]
    letters += [x.adjoint() for x in letters]
    for _ in range(count):
        w = [rng.choice(letters) for _ in range(rng.randint(0, 6))]
        if qs.eval_word(list(w) + qs.word_adjoint(w) + list(w)) != qs.eval_word(w):
            bad = {"word": " ".join(map(str, w))}
            break
    report.add("w w* w = w for monomials", bad is None, {"samples": count}, bad)

    report.extend(qs.verify_dictionary(S), "dictionary ")
    return report


def cmd_ktheory(cfg: RunConfig) -> Report:
    spec = cfg.spec
    report = Report()
    report.info("E1", spectral.e1_page(spec))
    generic = spectral.e2_page(spec)
    closed = spectral.closed_form_e2(spec)
    e2 = generic.to_dict() | {"text": generic.to_text()}
    report.add("E2 (generic Smith normal form)", generic == closed, e2,
               {"generic": generic.to_text(), "closed_form": closed.to_text()})
    report.info("E2 closed form", closed.to_dict() | {"text": closed.to_text()})

    report.extend(spectral.check_stabilization(spec), "stabilization ")
    st = spectral.stabilized_k_groups(spec)
    report.info("stabilization K-groups", st.to_dict())

    if spec.k >= 2:
        conj = spectral.conjecture_groups(spec)
        report.info("conjectured K-groups", conj.to_dict() | {
            "text": {"K0": str(conj.K0), "K1": str(conj.K1)},
        })
        numerology = spectral.numerology_check(spec, generic)
        numerology.sections = [s for s in numerology.sections if s.name != "caveat"]
        report.extend(numerology, "numerology ")
    else:
        report.info("conjectured K-groups", "out of hypothesis (needs k >= 2); skipped")
    report.info("caveat", spectral.CAVEAT)
    return report


def cmd_kgraph(cfg: RunConfig, query: Sequence[str]) -> Report:
    spec = cfg.spec
    if not query:
        raise UsageError("kgraph needs a query: act | compose | factorize | digits | endpoints | translate")
    op, args = query[0], list(query[1:])

    def need(n: int):
        if len(args) != n:
            raise UsageError(f"{op} takes {n} argument(s), got {len(args)}")

    report = Report()
    try:
        if op == "act":
            need(2)
            moved, r = kgraph.act(int(args[0]), kgraph.parse_path(spec, args[1]))
            report.info("act", f"{moved}, restriction {r}")
        elif op == "compose":
            if not args:
                raise UsageError("compose needs at least one path")
            paths = [kgraph.parse_path(spec, a) for a in args]
            out = paths[0]
            for p in paths[1:]:
                out = kgraph.compose(out, p)
            report.info("compose", str(out))
        elif op == "factorize":
            need(2)
            head, tail = kgraph.factorize(kgraph.parse_path(spec, args[0]), kgraph.parse_degree(spec, args[1]))
            report.info("factorize", f"{head} ∘ {tail}")
        elif op == "digits":
            if not args:
                raise UsageError("digits needs a path")
            mu = kgraph.parse_path(spec, args[0])
            order = [int(c) for c in args[1].split(",") if c] if len(args) > 1 else [
                i + 1 for i, d in enumerate(mu.degree) for _ in range(d)
            ]
            report.info("digits", "[" + ",".join(f"({c},{s})" for c, s in kgraph.digits(mu, order)) + "]")
        elif op == "endpoints":
            need(2)
            sp = skew.SkewPath(kgraph.parse_path(spec, args[0]), _vector(args[1]))
            r, s = skew.endpoints(sp)
            report.info("endpoints", f"range {r}, source {s}")
        elif op == "translate":
            need(3)
            sp = skew.SkewPath(kgraph.parse_path(spec, args[1]), _vector(args[2]))
            out = skew.translate(_vector(args[0]), sp)
            report.info("translate", f"{out.path} at {out.base}")
        else:
            raise UsageError(f"unknown kgraph query {op!r}")
    except (KGraphError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from None
    return report


def _vector(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.strip().strip("()").split(",") if x.strip())


# output


def to_json(cfg: RunConfig, command: str, report: Report) -> str:
    payload = {"command": command, "spec": spec_header(cfg), "sections": report.to_list(),
               "status": "pass" if report.ok else "fail"}
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _fmt(v: Any) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, dict) and "text" in v:  # readable summary of a structured group
        v = v["text"]
    return json.dumps(v, ensure_ascii=False)


def to_text(cfg: RunConfig, command: str, report: Report) -> str:
    head = spec_header(cfg)
    lines = [f"{command}  moduli={','.join(map(str, head['moduli']))}  k={head['k']}  N={head['N']}  "
             f"g={head['g_lambda']}  seed={head['seed']}"]
    width = max((len(s.name) for s in report.sections), default=0)
    for s in report.sections:
        lines.append(f"  [{s.status:^4}] {s.name.ljust(width)}  {_fmt(s.details)}")
        if s.status == FAIL and s.counterexample is not None:
            lines.append(f"         counterexample: {_fmt(s.counterexample)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--moduli", required=True, help="comma-separated moduli n_1,...,n_k (each >= 2)")
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--z-bound", type=int, default=200)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="odokit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inspect", parents=[common], help="summarize a moduli set")
    sub.add_parser("verify", parents=[common], help="run every exact relation check")
    sub.add_parser("ktheory", parents=[common], help="E1/E2 pages and K-group bookkeeping")
    kg = sub.add_parser("kgraph", parents=[common], help="path queries: act, compose, factorize, digits, ...")
    kg.add_argument("query", nargs="*", help="e.g. act 1 '(1,1):5'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(parse_moduli(args.moduli), args.samples, args.seed, args.z_bound, args.format)
        if cfg.samples < 1:
            raise UsageError("--samples must be >= 1")
        if cfg.z_bound < 0:
            raise UsageError("--z-bound must be >= 0")
        if cfg.seed < 0 or cfg.seed >= 2**64:
            raise UsageError("--seed must be a 64-bit natural number")
        if args.command == "inspect":
            report = cmd_inspect(cfg)
        elif args.command == "verify":
            report = cmd_verify(cfg)
        elif args.command == "ktheory":
            report = cmd_ktheory(cfg)
        else:
            report = cmd_kgraph(cfg, args.query)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2

    text = to_json(cfg, args.command, report) if cfg.format == "json" else to_text(cfg, args.command, report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
