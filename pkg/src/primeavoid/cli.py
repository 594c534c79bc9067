"""Command line front end.

Exit status: 0 ok, 1 verdict mismatch, 2 parse or configuration error,
3 Groebner budget or ring size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

from . import __version__
from .avoidance import (
    davis_witness,
    radical_avoidance_locate,
    satisfies_absorbance,
    satisfies_avoidance,
)
from .certificates import (
    DescribedRing,
    check_certificate,
    check_item,
    corpus,
    one_dim_pz_check,
)
from .classify import classify
from .errors import (
    AlgebraError,
    BudgetExceeded,
    DescriptionInconsistent,
    HypothesisFails,
    MalformedPayload,
    ParseError,
    SizeCap,
    TooManyNonRadical,
)
from .formats import (
    dump_poset,
    load_certificate,
    load_family,
    load_poset,
    load_ring,
    read_record,
    refutation_from,
    split_list,
)
from .poly import set_default_budget
from .ring import BUILD_CAP, ENUM_CAP, enumerate_ideals, ideal_arith, ideal_from_generators, radical
from .spectrum import hochster_dual, is_noetherian, spec, vset

COMMANDS = ("analyze", "spec", "avoid", "cert", "corpus", "dual", "fuzz")
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    paths: list = field(default_factory=list)
    cap: int = ENUM_CAP
    budget: int = 10_000
    format: str = "text"
    jobs: int = 1
    seed: int = 0
    topology: str = "zariski"
    count: int = 200

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for name in ("cap", "budget", "jobs", "count"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.format not in ("text", "json"):
            raise ConfigError(f"format must be text or json, got {self.format!r}")
        if self.topology not in ("zariski", "flat"):
            raise ConfigError(f"topology must be zariski or flat, got {self.topology!r}")

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys {unknown}")
        return cls(**data)


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# commands

def cmd_analyze(cfg: RunConfig):
    rec = read_record(cfg.paths[0])
    R = load_ring(rec, max(cfg.cap, BUILD_CAP))
    if isinstance(R, DescribedRing):
        rep = one_dim_pz_check(R, refutation_from(rec, R))
        data = rep.to_json()
        lines = [f"ring: {rep.ring}"]
        lines += [f"condition ({k}): {v}" for k, v in rep.conditions.items()]
        lines.append(f"P.Z.: {rep.pz}")
        lines += [f"witness for {k}: {v}" for k, v in rep.witnesses.items()]
        return EXIT_OK, data, lines
    report = classify(R, cap=cfg.cap)
    data = report.to_json()
    status = EXIT_OK if report.cp_agree and report.pz_agree else EXIT_MISMATCH
    lines = [f"ring: {R.name} ({R.size} elements)"]
    for tag, v in report.conditions.items():
        lines.append(f"{tag}: {'skipped' if v.skipped else v.value}")
    for key in ("spectrum", "dim", "max_count", "gold", "nilradical"):
        lines.append(f"{key}: {report.derived[key]}")
    if status:
        lines.append("MISMATCH: condition tags disagree")
    return status, data, lines


def cmd_spec(cfg: RunConfig):
    R = load_ring(read_record(cfg.paths[0]), max(cfg.cap, BUILD_CAP))
    if isinstance(R, DescribedRing):
        raise ParseError("spec needs a finite ring")
    P = spec(R, cfg.cap)
    closed = P.closed_sets(cfg.topology)
    chain = is_noetherian(P, cfg.topology)
    labels = lambda m: [P.labels[i] for i in range(len(P)) if m >> i & 1]  # noqa: E731
    data = {
        "schema_version": 1,
        "ring": R.name,
        "topology": cfg.topology,
        "points": list(P.labels),
        "order": [[P.labels[i], P.labels[j]] for i in range(len(P)) for j in range(len(P)) if i != j and P.leq[i, j]],
        "closed_sets": [labels(m) for m in closed],
        "noetherian": chain.noetherian,
        "longest_chain": chain.longest_chain,
    }
    lines = [f"ring: {R.name}", f"points: {', '.join(P.labels)}"]
    lines += [f"{a} <= {b}" for a, b in data["order"]]
    lines.append(f"{cfg.topology}-closed sets ({len(closed)}):")
    lines += ["  {" + ", ".join(s) + "}" for s in data["closed_sets"]]
    lines.append(f"longest chain of closed sets: {chain.longest_chain}")
    return EXIT_OK, data, lines


def cmd_avoid(cfg: RunConfig):
    ff = load_family(read_record(cfg.paths[0]), max(cfg.cap, BUILD_CAP))
    R, F = ff.ring, ff.family
    av = satisfies_avoidance(F, cfg.cap)
    ab = satisfies_absorbance(F, cfg.cap)
    data: dict = {
        "schema_version": 1,
        "ring": R.name,
        "family": F.labels(),
        "radical": list(F.radical_flags),
        "avoidance": {"holds": av.holds, "witness": av.ideal.label if av.ideal else None},
        "absorbance": {"holds": ab.holds, "witness": ab.prime.label if ab.prime else None},
    }
    lines = [f"ring: {R.name}", f"family: {', '.join(F.labels())}"]
    lines.append("avoidance holds" if av.holds else f"avoidance fails, witness {av.ideal.label}")
    lines.append("absorbance holds" if ab.holds else f"absorbance fails at prime {ab.prime.label}")
    locate = {}
    for I in enumerate_ideals(R, cfg.cap):
        if I.mask & ~F.union_mask:
            continue
        try:
            locate[I.label] = F[radical_avoidance_locate(I, F)].label
        except TooManyNonRadical as exc:
            locate = {"rejected": f"TooManyNonRadical: {exc}"}
            break
        except AssertionError as exc:
            locate[I.label] = f"no member: {exc}"
    data["locate"] = locate
    lines += [f"locate {k}: {v}" for k, v in locate.items()]
    if ff.f is not None:
        try:
            I = ideal_from_generators(R, [] if ff.ideal is None else split_list(ff.ideal))
            ff.f = R.labels[R.element(ff.f)]
        except KeyError as exc:
            raise ParseError(f"unknown element {exc}") from exc
        try:
            g = davis_witness(ff.f, I, F)
            data["davis"] = {"f": ff.f, "ideal": I.label, "g": R.labels[g]}
            lines.append(f"davis: f={ff.f} I={I.label} g={R.labels[g]}")
        except HypothesisFails as exc:
            data["davis"] = {"f": ff.f, "ideal": I.label, "hypothesis_fails": str(exc)}
            lines.append(f"davis: hypothesis fails ({exc})")
    return EXIT_OK, data, lines


def cmd_cert(cfg: RunConfig):
    rec = read_record(cfg.paths[0])
    expect = rec.get("expect", "valid")
    c = load_certificate(rec)
    if isinstance(c, DescribedRing):
        rep = one_dim_pz_check(c, refutation_from(rec, c))
        observed = "pz" if rep.pz else "not-pz"
        data = rep.to_json()
        lines = [f"{c.name}: {observed}"] + [f"condition ({k}): {v}" for k, v in rep.conditions.items()]
    else:
        verdict = check_certificate(c)
        observed = "valid" if verdict.valid else "invalid"
        data = verdict.to_json()
        lines = [verdict.summary, f"{len(verdict.transcript)} checks"]
    data["expected"] = expect
    status = EXIT_OK if observed == expect else EXIT_MISMATCH
    if status:
        lines.append(f"MISMATCH: expected {expect}, observed {observed}")
    return status, data, lines


def cmd_corpus(cfg: RunConfig):
    items = corpus()
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        results = list(pool.map(check_item, items))
    data = {
        "schema_version": 1,
        "items": [
            {"name": r.name, "expected": r.expected, "observed": r.observed, "ok": r.ok, "detail": r.detail}
            for r in results
        ],
    }
    lines = [f"{'ok  ' if r.ok else 'FAIL'} {r.name}: expected {r.expected}, observed {r.observed}" for r in results]
    good = sum(r.ok for r in results)
    lines.append(f"{good}/{len(results)} bundled items as expected")
    return (EXIT_OK if good == len(results) else EXIT_MISMATCH), data, lines


def cmd_dual(cfg: RunConfig):
    P = load_poset(read_record(cfg.paths[0]))
    D = hochster_dual(P)
    text = dump_poset(D)
    data = {
        "schema_version": 1,
        "points": list(D.labels),
        "order": [[a.strip() for a in line[5:].split(",")] for line in text.splitlines() if line.startswith("le =")],
        "zariski_closed": [[D.labels[i] for i in range(len(D)) if m >> i & 1] for m in D.closed_sets("zariski")],
    }
    return EXIT_OK, data, text.splitlines()


def cmd_fuzz(cfg: RunConfig):
    """Random consistency checks of ideal arithmetic over corpus rings, driven by the seed."""
    from .corpus import finite_rings

    rng = random.Random(cfg.seed)
    rings = finite_rings(64)
    failures = []
    for k in range(cfg.count):
        R = rng.choice(rings)
        ideals = enumerate_ideals(R, cfg.cap)
        I, J = rng.choice(ideals), rng.choice(ideals)
        meet = ideal_arith("intersection", I, J)
        prod = ideal_arith("product", I, J)
        total = ideal_arith("sum", I, J)
        ok = prod <= meet <= I <= total
        ok &= radical(radical(I)) == radical(I)
        ok &= vset(meet).members == vset(I).members | vset(J).members
        ok &= vset(total).members == vset(I).members & vset(J).members
        if not ok:
            failures.append({"case": k, "ring": R.name, "I": I.label, "J": J.label})
    data = {"schema_version": 1, "seed": cfg.seed, "cases": cfg.count, "failures": failures}
    lines = [f"seed {cfg.seed}: {cfg.count} cases, {len(failures)} failures"]
    return (EXIT_OK if not failures else EXIT_MISMATCH), data, lines


HANDLERS = {
    "analyze": cmd_analyze,
    "spec": cmd_spec,
    "avoid": cmd_avoid,
    "cert": cmd_cert,
    "corpus": cmd_corpus,
    "dual": cmd_dual,
    "fuzz": cmd_fuzz,
}
NEEDS_PATH = {"analyze", "spec", "avoid", "cert", "dual"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="primeavoid", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("paths", nargs="*")
    ap.add_argument("--cap", type=int, default=ENUM_CAP, help="ideal enumeration cap")
    ap.add_argument("--budget", type=int, default=10_000, help="Groebner S-pair budget")
    ap.add_argument("--format", default="text", choices=("text", "json"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--topology", default="zariski", choices=("zariski", "flat"))
    ap.add_argument("--count", type=int, default=200, help="number of fuzz cases")
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = RunConfig.from_mapping(vars(args))
        if cfg.command in NEEDS_PATH and len(cfg.paths) != 1:
            raise ConfigError(f"{cfg.command} takes exactly one file")
        if cfg.command not in NEEDS_PATH and cfg.paths:
            raise ConfigError(f"{cfg.command} takes no files")
        set_default_budget(max_pairs=cfg.budget, max_term_ops=cfg.budget * 10)
        status, data, lines = HANDLERS[cfg.command](cfg)
    except (ConfigError, ParseError, MalformedPayload, DescriptionInconsistent) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (BudgetExceeded, SizeCap) as exc:
        print(f"limit exceeded: {exc}", file=err)
        return EXIT_LIMIT
    except AlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT
    finally:
        set_default_budget()
    if cfg.format == "json":
        out.write(dump_json(data))
    else:
        out.write("\n".join(lines) + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
