"""Scenario runner: ``mixwreath verify|dims|wreath-table CONFIG``.

A config is a TOML file::

    name = "headline"
    field = "Q"
    generators = 2
    degree = 3
    variety_X = ["y*v1*v2"]
    variety_Theta = ["[v1,v2]"]        # or ideal_generators = ["x1", "[x1,x2]"]
    checks = ["theorem", "lemma3", "corollary1", "wreath_def1", "dims"]
    proposition_Y = ["x1+x2"]          # optional

Exit status: 0 when every requested check passes, 1 when one fails, 2 on
usage, parse or size errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .core import Field
from .free_assoc import ParseError
from .free_lie import FreeLieAlgebra, LieVarietySpec
from .varieties import VarietySpec, validate_multihomogeneous

CHECKS = ("theorem", "lemma3", "proposition", "corollary1", "wreath_def1", "dims")
KEYS = ("name", "field", "generators", "degree", "variety_X", "variety_Theta", "ideal_generators",
        "checks", "proposition_Y")
DEFAULT_CAP = 20000


class ConfigError(Exception):
    """Unusable config; reported with exit status 2."""


@dataclass
class ScenarioConfig:
    name: str
    field: Field
    generators: int
    degree: int
    variety_X: list
    variety_Theta: list | None = None
    ideal_generators: list | None = None
    checks: list = dc_field(default_factory=list)
    proposition_Y: list | None = None
    path: str = ""

    def x_spec(self) -> VarietySpec:
        return validate_multihomogeneous(VarietySpec.parse(self.variety_X, self.name))

    def scenario(self):
        from .embedding import EmbeddingScenario
        theta = LieVarietySpec(self.variety_Theta) if self.variety_Theta is not None else None
        return EmbeddingScenario(self.generators, self.degree, self.x_spec(), theta,
                                 self.ideal_generators, self.field, self.name)


def _locate(raw: str, needle: str, column: int | None) -> str:
    idx = raw.find(needle)
    if idx < 0:
        return ""
    line = raw.count("\n", 0, idx) + 1
    col = idx - (raw.rfind("\n", 0, idx) + 1) + (column or 1)
    return f"{line}:{col}: "


def load_config(path: str, field: str | None = None, degree: int | None = None) -> ScenarioConfig:
    try:
        with open(path, "rb") as fh:
            raw_bytes = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    raw = raw_bytes.decode("utf-8")
    try:
        data = tomllib.loads(raw)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    unknown = sorted(set(data) - set(KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}")
    for key in ("generators", "degree", "variety_X"):
        if key not in data:
            raise ConfigError(f"{path}: missing key {key!r}")
    if ("variety_Theta" in data) == ("ideal_generators" in data):
        raise ConfigError(f"{path}: give exactly one of 'variety_Theta' and 'ideal_generators'")
    try:
        fld = Field.parse(field if field is not None else data.get("field", "Q"))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    cfg = ScenarioConfig(
        name=str(data.get("name", os.path.splitext(os.path.basename(path))[0])),
        field=fld,
        generators=data["generators"],
        degree=degree if degree is not None else data["degree"],
        variety_X=list(data["variety_X"]),
        variety_Theta=list(data["variety_Theta"]) if "variety_Theta" in data else None,
        ideal_generators=list(data["ideal_generators"]) if "ideal_generators" in data else None,
        checks=list(data.get("checks", [])),
        proposition_Y=list(data["proposition_Y"]) if "proposition_Y" in data else None,
        path=path,
    )
    for key in ("generators", "degree"):
        v = getattr(cfg, key)
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ConfigError(f"{path}: {key} must be a positive integer")
    bad = [c for c in cfg.checks if c not in CHECKS]
    if bad:
        raise ConfigError(f"{path}: unknown checks {bad}; choose from {list(CHECKS)}")
    if fld.p and fld.p <= cfg.degree:
        raise ConfigError(f"{path}: characteristic {fld.p} must exceed the degree {cfg.degree}")
    _validate_strings(cfg, raw)
    return cfg


def _validate_strings(cfg: ScenarioConfig, raw: str) -> None:
    """Parse every element string up front so errors carry a file position."""
    L = FreeLieAlgebra(cfg.generators, 1, cfg.field)

    def guard(key, text, fn):
        try:
            fn(text)
        except ParseError as exc:
            raise ConfigError(f"{cfg.path}:{_locate(raw, text, exc.column)}{key}: {exc}") from exc
        except ValueError as exc:
            raise ConfigError(f"{cfg.path}:{_locate(raw, text, None)}{key}: {exc}") from exc

    for t in cfg.variety_X:
        guard("variety_X", t, lambda s: VarietySpec.parse([s]))
    for t in cfg.variety_Theta or []:
        guard("variety_Theta", t, lambda s: LieVarietySpec([s]).bodies())
    for key in ("ideal_generators", "proposition_Y"):
        for t in getattr(cfg, key) or []:
            guard(key, t, L.parse)


def estimate_basis(cfg: ScenarioConfig) -> int:
    """Upper bound on the largest basis the run will materialize."""
    from .embedding import ideal_of
    n, D = cfg.generators, cfg.degree
    free_words = sum(n ** d for d in range(D + 1))
    s = cfg.scenario()
    L = s.lie()
    M = ideal_of(s, L)
    b_dims = [x - y for x, y in zip(L.component_dims(), M.component_dims())]
    u = [1] + [0] * D
    for d in range(1, D + 1):
        for _ in range(b_dims[d]):
            for k in range(d, D + 1):
                u[k] += u[k - d]
    letters = [0] + [n * u[k - 1] for k in range(1, D + 1)]
    w = [1] + [0] * D
    for d in range(1, D + 1):
        w[d] = sum(letters[k] * w[d - k] for k in range(1, d + 1))
    module = sum(u[k] * w[d - k] for d in range(D + 1) for k in range(d + 1))
    return max(free_words, sum(w), module)


# -- checks ---------------------------------------------------------------------

def _table(columns: dict) -> list:
    keys = list(columns)
    n = len(columns[keys[0]])
    return [{"degree": d, **{k: columns[k][d] for k in keys}} for d in range(n)]


class _Run:
    """Lazily shared constructions for one config."""

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.s = cfg.scenario()
        self._theorem = None

    def theorem(self):
        if self._theorem is None:
            from .embedding import run_theorem
            self._theorem = run_theorem(self.s)
        return self._theorem


def run_check(run: _Run, name: str) -> dict:
    from . import embedding as emb
    from .wreath import check_definition1, derivation_invariance_failures
    cfg = run.cfg
    if name == "theorem":
        r = run.theorem().report
        return {"check": name, "passed": not any(r.kernel_dims),
                "degrees": _table({"domain": r.domain_dims, "codomain": r.codomain_dims,
                                   "rank": r.ranks, "kernel": r.kernel_dims})}
    if name == "lemma3":
        r = emb.lemma3_check(run.s)
        return {"check": name, "passed": r.injective, "square_maps_to_zero": r.square_maps_to_zero,
                "degrees": _table({"ideal": r.ideal_dims, "square": r.square_dims,
                                   "image_rank": r.image_ranks})}
    if name == "proposition":
        Y = cfg.proposition_Y if cfg.proposition_Y is not None else \
            [f"x{i + 1}" for i in range(cfg.generators)]
        r = emb.proposition_check(run.s.X_spec, cfg.generators, Y, cfg.degree, cfg.field)
        return {"check": name, "passed": r.holds, "Y": Y,
                "degrees": _table({"subpair": r.subpair_dims, "free": r.free_dims})}
    if name == "corollary1":
        t = run.theorem()
        r = emb.corollary1_dims(t.domain, t.codomain)
        agrees = r.holds == (not any(t.report.kernel_dims))
        return {"check": name, "passed": r.holds and agrees, "agrees_with_theorem": agrees,
                "degrees": _table({"image": r.image_dims, "domain": r.domain_dims})}
    if name == "wreath_def1":
        wp = run.theorem().codomain
        r = check_definition1(wp)
        inv = not derivation_invariance_failures(wp)
        return {"check": name, "passed": r.passed and inv,
                "conditions": dict(r.conditions), "derivation_invariant": inv,
                "degrees": _table({"module": wp.graded_dims(), "gamma": wp.gamma_dims()})}
    if name == "dims":
        t = run.theorem()
        wp = t.codomain
        M = t.domain.ideal
        L = M.alg
        quotient = [x - y for x, y in zip(L.component_dims(), M.component_dims())]
        return {"check": name, "passed": True,
                "degrees": _table({"lie": L.component_dims(), "ideal": M.component_dims(),
                                   "quotient": quotient, "P": wp.P.component_dims(),
                                   "domain": t.report.domain_dims, "codomain": wp.graded_dims()})}
    raise ConfigError(f"unknown check {name!r}")


def _run_one(path, field, degree, name):
    return run_check(_Run(load_config(path, field, degree)), name)


def run_config(path: str, field: str | None = None, degree: int | None = None, jobs: int = 1,
               cap: int = DEFAULT_CAP, checks: list | None = None) -> dict:
    """Execute the config's checks in declared order and return the report data."""
    cfg = load_config(path, field, degree)
    names = cfg.checks if checks is None else checks
    t0 = time.perf_counter()
    if names:
        est = estimate_basis(cfg)
        if est > cap:
            raise ConfigError(f"{path}: estimated basis size {est} exceeds the cap {cap} "
                              f"(lower the degree or raise --cap)")
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_run_one, path, field, degree, n) for n in names]
            results = [f.result() for f in futs]
    else:
        run = _Run(cfg)
        results = [run_check(run, n) for n in names]
    return {
        "tool": "mixwreath",
        "version": __version__,
        "name": cfg.name,
        "field": cfg.field.name,
        "generators": cfg.generators,
        "degree": cfg.degree,
        "passed": all(r["passed"] for r in results),
        "checks": results,
        "seconds": round(time.perf_counter() - t0, 3),
    }


# -- output -------------------------------------------------------------------

def _format_table(rows: list) -> list[str]:
    if not rows:
        return []
    keys = list(rows[0])
    cells = [keys] + [[str(r[k]) for k in keys] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(keys))]
    return ["  " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]


def emit_report(report: dict, fmt: str = "text") -> bytes:
    """Render a run report; the json form omits timing so it is reproducible byte for byte."""
    if fmt == "json":
        data = {k: v for k, v in report.items() if k != "seconds"}
        return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if not report:
        return b""
    lines = [f"scenario {report['name']}  field {report['field']}  "
             f"generators {report['generators']}  degree {report['degree']}"]
    for r in report["checks"]:
        lines.append(f"[{r['check']}] {'PASS' if r['passed'] else 'FAIL'}")
        for k, v in r.items():
            if k in ("check", "passed", "degrees"):
                continue
            if isinstance(v, dict):
                v = ", ".join(f"{a}={'ok' if b is True else 'FAIL' if b is False else b}"
                              for a, b in v.items())
            lines.append(f"  {k}: {v}")
        lines.extend(_format_table(r.get("degrees", [])))
    lines.append(f"overall {'PASS' if report['passed'] else 'FAIL'}  ({report.get('seconds', 0)} s)")
    return ("\n".join(lines) + "\n").encode("utf-8")


def wreath_table(path: str, field: str | None = None, degree: int | None = None,
                 fmt: str = "text", cap: int = DEFAULT_CAP) -> bytes:
    from .embedding import build_codomain
    cfg = load_config(path, field, degree)
    est = estimate_basis(cfg)
    if est > cap:
        raise ConfigError(f"{path}: estimated basis size {est} exceeds the cap {cap}")
    wp = build_codomain(cfg.scenario())
    mod = wp.module
    if fmt == "text":
        return mod.action_dump().encode("utf-8")
    data = {
        "name": cfg.name,
        "field": cfg.field.name,
        "degree": cfg.degree,
        "basis": [{"index": i, "degree": d, "label": lab}
                  for i, (d, lab) in enumerate(zip(mod.degrees, mod.labels))],
        "actions": [{"generator": mod.algebra.gen_names[g],
                     "rows": [{"row": i, "entries": [[j, cfg.field.to_str(x)] for j, x in sorted(r.items())]}
                              for i, r in enumerate(mod.actions[g].rows) if r]}
                    for g in range(mod.algebra.ngens)],
    }
    return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _write(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    d = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".mixwreath-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="scenario config (TOML)")
    common.add_argument("--field", help="override the field: Q or Fp:<p>")
    common.add_argument("--degree", type=int, help="override the truncation degree")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum basis size")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    p = argparse.ArgumentParser(prog="mixwreath", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"mixwreath {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the checks listed in the config")
    sub.add_parser("dims", parents=[common], help="print graded dimension tables")
    sub.add_parser("wreath-table", parents=[common], help="dump the wreath module action tables")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "wreath-table":
            _write(wreath_table(args.config, args.field, args.degree, args.format, args.cap), args.output)
            return 0
        checks = ["dims"] if args.command == "dims" else None
        report = run_config(args.config, args.field, args.degree, max(args.jobs, 1), args.cap, checks)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(emit_report(report, args.format), args.output)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
