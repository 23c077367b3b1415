"""Command-line surface: JSON job files in, deterministic text reports out.

One job per file.  A job names a task, the group data it needs, and
optionally a Galois datum, local data, and cap overrides.  Reports echo
the canonicalized input, print group structure as invariant factors with
representative tables, and list witnesses for every rejection.  Exit codes:
0 success, 2 parse error, 3 validation error, 4 cap exceeded, 1 internal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .cohomology import h1
from .engine import algebraic_unramified, b0, br_nr, sha2_ab
from .errors import BrnrError, CapError, ParseError, ValidationError
from .extensions import GaloisDatum
from .fastpath import (
    SemidirectDatum,
    build_example_714,
    local_witness,
    sha1_bic,
)
from .groups import (
    AbelianModule,
    FiniteGroup,
    GroupAction,
    abelian_group,
    group_from_permutations,
    group_from_table,
    semidirect_product,
)
from .localeval import ClassEntry, FastpathClassEntry, LocalDatum, bm_report

TASKS = ("b0", "brnr", "sha1bic", "algebraic", "evaluate", "bmreport", "sha2ab")


@dataclass
class Job:
    task: str
    raw: dict
    caps: Caps

    def canonical(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":"))


def parse_job(text: str) -> Job:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, line=err.lineno, column=err.colno) from err
    if not isinstance(raw, dict):
        raise ParseError("job must be a JSON object")
    task = raw.get("task")
    if task not in TASKS:
        raise ValidationError(f"task must be one of {TASKS}", witness=task)
    caps = DEFAULT_CAPS.with_overrides({k: int(v)
                                        for k, v in raw.get("caps", {}).items()})
    return Job(task, raw, caps)


# ---------------------------------------------------------------------------
# builders from job records
# ---------------------------------------------------------------------------


def _build_group(spec: dict, caps: Caps):
    """Returns (FiniteGroup, SemidirectDatum | None, AugmentationExample | None)."""
    kind = spec.get("kind")
    if kind == "table":
        return group_from_table(np.asarray(spec["table"], dtype=np.int64)), None, None
    if kind == "permutations":
        return group_from_permutations(spec["generators"],
                                       degree=spec.get("degree"), caps=caps), None, None
    if kind == "abelian":
        return abelian_group(spec["invariant_factors"]), None, None
    if kind == "semidirect":
        q = abelian_group(spec["q"]["invariant_factors"])
        n_spec = spec["n"]
        action = n_spec.get("action")
        module = AbelianModule(
            tuple(n_spec["invariant_factors"]), q,
            None if action is None else np.asarray(action, dtype=np.int64))
        module.validate()
        sd = SemidirectDatum(q, module)
        group = None
        if sd.group_order <= caps.table_group:
            group = semidirect_product(sd.N, sd.Q, caps=caps).group
        return group, sd, None
    if kind == "example714":
        ex = build_example_714(int(spec.get("p", 2)), caps)
        return None, ex.sd, ex
    raise ValidationError("unknown group kind", witness=kind)


def _build_galois(spec: dict | None, G: FiniteGroup) -> GaloisDatum:
    if spec is None:
        return GaloisDatum.trivial(G)
    if spec.get("kind") == "trivial":
        return GaloisDatum.trivial(
            G, spec.get("modulus"),
            base_algebraically_closed=bool(spec.get("base_algebraically_closed",
                                                    False)))
    if spec.get("kind") == "real":
        return GaloisDatum.real_like(G, spec.get("modulus"))
    delta = group_from_table(np.asarray(spec["delta_table"], dtype=np.int64))
    chi = np.asarray(spec["chi"], dtype=np.int64)
    action = GroupAction(delta, G, np.asarray(spec["action"], dtype=np.int64))
    gal = GaloisDatum(delta, G, chi, action, spec.get("modulus"),
                      bool(spec.get("base_algebraically_closed", False)))
    gal.validate()
    return gal


def _build_local(spec: dict) -> LocalDatum:
    delta_v = group_from_table(np.asarray(spec["delta_v_table"], dtype=np.int64))
    return LocalDatum(spec.get("label", "v"), delta_v,
                      np.asarray(spec["to_delta"], dtype=np.int64),
                      tuple(spec.get("generators", ())))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _fmt_factors(factors) -> str:
    if not factors:
        return "0"
    return " x ".join(f"Z/{d}" for d in factors)


def _fmt_table(arr: np.ndarray, name: str, limit: int = 16) -> list[str]:
    arr = np.asarray(arr)
    out = [f"{name} (shape {'x'.join(map(str, arr.shape))}):"]
    if arr.size > limit * limit:
        out.append("  [omitted: larger than the print cap]")
        return out
    if arr.ndim == 1:
        out.append("  " + " ".join(map(str, arr.tolist())))
    else:
        for row in arr.reshape(arr.shape[0], -1):
            out.append("  " + " ".join(map(str, row.tolist())))
    return out


def run_job(job: Job) -> tuple[str, int]:
    """Execute the task; returns (report text, exit code)."""
    lines: list[str] = []
    start = time.time()
    lines.append("job: " + job.canonical())
    task = job.task
    caps = job.caps
    raw = job.raw

    group, sd, example = _build_group(raw.get("group", {}), caps)

    if task == "b0":
        if group is None:
            raise ValidationError("task b0 needs a tabulated group")
        rep = b0(group, caps)
        lines.append(f"B_0 = {_fmt_factors(rep.invariant_factors)}")
        for i, ext in enumerate(rep.representatives):
            lines.extend(_fmt_table(ext.f, f"generator {i} cocycle"))

    elif task == "brnr":
        if group is None:
            raise ValidationError("task brnr needs a tabulated group")
        gal = _build_galois(raw.get("galois"), group)
        rep = br_nr(gal, caps)
        lines.append(f"Br0_nr = {_fmt_factors(rep.invariant_factors)}")
        for coords, ok, wit in rep.tested:
            if not ok:
                lines.append(f"rejected class {coords}: {wit[0]} witness {wit[1]}")
        for i, ext in enumerate(rep.representatives):
            lines.extend(_fmt_table(ext.f, f"generator {i} cocycle"))
            lines.extend(_fmt_table(ext.c, f"generator {i} twist"))

    elif task == "sha1bic":
        if sd is None:
            raise ValidationError("task sha1bic needs a semidirect group")
        rep = sha1_bic(sd, caps)
        lines.append(f"Sha1_bic(Q, N^) = {_fmt_factors(rep.invariant_factors)}")
        if example is not None:
            amb = h1(sd.Q, sd.N_hat, caps)
            gen = (example.expected_generator_multiple * example.a_table) \
                % sd.N_hat.exponent
            coords = amb.coordinates(gen)
            lines.append(
                f"H1(Q, N^) = {_fmt_factors(amb.invariant_factors)}; "
                f"p^2*[a] has coordinates {coords.tolist()}")
        for i, table in enumerate(rep.cocycles):
            lines.extend(_fmt_table(table, f"generator {i} (1-cocycle on Q)"))

    elif task == "algebraic":
        if group is None:
            raise ValidationError("task algebraic needs a tabulated group")
        gal = _build_galois(raw.get("galois"), group)
        rep = algebraic_unramified(gal, caps)
        lines.append(f"Br0_nr_alg = {_fmt_factors(rep.invariant_factors)}")

    elif task == "sha2ab":
        if group is None:
            raise ValidationError("task sha2ab needs a tabulated group")
        m = int(raw.get("modulus", 2))
        rep = sha2_ab(group, m, caps)
        lines.append(f"Sha2_ab(G, Z/{m}) = {_fmt_factors(rep.invariant_factors)}")

    elif task in ("evaluate", "bmreport"):
        data = [_build_local(spec) for spec in raw.get("local", [])]
        entries = []
        if sd is not None:
            fast = sha1_bic(sd, caps)
            witnesses: dict[str, Any] = {}
            if fast.invariant_factors:
                gen = fast.cocycles[0]
                for ld in data:
                    spec = next(s for s in raw.get("local", [])
                                if s.get("label", "v") == ld.label)
                    c_v = np.asarray(spec["c_v"], dtype=np.int64)
                    witnesses[ld.label] = local_witness(
                        sd, gen, ld.delta_v, c_v, caps=caps,
                        search_cup=bool(spec.get("search_cup", False)))
                entries.append(FastpathClassEntry(
                    "sha-generator", sd, gen, sd.group_order, witnesses))
            gal = GaloisDatum.trivial(group_from_table([[0]]), N=1)
        else:
            if group is None:
                raise ValidationError("evaluation needs a group")
            gal = _build_galois(raw.get("galois"), group)
            rep = br_nr(gal, caps)
            for i, ext in enumerate(rep.representatives):
                entries.append(ClassEntry(f"class{i}", ext))
        report = bm_report(entries, data, gal, caps)
        counts = report.counts()
        lines.append(
            f"tuples: {counts['Admissible']} admissible, "
            f"{counts['Excluded']} excluded, "
            f"{counts['Undetermined']} undetermined")
        for label, rows in report.per_class.items():
            for pv in rows:
                lines.append(
                    f"{label} @ {pv.place} [{pv.point_label}]: {pv.verdict}"
                    + (f" ({pv.detail})" if pv.detail else ""))
        for combo, status in report.tuple_rows:
            lines.append("tuple " + " | ".join(combo) + f" -> {status}")

    lines.append(f"# timing: {time.time() - start:.3f}s (excluded from determinism)")
    return "\n".join(lines) + "\n", 0


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def selftest(verbose: bool = True) -> int:
    """Run the bundled oracle checks; returns the number of failures."""
    from . import selfchecks

    failures = 0
    for name, fn in selfchecks.CHECKS:
        try:
            fn()
            status = "PASS"
        except Exception as err:  # noqa: BLE001 - report and continue
            status = f"FAIL ({err})"
            failures += 1
        if verbose:
            print(f"[{status.split()[0]:4}] {name}" +
                  ("" if status == "PASS" else f" :: {status}"))
    return failures


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="brnr",
        description="unramified Brauer groups of SL_n/G and their local evaluation")
    parser.add_argument("command", choices=["run", "selftest"])
    parser.add_argument("jobfile", nargs="?", help="JSON job file for 'run'")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for subgroup scans (results are "
                             "deterministic regardless)")
    parser.add_argument("--cap", action="append", default=[],
                        metavar="NAME=VALUE", help="override a cap")
    args = parser.parse_args(argv)

    try:
        if args.command == "selftest":
            failures = selftest()
            return 1 if failures else 0
        if not args.jobfile:
            print("run requires a job file", file=sys.stderr)
            return 2
        with open(args.jobfile, "r", encoding="utf-8") as fh:
            text = fh.read()
        job = parse_job(text)
        overrides = {}
        for item in args.cap:
            name, _, value = item.partition("=")
            overrides[name] = int(value)
        if overrides:
            job = Job(job.task, job.raw, job.caps.with_overrides(overrides))
        report, code = run_job(job)
        sys.stdout.write(report)
        return code
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except (ValidationError, BrnrError) as err:
        if isinstance(err, CapError):
            print(f"cap exceeded: {err}", file=sys.stderr)
            return 4
        print(f"validation error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
