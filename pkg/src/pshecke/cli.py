"""Command line: ``pshecke run`` writes per-case TSV reports and summary.json; ``pshecke validate`` checks a config."""
import argparse
import json
import sys
from pathlib import Path

from .exact_rings import ConfigError
from .catalog import TASKS, load_catalog, default_catalog_json
from .tasks import RUNNERS

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _load(path):
    if path is None:
        return load_catalog(default_catalog_json())
    return load_catalog(path)


def run(config=None, tasks=None, out="reports", cases=None, log=print) -> int:
    cat = _load(config)
    wanted = tuple(tasks) if tasks else None
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = {}
    failed = False
    for case in cat.cases:
        if cases and case.name not in cases:
            continue
        summary[case.name] = {}
        for task in case.tasks:
            if wanted and task not in wanted:
                continue
            res = RUNNERS[task](case)
            (outdir / f"{case.name}__{task}.tsv").write_text(res.tsv(), encoding="utf-8")
            verdict = "PASS" if res.verdict else "FAIL"
            summary[case.name][task] = verdict
            failed = failed or not res.verdict
            log(f"{case.name}\t{task}\t{verdict}")
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pshecke", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run tasks and write reports")
    r.add_argument("--config", help="catalog JSON (default: bundled catalog)")
    r.add_argument("--task", action="append", choices=TASKS, help="restrict to this task (repeatable)")
    r.add_argument("--case", action="append", help="restrict to this case (repeatable)")
    r.add_argument("--out", default="reports", help="output directory")
    v = sub.add_parser("validate", help="parse and validate a catalog")
    v.add_argument("--config", help="catalog JSON (default: bundled catalog)")
    sub.add_parser("dump-default", help="print the bundled catalog")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "dump-default":
            print(json.dumps(default_catalog_json(), indent=2))
            return EXIT_OK
        if args.command == "validate":
            cat = _load(args.config)
            for case in cat.cases:
                print(f"{case.name}\tok\t{','.join(case.tasks)}")
            return EXIT_OK
        return run(args.config, args.task, args.out, args.case)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
