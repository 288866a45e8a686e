"""Command-line front end.

Every command prints one envelope ``{"command", "inputs", "result", "exact"}``
(or ``"error"`` in place of result) as JSON, or the same information as CSV.
Exit status: 0 on success, 1 when a verdict fails (congruence / oracle),
2 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Any

from . import reid, reps
from .errors import ReidemeisterError
from .grp import PHI, Elem, parse_elem, parse_matrix, parse_twist, twisted_conj
from .intlat import INFINITE, coker_order
from .oracle import BoxSpec, cross_validate


def _num(x):
    return "infinite" if x == INFINITE else x


class VerdictFailure(Exception):
    """Command ran but its check did not hold; the payload is still printed."""


def cmd_classify(element: str, twist: str = "phi") -> dict:
    h = parse_elem(element)
    t = parse_twist(twist)
    cid = reid.class_id(h, t)
    h0, g = reid.base_representative(h, t)
    name = reid.class_name(cid, t)
    result = {
        "class_id": {"parity": cid.parity, "coset": list(cid.coset)},
        "class_name": name,
        "base_representative": str(h0),
        "witness": str(g),
        "level": h.n,
    }
    if name is not None:
        result["cell"] = {"level_mod_6": h.n % 6,
                          "condition": reid.PARITY_TABLE[h.n % 6][name]}
    return result


def cmd_reidemeister(twist: str) -> dict:
    t = parse_twist(twist)
    R = reid.reidemeister_number(t)
    result: dict[str, Any] = {"twist": str(t), "value": _num(R),
                              "reason": reid.infinite_reason(t)}
    if t.eps == -1:
        result["even_levels"] = _num(coker_order(reid.level_matrix(t, 0)))
        result["odd_levels"] = _num(coker_order(reid.level_matrix(t, 1)))
    return result


def cmd_chartable(samples: int = 100, seed: int = 0, bound: int = 8) -> dict:
    table = reps.character_table(PHI)
    chars = reps.character_functions(PHI)
    rng = random.Random(seed)
    constant = True
    for _ in range(samples):
        g = Elem((rng.randint(-bound, bound), rng.randint(-bound, bound)),
                 rng.randint(-bound, bound))
        for col, h in enumerate(table.representatives):
            h2 = twisted_conj(g, h, PHI)
            for row, name in enumerate(reps.CHARACTER_NAMES):
                if chars[name](h2) != table.rows[row][col]:
                    constant = False
    return {
        "columns": list(table.column_names),
        "rows": [{"character": name, **dict(zip(table.column_names, row))}
                 for name, row in zip(table.row_names, table.rows)],
        "determinant": table.determinant,
        "representatives": {c: str(h) for c, h in zip(table.column_names,
                                                      table.representatives)},
        "samples_checked": samples,
        "constant_on_classes": constant,
    }


def cmd_congruence(matrix: str, n_max: int) -> dict:
    F = parse_matrix(matrix)
    rows = reid.congruence_check(F, n_max)
    result = {"matrix": F.tolist(),
              "rows": [{"n": n, "lhs": lhs, "verdict": ok} for n, lhs, ok in rows],
              "all_hold": all(ok for _, _, ok in rows)}
    if not result["all_hold"]:
        raise VerdictFailure(result)
    return result


def cmd_oracle(twist: str = "phi", v_bound: int = 6, n_bound: int = 4,
               conj_v_bound: int = 16, conj_z_bound: int = 4, jobs: int = 1) -> dict:
    t = parse_twist(twist)
    box = BoxSpec(v_bound, n_bound, conj_v_bound, conj_z_bound)
    report = cross_validate(t, box, jobs=jobs)
    result = report.to_dict()
    result["complete"] = report.reidemeister != INFINITE and report.blocks == report.reidemeister
    if not report.ok:
        raise VerdictFailure(result)
    return result


def cmd_orbits(q_max: int, twist: str = "phi") -> dict:
    t = parse_twist(twist)
    found = reps.find_invariant_orbits(q_max, t)
    return {
        "q_max": q_max,
        "total_orbits": len(reps.all_orbits(q_max, t)),
        "orbits": [{"size": len(o),
                    "points": [[str(p.x), str(p.y)] for p in o.points],
                    "alpha_perm": list(o.alpha_perm),
                    "mu_perm": list(o.mu_perm)} for o in found],
    }


# -- output --------------------------------------------------------------------


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj)


def to_csv(envelope: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cmd = envelope["command"]
    res = envelope.get("result")
    if cmd == "chartable" and res is not None:
        cols = res["columns"]
        w.writerow(["character", *cols])
        for row in res["rows"]:
            w.writerow([row["character"], *(row[c] for c in cols)])
        w.writerow(["determinant", res["determinant"], *[""] * (len(cols) - 1)])
        w.writerow(["representative", *(res["representatives"][c] for c in cols)])
        w.writerow(["samples_checked", res["samples_checked"], *[""] * (len(cols) - 1)])
        w.writerow(["constant_on_classes", json.dumps(res["constant_on_classes"]),
                    *[""] * (len(cols) - 1)])
    elif cmd == "congruence" and res is not None:
        w.writerow(["n", "lhs", "verdict"])
        for row in res["rows"]:
            w.writerow([row["n"], row["lhs"], json.dumps(row["verdict"])])
    else:
        w.writerow(["key", "value"])
        for k, v in _flatten(res if res is not None else {"error": envelope["error"]}):
            w.writerow([k, v])
    return buf.getvalue()


def render(envelope: dict, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(envelope)
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def _exact(obj) -> bool:
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_exact(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_exact(v) for v in obj)
    return True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reidemeister",
                                description="Twisted conjugacy in Z^2 x|_A Z.")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[fmt], help="class label of an element ((m,k),n)")
    c.add_argument("element")
    c.add_argument("--twist", default="phi")

    c = sub.add_parser("reidemeister", parents=[fmt], help="Reidemeister number of a twist")
    c.add_argument("twist", nargs="?", default="phi")

    c = sub.add_parser("chartable", parents=[fmt], help="twisted character table and determinant")
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("congruence", parents=[fmt], help="Mobius congruences for R(F^n)")
    c.add_argument("matrix")
    c.add_argument("n_max", type=int)

    c = sub.add_parser("oracle", parents=[fmt], help="brute-force cross-validation")
    c.add_argument("--twist", default="phi")
    c.add_argument("--v-bound", type=int, default=6)
    c.add_argument("--n-bound", type=int, default=4)
    c.add_argument("--conj-v-bound", type=int, default=16)
    c.add_argument("--conj-z-bound", type=int, default=4)
    c.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("orbits", parents=[fmt], help="M-invariant finite A-orbits on the torus")
    c.add_argument("q_max", type=int)
    c.add_argument("--twist", default="phi")
    return p


def run(argv: list[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "format")}
    commands = {
        "classify": lambda: cmd_classify(args.element, args.twist),
        "reidemeister": lambda: cmd_reidemeister(args.twist),
        "chartable": lambda: cmd_chartable(args.samples, args.seed),
        "congruence": lambda: cmd_congruence(args.matrix, args.n_max),
        "oracle": lambda: cmd_oracle(args.twist, args.v_bound, args.n_bound,
                                     args.conj_v_bound, args.conj_z_bound, args.jobs),
        "orbits": lambda: cmd_orbits(args.q_max, args.twist),
    }
    env: dict[str, Any] = {"command": args.command, "inputs": inputs}
    code = 0
    try:
        env["result"] = commands[args.command]()
    except VerdictFailure as e:
        env["result"] = e.args[0]
        code = 1
    except (ReidemeisterError, ValueError) as e:
        env["error"] = {"type": type(e).__name__, "message": str(e)}
        if getattr(e, "power", None) is not None:
            env["error"]["power"] = e.power
        if getattr(e, "position", None) is not None:
            env["error"]["position"] = e.position
        env["exact"] = True
        return 2, render(env, args.format)
    env["exact"] = _exact(env["result"])
    return code, render(env, args.format)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
