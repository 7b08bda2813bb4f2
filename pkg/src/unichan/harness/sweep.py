"""One experiment per value of a chosen parameter, collected as CSV rows."""

from __future__ import annotations

import copy
import csv
import io
from typing import Sequence

from .experiment import ConfigError, ExperimentSpec, run_experiment

COLUMNS = ["axis_value", "n", "k", "t", "epsilon_target", "trials", "failures", "failure_rate",
           "wilson_lo", "wilson_hi", "rate", "bound_rate", "margin", "seconds", "error"]


def _locate(template: dict, axis: str) -> tuple[dict, str]:
    """Dotted paths are taken literally; a bare name is looked up in code, channel, then the top level."""
    if "." in axis:
        *path, leaf = axis.split(".")
        node = template
        for part in path:
            if not isinstance(node.get(part), dict):
                raise ConfigError(f"axis {axis!r} does not name a spec field")
            node = node[part]
        return node, leaf
    for section in (template.get("code", {}), template.get("code", {}).get("inner", {}),
                    template.get("channel", {}), template):
        if axis in section:
            return section, axis
    raise ConfigError(f"axis {axis!r} does not name a spec field")


def sweep_rows(template: dict, axis: str, values: Sequence) -> list[dict]:
    _locate(template, axis)
    rows = []
    for v in values:
        spec_dict = copy.deepcopy(template)
        node, leaf = _locate(spec_dict, axis)
        node[leaf] = v
        row = {"axis_value": v, "error": ""}
        try:
            rep = run_experiment(ExperimentSpec.from_json(spec_dict))
            lo, hi = rep.wilson_interval
            row.update(n=rep.n, k=rep.k, t=rep.t, epsilon_target=rep.epsilon_target, trials=rep.trials,
                       failures=rep.failures, failure_rate=rep.failure_rate, wilson_lo=lo, wilson_hi=hi,
                       rate=rep.rate, bound_rate=rep.bound_rate, margin=rep.margin, seconds=rep.seconds)
        except Exception as exc:  # a bad row is recorded and the sweep moves on
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    return rows


def to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, restval="", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def sweep(template: dict, axis: str, values: Sequence) -> str:
    return to_csv(sweep_rows(template, axis, values))
