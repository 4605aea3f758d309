"""Experiment orchestration: trial records, CSV schema, and the experiment runners.

Trials are described by small picklable tuples so they can be farmed out to a
process pool; each trial derives its own random stream from the master seed,
and results are sorted by (n, trial) before serialization.
"""

from __future__ import annotations

import csv
import io
import math
import time
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .coloring import chromatic_number
from .corpus import connected_graphs
from .errors import (
    InternalAssertion,
    InvalidParameter,
    RegimeViolation,
    TooLargeForExhaustive,
)
from .formats import parse_graph6, write_graph6
from .graph import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    delete_edge,
    empty,
    kneser,
    new_graph,
    path,
    petersen,
    star,
)
from .homs import lovasz_verdict, mobility_ub
from .random_models import GnpParams, gnp, random_regular, rng_for
from .trees import (
    choose_v,
    dense_branching,
    epsilon_for,
    has_property_P,
    sparse_branching,
)
from .warmth import codegree_warmth_ub, warmth_exact

SCHEMA_VERSION = 1
CSV_COLUMNS = ["n", "p", "trial", "graph6", "warmth", "chi", "codegree_ub", "mobility_ub", "lovasz", "ms"]
SPOT_CHECK_STRIDE = 20  # re-verify every 20th row, i.e. 5% of a run
BOUNDARY_MARGIN = 0.02


# -- graph generator specs -------------------------------------------------------


def _ints(args: list[str], count: int, name: str) -> list[int]:
    if len(args) != count:
        raise InvalidParameter(f"generator {name!r} takes {count} integer argument(s)")
    return [int(a) for a in args]


def graph_from_spec(spec: str) -> Graph:
    """Build a graph from ``name:arg1,arg2``, e.g. ``complete:4`` or ``kneser:8,3``."""
    name, _, rest = spec.partition(":")
    args = [a for a in rest.split(",") if a] if rest else []
    try:
        if name == "complete":
            return complete(*_ints(args, 1, name))
        if name == "cycle":
            return cycle(*_ints(args, 1, name))
        if name == "path":
            return path(*_ints(args, 1, name))
        if name == "empty":
            return empty(*_ints(args, 1, name))
        if name == "star":
            return star(*_ints(args, 1, name))
        if name in ("bipartite", "complete_bipartite"):
            return complete_bipartite(*_ints(args, 2, name))
        if name == "kneser":
            return kneser(*_ints(args, 2, name))
        if name == "petersen":
            return petersen()
        if name == "gnp":
            if len(args) not in (3, 4):
                raise InvalidParameter("gnp takes n,p,seed[,trial]")
            n, seed = int(args[0]), int(args[2])
            trial = int(args[3]) if len(args) == 4 else 0
            return gnp(GnpParams(n, p=float(args[1])), rng_for(seed, n, trial))
        if name == "regular":
            if len(args) not in (3, 4):
                raise InvalidParameter("regular takes n,d,seed[,trial]")
            n, d, seed = (int(a) for a in args[:3])
            trial = int(args[3]) if len(args) == 4 else 0
            return random_regular(n, d, rng_for(seed, n, d, trial))
        if name == "graph6":
            return parse_graph6(rest)
    except ValueError as exc:
        raise InvalidParameter(f"bad generator arguments in {spec!r}: {exc}") from exc
    raise InvalidParameter(f"unknown generator {name!r}")


# -- records ---------------------------------------------------------------------


@dataclass
class TrialRecord:
    n: int
    p: Optional[float]
    trial: int
    graph6: str
    warmth: Optional[int] = None
    chi: Optional[int] = None
    codegree_ub: Optional[int] = None
    mobility_ub: Optional[int] = None
    lovasz: Optional[str] = None
    ms: Optional[int] = None

    def check_invariants(self):
        if self.warmth is not None and self.chi is not None and self.warmth > self.chi:
            raise InternalAssertion(
                f"warmth {self.warmth} exceeds chromatic number {self.chi} for {self.graph6}"
            )

    def to_row(self) -> list[str]:
        return ["" if getattr(self, c) is None else str(getattr(self, c)) for c in CSV_COLUMNS]

    @classmethod
    def from_row(cls, row: dict) -> "TrialRecord":
        def opt_int(x):
            return None if x == "" else int(x)

        return cls(
            n=int(row["n"]),
            p=None if row["p"] == "" else float(row["p"]),
            trial=int(row["trial"]),
            graph6=row["graph6"],
            warmth=opt_int(row["warmth"]),
            chi=opt_int(row["chi"]),
            codegree_ub=opt_int(row["codegree_ub"]),
            mobility_ub=opt_int(row["mobility_ub"]),
            lovasz=row["lovasz"] or None,
            ms=opt_int(row["ms"]),
        )


def write_csv(records: Sequence[TrialRecord]) -> str:
    buf = io.StringIO()
    buf.write(f"schema={SCHEMA_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.to_row())
    return buf.getvalue()


def read_csv(text: str) -> list[TrialRecord]:
    lines = text.splitlines()
    if not lines or lines[0] != f"schema={SCHEMA_VERSION}":
        raise InvalidParameter("missing or unsupported schema line")
    reader = csv.DictReader(lines[1:])
    return [TrialRecord.from_row(row) for row in reader]


# -- single trials -----------------------------------------------------------------


def measure(g: Graph, what: Iterable[str], corpus=None) -> dict:
    """Compute the requested quantities for one graph (keys follow TrialRecord)."""
    what = set(what)
    out: dict = {}
    has_edges = g.edge_count > 0
    if "warmth" in what or "mobility" in what or "lovasz" in what:
        out["warmth"] = warmth_exact(g).warmth if has_edges else None
    if "chi" in what or "lovasz" in what:
        out["chi"] = chromatic_number(g)
    if "codegree" in what:
        out["codegree_ub"] = codegree_warmth_ub(g)
    if ("mobility" in what or "lovasz" in what) and has_edges:
        report = mobility_ub(g, corpus, warmth=out["warmth"])
        out["mobility_ub"] = report.best_ub
        out["mobility_report"] = report
    if "lovasz" in what:
        if has_edges:
            out["lovasz"] = lovasz_verdict(out["chi"], out["mobility_ub"]).status
        else:
            out["lovasz"] = "undecided"
    if out.get("warmth") is not None and out.get("chi") is not None:
        if out["warmth"] > out["chi"]:
            raise InternalAssertion(
                f"warmth {out['warmth']} exceeds chromatic number {out['chi']}"
                f" for {write_graph6(g)}"
            )
    return out


def _draw(model: str, n: int, params: dict, seed: int, trial: int) -> tuple[Graph, float]:
    if model == "gnp":
        gp = GnpParams(n, p=params.get("p"), alpha=params.get("alpha"), mu=params.get("mu", 1.0))
        return gnp(gp, rng_for(seed, n, trial)), gp.probability
    if model == "regular":
        d = params["d"]
        return random_regular(n, d, rng_for(seed, n, d, trial)), d / (n - 1)
    if model == "bipartite":
        p = params["p"]
        rng = rng_for(seed, n, trial)
        a = n // 2
        pairs = [(i, j) for i in range(a) for j in range(a, n)]
        hits = rng.random(len(pairs)) < p
        return new_graph(n, [e for e, h in zip(pairs, hits) if h]), p
    raise InvalidParameter(f"unknown model {model!r}")


def _run_trial(task) -> TrialRecord:
    model, n, params, seed, trial, what, timing = task
    g, p = _draw(model, n, params, seed, trial)
    start = time.perf_counter()
    values = measure(g, what)
    elapsed = int(round((time.perf_counter() - start) * 1000)) if timing else None
    values.pop("mobility_report", None)
    return TrialRecord(n=n, p=p, trial=trial, graph6=write_graph6(g), ms=elapsed, **values)


def _parallel_map(fn: Callable, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def run_trials(tasks: list, jobs: int = 1) -> list[TrialRecord]:
    records = _parallel_map(_run_trial, tasks, jobs)
    records.sort(key=lambda r: (r.n, r.trial))
    return records


def spot_check(records: Sequence[TrialRecord], stride: int = SPOT_CHECK_STRIDE) -> int:
    """Recompute every ``stride``-th row from its graph6 string; returns rows checked."""
    checked = 0
    for rec in records[::stride]:
        g = parse_graph6(rec.graph6)
        if g.n != rec.n:
            raise InternalAssertion(f"row {rec.trial}: vertex count mismatch")
        if rec.warmth is not None and warmth_exact(g).warmth != rec.warmth:
            raise InternalAssertion(f"row n={rec.n} trial={rec.trial}: warmth does not reproduce")
        if rec.chi is not None and chromatic_number(g) != rec.chi:
            raise InternalAssertion(f"row n={rec.n} trial={rec.trial}: chi does not reproduce")
        checked += 1
    return checked


# -- concentration -------------------------------------------------------------------


def predicted_warmth(alpha: float) -> tuple[int, int, bool]:
    """``(k, k + 2, near_boundary)`` with 1/(k+1) < alpha < 1/k."""
    if not 0 < alpha < 1:
        raise InvalidParameter(f"alpha must lie in (0, 1), got {alpha}")
    k = math.floor(1 / alpha)
    near = min(abs(alpha - 1 / k), abs(alpha - 1 / (k + 1))) < BOUNDARY_MARGIN
    return k, k + 2, near


@dataclass
class ConcentrationSummary:
    alpha: float
    mu: float
    k: int
    predicted: int
    histograms: dict[int, dict[int, int]] = field(default_factory=dict)
    probabilities: dict[int, float] = field(default_factory=dict)

    def fraction_at_predicted(self, n: int) -> float:
        hist = self.histograms[n]
        return hist.get(self.predicted, 0) / sum(hist.values())

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "mu": self.mu,
            "k": self.k,
            "predicted": self.predicted,
            "per_n": [
                {
                    "n": n,
                    "p": self.probabilities[n],
                    "histogram": {str(w): c for w, c in sorted(hist.items())},
                    "trials": sum(hist.values()),
                    "fraction_at_predicted": self.fraction_at_predicted(n),
                }
                for n, hist in sorted(self.histograms.items())
            ],
        }


def concentration(
    alpha: float,
    ns: Sequence[int],
    trials: int,
    seed: int,
    mu: float = 1.0,
    jobs: int = 1,
    timing: bool = False,
) -> tuple[list[TrialRecord], ConcentrationSummary]:
    if trials < 1 or not ns:
        raise InvalidParameter("need at least one trial and one n")
    k, predicted, near = predicted_warmth(alpha)
    if near:
        warnings.warn(
            f"alpha={alpha} is within {BOUNDARY_MARGIN} of 1/k; two warmth values are expected",
            stacklevel=2,
        )
    for n in ns:
        if not 2 <= n <= 16:
            raise InvalidParameter(f"n={n} is outside the exact-warmth range [2, 16]")
    params = {"alpha": alpha, "mu": mu}
    tasks = [
        ("gnp", n, params, seed, t, ("warmth", "chi", "codegree"), timing)
        for n in ns
        for t in range(trials)
    ]
    records = run_trials(tasks, jobs)
    summary = ConcentrationSummary(alpha, mu, k, predicted)
    for n in ns:
        rows = [r for r in records if r.n == n]
        summary.histograms[n] = dict(Counter(r.warmth if r.warmth is not None else 0 for r in rows))
        summary.probabilities[n] = rows[0].p
    return records, summary


# -- Lovász certification ------------------------------------------------------------


@dataclass
class LovaszSummary:
    trials: int
    certified: int
    undecided: int

    @property
    def fraction_certified(self) -> float:
        return self.certified / self.trials

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "certified": self.certified,
            "undecided": self.undecided,
            "fraction_certified": self.fraction_certified,
        }


def lovasz_experiment(
    model: str,
    ns: Sequence[int],
    trials: int,
    seed: int,
    params: dict,
    jobs: int = 1,
    timing: bool = False,
) -> tuple[list[TrialRecord], LovaszSummary]:
    if trials < 1 or not ns:
        raise InvalidParameter("need at least one trial and one n")
    for n in ns:
        if not 2 <= n <= 16:
            raise InvalidParameter(f"n={n} is outside the exact-warmth range [2, 16]")
    tasks = [
        (model, n, params, seed, t, ("warmth", "chi", "codegree", "lovasz"), timing)
        for n in ns
        for t in range(trials)
    ]
    records = run_trials(tasks, jobs)
    status = Counter(r.lovasz for r in records)
    unknown = set(status) - {"certified", "undecided"}
    if unknown:
        raise InternalAssertion(f"unexpected Lovász status {unknown}")
    return records, LovaszSummary(len(records), status["certified"], status["undecided"])


# -- non-monotonicity search -----------------------------------------------------------


@dataclass(frozen=True)
class NonmonotoneWitness:
    graph6: str
    edge: tuple[int, int]
    w_before: int
    w_after: int

    def verify(self) -> bool:
        g = parse_graph6(self.graph6)
        before = warmth_exact(g).warmth
        h = delete_edge(g, self.edge)
        if h.edge_count == 0:
            return False
        after = warmth_exact(h).warmth
        return before == self.w_before and after == self.w_after and after > before

    def to_json(self) -> dict:
        d = asdict(self)
        d["edge"] = list(self.edge)
        return d


def _edge_deletion_scan(g6: str) -> list[NonmonotoneWitness]:
    g = parse_graph6(g6)
    if g.edge_count < 2:
        return []
    before = warmth_exact(g).warmth
    out = []
    for e in g.edges():
        h = delete_edge(g, e)
        after = warmth_exact(h).warmth
        if after > before:
            out.append(NonmonotoneWitness(g6, e, before, after))
    return out


def nonmonotone_candidates(max_n: int, budget: int, seed: int) -> list[str]:
    """Stored connected graphs with n <= min(7, max_n), then ``budget`` random ones."""
    if not 2 <= max_n <= 10:
        raise InvalidParameter("max_n must lie in [2, 10]")
    out = [write_graph6(g) for g in connected_graphs(min(7, max_n), min_n=2)]
    lo = 8 if max_n >= 8 else 2
    for i in range(budget):
        rng = rng_for(seed, 0x6E6D, i)
        n = int(rng.integers(lo, max_n + 1))
        p = float(rng.uniform(0.25, 0.75))
        g = gnp(GnpParams(n, p=p), rng)
        if g.edge_count >= 2:
            out.append(write_graph6(g))
    return out


def nonmonotone(max_n: int, budget: int, seed: int, jobs: int = 1) -> list[NonmonotoneWitness]:
    candidates = nonmonotone_candidates(max_n, budget, seed)
    found = [w for chunk in _parallel_map(_edge_deletion_scan, candidates, jobs) for w in chunk]
    for w in found:
        if not w.verify():
            raise InternalAssertion(f"witness {w} does not re-verify")
    return found


# -- property P ----------------------------------------------------------------------


def property_p_record(
    g: Graph,
    s: Optional[int] = None,
    alpha: Optional[float] = None,
    delta: Optional[float] = None,
    n_param: Optional[int] = None,
    epsilon: Optional[float] = None,
    v: Optional[int] = None,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
    fallback: bool = True,
) -> dict:
    """Resolve (s, epsilon, v), test property P and report any certified bound."""
    eps = None
    if alpha is not None:
        s = sparse_branching(alpha)
        eps = epsilon_for("sparse", alpha=alpha)
    elif delta is not None:
        if n_param is None:
            n_param = g.n
        s = dense_branching(delta, n_param)
        eps = epsilon_for("dense", delta=delta, n=n_param)
    elif epsilon is not None:
        eps = epsilon
        if eps <= 0:
            raise RegimeViolation(f"epsilon = {eps} is not positive")
    if s is None:
        raise InvalidParameter("give s, alpha, or delta")
    if s < 1:
        raise RegimeViolation(f"branching factor s = {s} is below 1")
    if v is None:
        if eps is None:
            raise InvalidParameter("need v, or a way to derive epsilon")
        v = choose_v(s, min(1, eps))
    try:
        verdict = has_property_P(g, s, v, mode=mode, trials=trials, seed=seed)
    except TooLargeForExhaustive:
        if not fallback:
            raise
        verdict = has_property_P(g, s, v, mode="sampled", trials=trials, seed=seed)
    record = {
        "graph6": write_graph6(g),
        "s": s,
        "epsilon": None if eps is None else float(eps),
        "v": v,
        "verdict": verdict.to_json(),
    }
    record["warmth_lb"] = s + 2 if verdict.status == "holds_exhaustive" else None
    return record
