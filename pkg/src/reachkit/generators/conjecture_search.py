"""
Batch search for counterexamples to the determinant factorization and the
null-space decomposition, with the full theorem suite re-run on every
instance.

Instances are independent: instance ``i`` of seed ``s`` has its own shape
(``sample_params``) and its own graph stream, so results do not depend on the
worker count or on scheduling.
"""

import json
import logging
import os
import sys
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..analyzers.spectral import NullSpaceStatus, check_determinant_conjecture, check_nullspace_decomposition
from ..analyzers.theorems import TheoremVerifier
from ..caps import Caps
from ..exceptions import CapExceeded, GenerationFailure, PreconditionError
from ..graphs.formats import serialize_graph
from .random_graphs import SCHEMA_VERSION, RDisjointGenerator, sample_params

CONJECTURES = ('det', 'nullspace', 'all')


@dataclass(frozen=True)
class SearchTask:
    seed: int
    index: int
    max_n: int
    k_choices: Tuple[int, ...]
    conjecture: str
    caps: Caps
    max_retries: int


def run_instance(task: SearchTask) -> Dict[str, Any]:
    """Generate and check one instance. Runs in a worker process."""
    outcome: Dict[str, Any] = {'index': task.index, 'status': 'ok', 'counterexamples': []}
    try:
        params = sample_params(task.seed, task.index, task.max_n, task.k_choices, task.max_retries)
        instance = RDisjointGenerator(caps=task.caps).generate(params, task.index)
    except GenerationFailure as e:
        outcome.update(status='generation_failure', reason=str(e), diagnostics=e.diagnostics)
        return outcome

    graph, decomposition = instance.graph, instance.decomposition
    graph6 = serialize_graph(graph, 'graph6')
    outcome.update(graph=graph6, n=graph.n, k=decomposition.k)

    if task.conjecture in ('det', 'all'):
        verdict = check_determinant_conjecture(graph, decomposition)
        outcome['det'] = verdict.holds
        if not verdict.holds:
            outcome['counterexamples'].append({'kind': 'det', **verdict.to_dict(),
                                               'decomposition': decomposition.to_dict()})
    if task.conjecture in ('nullspace', 'all'):
        verdict = check_nullspace_decomposition(graph, decomposition)
        outcome['nullspace'] = verdict.status.value
        if verdict.status is NullSpaceStatus.VIOLATED:
            outcome['counterexamples'].append({'kind': 'nullspace', **verdict.to_dict(),
                                               'decomposition': decomposition.to_dict()})

    try:
        report = TheoremVerifier(caps=task.caps).verify(graph, 'all', decomposition)
    except (CapExceeded, PreconditionError) as e:
        outcome.update(status='skipped', reason=str(e))
        return outcome
    outcome['skipped_checks'] = [c.name for c in report.skipped]
    for failure in report.failures:
        outcome['counterexamples'].append({'kind': f"theorem:{failure.name}", 'graph': graph6,
                                           'witness': failure.witness})
    if outcome['counterexamples']:
        outcome['status'] = 'counterexample'
    return outcome


@dataclass
class SearchSummary:
    count: int
    seed: int
    conjecture: str
    completed: int = 0
    generation_failures: int = 0
    skipped: int = 0
    det_holds: int = 0
    nullspace: Dict[str, int] = field(default_factory=lambda: {s.value: 0 for s in NullSpaceStatus})
    skipped_checks: Dict[str, int] = field(default_factory=dict)
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        """0 clean, 1 any counterexample, 3 when no instance could be checked."""
        if self.counterexamples:
            return 1
        if self.count and not self.completed:
            return 3
        return 0

    def add(self, outcome: Dict[str, Any]) -> None:
        status = outcome['status']
        if status == 'generation_failure':
            self.generation_failures += 1
        elif status == 'skipped':
            self.skipped += 1
        else:
            self.completed += 1
        if outcome.get('det'):
            self.det_holds += 1
        if 'nullspace' in outcome:
            self.nullspace[outcome['nullspace']] += 1
        for name in outcome.get('skipped_checks', []):
            self.skipped_checks[name] = self.skipped_checks.get(name, 0) + 1
        for certificate in outcome['counterexamples']:
            self.counterexamples.append({'index': outcome['index'], **certificate})

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': SCHEMA_VERSION,
            'kind': 'search',
            'count': self.count,
            'seed': self.seed,
            'conjecture': self.conjecture,
            'completed': self.completed,
            'generation_failures': self.generation_failures,
            'skipped': self.skipped,
            'det_holds': self.det_holds,
            'nullspace': dict(self.nullspace),
            'skipped_checks': dict(sorted(self.skipped_checks.items())),
            'counterexamples': len(self.counterexamples),
            'exit_code': self.exit_code,
        }


class ConjectureSearch:
    """Distributes search instances over a process pool and aggregates them in index order."""

    def __init__(self, config: Dict[str, Any] = None, caps: Optional[Caps] = None):
        self.config = config or {}
        self.caps = caps or Caps.from_config(self.config)
        self.logger = logging.getLogger(__name__)
        search_config = self.config.get('search', {})
        self.workers = self._resolve_workers(search_config.get('workers'))
        self.chunksize = int(search_config.get('chunksize', 4))
        self.max_retries = int(self.config.get('generator', {}).get('max_retries', 200))

    def _resolve_workers(self, configured: Optional[int]) -> int:
        env = os.environ.get('REACHKIT_THREADS')
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                self.logger.warning(f"⚠️ ignoring REACHKIT_THREADS={env!r}: not an integer")
        if configured:
            return max(1, int(configured))
        return os.cpu_count() or 1

    def run(self, count: int, seed: int, max_n: int = 12, conjecture: str = 'det',
            k_choices: Sequence[int] = (1, 2, 3), emit_dir: Optional[str] = None,
            progress: bool = True) -> SearchSummary:
        if conjecture not in CONJECTURES:
            raise ValueError(f"unknown conjecture {conjecture!r}; choose from {', '.join(CONJECTURES)}")
        # fail fast on an impossible shape instead of once per instance
        sample_params(seed, 0, max_n, k_choices, self.max_retries)

        tasks = [SearchTask(seed, i, max_n, tuple(k_choices), conjecture, self.caps, self.max_retries)
                 for i in range(count)]
        summary = SearchSummary(count, seed, conjecture)
        self.logger.info(f"🔎 searching {count} instance(s) with {self.workers} worker(s)")

        bar = tqdm(total=count, desc="searching", file=sys.stderr, disable=not progress)
        if self.workers > 1 and count > 1:
            with Pool(processes=min(self.workers, count)) as pool:
                for outcome in pool.imap(run_instance, tasks, chunksize=self.chunksize):
                    summary.add(outcome)
                    bar.update(1)
        else:
            for task in tasks:
                summary.add(run_instance(task))
                bar.update(1)
        bar.close()

        if summary.counterexamples:
            self.logger.error(f"🚨 {len(summary.counterexamples)} counterexample(s) found")
            if emit_dir:
                self.emit(summary, emit_dir)
        return summary

    def emit(self, summary: SearchSummary, emit_dir: str) -> List[Path]:
        """One certificate file per counterexample, named by seed, index and kind."""
        out = Path(emit_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for certificate in summary.counterexamples:
            kind = certificate['kind'].replace(':', '-')
            path = out / f"counterexample-{summary.seed}-{certificate['index']}-{kind}.json"
            payload = {'schema_version': SCHEMA_VERSION, 'seed': summary.seed, **certificate}
            path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding='utf-8')
            written.append(path)
        self.logger.info(f"💾 wrote {len(written)} certificate(s) to {out}")
        return written
