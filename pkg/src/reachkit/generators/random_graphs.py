"""
Seeded random R-disjoint graphs.

Each instance is built from flower blocks (an odd cycle with even pendant
paths or pendant trees), an optional bipartite block with a perfect matching
and a budget of random cross edges, then accepted only after the verifier
certifies it. In connected mode further cross edges join the components until
one remains.
Instance ``index`` of seed ``s`` draws from ``SeedSequence(s, spawn_key=(index,))``
so any instance can be regenerated on its own.
"""

import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml
from tqdm import tqdm

from ..analyzers.reach import FlowerDecomposition, flower_decomposition, is_r_disjoint
from ..analyzers.structure import KonigEgervaryResult, enumerate_odd_cycles, gallai_edmonds, is_konig_egervary
from ..caps import Caps
from ..exceptions import CapExceeded, DomainError, GenerationFailure, PreconditionError
from ..graphs.formats import serialize_graph
from ..graphs.graph import Graph, fingerprint

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GenParams:
    """
    Shape of the instances to sample; ``seed`` fixes the whole stream.

    Each entry of ``tail_lengths`` is the vertex count of one pendant piece.
    By default a piece is a path hanging off a cycle vertex. With
    ``pendant_trees`` it grows two vertices at a time from any vertex at even
    distance from the cycle, so pieces branch. ``connected`` rejects instances
    that stay disconnected after the joining edges.
    """

    k: int = 1
    cycle_lengths: Tuple[int, ...] = (3,)
    tail_lengths: Tuple[Tuple[int, ...], ...] = ()
    bipartite_size: int = 0
    density: float = 0.0
    cross_edges: int = 0
    max_retries: int = 200
    seed: int = 0
    relabel: bool = False
    pendant_trees: bool = False
    connected: bool = False

    def __post_init__(self):
        # lists from JSON/YAML become tuples so the params stay hashable
        object.__setattr__(self, 'cycle_lengths', tuple(int(x) for x in self.cycle_lengths))
        tails = tuple(tuple(int(x) for x in t) for t in self.tail_lengths)
        if not tails:
            tails = tuple(() for _ in self.cycle_lengths)
        object.__setattr__(self, 'tail_lengths', tails)
        self.validate()

    def validate(self) -> None:
        if self.k < 1:
            raise DomainError(f"k must be at least 1, got {self.k}")
        if len(self.cycle_lengths) != self.k:
            raise DomainError(f"expected {self.k} cycle lengths, got {len(self.cycle_lengths)}")
        for length in self.cycle_lengths:
            if length < 3 or length % 2 == 0:
                raise DomainError(f"cycle lengths must be odd and at least 3, got {length}")
        if len(self.tail_lengths) != self.k:
            raise DomainError(f"expected tail lengths for {self.k} cycles, got {len(self.tail_lengths)}")
        for tails in self.tail_lengths:
            for length in tails:
                if length < 2 or length % 2:
                    raise DomainError(f"tail lengths must be even and positive, got {length}")
        if self.bipartite_size < 0 or self.cross_edges < 0 or self.max_retries < 1:
            raise DomainError("bipartite_size and cross_edges must be non-negative, max_retries positive")
        if not 0.0 <= self.density <= 1.0:
            raise DomainError(f"density must lie in [0, 1], got {self.density}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit non-negative integer, got {self.seed}")

    @property
    def total_vertices(self) -> int:
        return sum(self.cycle_lengths) + sum(sum(t) for t in self.tail_lengths) + 2 * self.bipartite_size

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GenParams":
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise DomainError(f"unknown generator parameters: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str) -> "GenParams":
        """Load params from a JSON or YAML document."""
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise DomainError(f"cannot read generator parameters from {path}: {e}")
        if not isinstance(data, dict):
            raise DomainError(f"generator parameters in {path} must be a mapping")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['cycle_lengths'] = list(self.cycle_lengths)
        data['tail_lengths'] = [list(t) for t in self.tail_lengths]
        return data


@dataclass(frozen=True)
class GeneratedGraph:
    graph: Graph
    decomposition: Optional[FlowerDecomposition]
    index: int
    attempts: int
    certificate: Optional[KonigEgervaryResult] = field(default=None, repr=False)

    def manifest_entry(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'n': self.graph.n,
            'm': self.graph.m,
            'k': self.decomposition.k if self.decomposition else 1,
            'attempts': self.attempts,
            'fingerprint': fingerprint(self.graph),
        }


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


class RDisjointGenerator:
    """Rejection sampler for R-disjoint and almost bipartite non-KE graphs."""

    def __init__(self, config: Dict[str, Any] = None, caps: Optional[Caps] = None):
        self.config = config or {}
        self.caps = caps or Caps.from_config(self.config)
        self.logger = logging.getLogger(__name__)

    # construction -------------------------------------------------------

    def _skeleton(self, params: GenParams, rng: np.random.Generator) -> Tuple[int, List[Tuple[int, int]], List[int]]:
        """Flower blocks then the bipartite block; returns n, edges and a block id per vertex."""
        edges: List[Tuple[int, int]] = []
        block_of: List[int] = []
        n = 0
        for block, (length, tails) in enumerate(zip(params.cycle_lengths, params.tail_lengths)):
            cycle = list(range(n, n + length))
            edges.extend((cycle[i], cycle[(i + 1) % length]) for i in range(length))
            block_of.extend([block] * length)
            n += length
            even = list(cycle)
            for tail in tails:
                if params.pendant_trees:
                    for _ in range(tail // 2):
                        anchor = int(even[rng.integers(len(even))])
                        edges.extend([(anchor, n), (n, n + 1)])
                        even.append(n + 1)
                        block_of.extend([block, block])
                        n += 2
                    continue
                anchor = int(cycle[rng.integers(length)])
                for _ in range(tail):
                    edges.append((anchor, n))
                    anchor = n
                    block_of.append(block)
                    n += 1

        s = params.bipartite_size
        if s:
            left = list(range(n, n + s))
            right = list(range(n + s, n + 2 * s))
            for i in range(s):
                edges.append((left[i], right[i]))
                for j in range(s):
                    if j != i and rng.random() < params.density:
                        edges.append((left[i], right[j]))
            block_of.extend([params.k] * (2 * s))
            n += 2 * s
        return n, edges, block_of

    def _accepts(self, graph: Graph, k: int) -> bool:
        try:
            if len(enumerate_odd_cycles(graph, self.caps)) != k:
                return False
            return is_r_disjoint(graph, self.caps).is_r_disjoint
        except CapExceeded:
            return False

    def _attach(self, n: int, edges: List[Tuple[int, int]], block_of: List[int], budget: int,
                rng: np.random.Generator, accept) -> Graph:
        """Try ``budget`` random cross edges, keeping those the acceptance test approves."""
        graph = Graph.from_edges(n, edges)
        for _ in range(budget):
            u, v = (int(x) for x in rng.integers(n, size=2))
            if block_of[u] == block_of[v] or graph.has_edge(u, v):
                continue
            candidate = Graph.from_edges(n, graph.sorted_edges() + [(u, v)])
            if accept(candidate):
                graph = candidate
        return graph

    def _connect(self, graph: Graph, rng: np.random.Generator, accept) -> Graph:
        """
        Join components with accepted edges until one remains or ``4n`` tries
        are spent. Every edge leaving a reach set ends in A(G), so candidates
        need an endpoint in A(G) or C(G).
        """
        for _ in range(4 * graph.n):
            components = graph.connected_components()
            if len(components) <= 1:
                break
            where = {v: i for i, comp in enumerate(components) for v in comp}
            ge = gallai_edmonds(graph)
            hubs = set(ge.A) | set(ge.C)
            pairs = [(u, v) for u in sorted(hubs) for v in graph.vertices if where[u] != where[v]]
            if not pairs:
                break
            u, v = pairs[int(rng.integers(len(pairs)))]
            candidate = Graph.from_edges(graph.n, graph.sorted_edges() + [(min(u, v), max(u, v))])
            if accept(candidate):
                graph = candidate
        return graph

    def _build(self, params: GenParams, rng: np.random.Generator, accept) -> Graph:
        n, edges, block_of = self._skeleton(params, rng)
        graph = self._attach(n, edges, block_of, params.cross_edges, rng, accept)
        if params.connected:
            graph = self._connect(graph, rng, accept)
        if params.relabel:
            graph = graph.relabel([int(x) for x in rng.permutation(n)])
        return graph

    # public operations --------------------------------------------------

    def generate(self, params: GenParams, index: int = 0) -> GeneratedGraph:
        """
        Instance ``index`` of the stream fixed by ``params.seed``.

        Raises:
            GenerationFailure: no accepted instance within ``params.max_retries``.
        """
        rng = instance_rng(params.seed, index)
        rejected: Dict[str, int] = {}
        for attempt in range(1, params.max_retries + 1):
            graph = self._build(params, rng, lambda g: self._accepts(g, params.k))
            if not self._accepts(graph, params.k):
                rejected['verifier'] = rejected.get('verifier', 0) + 1
                continue
            if params.connected and len(graph.connected_components()) > 1:
                rejected['disconnected'] = rejected.get('disconnected', 0) + 1
                continue
            try:
                decomposition = flower_decomposition(graph, self.caps)
            except (CapExceeded, PreconditionError) as e:
                rejected[type(e).__name__] = rejected.get(type(e).__name__, 0) + 1
                continue
            self.logger.debug(f"instance {index} accepted after {attempt} attempt(s)")
            return GeneratedGraph(graph, decomposition, index, attempt)
        raise GenerationFailure(
            f"no R-disjoint instance after {params.max_retries} attempts",
            {'seed': params.seed, 'index': index, 'rejected': rejected, 'params': params.to_dict()},
        )

    def generate_almost_bipartite_non_ke(self, params: GenParams, index: int = 0) -> GeneratedGraph:
        """
        A graph with exactly one odd cycle that is not König-Egerváry, with the
        flower or posy certificate attached.
        """
        if params.k != 1:
            raise DomainError(f"almost bipartite instances need k=1, got {params.k}")
        rng = instance_rng(params.seed, index)

        def accept(graph: Graph) -> bool:
            try:
                if len(enumerate_odd_cycles(graph, self.caps)) != 1:
                    return False
                return not is_konig_egervary(graph, self.caps).is_konig_egervary
            except CapExceeded:
                return False

        for attempt in range(1, params.max_retries + 1):
            graph = self._build(params, rng, accept)
            if accept(graph):
                return GeneratedGraph(graph, None, index, attempt, is_konig_egervary(graph, self.caps))
        raise GenerationFailure(
            f"no almost bipartite non-KE instance after {params.max_retries} attempts",
            {'seed': params.seed, 'index': index, 'params': params.to_dict()},
        )

    def generate_corpus(self, params: GenParams, count: int, out_dir: str,
                        almost_bipartite: bool = False) -> Dict[str, Any]:
        """
        Write ``graphs.g6`` and ``manifest.json`` under ``out_dir``; returns the
        manifest. With ``almost_bipartite`` the instances are single-cycle
        non-KE graphs and the manifest also lists their certificates.
        """
        make = self.generate_almost_bipartite_non_ke if almost_bipartite else self.generate
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        entries = []
        lines = []
        certificates = []
        show = self.config.get('generator', {}).get('progress', True)
        for index in tqdm(range(count), desc="generating", file=sys.stderr, disable=not show):
            instance = make(params, index)
            lines.append(serialize_graph(instance.graph, 'graph6'))
            entries.append(instance.manifest_entry())
            if instance.certificate is not None:
                certificates.append(instance.certificate.certificate)
        (out / 'graphs.g6').write_text(''.join(f"{line}\n" for line in lines), encoding='utf-8')
        manifest = {
            'schema_version': SCHEMA_VERSION,
            'params': params.to_dict(),
            'seed': params.seed,
            'count': count,
            'graphs': entries,
        }
        if almost_bipartite:
            manifest['certificates'] = certificates
        (out / 'manifest.json').write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding='utf-8')
        self.logger.info(f"💾 wrote {count} graph(s) to {out}")
        return manifest


def sample_params(seed: int, index: int, max_n: int, k_choices: Sequence[int] = (1, 2, 3),
                  max_retries: int = 200) -> GenParams:
    """
    Random GenParams with at most ``max_n`` vertices, drawn from a stream
    separate from the instance stream of the same seed and index.

    Shapes use pendant trees and ask for a connected instance whenever every
    cycle can carry a pendant piece to attach through; the cross edge budget
    grows with the size, up to a quarter of the vertices.

    Raises:
        DomainError: no k in ``k_choices`` fits in ``max_n`` vertices.
    """
    feasible = sorted(k for k in k_choices if 3 * k <= max_n)
    if not feasible:
        raise DomainError(f"max_n={max_n} cannot hold {min(k_choices)} triangles")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index, 1)))
    k = int(feasible[rng.integers(len(feasible))])
    cycles = [3] * k
    tails: List[List[int]] = [[] for _ in range(k)]
    bipartite = 0
    budget = max_n - 3 * k
    # a bare odd cycle has no A(G) vertex to join through
    if budget >= 2 * k:
        for block in range(k):
            tails[block].append(2)
        budget -= 2 * k
    # grow the shape one random piece at a time until the budget runs out
    for _ in range(int(rng.integers(0, max_n + 1))):
        choice = int(rng.integers(3))
        block = int(rng.integers(k))
        if choice == 0 and budget >= 2:
            cycles[block] += 2
            budget -= 2
        elif choice == 1 and budget >= 2:
            tails[block].append(2 * int(rng.integers(1, min(budget // 2, 2) + 1)))
            budget -= tails[block][-1]
        elif choice == 2 and budget >= 2:
            bipartite += 1
            budget -= 2
    total = sum(cycles) + sum(sum(t) for t in tails) + 2 * bipartite
    return GenParams(
        k=k,
        cycle_lengths=tuple(cycles),
        tail_lengths=tuple(tuple(t) for t in tails),
        bipartite_size=bipartite,
        density=float(rng.choice([0.0, 0.3, 0.6])),
        cross_edges=int(rng.integers(0, -(-total // 4) + 1)),
        max_retries=max_retries,
        seed=seed,
        relabel=True,
        pendant_trees=True,
        connected=all(tails) or (k == 1 and bipartite == 0),
    )


def generate_r_disjoint(params: GenParams, index: int = 0, caps: Optional[Caps] = None):
    """Graph and verified flower decomposition for instance ``index``."""
    instance = RDisjointGenerator(caps=caps).generate(params, index)
    return instance.graph, instance.decomposition
