"""
Executable statements about R-disjoint graphs.

Each check recomputes what it needs from the exhaustive engines and returns
pass, fail (with a replayable witness) or skipped (a cap was reached). The
statements are proved, so a failure on a certified input is a defect of this
package, never a refutation.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..caps import Caps
from ..exceptions import CapExceeded, TheoremViolation
from ..graphs.formats import serialize_graph
from ..graphs.graph import Graph, VertexSet, fingerprint, vertex_set
from .independence import (
    IndependenceProfile,
    critical_in_D,
    difference,
    independence_profile,
    mis_in_D,
)
from .matching import Matching, enumerate_maximum_matchings, find_mn_path, matching_number, maximum_matching
from .reach import (
    FlowerDecomposition,
    crossing_matched_edges,
    flower_decomposition,
    reach_set_oracle,
    restriction_is_maximum,
    validate_decomposition,
)
from .structure import GEDecomposition, gallai_edmonds

logger = logging.getLogger(__name__)


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: CheckStatus
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'name': self.name, 'status': self.status.value, 'witness': self.witness}


@dataclass
class TheoremReport:
    fingerprint: str
    graph6: str
    decomposition: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status is not CheckStatus.FAIL for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status is CheckStatus.FAIL]

    @property
    def skipped(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status is CheckStatus.SKIPPED]

    def status_of(self, name: str) -> Optional[CheckStatus]:
        return next((c.status for c in self.checks if c.name == name), None)

    def to_dict(self) -> dict:
        return {
            'fingerprint': self.fingerprint,
            'graph': self.graph6,
            'decomposition': self.decomposition,
            'checks': [c.to_dict() for c in self.checks],
            'passed': self.passed,
        }


MAIN_CHECKS = ('ker_eq_core', 'corona_cover', 'corona_core_count', 'core_decomposition', 'ker_decomposition')
ADDITIVITY_CHECKS = ('mu_additivity', 'alpha_additivity', 'd_additivity', 'critical_additivity', 'mu_restriction')
KKK_CHECKS = ('cycle_edge_count',)
BOUNDARY_CHECKS = ('boundary_structure', 'witnesses_in_D')
STRUCTURE_CHECKS = ('part_structure', 'ker_subset_core', 'mn_paths_in_D')
# statements that hold in every graph; they run without a flower decomposition
UNIVERSAL_CHECKS = ('ker_subset_core', 'mn_paths_in_D')

SUITES: Dict[str, Tuple[str, ...]] = {
    'main': MAIN_CHECKS,
    'additivity': ADDITIVITY_CHECKS,
    'kkk': KKK_CHECKS,
    'boundary': BOUNDARY_CHECKS,
    'structure': STRUCTURE_CHECKS,
    'universal': UNIVERSAL_CHECKS,
    'all': ADDITIVITY_CHECKS + MAIN_CHECKS + KKK_CHECKS + BOUNDARY_CHECKS + STRUCTURE_CHECKS,
}


@dataclass
class _PartFacts:
    """Profile of an induced subgraph, lifted back to the labels of G."""
    mu: int
    alpha: int
    d: int
    core: VertexSet
    corona: VertexSet
    ker: VertexSet
    critical_sets: Tuple[VertexSet, ...]
    ge: GEDecomposition


class _Context:
    """Memoized facts about one graph and its decomposition for a single run."""

    def __init__(self, graph: Graph, decomposition: Optional[FlowerDecomposition], caps: Caps):
        self.graph = graph
        self.decomposition = decomposition
        self.caps = caps
        self._facts: Dict[VertexSet, _PartFacts] = {}
        self._matchings: Optional[List[Matching]] = None
        self._matchings_error: Optional[CapExceeded] = None
        self.ge = gallai_edmonds(graph)
        self._profile: Optional[IndependenceProfile] = None

    @property
    def profile(self) -> IndependenceProfile:
        if self._profile is None:
            self._profile = independence_profile(self.graph, self.caps)
        return self._profile

    def facts(self, vertices: VertexSet) -> _PartFacts:
        if vertices not in self._facts:
            sub, index = self.graph.induced_subgraph(vertices)
            back = {new: old for old, new in index.items()}

            def lift(vs):
                return vertex_set(back[v] for v in vs)

            profile = independence_profile(sub, self.caps)
            ge = gallai_edmonds(sub)
            self._facts[vertices] = _PartFacts(
                mu=matching_number(sub),
                alpha=profile.alpha,
                d=profile.d,
                core=lift(profile.core),
                corona=lift(profile.corona),
                ker=lift(profile.ker),
                critical_sets=tuple(lift(s) for s in profile.critical_sets),
                ge=GEDecomposition(lift(ge.D), lift(ge.A), lift(ge.C)),
            )
        return self._facts[vertices]

    def matchings(self) -> List[Matching]:
        if self._matchings_error is not None:
            raise self._matchings_error
        if self._matchings is None:
            try:
                self._matchings = enumerate_maximum_matchings(self.graph, self.caps)
            except CapExceeded as e:
                self._matchings_error = e
                raise
        return self._matchings

    def parts(self) -> List[VertexSet]:
        return self.decomposition.part_sets()

    def with_block(self) -> List[VertexSet]:
        """R(C) + B for every cycle."""
        return [vertex_set(p.vertices + self.decomposition.B) for p in self.decomposition.parts]


def _union(sets) -> VertexSet:
    out = set()
    for s in sets:
        out.update(s)
    return vertex_set(out)


class TheoremVerifier:
    """Runs named checks on an R-disjoint graph and assembles a TheoremReport."""

    def __init__(self, config: Dict[str, Any] = None, caps: Optional[Caps] = None):
        self.config = config or {}
        self.caps = caps or Caps.from_config(self.config)
        self.logger = logging.getLogger(__name__)

    def verify(self, graph: Graph, suite: str = 'all',
               decomposition: Optional[FlowerDecomposition] = None) -> TheoremReport:
        """
        The ``universal`` suite runs on any graph; every other suite needs
        the flower decomposition.

        Raises:
            PreconditionError: the suite needs a decomposition and the graph
                is not R-disjoint.
            KeyError: unknown suite.
        """
        names = SUITES[suite]
        if decomposition is None and any(name not in UNIVERSAL_CHECKS for name in names):
            decomposition = flower_decomposition(graph, self.caps)
        report = TheoremReport(
            fingerprint=fingerprint(graph),
            graph6=serialize_graph(graph, 'graph6'),
            decomposition=decomposition.to_dict() if decomposition is not None else {},
        )
        context = _Context(graph, decomposition, self.caps)
        for name in names:
            check: Callable[[_Context], CheckResult] = getattr(self, f'_check_{name}')
            try:
                result = check(context)
            except CapExceeded as e:
                self.logger.warning(f"⏭️ {name} skipped: {e}")
                result = CheckResult(name, CheckStatus.SKIPPED, {'reason': str(e), 'covered': len(e.partial)})
            if result.status is CheckStatus.FAIL:
                result.witness.setdefault('graph', report.graph6)
                result.witness.setdefault('decomposition', report.decomposition)
                self.logger.error(f"❌ {name} failed on {report.graph6}")
            report.checks.append(result)
        return report

    @staticmethod
    def _result(name: str, ok: bool, details: Dict[str, Any]) -> CheckResult:
        return CheckResult(name, CheckStatus.PASS if ok else CheckStatus.FAIL, details)

    # additivity ---------------------------------------------------------

    def _check_mu_additivity(self, ctx: _Context) -> CheckResult:
        whole = matching_number(ctx.graph)
        parts = [ctx.facts(p).mu for p in ctx.parts()]
        return self._result('mu_additivity', whole == sum(parts), {'mu': whole, 'parts': parts})

    def _check_alpha_additivity(self, ctx: _Context) -> CheckResult:
        parts = [ctx.facts(p).alpha for p in ctx.parts()]
        return self._result('alpha_additivity', ctx.profile.alpha == sum(parts),
                            {'alpha': ctx.profile.alpha, 'parts': parts})

    def _check_d_additivity(self, ctx: _Context) -> CheckResult:
        parts = [ctx.facts(p).d for p in ctx.parts()]
        return self._result('d_additivity', ctx.profile.d == sum(parts), {'d': ctx.profile.d, 'parts': parts})

    def _check_critical_additivity(self, ctx: _Context) -> CheckResult:
        D = set(ctx.ge.D)
        chosen = []
        for part in ctx.parts():
            inside = [s for s in ctx.facts(part).critical_sets if D.issuperset(s)]
            if not inside:
                return self._result('critical_additivity', False,
                                    {'part': list(part), 'reason': 'no critical set of the part inside D(G)'})
            chosen.append(inside[0])
        union = _union(chosen)
        if not (ctx.graph.is_independent(union) and difference(ctx.graph, union) == ctx.profile.d):
            return self._result('critical_additivity', False,
                                {'union': list(union), 'difference': difference(ctx.graph, union), 'd': ctx.profile.d})
        for critical in ctx.profile.critical_sets:
            if not D.issuperset(critical):
                continue
            for part in ctx.parts():
                piece = vertex_set(v for v in critical if v in set(part))
                sub, index = ctx.graph.induced_subgraph(part)
                if difference(sub, [index[v] for v in piece]) != ctx.facts(part).d:
                    return self._result('critical_additivity', False,
                                        {'critical_set': list(critical), 'part': list(part), 'restriction': list(piece)})
        return self._result('critical_additivity', True, {'union': list(union)})

    def _check_mu_restriction(self, ctx: _Context) -> CheckResult:
        for matching in ctx.matchings():
            if not restriction_is_maximum(ctx.graph, ctx.decomposition, matching):
                return self._result('mu_restriction', False,
                                    {'matching': [list(e) for e in matching.sorted_edges()]})
        combined = set()
        for part in ctx.parts():
            sub, index = ctx.graph.induced_subgraph(part)
            back = {new: old for old, new in index.items()}
            combined.update(tuple(sorted((back[u], back[v]))) for u, v in maximum_matching(sub).edges)
        merged = Matching(ctx.graph, frozenset(combined))
        ok = len(merged) == matching_number(ctx.graph)
        return self._result('mu_restriction', ok,
                            {'matchings': len(ctx.matchings()), 'union_of_part_matchings': len(merged)})

    # main theorems ------------------------------------------------------

    def _check_ker_eq_core(self, ctx: _Context) -> CheckResult:
        p = ctx.profile
        return self._result('ker_eq_core', p.ker == p.core, {'ker': list(p.ker), 'core': list(p.core)})

    def _check_corona_cover(self, ctx: _Context) -> CheckResult:
        p = ctx.profile
        covered = set(p.corona) | set(ctx.graph.neighborhood(p.core))
        missing = sorted(set(ctx.graph.vertices) - covered)
        return self._result('corona_cover', not missing, {'missing': missing})

    def _check_corona_core_count(self, ctx: _Context) -> CheckResult:
        p = ctx.profile
        lhs = len(p.corona) + len(p.core)
        rhs = 2 * p.alpha + ctx.decomposition.k
        return self._result('corona_core_count', lhs == rhs,
                            {'corona': len(p.corona), 'core': len(p.core), 'alpha': p.alpha,
                             'k': ctx.decomposition.k, 'lhs': lhs, 'rhs': rhs})

    def _check_core_decomposition(self, ctx: _Context) -> CheckResult:
        blocks = ctx.with_block()
        by_core = _union(ctx.facts(b).core for b in blocks)
        by_ker = _union(ctx.facts(b).ker for b in blocks)
        ok = ctx.profile.core == by_core == by_ker
        return self._result('core_decomposition', ok,
                            {'core': list(ctx.profile.core), 'union_of_cores': list(by_core),
                             'union_of_kers': list(by_ker)})

    def _check_ker_decomposition(self, ctx: _Context) -> CheckResult:
        by_parts = _union(ctx.facts(p).ker for p in ctx.parts())
        by_blocks = _union(ctx.facts(b).ker for b in ctx.with_block())
        ok = ctx.profile.ker == by_parts == by_blocks
        return self._result('ker_decomposition', ok,
                            {'ker': list(ctx.profile.ker), 'union_over_parts': list(by_parts),
                             'union_over_blocks': list(by_blocks)})

    # matchings against cycles -------------------------------------------

    def _check_cycle_edge_count(self, ctx: _Context) -> CheckResult:
        matchings = ctx.matchings()
        for matching in matchings:
            for cycle in ctx.decomposition.cycles:
                inside = len(cycle.edges & matching.edges)
                if inside != cycle.k:
                    return self._result('cycle_edge_count', False, {
                        'matching': [list(e) for e in matching.sorted_edges()],
                        'cycle': cycle.to_list(), 'edges_in_cycle': inside, 'expected': cycle.k,
                    })
        return self._result('cycle_edge_count', True, {'matchings': len(matchings)})

    # boundaries ---------------------------------------------------------

    def _check_boundary_structure(self, ctx: _Context) -> CheckResult:
        graph, ge, decomposition = ctx.graph, ctx.ge, ctx.decomposition
        problems: List[Dict[str, Any]] = []
        a_or_c = set(ge.A) | set(ge.C)

        _, touched = graph.boundary(decomposition.B)
        if not a_or_c.issuperset(touched):
            problems.append({'statement': 'boundary of B inside A or C', 'boundary': list(touched)})

        for part in decomposition.parts:
            _, touched = graph.boundary(part.vertices)
            if not set(ge.A).issuperset(touched):
                problems.append({'statement': 'boundary of R(C) inside A', 'cycle': part.cycle.to_list(),
                                 'boundary': list(touched)})
            members = set(part.vertices)
            for x in part.cycle.vertices + part.even:
                outside = sorted(set(graph.adjacency[x]) - members)
                if outside:
                    problems.append({'statement': 'closed neighborhood inside R(C)', 'vertex': x,
                                     'outside': outside})
            if not set(ge.D).issuperset(part.cycle.vertices + part.even):
                problems.append({'statement': 'V(C) and R_even inside D', 'cycle': part.cycle.to_list()})
            if not set(ge.A).issuperset(part.odd):
                problems.append({'statement': 'R_odd inside A', 'cycle': part.cycle.to_list(),
                                 'R_odd': list(part.odd)})

        facts = [ctx.facts(p) for p in ctx.parts()]
        if ge.D != _union(f.ge.D for f in facts):
            problems.append({'statement': 'D is the union of part D sets'})
        if ge.A != _union(f.ge.A for f in facts):
            problems.append({'statement': 'A is the union of part A sets'})
        if ge.C != facts[-1].ge.C:
            problems.append({'statement': 'C equals C of the block', 'C': list(ge.C), 'block_C': list(facts[-1].ge.C)})

        matchings = ctx.matchings()
        for matching in matchings:
            crossing = crossing_matched_edges(decomposition, matching)
            if crossing:
                problems.append({'statement': 'no matched edge between parts',
                                 'matching': [list(e) for e in matching.sorted_edges()],
                                 'crossing': [list(e) for e in crossing]})
                break
        return self._result('boundary_structure', not problems,
                            {'problems': problems, 'matchings': len(matchings)})

    def _check_witnesses_in_D(self, ctx: _Context) -> CheckResult:
        D = ctx.ge.D
        problems = []
        try:
            critical_in_D(ctx.graph, D, self.caps, list(ctx.profile.critical_sets))
        except TheoremViolation as e:
            problems.append({'statement': 'critical set inside D(G)', **e.witness})
        for part in ctx.decomposition.parts:
            if mis_in_D(ctx.graph, part.vertices, D, self.caps) is None:
                problems.append({'statement': 'maximum independent set of G[R(C)] inside D(G)',
                                 'cycle': part.cycle.to_list()})
            if not any(set(D).issuperset(s) for s in ctx.facts(part.vertices).critical_sets):
                problems.append({'statement': 'critical set of G[R(C)] inside D(G)',
                                 'cycle': part.cycle.to_list()})
        return self._result('witnesses_in_D', not problems, {'problems': problems})

    # structure ----------------------------------------------------------

    def _check_part_structure(self, ctx: _Context) -> CheckResult:
        try:
            validate_decomposition(ctx.graph, ctx.decomposition, self.caps)
        except TheoremViolation as e:
            return self._result('part_structure', False, {'statement': e.check, **e.witness})
        if ctx.graph.n > self.caps.oracle_vertex_limit:
            return self._result('part_structure', True, {'oracle': 'not run above the oracle vertex limit'})
        for part in ctx.decomposition.parts:
            exact = reach_set_oracle(ctx.graph, part.cycle, self.caps)
            if exact.vertices != part.vertices:
                return self._result('part_structure', False, {
                    'statement': 'reach set equals the exhaustive reach set',
                    'cycle': part.cycle.to_list(), 'fast': list(part.vertices), 'oracle': list(exact.vertices),
                })
        return self._result('part_structure', True, {'oracle': 'reach sets confirmed'})

    def _check_ker_subset_core(self, ctx: _Context) -> CheckResult:
        p = ctx.profile
        return self._result('ker_subset_core', set(p.core).issuperset(p.ker),
                            {'ker': list(p.ker), 'core': list(p.core)})

    def _check_mn_paths_in_D(self, ctx: _Context) -> CheckResult:
        """Every saturated x in D(G) starts an mn-path to an unsaturated vertex, for every maximum matching."""
        if ctx.graph.n > self.caps.oracle_vertex_limit:
            raise CapExceeded('mn_path_vertices', self.caps.oracle_vertex_limit)
        matchings = ctx.matchings()
        for matching in matchings:
            for x in ctx.ge.D:
                if matching.is_saturated(x) and find_mn_path(ctx.graph, matching, x) is None:
                    return self._result('mn_paths_in_D', False, {
                        'matching': [list(e) for e in matching.sorted_edges()], 'vertex': x,
                    })
        return self._result('mn_paths_in_D', True, {'matchings': len(matchings)})


def _run(graph: Graph, suite: str, decomposition: FlowerDecomposition, caps: Optional[Caps]) -> TheoremReport:
    return TheoremVerifier(caps=caps).verify(graph, suite, decomposition)


def verify_additivity(graph: Graph, decomposition: FlowerDecomposition = None,
                      caps: Optional[Caps] = None) -> TheoremReport:
    """mu, alpha and d additivity across the flower decomposition."""
    return _run(graph, 'additivity', decomposition, caps)


def verify_main_theorems(graph: Graph, decomposition: FlowerDecomposition = None,
                         caps: Optional[Caps] = None) -> TheoremReport:
    """ker = core, corona with N(core) covers V, the corona/core count, and both decompositions of core and ker."""
    return _run(graph, 'main', decomposition, caps)


def verify_cycle_edge_count(graph: Graph, decomposition: FlowerDecomposition = None,
                            caps: Optional[Caps] = None) -> TheoremReport:
    """Every maximum matching holds floor(|V(C)|/2) edges of every odd cycle."""
    return _run(graph, 'kkk', decomposition, caps)


def verify_boundary_structure(graph: Graph, decomposition: FlowerDecomposition = None,
                              caps: Optional[Caps] = None) -> TheoremReport:
    """Boundary memberships, closed neighborhoods, part-wise D/A/C and uncrossed matchings."""
    return _run(graph, 'boundary', decomposition, caps)
