#!/usr/bin/env python3
"""
reachkit command line

Analyze graphs, verify the R-disjoint theorems, generate seeded corpora and
search for counterexamples to the spectral conjectures.

Exit codes: 0 success, 1 failure or counterexample, 2 parse/domain/precondition
error, 3 cap exceeded or generation failure.
"""

import argparse
import copy
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

try:
    from dotenv import load_dotenv
except ImportError:
    # python-dotenv not available, environment variables still work
    load_dotenv = None

from .analyzers.graph_analyzer import GraphAnalyzer
from .analyzers.theorems import SUITES, TheoremVerifier
from .caps import Caps
from .exceptions import DomainError, PreconditionError, ReachkitError
from .generators.conjecture_search import CONJECTURES, ConjectureSearch
from .generators.explorer import IdentityExplorer
from .generators.random_graphs import SCHEMA_VERSION, GenParams, RDisjointGenerator
from .generators.report_generator import ReportGenerator
from .graphs.fixtures import FIXTURES, load_fixture
from .graphs.formats import FORMATS, guess_format, parse_graph
from .graphs.graph import Graph

DEFAULT_CONFIG: Dict[str, Any] = {
    'caps': {
        'matchings': 100000,
        'odd_cycles': 10000,
        'flowers': 100000,
        'mis_vertex_limit': 32,
        'independent_sets': 2000000,
        'odd_cycle_vertex_limit': 24,
        'oracle_vertex_limit': 14,
    },
    'generator': {
        'max_retries': 200,
        'progress': True,
    },
    'search': {
        'workers': None,
        'chunksize': 4,
        'max_n': 12,
        'progress': True,
    },
    'report': {
        'template_dir': None,
        'template': 'analysis_report.md',
    },
    'logging': {
        'level': 'WARNING',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    },
}


def setup_logging(config: Dict[str, Any]) -> None:
    """Set up logging configuration; everything goes to stderr."""
    log_config = config.get('logging', {})
    level = getattr(logging, str(log_config.get('level', 'WARNING')).upper(), logging.WARNING)
    format_str = log_config.get('format', DEFAULT_CONFIG['logging']['format'])

    logging.basicConfig(level=level, format=format_str, stream=sys.stderr, force=True)


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: str = "reachkit.yaml") -> Dict[str, Any]:
    """Load configuration from YAML on top of the defaults."""
    if load_dotenv is not None:
        load_dotenv()
    config_file = Path(config_path)

    if not config_file.exists():
        print(f"Warning: Config file {config_path} not found. Using defaults.", file=sys.stderr)
        return copy.deepcopy(DEFAULT_CONFIG)

    try:
        with open(config_file, 'r', encoding='utf-8') as f:
            loaded = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        print(f"Error loading config: {e}", file=sys.stderr)
        sys.exit(2)
    if not isinstance(loaded, dict):
        print(f"Error loading config: {config_path} must hold a mapping", file=sys.stderr)
        sys.exit(2)
    return _merge(DEFAULT_CONFIG, loaded)


def _say(message: str) -> None:
    print(message, file=sys.stderr)


def read_graph(source: str, format: str = 'auto', index: int = 0) -> Graph:
    """
    Read a graph from a file, or load a shipped fixture by name (F1..F8).
    For graph6 files holding several graphs, ``index`` picks the line.
    """
    path = Path(source)
    if not path.exists():
        if source.upper() in FIXTURES or source in FIXTURES.values():
            return load_fixture(source)
        raise DomainError(f"no such file or fixture: {source}")
    if format == 'auto':
        format = guess_format(source)
    text = path.read_text(encoding='utf-8')
    if format == 'graph6':
        lines = [line for line in text.splitlines() if line.strip()]
        if not 0 <= index < len(lines):
            raise DomainError(f"{source} has {len(lines)} graph(s); index {index} is out of range")
        text = lines[index]
    return parse_graph(text, format)


def _caps(args: argparse.Namespace, config: Dict[str, Any]) -> Caps:
    return Caps.from_config(config).override(
        matchings=args.max_matchings,
        odd_cycles=args.max_cycles,
        flowers=args.max_flowers,
        mis_vertex_limit=args.mis_limit,
        independent_sets=args.max_independent_sets,
        odd_cycle_vertex_limit=args.odd_cycle_vertex_limit,
        oracle_vertex_limit=args.oracle_limit,
    )


def _emit_json(payload: Dict[str, Any], destination: Optional[str]) -> None:
    if not destination:
        return
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if destination == '-':
        print(text, end='')
    else:
        Path(destination).write_text(text, encoding='utf-8')


# ----------------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace, config: Dict[str, Any], caps: Caps) -> int:
    graph = read_graph(args.graph, args.format, args.index)
    analyzer = GraphAnalyzer(config, caps)
    reporter = ReportGenerator(config)
    report = reporter.build_report(analyzer.analyze_graph(graph, args.suite), source=args.graph)
    reporter.write(report, args.json, args.markdown)

    verdict = report['r_disjoint'].get('verdict', 'skipped')
    _say(f"📊 n={graph.n} m={graph.m} μ={report['matching']['mu']} r_disjoint={verdict}")
    if report['theorems'] and not report['theorems']['passed']:
        _say("❌ theorem checks failed; see the report for witnesses")
        return 1
    if report['skipped']:
        _say(f"⏭️ stopped by caps: {', '.join(report['skipped'])}")
        return 3
    _say("✅ analysis complete")
    return 0


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any], caps: Caps) -> int:
    graph = read_graph(args.graph, args.format, args.index)
    try:
        report = TheoremVerifier(config, caps).verify(graph, args.suite)
    except PreconditionError as e:
        _say(f"🚫 {e}")
        if e.verdict is not None:
            _emit_json({'schema_version': SCHEMA_VERSION, 'kind': 'verify', 'r_disjoint': e.verdict.to_dict()},
                       args.json)
        return e.exit_code

    _emit_json({'schema_version': SCHEMA_VERSION, 'kind': 'verify', 'suite': args.suite, **report.to_dict()},
               args.json)
    for check in report.checks:
        marker = {'pass': '✅', 'fail': '❌', 'skipped': '⏭️'}[check.status.value]
        _say(f"{marker} {check.name}: {check.status.value}")
    for failure in report.failures:
        _say(json.dumps(failure.to_dict(), sort_keys=True))
    return 0 if report.passed else 1


def cmd_search(args: argparse.Namespace, config: Dict[str, Any], caps: Caps) -> int:
    if args.workers is not None:
        config['search']['workers'] = args.workers
    max_n = args.max_n if args.max_n is not None else int(config['search'].get('max_n', 12))
    search = ConjectureSearch(config, caps)
    summary = search.run(args.count, args.seed, max_n, args.conjecture, tuple(args.k),
                         args.emit, progress=bool(config['search'].get('progress', True)))
    _emit_json(summary.to_dict(), args.json)
    _say(f"🔎 {summary.completed}/{summary.count} checked, det held {summary.det_holds}, "
         f"null space {summary.nullspace}, counterexamples {len(summary.counterexamples)}")
    return summary.exit_code


def _params_from_args(args: argparse.Namespace, config: Dict[str, Any]) -> GenParams:
    if args.params:
        params = GenParams.from_file(args.params)
        return GenParams.from_dict({**params.to_dict(), **({'seed': args.seed} if args.seed is not None else {})})
    cycle_lengths = args.cycle_lengths or [3] * args.k
    tails = [tuple(int(x) for x in item.split(',') if x.strip()) for item in (args.tails or [])]
    return GenParams(
        k=args.k,
        cycle_lengths=tuple(cycle_lengths),
        tail_lengths=tuple(tails),
        bipartite_size=args.bipartite_size,
        density=args.density,
        cross_edges=args.cross_edges,
        max_retries=args.max_retries or int(config['generator'].get('max_retries', 200)),
        seed=args.seed or 0,
        relabel=args.relabel,
        pendant_trees=args.pendant_trees,
        connected=args.connected,
    )


def cmd_gen(args: argparse.Namespace, config: Dict[str, Any], caps: Caps) -> int:
    try:
        params = _params_from_args(args, config)
    except ValueError as e:
        raise DomainError(f"invalid generator parameters: {e}")
    generator = RDisjointGenerator(config, caps)
    generator.generate_corpus(params, args.count, args.out, almost_bipartite=args.almost_bipartite)
    _say(f"🎲 generated {args.count} graph(s) into {args.out}")
    return 0


def cmd_explore(args: argparse.Namespace, config: Dict[str, Any], caps: Caps) -> int:
    result = IdentityExplorer(config, caps).run(args.count, args.seed, args.n, args.p,
                                                progress=bool(config['search'].get('progress', True)))
    _emit_json(result, args.json)
    for name, group in result['groups'].items():
        _say(f"🧭 {name}: {group}")
    _say(f"🧭 {len(result['outside_class'])} graph(s) outside the class satisfy an identity")
    return 0


COMMANDS = {
    'analyze': cmd_analyze,
    'verify': cmd_verify,
    'search': cmd_search,
    'gen': cmd_gen,
    'explore': cmd_explore,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default='reachkit.yaml', help='Path to configuration file')
    common.add_argument('--verbose', '-v', action='store_true', help='Debug logging on stderr')
    caps = common.add_argument_group('caps')
    caps.add_argument('--max-matchings', type=int, help='Maximum matchings to enumerate (default: 100000)')
    caps.add_argument('--max-cycles', type=int, help='Odd cycles to enumerate (default: 10000)')
    caps.add_argument('--max-flowers', type=int, help='Flowers to enumerate per cycle (default: 100000)')
    caps.add_argument('--mis-limit', type=int, help='Vertex limit for exact independence (default: 32)')
    caps.add_argument('--max-independent-sets', type=int, help='Independent sets to enumerate (default: 2000000)')
    caps.add_argument('--odd-cycle-vertex-limit', type=int, help='Vertex limit for odd cycle enumeration (default: 24)')
    caps.add_argument('--oracle-limit', type=int, help='Vertex limit for exhaustive reach-set oracles (default: 14)')

    graph_input = argparse.ArgumentParser(add_help=False)
    graph_input.add_argument('graph', help='Graph file (edgelist or graph6) or fixture name F1..F8')
    graph_input.add_argument('--format', choices=('auto',) + FORMATS, default='auto',
                             help='Input format (default: by file extension)')
    graph_input.add_argument('--index', type=int, default=0, help='Line of a multi-graph graph6 file')
    graph_input.add_argument('--json', metavar='OUT', help="Write the JSON report to OUT ('-' for stdout)")

    parser = argparse.ArgumentParser(
        prog='reachkit',
        description="R-disjoint graphs: matching structure, theorem checks and conjecture search",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s analyze F4 --json -                         # Full report for a fixture
  %(prog)s analyze graph.g6 --markdown report.md       # Markdown report
  %(prog)s verify F8 --suite main                      # Theorem checks
  %(prog)s search --count 100 --seed 7 --conjecture det --emit certs
  %(prog)s gen --k 2 --tails 2 --tails 2 --count 10 --out corpus
  %(prog)s explore --count 200 --seed 1 --n 9 --p 0.3
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', parents=[common, graph_input], help='Analyze one graph')
    analyze.add_argument('--markdown', metavar='PATH', help='Also render a markdown report')
    analyze.add_argument('--suite', choices=sorted(SUITES), default='all', help='Theorem suite to include')

    verify = sub.add_parser('verify', parents=[common, graph_input], help='Run theorem checks')
    verify.add_argument('--suite', choices=sorted(SUITES), default='all', help='Theorem suite (default: all)')

    search = sub.add_parser('search', parents=[common], help='Search for spectral counterexamples')
    search.add_argument('--count', type=int, default=100, help='Instances to generate')
    search.add_argument('--seed', type=int, default=0, help='Seed of the instance stream')
    search.add_argument('--max-n', type=int, help='Largest instance size (default: search.max_n)')
    search.add_argument('--conjecture', choices=CONJECTURES, default='det')
    search.add_argument('--k', type=int, nargs='+', default=[1, 2, 3], help='Odd cycle counts to sample')
    search.add_argument('--emit', metavar='DIR', help='Directory for counterexample certificates')
    search.add_argument('--workers', type=int, help='Worker processes (REACHKIT_THREADS overrides)')
    search.add_argument('--json', metavar='OUT', help="Write the summary JSON to OUT ('-' for stdout)")

    gen = sub.add_parser('gen', parents=[common], help='Generate a seeded corpus')
    gen.add_argument('--params', help='GenParams as a JSON or YAML document')
    gen.add_argument('--k', type=int, default=1, help='Number of odd cycles')
    gen.add_argument('--cycle-lengths', type=int, nargs='+', help='Odd cycle lengths (default: triangles)')
    gen.add_argument('--tails', action='append',
                     help='Comma-separated even tail lengths for the next cycle; repeat once per cycle')
    gen.add_argument('--bipartite-size', type=int, default=0, help='Side size of the bipartite block')
    gen.add_argument('--density', type=float, default=0.0, help='Extra edge density inside the bipartite block')
    gen.add_argument('--cross-edges', type=int, default=0, help='Cross edges to attempt between blocks')
    gen.add_argument('--max-retries', type=int, help='Rejection sampling budget per graph')
    gen.add_argument('--seed', type=int, help='Seed of the instance stream')
    gen.add_argument('--relabel', action='store_true', help='Randomly permute vertex labels')
    gen.add_argument('--pendant-trees', action='store_true', help='Grow branching pendant trees instead of paths')
    gen.add_argument('--connected', action='store_true', help='Join the blocks into one component')
    gen.add_argument('--almost-bipartite', action='store_true',
                     help='Emit single-odd-cycle non-KE graphs instead (k must be 1)')
    gen.add_argument('--count', type=int, default=1, help='Number of graphs')
    gen.add_argument('--out', required=True, help='Output directory')

    explore = sub.add_parser('explore', parents=[common], help='Tabulate identities on G(n, p)')
    explore.add_argument('--count', type=int, default=100)
    explore.add_argument('--seed', type=int, default=0)
    explore.add_argument('--n', type=int, default=8)
    explore.add_argument('--p', type=float, default=0.3)
    explore.add_argument('--json', metavar='OUT', help="Write the tabulation JSON to OUT ('-' for stdout)")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)

    config = load_config(args.config)
    if args.verbose:
        config['logging']['level'] = 'DEBUG'
    setup_logging(config)

    try:
        caps = _caps(args, config)
        return COMMANDS[args.command](args, config, caps)
    except KeyboardInterrupt:
        _say("\n🛑 Process interrupted by user")
        return 1
    except ReachkitError as e:
        _say(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        _say(f"\n❌ Error: {e}")
        logging.exception("Detailed error information:")
        return 1


def main():
    """Main entry point for the reachkit command line."""
    sys.exit(run())


if __name__ == "__main__":
    main()
