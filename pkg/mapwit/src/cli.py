"""Command-line interface: recognize, verify, oracle and render."""
import argparse
import logging
import sys

from mapwit.src.certificate import parse_certificate, write_certificate
from mapwit.src.config import Options
from mapwit.src.dp_engine import recognize
from mapwit.src.graph import parse_graph
from mapwit.src.oracle import (brute_force_is_hole_free_k_map,
                               brute_force_is_k_map)
from mapwit.src.render import write_svg
from mapwit.src.tree_decomposition import parse_td
from mapwit.src.witness import max_intersection_degree, verify_witness

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _read(path):
    with open(path) as f:
        return f.read()


def _oracle(graph, k, hole_free, options):
    if hole_free:
        return brute_force_is_hole_free_k_map(graph, k, options)[0]
    return brute_force_is_k_map(graph, k, options)[0]


def cmd_recognize(args, options):
    graph = parse_graph(_read(args.graph))
    td = parse_td(_read(args.td), graph) if args.td else None
    certificate = args.certificate is not None and not args.decision_only
    result = recognize(graph, td, k=args.k, minimize=args.min_k,
                       hole_free=args.hole_free, certificate=certificate,
                       options=options)
    if result.decision:
        print("YES" if result.k is None else "YES k=%d" % result.k)
    else:
        print("NO")
    if args.stats and result.run is not None:
        print("width=%d nodes=%d max_record=%d max_sketch=%d" % (
            result.run.width, result.run.node_count,
            result.run.max_record_size, result.run.max_sketch_vertices))
    if certificate and result.decision:
        with open(args.certificate, 'w') as f:
            f.write(write_certificate(graph, result.witness, result.k,
                                      args.hole_free))
    if args.oracle_check:
        if not args.min_k:
            agrees = _oracle(graph, args.k, args.hole_free, options) == \
                result.decision
        elif result.k is None:
            agrees = not _oracle(graph, None, args.hole_free, options)
        else:
            agrees = _oracle(graph, result.k, args.hole_free, options) and \
                (result.k == 1 or
                 not _oracle(graph, result.k - 1, args.hole_free, options))
        if not agrees:
            logger.error("Oracle disagrees with the dynamic programme.")
            return EXIT_ERROR
    return EXIT_YES if result.decision else EXIT_NO


def cmd_verify(args, options):
    graph = parse_graph(_read(args.graph))
    witness, _ = parse_certificate(_read(args.witness))
    report = verify_witness(graph, witness, args.hole_free)
    failure = report.first_failure
    if failure is None and args.k is not None and \
            max_intersection_degree(witness) > args.k:
        failure = "intersection degree %d exceeds k=%d" % (
            max_intersection_degree(witness), args.k)
    if failure is None and args.hole_free and \
            not report.is_biconnected_quadrangulation:
        failure = "witness is not a biconnected quadrangulation"
    if failure is None:
        print("VALID")
        return EXIT_YES
    print("INVALID: %s" % failure)
    return EXIT_NO


def cmd_oracle(args, options):
    graph = parse_graph(_read(args.graph))
    decision = _oracle(graph, args.k, args.hole_free, options)
    print("YES" if decision else "NO")
    return EXIT_YES if decision else EXIT_NO


def cmd_render(args, options):
    witness, _ = parse_certificate(_read(args.witness))
    write_svg(witness, args.output)
    return EXIT_YES


def build_parser():
    parser = argparse.ArgumentParser(
        prog='mapwit',
        description="Recognize (hole-free) k-map graphs of bounded "
                    "treewidth.")
    parser.add_argument('-v', '--verbose', action='store_true',
                        help="Log every node of the dynamic programme.")
    parser.add_argument('--oracle-limit', type=int, default=6,
                        help="Largest graph the brute-force oracle takes.")
    commands = parser.add_subparsers(dest='command', required=True)

    rec = commands.add_parser('recognize', help="Decide membership.")
    rec.add_argument('graph', help="Graph in PACE .gr format.")
    rec.add_argument('--td', help="Tree-decomposition in PACE .td format.")
    bound = rec.add_mutually_exclusive_group(required=True)
    bound.add_argument('--k', type=int, help="Bound on nations per point.")
    bound.add_argument('--min-k', action='store_true',
                       help="Find the smallest k.")
    bound.add_argument('--map', action='store_true',
                       help="Any k (plain map graphs).")
    rec.add_argument('--hole-free', action='store_true')
    rec.add_argument('--certificate', metavar='OUT',
                     help="Write the witness as JSON.")
    rec.add_argument('--oracle-check', action='store_true',
                     help="Compare with the brute-force oracle.")
    rec.add_argument('--decision-only', action='store_true',
                     help="Skip witness reconstruction.")
    rec.add_argument('--stats', action='store_true')
    rec.add_argument('--keep-records', action='store_true',
                     help="Keep every record for provenance replay.")
    rec.set_defaults(handler=cmd_recognize)

    ver = commands.add_parser('verify', help="Check a witness certificate.")
    ver.add_argument('graph')
    ver.add_argument('witness')
    ver.add_argument('--k', type=int)
    ver.add_argument('--hole-free', action='store_true')
    ver.set_defaults(handler=cmd_verify)

    ora = commands.add_parser('oracle', help="Brute-force decision.")
    ora.add_argument('graph')
    ora.add_argument('--k', type=int, required=True)
    ora.add_argument('--hole-free', action='store_true')
    ora.set_defaults(handler=cmd_oracle)

    ren = commands.add_parser('render', help="Draw a witness as SVG.")
    ren.add_argument('witness')
    ren.add_argument('-o', '--output', required=True)
    ren.set_defaults(handler=cmd_render)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(format='%(levelname)s: %(message)s',
                        level=logging.DEBUG if args.verbose
                        else logging.WARNING)
    options = Options(oracle_vertex_limit=args.oracle_limit,
                      keep_records=getattr(args, 'keep_records', False))
    try:
        return args.handler(args, options)
    except (ValueError, OSError) as error:
        print("error: %s" % error, file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
