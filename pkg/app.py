"""
Command-line entry point for reversible-circuit matching.
Generates planted instances, runs matchers, verifies witnesses and drives benchmarks.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

import pandas as pd

from harness import (
    collision_bench,
    complexity_table,
    gen_instance,
    load_instance,
    run_bench,
    run_match,
    save_instance,
    summary_text,
    write_csv,
)
from harness.instances import Instance
from matchers import EquivType, MatchConfig, MatchWitness, verify_witness
from reductions import build_nn_instance, build_pp_instance, solve_via_matching
from reductions.cnf import read_dimacs_file
from reductions.extraction import REDUCTION_KINDS, extract_assignment_nn, extract_assignment_pp
from utils.config import FAILURE_BUDGETS, MATCH_DEFAULTS, MATCH_MODES
from utils.errors import RevMatchError
from utils.oracle import check_inverse
from utils.real_format import read_real_file, write_real_file

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


def _read_json(path: str) -> dict:
    with open(path, 'r', encoding='utf-8') as handle:
        return json.load(handle)


def _emit(text: str, path: Optional[str]) -> None:
    """Print text, or write it to path when given."""
    if path is None:
        print(text)
        return
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text if text.endswith('\n') else text + '\n')
    logging.info("Wrote %s", path)


def _match_config(args) -> MatchConfig:
    return MatchConfig(epsilon=args.epsilon, seed=args.seed, rounds=args.rounds, failure_budget=args.budget)


def cmd_gen(args) -> int:
    instance = gen_instance(EquivType.parse(args.equiv), args.n, args.gates, args.seed,
                            (args.with_inv1, args.with_inv2))
    print(save_instance(instance, args.out))
    return 0


def _instance_from_args(args) -> Instance:
    """Load --instance, or assemble one from --c1/--c2 and optional inverse files."""
    if args.instance:
        instance = load_instance(args.instance)
        if args.equiv:
            instance.equiv = EquivType.parse(args.equiv)
    else:
        if not (args.c1 and args.c2 and args.equiv):
            raise RevMatchError("match needs --instance, or --c1, --c2 and --equiv")
        instance = Instance(
            EquivType.parse(args.equiv), read_real_file(args.c1), read_real_file(args.c2), planted=None,
            seed=args.seed,
            inv1=read_real_file(args.inv1) if args.inv1 else None,
            inv2=read_real_file(args.inv2) if args.inv2 else None,
        )
    for forward, inverse in ((instance.c1, instance.inv1), (instance.c2, instance.inv2)):
        if inverse is not None:
            check_inverse(forward, inverse, seed=args.seed)
    return instance


def cmd_match(args) -> int:
    instance = _instance_from_args(args)
    witness, record = run_match(instance, args.mode, _match_config(args), timed=args.timed, max_width=args.max_width)
    logging.info("Queries: %d over %d attempt(s)", record.total_queries, record.attempts)
    if witness is None:
        print(f"no witness found by {record.algorithm}", file=sys.stderr)
        return 1
    _emit(witness.to_json(), args.out)
    if not record.success:
        print(f"witness from {record.algorithm} failed verification", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    c1, c2 = read_real_file(args.c1), read_real_file(args.c2)
    witness = MatchWitness.from_dict(_read_json(args.witness))
    mode = 'sampled' if args.samples else 'exhaustive'
    ok = verify_witness(c1, c2, witness, mode, samples=args.samples, seed=args.seed)
    print('OK' if ok else 'FAIL')
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    cnf = read_dimacs_file(args.cnf)
    c1, c2, layout = build_nn_instance(cnf) if args.kind == 'nn' else build_pp_instance(cnf)
    os.makedirs(args.out, exist_ok=True)
    write_real_file(c1, os.path.join(args.out, 'c1.real'))
    write_real_file(c2, os.path.join(args.out, 'c2.real'))
    manifest = {
        'equiv': 'N-N' if args.kind == 'nn' else 'P-P',
        'n': layout.width,
        'files': {'c1': 'c1.real', 'c2': 'c2.real'},
        'roles': layout.roles(),
        'planted': None,
        'seed': None,
    }
    path = os.path.join(args.out, 'manifest.json')
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write('\n')
    print(path)
    return 0


def cmd_extract(args) -> int:
    cnf = read_dimacs_file(args.cnf)
    if args.witness:
        witness = MatchWitness.from_dict(_read_json(args.witness))
        extract = extract_assignment_nn if args.kind == 'nn' else extract_assignment_pp
        assignment = extract(cnf, witness)
    else:
        assignment = solve_via_matching(cnf, args.kind)
    if assignment is None:
        print('UNSAT')
        return 1
    print(' '.join(str(v + 1) if bit else str(-(v + 1)) for v, bit in enumerate(assignment)))
    return 0


def cmd_bench(args) -> int:
    records = run_bench(
        EquivType.parse(args.equiv), args.n, args.trials, args.gates, args.seed, args.mode,
        (args.with_inv1, args.with_inv2), args.epsilon, args.budget, args.workers, args.timed,
    )
    if args.out:
        write_csv(records, args.out)
    else:
        print(write_csv(records), end='')
    print(summary_text(records, args.epsilon), file=sys.stderr)
    return 0


def cmd_collide(args) -> int:
    rows = [collision_bench(n, args.trials, args.seed, args.gates).to_dict() for n in args.n]
    print(pd.DataFrame(rows).to_string(index=False))
    return 0


def cmd_table(args) -> int:
    print(pd.DataFrame(complexity_table()).to_string(index=False))
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--seed', type=int, default=MATCH_DEFAULTS['seed'])
    parser.add_argument('--gates', type=int, default=MATCH_DEFAULTS['gate_count'], help="Gates in the random C2")


def _add_matching(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--mode', choices=MATCH_MODES, default='auto')
    parser.add_argument('--epsilon', type=float, default=MATCH_DEFAULTS['epsilon'])
    parser.add_argument('--rounds', type=int, default=None, help="Override the derived round count k")
    parser.add_argument('--budget', choices=FAILURE_BUDGETS, default=MATCH_DEFAULTS['failure_budget'])
    parser.add_argument('--timed', action='store_true', help="Record wall time")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='revmatch', description="Boolean matching of black-box reversible circuits")
    parser.add_argument('--log-level', choices=LOG_LEVELS, default='ERROR')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help="Generate a planted instance")
    gen.add_argument('--equiv', required=True, help="Equivalence such as N-I or I-NP")
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--with-inv1', action='store_true')
    gen.add_argument('--with-inv2', action='store_true')
    gen.add_argument('--out', required=True, help="Output directory")
    _add_common(gen)
    gen.set_defaults(func=cmd_gen)

    match = sub.add_parser('match', help="Match an instance and print the witness")
    match.add_argument('--instance', help="Instance directory or manifest")
    match.add_argument('--equiv')
    match.add_argument('--c1')
    match.add_argument('--c2')
    match.add_argument('--inv1', help="File with the inverse of C1")
    match.add_argument('--inv2', help="File with the inverse of C2")
    match.add_argument('--out', help="Write the witness JSON here")
    match.add_argument('--seed', type=int, default=MATCH_DEFAULTS['seed'])
    match.add_argument('--max-width', type=int, default=None,
                       help="Raise the width limit of --mode brute, e.g. for reduce output")
    _add_matching(match)
    match.set_defaults(func=cmd_match)

    verify = sub.add_parser('verify', help="Check a witness against two circuits")
    verify.add_argument('--c1', required=True)
    verify.add_argument('--c2', required=True)
    verify.add_argument('--witness', required=True)
    verify.add_argument('--samples', type=int, default=None, help="Sample this many inputs instead of all")
    verify.add_argument('--seed', type=int, default=MATCH_DEFAULTS['seed'])
    verify.set_defaults(func=cmd_verify)

    reduce_ = sub.add_parser('reduce', help="Encode a DIMACS formula as an N-N or P-P instance")
    reduce_.add_argument('--cnf', required=True)
    reduce_.add_argument('--kind', choices=REDUCTION_KINDS, default='nn')
    reduce_.add_argument('--out', required=True)
    reduce_.set_defaults(func=cmd_reduce)

    extract = sub.add_parser('extract', help="Read the model of a formula off a witness")
    extract.add_argument('--cnf', required=True)
    extract.add_argument('--kind', choices=REDUCTION_KINDS, default='nn')
    extract.add_argument('--witness', help="Witness JSON; brute-force matching when omitted")
    extract.set_defaults(func=cmd_extract)

    bench = sub.add_parser('bench', help="Monte-Carlo matcher benchmark")
    bench.add_argument('--equiv', required=True)
    bench.add_argument('--n', type=int, required=True)
    bench.add_argument('--trials', type=int, default=100)
    bench.add_argument('--with-inv1', action='store_true')
    bench.add_argument('--with-inv2', action='store_true')
    bench.add_argument('--workers', type=int, default=1)
    bench.add_argument('--out', help="CSV path")
    _add_common(bench)
    _add_matching(bench)
    bench.set_defaults(func=cmd_bench)

    collide = sub.add_parser('collide', help="Classical collision search for N-I")
    collide.add_argument('--n', type=int, nargs='+', required=True)
    collide.add_argument('--trials', type=int, default=500)
    _add_common(collide)
    collide.set_defaults(func=cmd_collide)

    table = sub.add_parser('table', help="Print the query-complexity table")
    table.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level))
    try:
        return args.func(args)
    except (RevMatchError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
