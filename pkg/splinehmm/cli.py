"""Command-line interface.

Examples
--------
$ splinehmm --seed 7 --out-dir runs/m1 simulate model1 --n 800
$ splinehmm --out-dir runs/m1 --threads 4 select runs/m1/data.csv \\
      --candidates 2,3,4,5
$ splinehmm --out-dir runs/m1 summarize runs/m1/traces/N2.csv \\
      --truth runs/m1/truth.json
"""

from __future__ import print_function, division
import argparse
import logging
import sys
from os.path import join

import pandas as pd

from . import __version__
from .config import load_config
from .conditional import run_pipeline
from .consts import SEED
from .datastore import (CSVDataStore, read_dataset_csv, write_dataset_csv,
                        read_activity_csv, write_trace_csv, read_trace_csv,
                        read_trace_jsonl, write_trace_jsonl, write_json,
                        read_json, write_frame_csv)
from .hmm.engine import viterbi, smoothed_probs, cumulative_probs
from .hmm.params import HmmParams
from .metrics import kld, decoding_accuracy
from .postprocessing import relabel, summarize, point_estimate
from .sampler.chain import run_chain
from .selection import select
from .simulate import simulate_preset, activity_frame, GroundTruth
from .exceptions import SplineHMMError

logger = logging.getLogger(__name__)

PRESETS = ('model1', 'model2', 'model3', 'spline', 'zero-inflated',
           'activity')


def _candidates(text):
    try:
        values = [int(token) for token in text.split(',') if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated integers, got '{}'".format(text))
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("candidates must be positive")
    return values


def _schedule_flags(parser):
    parser.add_argument('--burn-in', type=int, dest='burn_in',
                        help="adaptive sweeps before the trace starts"
                             " (default 50000)")
    parser.add_argument('--iters', type=int,
                        help="sweeps after burn-in (default 50000); with 0"
                             " the trace holds only the state at the end of"
                             " burn-in, which is the initial state only"
                             " together with --burn-in 0")
    parser.add_argument('--thin', type=int)
    parser.add_argument('--k-max', type=int, dest='k_max')
    parser.add_argument('--progress', action='store_true',
                        help="show a progress bar per chain")


def build_parser():
    parser = argparse.ArgumentParser(
        prog='splinehmm',
        description="Bayesian hidden Markov models with spline emission"
                    " densities.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('--seed', type=int, default=SEED)
    parser.add_argument('--config', help="YAML file of run settings")
    parser.add_argument('--threads', type=int, default=1,
                        help="maximum number of chains run at once")
    parser.add_argument('--out-dir', default='.', dest='out_dir')
    parser.add_argument('--verbose', action='store_true')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    sim = commands.add_parser('simulate', help="write a synthetic dataset")
    sim.add_argument('preset', choices=PRESETS)
    sim.add_argument('--n', type=int,
                     help="length (days for the activity preset)")
    sim.add_argument('--rho', type=float, default=0.05,
                     help="switching probability of model3")

    fit = commands.add_parser('fit', help="run one chain")
    fit.add_argument('data')
    fit.add_argument('--states', type=int, required=True)
    fit.add_argument('--zero-inflated', action='store_true',
                     dest='zero_inflated')
    fit.add_argument('--anchors', type=lambda s: [float(v) for v in
                                                  s.split(',')],
                     help="comma-separated initial state locations")
    _schedule_flags(fit)

    sel = commands.add_parser('select', help="choose the number of states")
    sel.add_argument('data')
    sel.add_argument('--candidates', type=_candidates, required=True)
    sel.add_argument('--zero-inflated', action='store_true',
                     dest='zero_inflated')
    _schedule_flags(sel)

    dec = commands.add_parser('decode', help="decode states of a dataset")
    dec.add_argument('data')
    source = dec.add_mutually_exclusive_group(required=True)
    source.add_argument('--params', help="point estimate JSON")
    source.add_argument('--trace', help="trace CSV or JSONL")
    dec.add_argument('--truth', help="truth JSON for decoding accuracy")

    summ = commands.add_parser('summarize', help="summarize a trace")
    summ.add_argument('trace')
    summ.add_argument('--truth', help="truth JSON for KL divergences")
    summ.add_argument('--grid-size', type=int, default=512,
                      dest='grid_size')
    summ.add_argument('--relabel', choices=('mean', 'reference'),
                      default='mean')

    sub = commands.add_parser('subfit', help="main fit, rest bouts and"
                              " conditional sub fit")
    sub.add_argument('activity', help="CSV with timestamp and count columns")
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument('--states', type=int)
    group.add_argument('--candidates', type=_candidates)
    sub.add_argument('--sub-states', type=int, dest='sub_states')
    sub.add_argument('--v-mode', choices=('point', 'mixture'), dest='v_mode')
    sub.add_argument('--v-draws', type=int, dest='v_draws')
    _schedule_flags(sub)
    return parser


def _load(args):
    overrides = {key: getattr(args, key, None) for key in
                 ('burn_in', 'iters', 'thin', 'k_max', 'sub_states',
                  'v_mode', 'v_draws')}
    return load_config(args.config, overrides)


def _read_trace(filename):
    if filename.endswith('.jsonl'):
        return read_trace_jsonl(filename)
    return read_trace_csv(filename)


def _write_summary(store, summary, prefix=''):
    write_json(store.path(prefix + 'summary', '.json'), summary.to_dict())
    store.put(prefix + 'density', summary.density_frame())
    frequencies = summary.K_frequencies.rename('frequency')
    store.put(prefix + 'k_frequencies', frequencies.to_frame(), index=True)
    write_json(store.path(prefix + 'params', '.json'),
               point_estimate(summary).to_dict())


def cmd_simulate(args, config, store):
    truth = simulate_preset(args.preset, args.n, args.seed, args.rho)
    if args.preset == 'activity':
        write_frame_csv(store.path('activity'), activity_frame(truth))
    else:
        write_dataset_csv(store.path('data'), truth.to_dataset())
    write_json(store.path('truth', '.json'), truth.to_dict())
    logger.info("Simulated %d points from '%s'", len(truth), args.preset)


def _dataset(filename, prior):
    return read_dataset_csv(filename, bounds=prior.bounds, pad=prior.pad)


def cmd_fit(args, config, store):
    prior = config.prior
    data = _dataset(args.data, prior)
    trace = run_chain(data, args.states, prior, config.tuning,
                      config.schedule, seed=args.seed, anchors=args.anchors,
                      zero_inflated=args.zero_inflated,
                      progress=args.progress)
    write_trace_csv(store.path('trace'), trace)
    write_trace_jsonl(store.path('trace', '.jsonl'), trace)
    store.put('acceptance', trace.acceptance_rates())
    _write_summary(store, summarize(relabel(trace)))


def cmd_select(args, config, store):
    data = _dataset(args.data, config.prior)
    result = select(data, args.candidates, config.prior, config.tuning,
                    config.schedule, seed=args.seed, threads=args.threads,
                    zero_inflated=args.zero_inflated,
                    progress=args.progress)
    for N, trace in zip(result.candidates, result.traces):
        write_trace_csv(store.path(join('traces', 'N{}'.format(N))), trace)
    write_json(store.path('selection', '.json'), result.to_dict())
    store.put('selection', result.table(), index=True)
    print(result.table().to_string())


def cmd_decode(args, config, store):
    if args.params is not None:
        params = HmmParams.from_dict(read_json(args.params))
    else:
        params = point_estimate(relabel(_read_trace(args.trace)))
    data = read_dataset_csv(args.data, bounds=(params.knots.a,
                                               params.knots.b))
    path = viterbi(params, data)
    smoothed = smoothed_probs(params, data)
    cumulative = cumulative_probs(smoothed)
    frame = pd.DataFrame({'state': path, 'missing': data.missing.astype(int)})
    for i in range(params.N):
        frame['prob_{}'.format(i)] = smoothed[:, i]
    for i in range(params.N):
        frame['cumprob_{}'.format(i)] = cumulative[:, i]
    store.put('decoded', frame)
    if args.truth is not None:
        truth = read_json(args.truth)
        accuracy = decoding_accuracy(path, truth['states'])
        write_json(store.path('decode', '.json'), {'accuracy': accuracy})
        logger.info("Decoding accuracy %.4f", accuracy)


def cmd_summarize(args, config, store):
    trace = relabel(_read_trace(args.trace), method=args.relabel)
    summary = summarize(trace, grid_size=args.grid_size)
    if args.truth is not None:
        truth = GroundTruth.from_dict(read_json(args.truth))
        if truth.n_states == summary.N:
            for i in range(summary.N):
                summary.kld[i] = kld(truth.density(i, summary.grid),
                                     summary.density_mean[i], summary.grid)
            logger.info("KL divergences to the truth: %s", summary.kld)
        else:
            logger.warning("Truth has %d states, the trace %d; skipping KL"
                           " divergences", truth.n_states, summary.N)
    _write_summary(store, summary)


def cmd_subfit(args, config, store):
    activity = read_activity_csv(args.activity)
    main_states = args.states if args.states is not None else args.candidates
    result = run_pipeline(activity, main_states, config.pipeline,
                          config.prior, config.tuning, config.schedule,
                          seed=args.seed, threads=args.threads)
    write_trace_csv(store.path('main_trace'), result.main_trace)
    write_trace_csv(store.path('sub_trace'), result.sub_trace)
    if args.candidates is not None:
        write_json(store.path('selection', '.json'), result.main.to_dict())
    _write_summary(store, summarize(relabel(result.main_trace)), 'main_')
    _write_summary(store, summarize(relabel(result.sub_trace)), 'sub_')
    store.put('bouts', result.bout_frame())
    store.put('substates', result.substate_frame())
    logger.info("%d rest bouts, sub-model fitted on %d points",
                len(result.bouts), result.sub_data.n_observed)


COMMANDS = {
    'simulate': cmd_simulate,
    'fit': cmd_fit,
    'select': cmd_select,
    'decode': cmd_decode,
    'summarize': cmd_summarize,
    'subfit': cmd_subfit,
}


def main(argv=None):
    """Entry point; returns the exit code.

    0 on success, 2 on usage errors and on library errors, which are
    reported as ``error [<category>]: <message>``.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        config = _load(args)
        store = CSVDataStore(args.out_dir)
        store.save_metadata({'command': args.command, 'seed': args.seed,
                             'argv': list(sys.argv[1:] if argv is None
                                          else argv),
                             'version': __version__,
                             'config': config.to_dict()})
        COMMANDS[args.command](args, config, store)
    except SplineHMMError as error:
        print("error [{}]: {}".format(error.category, error),
              file=sys.stderr)
        return 2
    except (IOError, OSError) as error:
        print("error [io]: {}".format(error), file=sys.stderr)
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
