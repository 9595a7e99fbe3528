"""Command-line entry points.

Subcommands: eval, gen, witness, build, train, sweep, intercept, checkbound,
plot, dump.  Model files use the JSON schema of `ltlrl.mdp`; sweep output is
the CSV schema of `ltlrl.harness`.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .automata import (
    build_dfa_finitary, dra_for, dump_dfa, dump_dra, dump_nba, nba_for,
)
from .family import counterexample_pair, gridworld, instantiate_from_witness, simple_pair
from .formulas import identifiers_in, parse
from .learn import ALGOS, default_hyper, train
from .mdp import load_model, load_policy, save_model, save_policy
from .probcheck import optimal_value, policy_value
from .schemes import SCHEMES, SchemeParams, build_product, product_to_dict
from .witness import find_uncommittable


def _formula_for_model(text: str, labeling):
    atoms = set(identifiers_in(text))
    if labeling is not None:
        atoms |= {a for letter in labeling.letters for a in letter}
    alphabet = tuple(sorted(atoms))
    return parse(text, alphabet), alphabet


def _load(path):
    mdp, labeling = load_model(path)
    if labeling is None:
        raise SystemExit(f"model {path} carries no labels; cannot evaluate formulas")
    return mdp, labeling


def _relabel(mdp, labeling, alphabet):
    from .mdp import Labeling
    return Labeling(alphabet, labeling.letters)


def cmd_eval(args) -> int:
    mdp, labeling = _load(args.model)
    f, alphabet = _formula_for_model(args.formula, labeling)
    labeling = _relabel(mdp, labeling, alphabet)
    if args.policy:
        policy = load_policy(args.policy, mdp)
        result = policy_value(mdp, labeling, f, policy)
    else:
        result = optimal_value(mdp, labeling, f)
    print(f"{result.value:.12g}")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "simple":
        pair = simple_pair(args.p)
    elif args.kind == "counterexample":
        if not args.shape:
            raise SystemExit("gen counterexample needs --shape k,l,u,v,m,n")
        shape = tuple(int(x) for x in args.shape.split(","))
        if len(shape) != 6:
            raise SystemExit("--shape needs six integers k,l,u,v,m,n")
        pair = counterexample_pair(shape, args.p)
    elif args.kind == "witness-pair":
        if not args.formula:
            raise SystemExit("gen witness-pair needs --formula")
        f = parse(args.formula, identifiers_in(args.formula))
        pair = instantiate_from_witness(find_uncommittable(f), f, args.p)
    else:  # gridworld
        mdp, labeling, _ = gridworld(args.p)
        out = args.out or "gridworld.json"
        save_model(out, mdp, labeling)
        print(out)
        return 0
    prefix = args.out or args.kind
    for name, mdp in (("m1", pair.m1), ("m2", pair.m2)):
        path = f"{prefix}_{name}.json"
        save_model(path, mdp, pair.labeling)
        print(path)
    return 0


def cmd_witness(args) -> int:
    f = parse(args.formula, identifiers_in(args.formula))
    wit = find_uncommittable(f)
    print(wit.kind)
    for name, word in (("w_a", wit.w_a), ("w_b", wit.w_b),
                       ("w_c", wit.w_c), ("w_d", wit.w_d)):
        rendered = " ".join("{" + ",".join(sorted(letter)) + "}" for letter in word)
        print(f"{name}: [{rendered}]")
    return 0


def cmd_build(args) -> int:
    import json

    mdp, labeling = _load(args.model)
    f, alphabet = _formula_for_model(args.formula, labeling)
    labeling = _relabel(mdp, labeling, alphabet)
    prod = build_product(args.scheme, mdp, labeling, f, _params(args))
    doc = product_to_dict(prod)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(args.out)
    else:
        json.dump(doc, sys.stdout, indent=2)
        print()
    return 0


def cmd_train(args) -> int:
    mdp, labeling = _load(args.model)
    f, alphabet = _formula_for_model(args.formula, labeling)
    labeling = _relabel(mdp, labeling, alphabet)
    prod = build_product(args.scheme, mdp, labeling, f, _params(args))
    hyper = default_hyper(args.algo, reset_every=args.reset_every)
    policy = train(args.algo, prod, hyper, args.steps, args.seed)
    save_policy(args.out, mdp, policy)
    value = policy_value(mdp, labeling, f, policy).value
    print(f"{args.out} value={value:.12g}")
    return 0


def _params(args) -> SchemeParams:
    return SchemeParams(gamma=args.gamma, gamma_b=args.gamma_b, zeta=args.zeta)


def _sweep_config(args) -> harness.ExperimentConfig:
    env = {"simple": harness.ENV_SIMPLE_1}.get(args.env, args.env)
    kwargs = dict(environment=env, scheme=args.scheme, algo=args.algo,
                  epsilon=args.epsilon, target_se=args.target_se,
                  master_seed=args.master_seed,
                  witness_formula=args.formula)
    if args.smoke:
        base = harness.smoke_config(args.master_seed)
        kwargs["p_grid"] = base.p_grid
        kwargs["n_grid"] = base.n_grid
    if args.p_grid:
        kwargs["p_grid"] = tuple(float(x) for x in args.p_grid.split(","))
    if args.n_grid:
        kwargs["n_grid"] = tuple(int(x) for x in args.n_grid.split(","))
    if args.reset_every:
        kwargs["reset_every"] = args.reset_every
    return harness.ExperimentConfig(**kwargs)


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)

    def progress(pt):
        print(f"p={pt.p:g} N={pt.n_samples} pac={pt.pac_estimate:.3f} "
              f"se={pt.stderr:.4f} reps={pt.repetitions}", file=sys.stderr)

    points = harness.sweep(cfg, progress=progress if args.verbose else None)
    if args.both:
        if cfg.environment not in (harness.ENV_SIMPLE_1, harness.ENV_SIMPLE_2):
            raise SystemExit("--both applies to the simple pair only")
        other = harness.ENV_SIMPLE_2 if cfg.environment == harness.ENV_SIMPLE_1 \
            else harness.ENV_SIMPLE_1
        cfg2 = harness.ExperimentConfig(
            environment=other, scheme=cfg.scheme, algo=cfg.algo,
            epsilon=cfg.epsilon, p_grid=cfg.p_grid, n_grid=cfg.n_grid,
            target_se=cfg.target_se, master_seed=cfg.master_seed,
            witness_formula=cfg.witness_formula, reset_every=cfg.reset_every)
        points2 = harness.sweep(cfg2, progress=progress if args.verbose else None)
        points = [a if a.pac_estimate <= b.pac_estimate else b
                  for a, b in zip(points, points2)]
    harness.write_curves_csv(args.out, cfg, points)
    print(args.out)
    return 0


def cmd_intercept(args) -> int:
    rows = harness.read_curves_csv(args.infile)
    meta = rows[0] if rows else {"environment": "", "scheme": "", "algo": ""}
    out = []
    for p, pts in harness.curves_by_p(rows).items():
        out.append({"environment": meta["environment"], "scheme": meta["scheme"],
                    "algo": meta["algo"], "p": p, "cutoff": args.cutoff,
                    "n_star": harness.find_intercept(pts, args.cutoff)})
    harness.write_intercepts_csv(args.out, out)
    print(args.out)
    return 0


def cmd_checkbound(args) -> int:
    rows = harness.read_intercepts_csv(args.infile)
    intercepts = {row["p"]: row["n_star"] for row in rows}
    report = harness.check_lower_bound(intercepts, args.delta)
    for entry in report.entries:
        if entry.censored:
            print(f"p={entry.p:g}: censored (never crossed within the grid); "
                  f"bound={entry.bound:.2f}")
        else:
            print(f"p={entry.p:g}: N*={entry.intercept:.1f} >= bound={entry.bound:.2f} "
                  f"(margin {entry.margin:.1f})")
    print("lower bound respected")
    return 0


def cmd_plot(args) -> int:
    rows = harness.read_curves_csv(args.infile)
    harness.write_curves_svg(args.out, rows)
    print(args.out)
    return 0


def cmd_dump(args) -> int:
    atoms = args.alphabet.split(",") if args.alphabet else identifiers_in(args.formula)
    f = parse(args.formula, tuple(atoms))
    if args.kind == "nba":
        text = dump_nba(nba_for(f))
    elif args.kind == "dra":
        text = dump_dra(dra_for(f))
    else:
        dfa, horizon = build_dfa_finitary(f)
        text = f"horizon {horizon}\n" + dump_dfa(dfa)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return 0


def _add_scheme_params(sub) -> None:
    sub.add_argument("--gamma", type=float, default=0.99)
    sub.add_argument("--gamma-b", dest="gamma_b", type=float, default=0.999)
    sub.add_argument("--zeta", type=float, default=0.99)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltlrl",
        description="LTL objectives for tabular RL: exact checking, "
                    "counterexample families, reward schemes, PAC sweeps.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eval", help="satisfaction probability of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--policy", help="policy JSON; optimal value when omitted")
    p.set_defaults(fn=cmd_eval)

    p = subs.add_parser("gen", help="generate benchmark model files")
    p.add_argument("kind", choices=("simple", "counterexample", "witness-pair", "gridworld"))
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--shape", help="k,l,u,v,m,n for the counterexample family")
    p.add_argument("--formula", help="formula for witness-pair")
    p.add_argument("--out", help="output path or prefix")
    p.set_defaults(fn=cmd_gen)

    p = subs.add_parser("witness", help="uncommittable words of a formula")
    p.add_argument("formula")
    p.set_defaults(fn=cmd_witness)

    p = subs.add_parser("build", help="reward-scheme product of model and formula")
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--out")
    _add_scheme_params(p)
    p.set_defaults(fn=cmd_build)

    p = subs.add_parser("train", help="train a tabular learner, write the policy")
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reset-every", dest="reset_every", type=int, default=10)
    p.add_argument("--out", default="policy.json")
    _add_scheme_params(p)
    p.set_defaults(fn=cmd_train)

    p = subs.add_parser("sweep", help="Monte-Carlo sweep over (p, N) grid")
    p.add_argument("--env", default="simple",
                   choices=("simple",) + harness.ENVIRONMENTS)
    p.add_argument("--scheme", choices=SCHEMES, default="multi-discount")
    p.add_argument("--algo", choices=ALGOS, default="q")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--target-se", dest="target_se", type=float, default=0.01)
    p.add_argument("--master-seed", dest="master_seed", type=int, default=0)
    p.add_argument("--formula", help="formula for the witness-pair environment")
    p.add_argument("--p-grid", dest="p_grid", help="comma-separated p values")
    p.add_argument("--n-grid", dest="n_grid", help="comma-separated N values")
    p.add_argument("--reset-every", dest="reset_every", type=int, default=0)
    p.add_argument("--smoke", action="store_true", help="reduced 3x11 grid")
    p.add_argument("--both", action="store_true",
                   help="run both MDPs of the pair, report the pointwise minimum")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sweep)

    p = subs.add_parser("intercept", help="cutoff crossings per p")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cutoff", type=float, default=0.9)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_intercept)

    p = subs.add_parser("checkbound", help="compare intercepts to the analytic bound")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--delta", type=float, default=0.1)
    p.set_defaults(fn=cmd_checkbound)

    p = subs.add_parser("plot", help="render sweep CSV as an SVG line chart")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_plot)

    p = subs.add_parser("dump", help="serialize a formula's automata as text")
    p.add_argument("--formula", required=True)
    p.add_argument("--kind", choices=("nba", "dra", "dfa"), default="dra")
    p.add_argument("--alphabet", help="comma-separated atoms; inferred if omitted")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_dump)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
