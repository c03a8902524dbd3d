"""Command line: ``cousinet <command> [flags]``.

Commands::

    realize ATOM                  windowed module of an atom (Γ_S torsion with --denoms)
    lcoh [MODULE] --ring R --ideal FORMS
                                  H^i_I(M) by the stable Koszul complex
    res OBJECT                    injective resolution with certificates
    ext X=OBJECT Y=OBJECT         Ext^{s,t}(X, Y)
    e2 X=OBJECT Y=OBJECT          Adams E2 page; catalogue names are accepted
    witness [N ...]               truncated towers behind the lower bound
    selftest                      acceptance criteria

Global flags go before or after the command: ``--window lo:hi``,
``--denoms FORMS``, ``--horizon n``, ``--format tsv|pretty``, ``--seed n``,
``--rank 1|2``, ``--jobs n``.

Exit status: 0 on success, 1 on input errors (with line and column for
parse errors), 2 when a computation fails to stabilize or certify; the
reason is printed to stderr as ``reason=<code>``.
"""

from __future__ import annotations

import argparse
import sys

from . import adams, parse
from .acceptance import run_all
from .adams import UnknownEntryError
from .atcat import P2, AtObject
from .gmod import KC, HorizonError, dumps, gamma_torsion, realize
from .homalg import stable_koszul_lcoh
from .resolve import ext_at, id_lower_witness, inj_res_general, inj_res_sf_rank1, shuffle_resolution

HEADER = "# cousinet-v1"


class Failure(Exception):
    """A computation ran but could not certify its answer."""

    def __init__(self, reason: str, msg: str):
        super().__init__(msg)
        self.reason = reason


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be lo:hi, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError("window needs lo <= hi")
    return lo, hi


def _flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global flags")
    g.add_argument("--window", type=_window, default=argparse.SUPPRESS, help="degree window lo:hi")
    g.add_argument("--denoms", default=argparse.SUPPRESS, help="comma separated linear forms")
    g.add_argument("--horizon", type=int, default=argparse.SUPPRESS)
    g.add_argument("--format", choices=("tsv", "pretty"), default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--rank", type=int, choices=(1, 2), default=argparse.SUPPRESS)
    g.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    return p


DEFAULTS = dict(window=(-10, 10), denoms=None, horizon=16, format="tsv", seed=None, rank=1, jobs=1)


def build_parser() -> argparse.ArgumentParser:
    flags = _flags()
    ap = argparse.ArgumentParser(prog="cousinet", parents=[flags], description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("realize", parents=[flags], help="windowed module of an atom")
    sp.add_argument("atom")
    sp = sub.add_parser("lcoh", parents=[flags], help="local cohomology")
    sp.add_argument("module", nargs="?", default="free(0)")
    sp.add_argument("--ring", default="Q[x,y]")
    sp.add_argument("--ideal", default=None, help="coordinate variables, e.g. x,y")
    sp = sub.add_parser("res", parents=[flags], help="injective resolution")
    sp.add_argument("object")
    for name in ("ext", "e2"):
        sp = sub.add_parser(name, parents=[flags], help="Ext table" if name == "ext" else "Adams E2 page")
        sp.add_argument("pair", nargs=2, metavar="X=.. Y=..")
    sp = sub.add_parser("witness", parents=[flags], help="lower-bound witness towers")
    sp.add_argument("N", nargs="*", type=int, default=[3, 6, 10])
    sp.add_argument("--degree", type=int, default=2)
    sub.add_parser("selftest", parents=[flags], help="run the acceptance criteria")
    return ap


def _options(ns: argparse.Namespace) -> argparse.Namespace:
    for k, v in DEFAULTS.items():
        if not hasattr(ns, k):
            setattr(ns, k, v)
    return ns


def _forms(text: str | None, names) -> list:
    return [] if not text else parse.parse_forms(text, tuple(names))


def _object(text: str, rank: int):
    """A catalogue name or an object in the grammar."""
    try:
        return adams.catalogue(text).obj
    except UnknownEntryError:
        return parse.parse_object(text, rank=rank)


def _pair(args, rank):
    vals = {}
    for item in args:
        key, sep, val = item.partition("=")
        if not sep or key not in ("X", "Y"):
            raise ValueError(f"expected X=... and Y=..., got {item!r}")
        vals[key] = val
    if set(vals) != {"X", "Y"}:
        raise ValueError("need both X=... and Y=...")
    return vals["X"], vals["Y"]


# --------------------------------------------------------------------------
# commands


def cmd_realize(o) -> str:
    ring = KC if o.rank == 1 else P2
    atom = parse.parse_atom(o.atom, ring)
    M = realize(atom, o.window)
    if o.denoms:
        M = gamma_torsion(M, _forms(o.denoms, M.ring.names))
    if o.format == "tsv":
        return dumps(M)
    lines = [HEADER, f"{o.atom} on [{o.window[0]}, {o.window[1]}]"]
    lines += [f"{d:>5} | {'#' * M.dim(d)} {M.dim(d) or ''}".rstrip() for d in M.degrees()]
    return "\n".join(lines) + "\n"


def cmd_lcoh(o) -> str:
    ring = parse.parse_ring(o.ring)
    ideal = None
    if o.ideal:
        ideal = []
        for f in _forms(o.ideal, ring.names):
            nz = [i for i, c in enumerate(f.coeffs) if c]
            if len(nz) != 1:
                raise ValueError(f"ideal generators must be coordinate variables, got {f}")
            ideal.append(nz[0])
    M = parse.parse_atom(o.module, ring)
    lc = stable_koszul_lcoh(M, o.window, ideal)
    lo, hi = o.window
    if o.format == "tsv":
        lines = [HEADER, "i\td\tdim"]
        for i in sorted(lc.modules):
            lines += [f"{i}\t{d}\t{lc.modules[i].dim(d)}" for d in range(lo, hi + 1)]
        return "\n".join(lines) + "\n"
    lines = [HEADER, f"H^i of {o.module} over {ring}, ideal ({o.ideal or ','.join(ring.names)})"]
    lines.append("  d  " + "".join(f"  H^{i}" for i in sorted(lc.modules)))
    for d in range(lo, hi + 1):
        lines.append(f"{d:>4} " + "".join(f"{lc.modules[i].dim(d):>5}" for i in sorted(lc.modules)))
    return "\n".join(lines) + "\n"


def cmd_res(o) -> str:
    X = _object(o.object, o.rank)
    if isinstance(X, AtObject):
        R = inj_res_sf_rank1(X)
        if o.seed is not None:
            R = shuffle_resolution(R, o.seed)
        text = R.dumps()
        if not R.verify(o.window):
            raise Failure("not-exact", f"resolution is not exact on {o.window}")
        return text + f"# length {R.length}, exact on [{o.window[0]}, {o.window[1]}]\n"
    R = inj_res_general(X, o.window)
    lines = [HEADER, f"X\t{parse.print_object(X)}"]
    for s, stage in enumerate(R.I):
        parts = ", ".join(f"{K}: {d}" for K, d in stage.items())
        lines.append(f"I{s}\t{parts}")
    for c in R.certificates:
        ids = ",".join(f"{k}={v}" for k, v in c.ids.items())
        lines.append(f"cert\t{c.stage}\tphase={c.phase}\tok={c.ok}\tid[{ids}]\t{c.note}")
    lines.append(f"# length {R.length}, terminated {R.terminated}, exact {R.exact}")
    if not R.certified:
        print("\n".join(lines), file=sys.stdout)
        raise Failure("not-certified", "resolution did not terminate with valid certificates")
    return "\n".join(lines) + "\n"


def _table(table, o, title) -> str:
    if o.format == "tsv":
        return table.tsv()
    dims = table.dims
    ts = sorted({t for _, t in dims})
    lines = [HEADER, title]
    for s in sorted({s for s, _ in dims}, reverse=True):
        lines.append(f"s={s} |" + "".join((str(dims.get((s, t), 0)) if dims.get((s, t)) else ".").rjust(4) for t in ts))
    lines.append("   t  " + "".join(str(t).rjust(4) for t in ts))
    return "\n".join(lines) + "\n"


def cmd_ext(o) -> str:
    xs, ys = _pair(o.pair, o.rank)
    X, Y = _object(xs, o.rank), _object(ys, o.rank)
    return _table(ext_at(X, Y, o.window), o, f"Ext({xs}, {ys})")


def cmd_e2(o) -> str:
    xs, ys = _pair(o.pair, o.rank)
    page = adams.adams_e2(_named(xs, o.rank), _named(ys, o.rank), o.window, shuffle_seed=o.seed)
    return page.tsv() if o.format == "tsv" else page.pretty()


def _named(text: str, rank: int) -> adams.CatalogueEntry:
    try:
        return adams.catalogue(text)
    except UnknownEntryError:
        return adams.CatalogueEntry(text, (), parse.parse_object(text, rank=rank), "user input")


def cmd_witness(o) -> str:
    rep = id_lower_witness(o.rank, o.N, o.horizon, o.degree)
    lines = [HEADER, f"# r={rep.r} degree={rep.degree} horizon={rep.horizon}",
             f"# injective dimension in [{rep.interval[0]}, {rep.interval[1]}]",
             "N\tstabilized\trequired\tlim1\timages"]
    for N in o.N:
        req = rep.required_horizon[N]
        lines.append(f"{N}\t{rep.stabilized[N]}\t{req if req is not None else '-'}\t{rep.lim1[N]}\t"
                     + ",".join(map(str, rep.images[N])))
    lines.append(f"# control k[c]^dual lim1={rep.control_lim1}; annihilated by {','.join(rep.annihilated_by) or '-'}")
    text = "\n".join(lines) + "\n"
    late = [N for N in o.N if not rep.stabilized[N]]
    if late:
        sys.stdout.write(text)
        need = max(N for N in late)
        raise Failure("horizon", f"towers for N={','.join(map(str, late))} need horizon >= {need}")
    return text


def cmd_selftest(o) -> str:
    results = run_all(jobs=o.jobs)
    lines = [HEADER] + [f"{r.line()} {r.seconds:.2f}s" for r in results]
    text = "\n".join(lines) + "\n"
    if not all(r.ok for r in results):
        sys.stdout.write(text)
        raise SystemExit(1)
    return text


COMMANDS = {
    "realize": cmd_realize,
    "lcoh": cmd_lcoh,
    "res": cmd_res,
    "ext": cmd_ext,
    "e2": cmd_e2,
    "witness": cmd_witness,
    "selftest": cmd_selftest,
}


_VALUED = ("--window", "--denoms", "--horizon", "--format", "--seed", "--rank", "--jobs", "--ring", "--ideal", "--degree")


def _glue(argv: list[str]) -> list[str]:
    """``--window -10:10`` -> ``--window=-10:10`` so negative values are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUED and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _glue(list(sys.argv[1:] if argv is None else argv))
    try:
        ns = _options(ap.parse_args(argv))
    except SystemExit as e:
        return 1 if e.code else 0
    try:
        sys.stdout.write(COMMANDS[ns.command](ns))
    except parse.ParseError as e:
        print(f"cousinet: reason=parse line={e.line} column={e.column} {e}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, KeyError) as e:
        print(f"cousinet: reason=input {e}", file=sys.stderr)
        return 1
    except Failure as e:
        print(f"cousinet: reason={e.reason} {e}", file=sys.stderr)
        return 2
    except HorizonError as e:
        print(f"cousinet: reason=horizon {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
