"""Command-line front-end: build, verify, specialize, transform, count.

Exit codes: 0 success, 1 domain error (bad input, unsatisfiable request),
2 internal verification failure (a structural identity that must hold failed,
i.e. a bug, not a user error).
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

from .braid import BraidWord, link_components, parse_braid, self_linking
from .coeff import LAURENT
from .dga import (DOUBLEHAT, HAT, MINUS, UNFILTERED, FilteredDGA,
                  build_filtered_dga, infinity_dga, specialize, verify_dga)
from .errors import BraidParseError, DgaError, InternalVerificationError
from .serialize import dga_to_doc

_UV_BY_SPEC = {HAT: (0, 1), DOUBLEHAT: (0, 0), UNFILTERED: (1, 1)}


def _configure_threads() -> None:
    cap = os.environ.get("TDGA_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


# -- text rendering ---------------------------------------------------------

_D_SYMBOL = {MINUS: "∂⁻", HAT: "∂̂",
             DOUBLEHAT: "∂̂̂"}

_GREEK = {"l": "λ", "m": "μ"}
_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄"
                           "₅₆₇₈₉")


def _render_var(name: str, single_component: bool) -> str:
    if name in ("U", "V"):
        return name
    kind, idx = name[0], name[1:]
    base = _GREEK[kind]
    return base if single_component else base + idx.translate(_SUBSCRIPT)


def _render_coeff(coeff, single_component: bool) -> list[str]:
    """One rendered string per monomial, sign folded into the first factor."""
    out = []
    names = coeff.ring.var_names
    for exps, c in coeff.sorted_terms():
        factors = []
        for i, e in enumerate(exps):
            if e == 0:
                continue
            v = _render_var(names[i], single_component)
            factors.append(v if e == 1 else f"{v}^{e}")
        body = "".join(factors)
        if c == 1 and body:
            out.append(body)
        elif c == -1 and body:
            out.append("-" + body)
        else:
            out.append(f"{c}{body}")
    return out


def _render_gen(g, strands: int) -> str:
    if strands == 1:
        return g.family
    return f"{g.family}{g.i}{g.j}" if strands < 10 else g.name


def _render_poly(poly, strands: int, single_component: bool) -> str:
    if poly.is_zero():
        return "0"
    pieces = []
    for word, coeff in poly.sorted_terms():
        ws = "".join(_render_gen(g, strands) for g in word)
        monos = _render_coeff(coeff, single_component)
        if not word:
            pieces.extend(monos)
        elif len(monos) == 1 and monos[0] == "1":
            pieces.append(ws)
        elif len(monos) == 1 and monos[0] == "-1":
            pieces.append("-" + ws)
        elif len(monos) == 1:
            pieces.append(monos[0] + ws)
        else:
            pieces.append("(" + " + ".join(monos) + ")" + ws)
    text = " + ".join(pieces)
    return text.replace("+ -", "- ")


def _render_dga(dga: FilteredDGA) -> str:
    sym = _D_SYMBOL.get(dga.provenance, "∂")
    single = dga.components.r == 1
    lines = []
    for g in dga.generators:
        if g.degree == 0:
            continue
        lines.append(f"{sym}{_render_gen(g, dga.strands)} = "
                     f"{_render_poly(dga.d(g), dga.strands, single)}")
    return "\n".join(lines)


# -- subcommand helpers -----------------------------------------------------

def _parse(args) -> BraidWord:
    return parse_braid(args.braid, args.strands)


def _build_spec(braid: BraidWord, spec: str) -> FilteredDGA:
    dga = build_filtered_dga(braid)
    if spec == MINUS:
        return dga
    u, v = _UV_BY_SPEC[spec]
    return specialize(dga, u, v)


def _emit_dga(dga: FilteredDGA, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(dga_to_doc(dga), indent=2))
    else:
        print(_render_dga(dga))


def _unit_images(args, r: int, what: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    lam, mu = tuple(args.lam or ()), tuple(args.mu or ())
    if len(lam) != r or len(mu) != r:
        raise DgaError(f"{what}: need exactly {r} --lambda and {r} --mu values "
                       f"(one per link component), got {len(lam)} and {len(mu)}")
    return lam, mu


def _cmd_dga(args) -> int:
    _emit_dga(_build_spec(_parse(args), args.spec), args.format)
    return 0


def _cmd_check(args) -> int:
    dga = build_filtered_dga(_parse(args))
    report = verify_dga(dga)
    if args.format == "json":
        print(json.dumps({"braid": dga.braid.word_text(),
                          "passed": report.all_pass,
                          "checks": [{"check": e.check,
                                      "generator": e.generator.name if e.generator else None,
                                      "passed": e.ok}
                                     for e in report.entries]}, indent=2))
    else:
        for e in report.entries:
            tag = e.generator.name + " " if e.generator else ""
            print(f"{'ok  ' if e.ok else 'FAIL'} {tag}{e.check}")
    return 0 if report.all_pass else 2


def _cmd_specialize(args) -> int:
    if args.spec == MINUS:
        raise DgaError("specialize needs --spec hat, doublehat or unfiltered")
    _emit_dga(_build_spec(_parse(args), args.spec), args.format)
    return 0


def _cmd_infinity(args) -> int:
    _emit_dga(infinity_dga(_parse(args)), args.format)
    return 0


def _aug_rows(args, braid: BraidWord) -> tuple[list[dict], str]:
    """Count rows and the specialization label, honoring --all-units."""
    from .augment import (AugmentationProblem, count_augmentations,
                          count_augmentations_streamed)
    p = args.p
    if p is None:
        raise DgaError("aug needs --p")
    comp = link_components(braid)
    if args.spec == "infinity":
        dga = infinity_dga(braid)
        if args.all_units:
            tuples = itertools.product(range(1, p), repeat=2 * comp.r + 2)
        else:
            lam, mu = _unit_images(args, comp.r, "aug")
            if args.U is None or args.V is None:
                raise DgaError("infinity augmentations need --U and --V")
            tuples = [(*lam, *mu, args.U, args.V)]
        rows = []
        for tup in tuples:
            lam, mu = tup[:comp.r], tup[comp.r:2 * comp.r]
            u, v = tup[2 * comp.r], tup[2 * comp.r + 1]
            prob = AugmentationProblem(dga, p, lam, mu, u, v)
            rows.append({"lambda": list(lam), "mu": list(mu), "U": u, "V": v,
                         "count": count_augmentations(prob)})
        return rows, "infinity"
    if args.spec == MINUS:
        raise DgaError("aug needs a finite specialization: "
                       "--spec hat, doublehat, unfiltered or infinity")
    if args.U is not None or args.V is not None:
        raise DgaError("--U/--V only apply to --spec infinity")
    u, v = _UV_BY_SPEC[args.spec]
    if args.all_units:
        tuples = itertools.product(range(1, p), repeat=2 * comp.r)
    else:
        lam, mu = _unit_images(args, comp.r, "aug")
        tuples = [(*lam, *mu)]
    rows = []
    for tup in tuples:
        lam, mu = tup[:comp.r], tup[comp.r:]
        rows.append({"lambda": list(lam), "mu": list(mu),
                     "count": count_augmentations_streamed(
                         braid, p, lam, mu, u, v)})
    return rows, args.spec


def _cmd_aug(args) -> int:
    braid = _parse(args)
    rows, spec = _aug_rows(args, braid)
    if args.format == "json":
        doc: dict = {"braid": braid.word_text(), "specialization": spec,
                     "p": args.p}
        if args.all_units:
            doc["rows"] = rows
        else:
            doc["assignments"] = {k: rows[0][k] for k in rows[0]
                                  if k != "count"}
            doc["count"] = rows[0]["count"]
        print(json.dumps(doc, indent=2))
    elif args.all_units:
        for row in rows:
            keys = [f"lambda={row['lambda']}", f"mu={row['mu']}"]
            if "U" in row:
                keys += [f"U={row['U']}", f"V={row['V']}"]
            print(" ".join(keys) + f" count={row['count']}")
    else:
        print(rows[0]["count"])
    return 0


def _cmd_sl(args) -> int:
    value = self_linking(_parse(args))
    if args.format == "json":
        print(json.dumps({"braid": args.braid, "sl": value}))
    else:
        print(value)
    return 0


def _make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tdga",
        description="Filtered knot contact homology of braid closures")
    sub = ap.add_subparsers(dest="command", required=True)
    commands = {
        "dga": ("build the DGA of a braid closure", _cmd_dga),
        "check": ("verify the structural identities of the DGA", _cmd_check),
        "specialize": ("build and specialize (U,V)", _cmd_specialize),
        "infinity": ("build the topological-invariant version", _cmd_infinity),
        "aug": ("count augmentations over Z/p", _cmd_aug),
        "sl": ("self-linking number of the closure", _cmd_sl),
    }
    for name, (help_text, fn) in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("braid", help="braid word, e.g. '1 -2 1'")
        p.add_argument("--strands", type=int, default=None)
        p.add_argument("--format", choices=("json", "text"), default="text")
        if name in ("dga", "specialize", "aug"):
            choices = (MINUS, HAT, DOUBLEHAT, UNFILTERED)
            if name == "aug":
                choices += ("infinity",)
            p.add_argument("--spec", choices=choices, default=MINUS)
        if name == "aug":
            p.add_argument("--p", type=int)
            p.add_argument("--lambda", dest="lam", type=int, action="append",
                           metavar="K", help="image of lambda_j (repeatable)")
            p.add_argument("--mu", dest="mu", type=int, action="append",
                           metavar="K", help="image of mu_j (repeatable)")
            p.add_argument("--U", type=int, default=None)
            p.add_argument("--V", type=int, default=None)
            p.add_argument("--all-units", action="store_true")
    return ap


def run(argv: list[str] | None = None) -> int:
    _configure_threads()
    args = _make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (BraidParseError, DgaError, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1
    except InternalVerificationError as exc:
        print(f"{args.command}: internal verification failure: {exc}",
              file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
