"""Command line front end: ``coble-lab <group> <command> [options]``.

JSON arguments are given inline or as ``@path`` (``@-`` reads stdin).  Results
go to stdout (or ``--output``) as JSON; scans emit JSONL.  Exit codes: 0 on
success, 2 on a validation error, 3 on a certified negative answer, 64 on
malformed command lines.
"""
import argparse
import json
import sys

from . import coincidence, enumeration, lattice, picard, sextic
from .binform import (
    BinaryForm,
    fixed_form,
    format_rational,
    gcd_form,
    is_scalar,
    jacobian,
    pencil_involution,
    resultant,
)
from .errors import CobleLabError, PreconditionFailed

EX_USAGE = 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_json(text):
    if text.startswith("@"):
        path = text[1:]
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    return json.loads(text)


def expect_keys(obj, required, optional=()):
    if not isinstance(obj, dict):
        raise PreconditionFailed("expected a JSON object")
    missing = set(required) - set(obj)
    unknown = set(obj) - set(required) - set(optional)
    if missing:
        raise PreconditionFailed(f"missing fields: {sorted(missing)}")
    if unknown:
        raise PreconditionFailed(f"unknown fields: {sorted(unknown)}")
    return obj


def classes_from(obj):
    if not isinstance(obj, list):
        raise PreconditionFailed("expected a JSON list of classes")
    return [picard.DivisorClass.from_json(c) for c in obj]


def vector_from(obj):
    return lattice.LatticeVector.from_json(obj)


def threads(args):
    if args.threads is not None:
        return args.threads
    return enumeration.env_workers()


# ---------------------------------------------------------------- lattice

def cmd_lattice_reflect(args):
    alpha, x = vector_from(load_json(args.alpha)), vector_from(load_json(args.x))
    return lattice.reflect(alpha, x).to_json()


def cmd_lattice_gram(args):
    if args.e10:
        table = lattice.e10_gram_table()
        return {"basis": "root", "gram": table,
                "matches_embedding": table == lattice.e10_gram_from_embedding()}
    return {"basis": "standard", "gram": lattice.gram(args.n)}


def cmd_lattice_split(args):
    w, c = lattice.split_along_k(vector_from(load_json(args.v)))
    return {"w": w.to_json(), "c": c}


# ---------------------------------------------------------------- picard

def _class(args, name):
    return picard.DivisorClass.from_json(load_json(getattr(args, name)))


def cmd_picard_pair(args):
    s = picard.BlowupSurface(args.n)
    return {"pairing": picard.intersect(s, _class(args, "a"), _class(args, "b"))}


def cmd_picard_genus(args):
    s = picard.BlowupSurface(args.n)
    return {"p_a": picard.arithmetic_genus(s, _class(args, "D"))}


def cmd_picard_chi(args):
    s = picard.BlowupSurface(args.n)
    return {"chi": picard.euler_characteristic(s, _class(args, "D"))}


def cmd_picard_audit_quintic(args):
    s = picard.BlowupSurface(10)
    H = _class(args, "H") if args.H else None
    return {"quintic": picard.quintic_model_audit(s, H), "bordiga": picard.bordiga_audit(s)}


def cmd_picard_contract(args):
    classes = classes_from(load_json(args.input))
    s = picard.BlowupSurface(classes[0].n if classes else 10)
    return picard.contract_basis(s, classes).to_json()


# ---------------------------------------------------------------- enum

def cmd_enum_classes(args):
    if args.preset:
        q = enumeration.preset_query(args.preset, args.n, args.bound)
    else:
        if args.self_intersection is None or args.k is None or args.bound is None:
            raise UsageError("enum classes needs --preset or all of --self, --k, --bound")
        q = enumeration.ClassQuery(args.n, args.self_intersection, args.k, args.bound)
    out = enumeration.enumerate_classes(q, verify=args.verify, workers=threads(args))
    return [c.to_json() for c in out]


def cmd_enum_extend(args):
    given = classes_from(load_json(args.input))
    res = enumeration.extend_exceptional(given, args.n, args.max_degree, all_solutions=args.all)
    if args.all:
        return [[c.to_json() for c in frame] for frame in res]
    return [c.to_json() for c in res]


def cmd_enum_isotropic_extend(args):
    seq = classes_from(load_json(args.input))
    return [c.to_json() for c in enumeration.extend_isotropic(seq, args.n, args.max_degree)]


def _standard_sequence(n=10):
    s = picard.BlowupSurface(n)
    return [enumeration.elliptic_from_exceptional(s.exceptional(i), n) for i in range(1, n + 1)]


def cmd_enum_fano(args):
    seq = classes_from(load_json(args.input)) if args.input else _standard_sequence()
    H = enumeration.fano_polarization(seq)
    return {"H": H.to_json(), "H^2": H.dot(H)}


def cmd_enum_phi(args):
    H = _class(args, "H")
    phi, witness = enumeration.phi_invariant(H, args.box, workers=threads(args), with_witness=True)
    return {"phi": phi, "witness": witness.to_json(), "box": args.box, "doubled_box": 2 * args.box}


# ---------------------------------------------------------------- binform

def _form(args, name):
    return BinaryForm.from_json(load_json(getattr(args, name)))


def cmd_binform_jacobian(args):
    return jacobian(_form(args, "f"), _form(args, "g")).to_json()


def cmd_binform_resultant(args):
    f, g = _form(args, "f"), _form(args, "g")
    return {"resultant": format_rational(resultant(f, g)), "gcd": gcd_form(f, g).to_json()}


def cmd_binform_involution(args):
    sigma = pencil_involution(_form(args, "f"), _form(args, "g"))
    return {"involution": sigma.to_json(), "fixed_form": fixed_form(sigma).primitive().to_json()}


# ---------------------------------------------------------------- sextic

def parametrization_from(obj):
    if isinstance(obj, dict) and "F" in obj:
        expect_keys(obj, ["F"], ["witness"])
        if len(obj["F"]) != 3:
            raise PreconditionFailed('"F" must list three forms')
        return sextic.parametrization_from_forms(*(BinaryForm.from_json(f) for f in obj["F"]))
    expect_keys(obj, ["A", "B", "C", "Lambda"])
    A, B, C = (BinaryForm.from_json(obj[k]) for k in "ABC")
    return sextic.build_parametrization(A, B, C, obj["Lambda"])


def _param(args):
    return parametrization_from(load_json(args.input))


def cmd_sextic_build(args):
    return _param(args).to_json()


def cmd_sextic_w_form(args):
    W = sextic.double_point_form(_param(args))
    return {"W": W.to_json(), "degree": W.degree, "squarefree": W.is_squarefree()}


def cmd_sextic_system_dim(args):
    return {"m": args.m, "r": args.r, "dimension": sextic.nodal_system_dimension(_param(args), args.m, args.r)}


def cmd_sextic_implicitize(args):
    return sextic.implicitize(_param(args)).to_json()


def cmd_sextic_coble_check(args):
    report = sextic.coble_check(_param(args))
    if not args.audit:
        report.pop("metadata")
    return report


# ---------------------------------------------------------------- coincide

def _triple(obj):
    expect_keys(obj, ["A", "B", "C"], ["Lambda"])
    return coincidence.QuadTriple.from_json(obj)


def cmd_coincide_matrices(args):
    t = _triple(load_json(args.input))
    out = coincidence.build_matrices(t).to_json()
    out["normalized_identity"] = True
    return out


def cmd_coincide_test(args):
    obj = load_json(args.input)
    t = _triple(obj)
    out = {"coincident": coincidence.coincidence_condition(t),
           "residual_scalar": coincidence.residual_is_scalar(t)}
    if "Lambda" in obj:
        out["marked_fix"] = coincidence.family_coincidence_test(t.A, t.B, obj["Lambda"], t.C)
        out["equations"] = coincidence.coincidence_equations(t.A, t.B, t.C)
    return out


def cmd_coincide_residual(args):
    r = coincidence.pompilj_residual(_triple(load_json(args.input)))
    return {"residual": r.to_json(), "scalar": is_scalar(r)}


def cmd_coincide_family_scan(args):
    grid = load_json(args.grid)
    expect_keys(grid, ["A", "B", "C"], ["lambdas", "base", "row", "values"])
    t = coincidence.QuadTriple.from_json(grid)
    rows = coincidence.family_scan(t, coincidence.grid_points(grid), workers=threads(args))
    return JsonLines(rows)


class JsonLines(list):
    pass


# ---------------------------------------------------------------- wiring

def build_parser():
    p = Parser(prog="coble-lab", description="Exact lattice and binary-form computations for Coble surfaces.")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: COBLE_LAB_THREADS or 1)")
    p.add_argument("--output", default=None, help="write the result here instead of stdout")
    groups = p.add_subparsers(dest="group", required=True, parser_class=Parser)

    def group(name, help_text):
        g = groups.add_parser(name, help=help_text)
        return g.add_subparsers(dest="command", required=True, parser_class=Parser)

    def cmd(sub, name, fn, help_text):
        c = sub.add_parser(name, help=help_text)
        c.set_defaults(fn=fn)
        return c

    lat = group("lattice", "Z^{1,N} and E10")
    c = cmd(lat, "reflect", cmd_lattice_reflect, "reflect x in a root alpha")
    c.add_argument("--alpha", required=True)
    c.add_argument("--x", required=True)
    c = cmd(lat, "gram", cmd_lattice_gram, "Gram matrix of Z^{1,N} or the E10 root basis")
    c.add_argument("--n", type=int, default=10)
    c.add_argument("--e10", action="store_true")
    c = cmd(lat, "split", cmd_lattice_split, "split v into a k-perp part and a multiple of k")
    c.add_argument("--v", required=True)

    pic = group("picard", "divisor classes on Bl_N P^2")
    for name, fn, fields in (("pair", cmd_picard_pair, ("a", "b")),
                             ("genus", cmd_picard_genus, ("D",)),
                             ("chi", cmd_picard_chi, ("D",))):
        c = cmd(pic, name, fn, f"{name} of divisor classes")
        c.add_argument("--n", type=int, default=10)
        for f in fields:
            c.add_argument(f"--{f}", required=True)
    c = cmd(pic, "audit-quintic", cmd_picard_audit_quintic, "numerical audits of the quintic and Bordiga models")
    c.add_argument("--H", default=None)
    c = cmd(pic, "contract", cmd_picard_contract, "isometry sending ten classes to E1..E10")
    c.add_argument("--input", required=True)

    en = group("enum", "enumeration and extension of classes")
    c = cmd(en, "classes", cmd_enum_classes, "classes with given square and K-degree")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--preset", choices=sorted(enumeration.PRESETS))
    c.add_argument("--self", dest="self_intersection", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--bound", type=int)
    c.add_argument("--verify", action="store_true")
    c = cmd(en, "extend", cmd_enum_extend, "complete disjoint (-1)-classes to a frame")
    c.add_argument("--input", required=True)
    c.add_argument("--n", type=int, default=10)
    c.add_argument("--max-degree", type=int, default=enumeration.DEFAULT_EXTENSION_CAP)
    c.add_argument("--all", action="store_true")
    c = cmd(en, "isotropic-extend", cmd_enum_isotropic_extend, "extend an isotropic sequence")
    c.add_argument("--input", required=True)
    c.add_argument("--n", type=int, default=10)
    c.add_argument("--max-degree", type=int, default=enumeration.DEFAULT_EXTENSION_CAP)
    c = cmd(en, "fano", cmd_enum_fano, "Fano class of a maximal isotropic sequence")
    c.add_argument("--input", default=None)
    c = cmd(en, "phi", cmd_enum_phi, "phi-invariant with box doubling")
    c.add_argument("--H", required=True)
    c.add_argument("--box", type=int, default=enumeration.DEFAULT_PHI_BOX)

    bf = group("binform", "binary forms")
    for name, fn in (("jacobian", cmd_binform_jacobian), ("resultant", cmd_binform_resultant),
                     ("involution", cmd_binform_involution)):
        c = cmd(bf, name, fn, name)
        c.add_argument("--f", required=True)
        c.add_argument("--g", required=True)

    sx = group("sextic", "parametrized plane sextics")
    for name, fn in (("build", cmd_sextic_build), ("w-form", cmd_sextic_w_form),
                     ("system-dim", cmd_sextic_system_dim), ("implicitize", cmd_sextic_implicitize),
                     ("coble-check", cmd_sextic_coble_check)):
        c = cmd(sx, name, fn, name)
        c.add_argument("--input", required=True)
        if name == "system-dim":
            c.add_argument("--m", type=int, required=True)
            c.add_argument("--r", type=int, choices=(1, 2), required=True)
        if name == "coble-check":
            c.add_argument("--audit", action="store_true", help="include the moduli dimension count")

    co = group("coincide", "coincidence calculus")
    for name, fn in (("matrices", cmd_coincide_matrices), ("test", cmd_coincide_test),
                     ("residual", cmd_coincide_residual)):
        c = cmd(co, name, fn, name)
        c.add_argument("--input", required=True)
    c = cmd(co, "family-scan", cmd_coincide_family_scan, "scan a grid of Lambda matrices (JSONL)")
    c.add_argument("--grid", required=True)
    return p


def render(result):
    if isinstance(result, JsonLines):
        return "".join(json.dumps(r) + "\n" for r in result)
    return json.dumps(result) + "\n"


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        result = args.fn(args)
        code = 0
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EX_USAGE
    except CobleLabError as e:
        result, code = e.to_json(), e.exit_code
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        result, code = {"error": type(e).__name__, "message": str(e)}, 2
    text = render(result)
    if code == 0 and args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as e:
            sys.stdout.write(render({"error": type(e).__name__, "message": str(e)}))
            return 2
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
