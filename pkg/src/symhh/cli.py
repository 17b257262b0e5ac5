"""Command-line entry point.

Every command prints a JSON report on stdout (and optionally writes it to
``--json OUT``).  Rationals are serialised as "p/q" strings.  The exit status
is 0 when every check passes and nonzero otherwise; each kind of error has its
own status and message prefix:

    1  a verification check failed
    2  bad command line (argparse)
    3  the category document could not be parsed
    4  the category violates an axiom
    5  a bound is unknown or outside its safe range
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .checks import BOUNDS, SUITES, BoundsError, category_checks, resolve_bounds, run_suite
from .dgcat import BUILTINS, FinDGCategory, symmetric_power, validate
from .exactla import fmt_scalar, homology_basis, homology_dimensions, independent
from .hochschild import build_complex, exact_degrees
from .orbifold.decomposition import Decomposition

EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_INVALID, EXIT_BOUNDS = 1, 2, 3, 4, 5

SELFTEST_CATEGORIES = ["k", "k-two-objects", "quiver", "exterior"]


class DocumentError(ValueError):
    """The category document is malformed."""


class InvalidCategory(ValueError):
    """The document parses but violates a category axiom."""


# -- category documents -------------------------------------------------------------

def _coef(v, where: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise DocumentError(f"{where}: coefficient must be an integer or a \"p/q\" string, got {v!r}")
    try:
        return Fraction(v.strip()) if isinstance(v, str) else Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: cannot parse coefficient {v!r}") from None


def _terms(raw, mors: dict, where: str) -> dict:
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: terms must be a list")
    out: dict = {}
    for k, t in enumerate(raw):
        if not isinstance(t, dict) or set(t) != {"coef", "morphism"}:
            raise DocumentError(f"{where}: term {k} must have exactly the keys coef, morphism")
        name = t["morphism"]
        if name not in mors:
            raise DocumentError(f"{where}: unknown morphism {name!r}")
        out[name] = out.get(name, Fraction(0)) + _coef(t["coef"], f"{where} term {k}")
    return {k: v for k, v in out.items() if v}


def _strings(raw, what: str) -> list:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise DocumentError(f"{what} must be a list of strings")
    if len(set(raw)) != len(raw):
        raise DocumentError(f"{what} contains duplicates")
    return raw


def category_from_document(doc) -> FinDGCategory:
    """Parse a CategorySpecDocument.  Raises DocumentError on malformed input.

    ``composition`` entries give ``left∘right`` (left after right); products
    not listed are zero, except those involving an identity.
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    allowed = {"name", "objects", "morphisms", "identities", "differential", "composition"}
    extra = set(doc) - allowed
    if extra:
        raise DocumentError(f"unknown top-level keys: {sorted(extra)}")
    for key in ("objects", "morphisms", "identities"):
        if key not in doc:
            raise DocumentError(f"missing required key {key!r}")
    objects = _strings(doc["objects"], "objects")
    mors: dict = {}
    if not isinstance(doc["morphisms"], list):
        raise DocumentError("morphisms must be a list")
    for k, m in enumerate(doc["morphisms"]):
        if not isinstance(m, dict) or set(m) != {"name", "source", "target", "degree"}:
            raise DocumentError(f"morphism {k} must have exactly the keys name, source, target, degree")
        name, s, t, d = m["name"], m["source"], m["target"], m["degree"]
        if not all(isinstance(x, str) for x in (name, s, t)):
            raise DocumentError(f"morphism {k}: name, source and target must be strings")
        if isinstance(d, bool) or not isinstance(d, int):
            raise DocumentError(f"morphism {name!r}: degree must be an integer")
        if name in mors:
            raise DocumentError(f"duplicate morphism {name!r}")
        mors[name] = (s, t, d)
    ids = doc["identities"]
    if not isinstance(ids, dict) or not all(isinstance(v, str) for v in ids.values()):
        raise DocumentError("identities must map objects to morphism names")
    for x, f in ids.items():
        if f not in mors:
            raise DocumentError(f"identity of {x!r} names unknown morphism {f!r}")
    diff: dict = {}
    for k, e in enumerate(doc.get("differential", [])):
        if not isinstance(e, dict) or set(e) != {"of", "terms"}:
            raise DocumentError(f"differential entry {k} must have exactly the keys of, terms")
        if e["of"] not in mors:
            raise DocumentError(f"differential entry {k}: unknown morphism {e['of']!r}")
        if e["of"] in diff:
            raise DocumentError(f"differential of {e['of']!r} given twice")
        diff[e["of"]] = _terms(e["terms"], mors, f"differential of {e['of']!r}")
    comp: dict = {}
    for k, e in enumerate(doc.get("composition", [])):
        if not isinstance(e, dict) or set(e) != {"left", "right", "terms"}:
            raise DocumentError(f"composition entry {k} must have exactly the keys left, right, terms")
        a, b = e["left"], e["right"]
        if a not in mors or b not in mors:
            raise DocumentError(f"composition entry {k}: unknown morphism in ({a!r}, {b!r})")
        if (a, b) in comp:
            raise DocumentError(f"composition ({a!r}, {b!r}) given twice")
        if mors[a][0] != mors[b][1]:
            raise DocumentError(f"composition entry {k}: {a!r} cannot follow {b!r}")
        comp[(a, b)] = _terms(e["terms"], mors, f"composition ({a!r}, {b!r})")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name must be a string")
    return FinDGCategory(objects, mors, ids, diff, comp, name=name)


def category_to_document(A: FinDGCategory) -> dict:
    """Inverse of category_from_document for categories with string labels."""
    def terms(d):
        return [{"coef": fmt_scalar(c), "morphism": f} for f, c in sorted(d.items())]
    return {
        "name": A.name,
        "objects": list(A.objects),
        "morphisms": [{"name": f, "source": s, "target": t, "degree": d}
                      for f, (s, t, d) in A.morphisms.items()],
        "identities": dict(A.identities),
        "differential": [{"of": f, "terms": terms(d)} for f, d in sorted(A.differential.items())],
        "composition": [{"left": a, "right": b, "terms": terms(r)}
                        for a, b, r in sorted(A.all_compositions())
                        if r and not (A.is_identity(a) or A.is_identity(b))],
    }


def load_category(source: str) -> FinDGCategory:
    """A built-in name or a path to a JSON document; the result is validated."""
    if source in BUILTINS:
        A = BUILTINS[source]()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as e:
            raise DocumentError(f"cannot read {source!r}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise DocumentError(f"{source}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
        A = category_from_document(doc)
    v = validate(A)
    if v is not None:
        raise InvalidCategory(str(v))
    return A


# -- report helpers ---------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_scalar(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _checks_block(checks: list) -> list:
    return [c.as_dict() for c in checks]


# -- commands ----------------------------------------------------------------------------

def cmd_validate(A: FinDGCategory) -> dict:
    checks = category_checks(A)
    return {"category": A.name, "objects": len(A.objects), "morphisms": len(A.morphisms),
            "checks": _checks_block(checks), "passed": all(c.passed for c in checks)}


def cmd_hh(A: FinDGCategory, n: int, max_degree: int) -> dict:
    S = symmetric_power(A, n)
    max_len = max_degree + 1
    C, _ = build_complex(S, None, max_len)
    dims = homology_dimensions(C)
    exact = set(exact_degrees(S, max_len))
    rows = [{"degree": d, "dimension": dims.get(d, 0), "exact": d in exact}
            for d in range(min(C.degrees[0], 0), max_degree + 1)]
    return {"category": A.name, "n": n, "truncated_at_length": max_len,
            "homology": rows, "passed": True}


def cmd_decompose(A: FinDGCategory, n: int, degree: int) -> dict:
    D = Decomposition(A, n)
    max_len = degree + 1
    C, info = build_complex(D.S, None, max_len)
    hb = homology_basis(C, degree) if degree in C.spaces else None
    reps = [] if hb is None else [{C.spaces[degree][i]: c for i, c in r.items()} for r in hb.reps]
    images = [D.zeta(r) for r in reps]
    parts = []
    total_rank = 0
    for lam in D.partitions:
        SC, sidx = D.sym_complex(max_len, [lam])
        sb = homology_basis(SC, degree) if degree in SC.spaces else None
        dim = 0 if sb is None else len(sb)
        cols = []
        for z in images:
            v = {sidx[degree][k]: c for k, c in z.items() if k[0] == lam}
            cols.append({} if sb is None else sb.coords(v))
        rank = independent(cols)
        total_rank += rank
        matrix = [[cols[j].get(i, Fraction(0)) for j in range(len(cols))] for i in range(dim)]
        parts.append({"partition": list(lam), "r": len(lam), "dimension": dim,
                      "zeta_rank": rank, "zeta_matrix": matrix})
    hh_dim = len(reps)
    sym_dim = sum(p["dimension"] for p in parts)
    iso = hh_dim == sym_dim == total_rank
    return {"category": A.name, "n": n, "degree": degree,
            "exact": degree in set(exact_degrees(D.S, max_len)),
            "hh_dimension": hh_dim, "partitions": parts, "sym_dimension": sym_dim,
            "zeta_is_isomorphism": iso, "passed": iso}


def cmd_verify(A: FinDGCategory, suite: str, bounds: dict) -> dict:
    checks = run_suite(suite, A, bounds)
    return {"category": A.name, "suite": suite, "bounds": resolve_bounds(suite, bounds),
            "checks": _checks_block(checks), "passed": all(c.passed for c in checks)}


def cmd_selftest(categories=None) -> dict:
    cats = categories or SELFTEST_CATEGORIES
    blocks = []
    comb = run_suite("combinatorics", None)
    blocks.append({"category": None, "suite": "combinatorics", "checks": _checks_block(comb),
                   "passed": all(c.passed for c in comb)})
    for name in cats:
        A = BUILTINS[name]()
        checks = category_checks(A)
        blocks.append({"category": name, "suite": "category", "checks": _checks_block(checks),
                       "passed": all(c.passed for c in checks)})
        for suite in SUITES:
            if suite == "combinatorics":
                continue
            checks = run_suite(suite, A, {})
            blocks.append({"category": name, "suite": suite, "checks": _checks_block(checks),
                           "passed": all(c.passed for c in checks)})
    return {"runs": blocks, "passed": all(b["passed"] for b in blocks)}


# -- argument handling ---------------------------------------------------------------------

def _parse_bounds(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise BoundsError(f"bound {item!r} is not of the form KEY=VALUE")
        try:
            out[key] = int(val)
        except ValueError:
            raise BoundsError(f"bound {key} needs an integer value, got {val!r}") from None
    return out


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symhh", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"symhh {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True,
                            help=f"JSON category document or a built-in: {', '.join(BUILTINS)}")
        sp.add_argument("--json", metavar="OUT", help="also write the report to this file")
        sp.add_argument("--timing", action="store_true",
                        help="add wall time to the report (makes it run-dependent)")

    sp = sub.add_parser("validate", help="check the category axioms")
    common(sp)
    sp = sub.add_parser("hh", help="Hochschild homology dimensions of S^n A")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--degree", type=int, default=2, help="largest homological degree")
    sp = sub.add_parser("decompose", help="zeta_n on a homology basis, per partition")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--degree", type=int, default=0)
    sp = sub.add_parser("verify", help="run one verification suite")
    common(sp)
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--bounds", nargs="*", metavar="K=V", default=[],
                    help="override suite bounds, e.g. n=2 m=3")
    sp.add_argument("--max-len", type=int, help="shorthand for the bound m")
    sp = sub.add_parser("selftest", help="all suites on the built-in categories")
    common(sp, needs_input=False)
    return p


_LIMITS = {"n": (0, 4), "degree": (0, 4)}


def _check_range(name: str, value: int):
    lo, hi = _LIMITS[name]
    if not lo <= value <= hi:
        raise BoundsError(f"--{name} {value} outside the safe range [{lo}, {hi}]")


def run(argv=None) -> tuple[int, dict | None]:
    args = _build_parser().parse_args(argv)
    echo = ["symhh"] + list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    params = {k: v for k, v in vars(args).items() if k not in ("json", "timing", "command")}
    try:
        if args.command == "selftest":
            results = cmd_selftest()
        else:
            A = load_category(args.input)
            if args.command == "validate":
                results = cmd_validate(A)
            elif args.command == "hh":
                _check_range("n", args.n)
                _check_range("degree", args.degree)
                results = cmd_hh(A, args.n, args.degree)
            elif args.command == "decompose":
                _check_range("n", args.n)
                _check_range("degree", args.degree)
                results = cmd_decompose(A, args.n, args.degree)
            else:
                bounds = _parse_bounds(args.bounds)
                if args.max_len is not None:
                    if "m" not in BOUNDS[args.suite]:
                        raise BoundsError(f"suite {args.suite!r} has no length bound m")
                    bounds["m"] = args.max_len
                results = cmd_verify(A, args.suite, bounds)
    except DocumentError as e:
        return _error(EXIT_PARSE, "parse error", str(e))
    except InvalidCategory as e:
        return _error(EXIT_INVALID, "invalid category", str(e))
    except BoundsError as e:
        return _error(EXIT_BOUNDS, "bounds error", str(e))
    report = {"command": " ".join(echo), "parameters": params, "results": results}
    if args.timing:
        report["wall_time_seconds"] = round(time.perf_counter() - start, 3)
    text = json.dumps(_jsonable(report), indent=2, ensure_ascii=False)
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return (0 if results["passed"] else EXIT_FAIL), report


def _error(code: int, kind: str, msg: str):
    print(f"symhh: {kind}: {msg}", file=sys.stderr)
    return code, None


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
