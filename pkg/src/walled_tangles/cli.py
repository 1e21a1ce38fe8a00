"""Command-line front end for the tangle algebra toolkit.

Subcommands normalize words, multiply them, render operator matrices, dump
structure constants, carry words across the wall, flip permutation words
classically, and run the verification suites.  Reports are emitted as JSON
(the default) or as human-readable text; JSON outputs follow the schemas
shipped in the repository's ``schemas`` directory.

Exit status: 0 on success or an all-pass verification, 1 on a verification
failure or a resource limit, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence, Union

from .duality import (
    ResourceLimitError,
    classical_flip,
    hecke_to_walled,
    verify_schur_weyl,
)
from .laurent import Q, QINV
from .qgroup import E, F, K, QH, UGenerator, gen_on_mixed
from .rep import (
    OperatorMatrix,
    hecke_action_matrix,
    matrix_of_word,
    render_matrix,
)
from .skein import (
    element_of_connector,
    multiply,
    normalize,
    presentation_check,
    structure_constants,
)
from .tangle import (
    DOWN,
    UP,
    Cross,
    DslError,
    Hand,
    Max,
    Min,
    Orientation,
    SliceError,
    Sweep,
    TangleType,
    TangleWord,
    all_down_type,
    apply_slice,
    canonical_basis_word,
    parse_type,
    parse_word,
    render_type,
    stack,
    strand_graph,
    vertex_name,
)

THREADS_VAR = "WALLED_TANGLE_THREADS"


# -- input parsing ------------------------------------------------------------

_GENERATOR_RE = re.compile(r"(qh|K'|K|E|F)\(([^()]*)\)")


def parse_dsl(text: str, ty: Optional[TangleType] = None) -> Union[TangleWord, list[UGenerator]]:
    """Parse either a tangle word or a list of quantum-group generators.

    With a boundary type (given explicitly or as a ``TYPE : WORD`` header in
    the text itself) the text is a slice word.  Without one it is a
    whitespace-separated list of generator tokens ``E(i)``, ``E(i,l)``,
    ``F(i)``, ``F(i,l)``, ``K(i)``, ``K'(i)``, or ``qh(a1,...,an)``.
    Errors carry the character offset where they were detected.
    """
    if ty is not None:
        return parse_word(text, ty)
    if "|" in text:
        head, sep, tail = text.partition(":")
        return parse_word(tail if sep else "", parse_type(head.strip()))
    gens: list[UGenerator] = []
    for m in re.finditer(r"\S+", text):
        token, offset = m.group(0), m.start()
        tm = _GENERATOR_RE.fullmatch(token)
        if not tm:
            raise DslError(f"unrecognized generator token {token!r}", offset)
        name, arg_text = tm.group(1), tm.group(2)
        try:
            args = [int(chunk) for chunk in arg_text.split(",")] if arg_text.strip() else []
        except ValueError:
            raise DslError(f"arguments of {name} must be integers", offset) from None
        if name in ("E", "F"):
            if len(args) not in (1, 2):
                raise DslError(f"{name} takes an index and an optional level", offset)
            if args[0] < 1 or (len(args) == 2 and args[1] < 0):
                raise DslError(f"bad {name} arguments {tuple(args)}", offset)
            gens.append((E if name == "E" else F)(*args))
        elif name in ("K", "K'"):
            if len(args) != 1 or args[0] < 1:
                raise DslError(f"{name} takes a single positive index", offset)
            gens.append(K(args[0], -1 if name == "K'" else 1))
        else:
            if not args:
                raise DslError("qh needs a weight with at least one entry", offset)
            gens.append(QH(tuple(args)))
    return gens


def _parse_boundary(text: str) -> tuple[Orientation, ...]:
    return parse_type(text + "|" + text).top


def _read_word_argument(args: argparse.Namespace, ty: TangleType) -> TangleWord:
    text = args.word
    if getattr(args, "word_file", None):
        with open(args.word_file, encoding="utf-8") as handle:
            text = handle.read()
    return parse_word(text or "", ty)


def _parse_q0(text: str) -> Fraction:
    try:
        q0 = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DslError(f"not an exact rational: {text!r}", 0) from None
    if q0 == 0:
        raise DslError("the specialization point must be nonzero", 0)
    return q0


def _thread_cap() -> Optional[int]:
    raw = os.environ.get(THREADS_VAR)
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        return None
    return cap if cap > 0 else None


# -- output helpers -----------------------------------------------------------


def _emit(args: argparse.Namespace, data: dict, human: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(human)


def _connector_json(connector) -> list:
    return [[vertex_name(a), vertex_name(b)] for a, b in connector.edges]


def _strip_timings(data):
    if isinstance(data, dict):
        return {k: _strip_timings(v) for k, v in data.items() if k != "timingsSeconds"}
    if isinstance(data, list):
        return [_strip_timings(v) for v in data]
    return data


# -- seeded word sampling for the property suites -----------------------------


def _random_word(
    rng: random.Random,
    top: Optional[tuple] = None,
    max_width: int = 4,
    max_crossings: int = 4,
    max_slices: int = 7,
) -> TangleWord:
    """A valid word grown one admissible slice at a time."""
    if top is None:
        top = tuple(rng.choice((DOWN, UP)) for _ in range(rng.randint(1, 3)))
    level = top
    slices = []
    crossings = 0
    for _ in range(rng.randint(0, max_slices)):
        options = []
        if crossings < max_crossings:
            for pos in range(1, len(level)):
                options.append(Cross(pos, rng.choice((Hand.FIRST_OVER, Hand.FIRST_UNDER))))
        for pos in range(1, len(level)):
            if level[pos - 1] != level[pos]:
                options.append(Min(pos))
        if len(level) + 2 <= max_width:
            for pos in range(1, len(level) + 2):
                options.append(Max(pos, rng.choice((Sweep.LEFT_TO_RIGHT, Sweep.RIGHT_TO_LEFT))))
        if not options:
            break
        chosen = rng.choice(options)
        try:
            level = apply_slice(level, chosen, len(slices))
        except SliceError:
            continue
        slices.append(chosen)
        if isinstance(chosen, Cross):
            crossings += 1
    return TangleWord(TangleType(top, level), slices)


# -- verification suites ------------------------------------------------------


def _suite_report(suite: str, seed: Optional[int], checks: list, extra: Optional[dict] = None) -> dict:
    data = {"suite": suite}
    if extra:
        data.update(extra)
    if seed is not None:
        data["seed"] = seed
    cap = _thread_cap()
    if cap is not None:
        data["threadCap"] = cap
    data["allPass"] = all(c["holds"] for c in checks)
    data["checks"] = checks
    return data


def _human_checks(data: dict) -> str:
    lines = [f"suite {data['suite']}: {'all pass' if data['allPass'] else 'FAILED'}"]
    for key in ("seed", "threadCap"):
        if key in data:
            lines.append(f"  {key} = {data[key]}")
    for check in data["checks"]:
        mark = "ok" if check["holds"] else "FAIL"
        lines.append(f"  [{mark}] {check['name']}: {check['detail']}")
    return "\n".join(lines)


def _run_skein_suite(n: int, seed: int, count: int) -> dict:
    rng = random.Random(seed)
    fixed_points = 0
    stackings = 0
    for _ in range(count):
        first = _random_word(rng)
        second = _random_word(rng, top=first.ty.bottom)
        element = normalize(first, n)
        if all(
            normalize(canonical_basis_word(connector), n) == element_of_connector(connector, n)
            for connector, _ in element.terms
        ):
            fixed_points += 1
        if multiply(element, normalize(second, n)) == normalize(stack(first, second), n):
            stackings += 1
    checks = [
        {
            "name": "normalFormFixedPoint",
            "holds": fixed_points == count,
            "detail": f"{fixed_points}/{count} normal forms are skein fixed points",
        },
        {
            "name": "productMatchesStacking",
            "holds": stackings == count,
            "detail": f"{stackings}/{count} products agree with stacked normalization",
        },
    ]
    return _suite_report("skein", seed, checks, {"n": n, "count": count})


def _run_hecke_suite(n: int, max_m: int) -> dict:
    coincide = True
    quadratic = True
    braid = True
    for m in range(2, max_m + 1):
        ty = all_down_type(m)
        for k in range(1, m):
            action = hecke_action_matrix(m, k, n)
            word = TangleWord(ty, [Cross(k, Hand.FIRST_OVER)])
            if action != matrix_of_word(word, n):
                coincide = False
            ident = OperatorMatrix.identity(n, ty.top)
            square = action.matmul(action)
            if not (square + action.scaled(Q - QINV) - ident).is_zero():
                quadratic = False
        for k in range(1, m - 1):
            a = hecke_action_matrix(m, k, n)
            b = hecke_action_matrix(m, k + 1, n)
            if a.matmul(b).matmul(a) != b.matmul(a).matmul(b):
                braid = False
    checks = [
        {
            "name": "actionCoincidesWithCrossings",
            "holds": coincide,
            "detail": f"generator action equals crossing-word matrices up to m = {max_m}",
        },
        {
            "name": "quadraticRelation",
            "holds": quadratic,
            "detail": "(T + q)(T - 1/q) vanishes on every generator",
        },
        {
            "name": "braidRelation",
            "holds": braid,
            "detail": "adjacent generators satisfy the braid relation",
        },
    ]
    return _suite_report("hecke", None, checks, {"n": n, "m": max_m})


def _run_linking_suite(n: int, seed: int, count: int) -> dict:
    rng = random.Random(seed)
    good = 0
    for _ in range(count):
        first = _random_word(rng, max_width=3, max_crossings=3, max_slices=5)
        second = _random_word(rng, top=first.ty.bottom, max_width=3, max_crossings=3, max_slices=5)
        composed = matrix_of_word(first, n).matmul(matrix_of_word(second, n))
        if composed == matrix_of_word(stack(first, second), n):
            good += 1
    checks = [
        {
            "name": "matrixOfStackIsComposition",
            "holds": good == count,
            "detail": f"{good}/{count} stacked words match composed matrices",
        }
    ]
    return _suite_report("linking", seed, checks, {"n": n, "count": count})


# -- subcommand handlers ------------------------------------------------------


def _cmd_normalize(args: argparse.Namespace) -> int:
    ty = parse_type(args.type)
    word = _read_word_argument(args, ty)
    element = normalize(word, args.n)
    _emit(args, element.to_json(), str(element))
    return 0


def _cmd_multiply(args: argparse.Namespace) -> int:
    left = parse_dsl(args.left)
    right = parse_dsl(args.right)
    if not isinstance(left, TangleWord) or not isinstance(right, TangleWord):
        raise DslError("multiply needs two tangle words with type headers", 0)
    product = multiply(normalize(left, args.n), normalize(right, args.n))
    _emit(args, product.to_json(), str(product))
    return 0


def _cmd_matrix(args: argparse.Namespace) -> int:
    if args.generators is not None:
        if args.boundary is None:
            raise DslError("--generators needs --boundary", 0)
        boundary = _parse_boundary(args.boundary)
        gens = parse_dsl(args.generators)
        if isinstance(gens, TangleWord):
            raise DslError("--generators expects generator tokens, not a word", 0)
        matrix = OperatorMatrix.identity(args.n, boundary)
        for gen in reversed(gens):
            matrix = matrix.matmul(gen_on_mixed(gen, boundary, args.n))
    else:
        if args.type is None:
            raise DslError("matrix needs --type with --word, or --generators", 0)
        ty = parse_type(args.type)
        word = _read_word_argument(args, ty)
        matrix = matrix_of_word(word, args.n)
    _emit(args, matrix.to_json(), render_matrix(matrix))
    return 0


def _cmd_structure_constants(args: argparse.Namespace) -> int:
    table = structure_constants(args.r, args.s, args.n)
    products = [
        {
            "left": _connector_json(c1),
            "right": _connector_json(c2),
            "element": element.to_json(),
        }
        for (c1, c2), element in table.items()
    ]
    data = {"r": args.r, "s": args.s, "n": args.n, "products": products}
    lines = [f"{c1} * {c2} = {element}" for (c1, c2), element in table.items()]
    _emit(args, data, "\n".join(lines))
    return 0


def _cmd_hecke_to_walled(args: argparse.Namespace) -> int:
    ty = all_down_type(args.r + args.s)
    word = _read_word_argument(args, ty)
    element = hecke_to_walled(word, args.r, args.s, args.n)
    _emit(args, element.to_json(), str(element))
    return 0


def _cmd_flip(args: argparse.Namespace) -> int:
    ty = all_down_type(args.r + args.s)
    word = _read_word_argument(args, ty)
    flipped = classical_flip(strand_graph(word).connector, args.r, args.s)
    data = {"type": render_type(flipped.ty), "edges": _connector_json(flipped)}
    _emit(args, data, str(flipped))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "presentation":
        report = presentation_check(args.r, args.s, args.n)
        human = "\n".join(
            f"[{'ok' if res.holds else 'FAIL'}] {res.name}"
            for res in report.results
            if res.applicable
        )
        _emit(args, report.to_json(), human)
        return 0 if report.all_pass else 1
    if args.suite == "duality":
        report = verify_schur_weyl(args.n, args.r, args.s, _parse_q0(args.q0))
        human_lines = [
            f"duality at n={report.n} r={report.r} s={report.s} q0={report.q0}:",
            f"  image rank {report.image_rank}, commutant dimension {report.commutant_dim}",
            f"  annihilators: walled {report.annihilator_dim}, all-down {report.hecke_annihilator_dim}",
            f"  faithful: {report.faithful}",
        ]
        for claim in report.claims:
            human_lines.append(f"  [{'ok' if claim.holds else 'FAIL'}] {claim.name}: {claim.detail}")
        _emit(args, report.to_json(), "\n".join(human_lines))
        return 0 if report.all_pass else 1
    if args.suite == "skein":
        data = _run_skein_suite(args.n, args.seed, args.count)
    elif args.suite == "hecke":
        data = _run_hecke_suite(args.n, args.m)
    elif args.suite == "linking":
        data = _run_linking_suite(args.n, args.seed, args.count)
    else:
        return _cmd_verify_all(args)
    _emit(args, data, _human_checks(data))
    return 0 if data["allPass"] else 1


def _cmd_verify_all(args: argparse.Namespace) -> int:
    suites = [
        _run_skein_suite(2, args.seed, args.count),
        _run_hecke_suite(3, 3),
        _run_linking_suite(2, args.seed, args.count),
    ]
    for r, s in ((1, 1), (2, 1), (1, 2)):
        report = presentation_check(r, s, 2)
        suites.append(
            {
                "suite": "presentation",
                "r": r,
                "s": s,
                "n": 2,
                "allPass": report.all_pass,
                "checks": [
                    {"name": res.name, "holds": res.holds, "detail": f"{res.lhs} = {res.rhs}"}
                    for res in report.results
                    if res.applicable
                ],
            }
        )
    for n, r, s in ((2, 1, 1), (2, 2, 1)):
        report = verify_schur_weyl(n, r, s, Fraction(5, 3))
        data = _strip_timings(report.to_json())
        data["suite"] = "duality"
        data["checks"] = [
            {"name": claim["name"], "holds": claim["holds"], "detail": claim["detail"]}
            for claim in data.pop("claims")
        ]
        suites.append(data)
    overall = {
        "suite": "all",
        "seed": args.seed,
        "allPass": all(s["allPass"] for s in suites),
        "suites": suites,
    }
    cap = _thread_cap()
    if cap is not None:
        overall["threadCap"] = cap
    human = [f"verify all: {'all pass' if overall['allPass'] else 'FAILED'} (seed {args.seed})"]
    for suite in suites:
        title = suite["suite"]
        params = ", ".join(
            f"{key}={suite[key]}" for key in ("n", "r", "s", "m", "q0") if key in suite
        )
        mark = "ok" if suite["allPass"] else "FAIL"
        human.append(f"  [{mark}] {title}" + (f" ({params})" if params else ""))
    _emit(args, overall, "\n".join(human))
    return 0 if overall["allPass"] else 1


# -- argument plumbing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walled-tangles",
        description="Exact computations in the walled tangle algebra and its tensor-space representation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True):
        if n:
            p.add_argument("--n", type=int, required=True, help="labels run over 1..n")
        p.add_argument("--format", choices=("human", "json"), default="json")

    p = sub.add_parser("normalize", help="normal form of a tangle word")
    common(p)
    p.add_argument("--type", required=True, help="boundary type, e.g. 'vv^|v^v'")
    p.add_argument("--word", default="", help="slice word, e.g. 'X+(1) U(2)'")
    p.add_argument("--word-file", help="read the slice word from a UTF-8 file")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("multiply", help="product of two tangle words")
    common(p)
    p.add_argument("--left", required=True, help="first factor as 'TYPE : WORD'")
    p.add_argument("--right", required=True, help="second factor as 'TYPE : WORD'")
    p.set_defaults(func=_cmd_multiply)

    p = sub.add_parser("matrix", help="operator matrix of a word or generator list")
    common(p)
    p.add_argument("--type", help="boundary type of the word")
    p.add_argument("--word", default="", help="slice word")
    p.add_argument("--word-file", help="read the slice word from a UTF-8 file")
    p.add_argument("--generators", help="generator tokens, e.g. 'E(1) K(2)'")
    p.add_argument("--boundary", help="tensor boundary for --generators, e.g. 'vv^'")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("structure-constants", help="all pairwise basis products")
    common(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_cmd_structure_constants)

    p = sub.add_parser("hecke-to-walled", help="carry an all-down word across the wall")
    common(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--word", default="", help="slice word on r+s down strands")
    p.add_argument("--word-file", help="read the slice word from a UTF-8 file")
    p.set_defaults(func=_cmd_hecke_to_walled)

    p = sub.add_parser("flip", help="classical flip of a permutation word's matching")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--word", default="", help="slice word on r+s down strands")
    p.add_argument("--word-file", help="read the slice word from a UTF-8 file")
    p.add_argument("--format", choices=("human", "json"), default="json")
    p.set_defaults(func=_cmd_flip)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("skein", "hecke", "presentation", "linking", "duality", "all"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--m", type=int, default=3, help="largest strand count for the hecke suite")
    p.add_argument("--q0", default="5/3", help="exact rational specialization point")
    p.add_argument("--seed", type=int, default=7, help="seed for the sampled suites, echoed in the report")
    p.add_argument("--count", type=int, default=25, help="sample count for the sampled suites")
    p.add_argument("--format", choices=("human", "json"), default="json")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DslError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ResourceLimitError as err:
        print(f"resource limit: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
