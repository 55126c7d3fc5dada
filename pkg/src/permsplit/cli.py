"""Batch command-line surface for reproduction runs.

One JSON line per subject on stdout, human diagnostics on stderr.  Exit codes
are the machine contract: 0 success, 1 verification failure or violated
precondition, 2 usage error.  Subjects stream from a file or stdin ("-"), one
per line, either as bare text or as JSON objects carrying "perm"/"arcs".
"""
from __future__ import annotations

import argparse
import json
import sys
from functools import partial
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator

from .constructions import (
    classify_pattern,
    m_prime,
    n_minus,
    n_plus,
    tau_of,
    theorem_certificate,
)
from .envelope import decode_envelope, envelope_of, reduced_envelope
from .errors import PreconditionError, VerificationError
from .matchings import Matching
from .oracle import verify_splitting
from .perms import Permutation, contains, decreasing, enumerate_avoiders, sum_components
from .splitters import (
    SplittingSpec,
    circle_color,
    dilworth_matching_base,
    dilworth_split,
    greedy_three_sum,
    oneplus_split,
)

USAGE_ERROR = 2
FAILURE = 1


def parse_spec(text: str) -> SplittingSpec:
    """Comma-separated parts with optional multiplicity: "2*132,213"."""
    items = [item.strip() for item in text.split(",")]
    if not any(items):
        raise ValueError("empty splitting spec")
    parts = []
    for item in items:
        if not item:
            raise ValueError("empty part in splitting spec")
        mult_text, star, patt_text = item.partition("*")
        if star:
            mult = int(mult_text)
            pattern = Permutation.from_text(patt_text)
        else:
            mult = 1
            pattern = Permutation.from_text(item)
        parts.append((pattern, mult))
    return SplittingSpec(tuple(parts))


def _parse_basis(text: str) -> frozenset[Permutation]:
    return frozenset(Permutation.from_text(tok.strip()) for tok in text.split(","))


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _subject_lines(source: str) -> Iterator[str]:
    stream = sys.stdin if source == "-" else open(source, "r", encoding="utf-8")
    try:
        for line in stream:
            line = line.strip()
            if line:
                yield line
    finally:
        if source != "-":
            stream.close()


def _perm_from_line(line: str) -> Permutation:
    if line.startswith("{"):
        return Permutation.from_text(json.loads(line)["perm"])
    return Permutation.from_text(line)


def _matching_from_line(line: str) -> Matching:
    if line.startswith("{"):
        return Matching.from_text(json.loads(line)["arcs"])
    return Matching.from_text(line)


def _map_stream(fn: Callable, subjects: Iterable, jobs: int) -> Iterator[dict]:
    """Apply fn to each subject; with --jobs > 1 the stream is partitioned
    across processes, results buffered back into input order."""
    if jobs <= 1:
        for s in subjects:
            yield fn(s)
        return
    with Pool(processes=jobs) as pool:
        yield from pool.imap(fn, subjects, chunksize=16)


def _cmd_enumerate(args) -> int:
    basis = _parse_basis(args.avoid)
    if args.count:
        count = sum(1 for _ in enumerate_avoiders(basis, args.n))
        _emit({"n": args.n, "count": count})
        return 0
    for p in enumerate_avoiders(basis, args.n):
        _emit({"perm": p.text()})
    return 0


def _cmd_contains(args) -> int:
    pattern = Permutation.from_text(args.pattern)
    host = Permutation.from_text(args.perm)
    emb = contains(pattern, host)
    _emit(
        {
            "contains": emb is not None,
            "embedding": list(emb.positions) if emb is not None else None,
        }
    )
    return 0


def _split_one(method: str, pattern: Permutation, p: Permutation) -> dict:
    if method == "greedy3":
        comps = sum_components(pattern)
        if len(comps) < 3:
            raise PreconditionError(
                f"greedy3 needs a three-summand pattern, got {pattern.text()}"
            )
        alpha, beta, gamma = comps[0], _dsum(comps[1:-1]), comps[-1]
        cert = greedy_three_sum(alpha, beta, gamma, p)
    elif method == "dilworth":
        n = len(pattern)
        if pattern != decreasing(n):
            raise PreconditionError("dilworth needs a decreasing pattern")
        cert = dilworth_split(n, p)
    elif method == "oneplus":
        comps = sum_components(pattern)
        if len(comps) != 2 or len(comps[0]) != 1:
            raise PreconditionError("oneplus needs a pattern of the form 1⊕σ")
        sigma = comps[1]
        if sigma != decreasing(len(sigma)):
            raise PreconditionError(
                "oneplus only ships a base splitting for decreasing σ"
            )
        n = len(sigma)
        spec = SplittingSpec(((Permutation((2, 1)), n - 1),))
        cert = oneplus_split(sigma, spec, dilworth_matching_base(n), p)
    else:
        cert = theorem_certificate(pattern, p)
    return cert.to_json_dict()


def _dsum(parts):
    from functools import reduce

    from .perms import direct_sum

    return reduce(direct_sum, parts)


def _cmd_split(args) -> int:
    pattern = Permutation.from_text(args.pattern)
    subjects = (_perm_from_line(line) for line in _subject_lines(args.input))
    for result in _map_stream(partial(_split_one, args.method, pattern), subjects, args.jobs):
        _emit(result)
    return 0


def _cmd_verify(args) -> int:
    basis = _parse_basis(getattr(args, "class"))
    spec = parse_spec(args.parts)
    report = verify_splitting(basis, spec, args.max_n)
    _emit(report.to_json_dict())
    return 0 if report.passed else FAILURE


def _cmd_classify(args) -> int:
    _emit(classify_pattern(Permutation.from_text(args.pattern)).to_json_dict())
    return 0


def _color_one(n: int, m: Matching) -> dict:
    coloring = circle_color(m, n)
    return {
        "arcs": m.text(),
        "colors": [coloring[arc] for arc in m.arcs],
        "colors_used": len(set(coloring.values())),
    }


def _cmd_color_matching(args) -> int:
    subjects = (_matching_from_line(line) for line in _subject_lines(args.input))
    for result in _map_stream(partial(_color_one, args.forbid_clique), subjects, args.jobs):
        _emit(result)
    return 0


def _cmd_envelope(args) -> int:
    if args.action == "encode":
        _emit(envelope_of(Permutation.from_text(args.arg)).to_json_dict())
    elif args.action == "decode":
        p = decode_envelope(Matching.from_text(args.arg))
        _emit({"perm": p.text() if p is not None else None})
    else:
        _emit({"arcs": reduced_envelope(Permutation.from_text(args.arg)).text()})
    return 0


def _cmd_construct(args) -> int:
    sigma = Permutation.from_text(args.sigma)
    if args.what == "nplus":
        _emit({"arcs": n_plus(sigma).text()})
    elif args.what == "nminus":
        _emit({"arcs": n_minus(sigma).text()})
    elif args.what == "mprime":
        _emit({"arcs": m_prime(sigma).text()})
    else:
        if args.matching is None:
            raise PreconditionError("construct tau needs --matching")
        _emit({"perm": tau_of(Matching.from_text(args.matching), sigma).text()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permsplit",
        description="Splittings of pattern-avoiding permutation classes.",
    )
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")
    parser.add_argument("--seed", type=int, default=None, help="accepted and ignored")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list Av(basis) at one order")
    p.add_argument("--avoid", required=True, help="comma-separated basis patterns")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("contains", help="pattern containment with embedding")
    p.add_argument("pattern")
    p.add_argument("perm")
    p.set_defaults(fn=_cmd_contains)

    p = sub.add_parser("split", help="color subjects against a splitting")
    p.add_argument("--method", required=True, choices=["greedy3", "dilworth", "oneplus", "theorem"])
    p.add_argument("--pattern", required=True)
    p.add_argument("--input", default="-", help="subject file or - for stdin")
    p.set_defaults(fn=_cmd_split)

    p = sub.add_parser("verify", help="oracle sweep of a claimed splitting")
    p.add_argument("--class", required=True, help="comma-separated class basis")
    p.add_argument("--parts", required=True, help="splitting spec, e.g. 2*132,213")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("classify", help="splittability of Av(pattern)")
    p.add_argument("pattern")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("color-matching", help="properly color chord diagrams")
    p.add_argument("--forbid-clique", type=int, required=True)
    p.add_argument("--input", default="-")
    p.set_defaults(fn=_cmd_color_matching)

    p = sub.add_parser("envelope", help="envelope encode/decode/reduce")
    p.add_argument("action", choices=["encode", "decode", "reduce"])
    p.add_argument("arg")
    p.set_defaults(fn=_cmd_envelope)

    p = sub.add_parser("construct", help="witness constructions")
    p.add_argument("what", choices=["nplus", "nminus", "mprime", "tau"])
    p.add_argument("--sigma", required=True)
    p.add_argument("--matching", default=None)
    p.set_defaults(fn=_cmd_construct)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except BrokenPipeError:
        sys.stderr.close()
        return 0
    except (PreconditionError, VerificationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


def main() -> None:
    raise SystemExit(run())
