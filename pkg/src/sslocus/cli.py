"""Command line interface.

Exit codes: 0 success, 1 a verified invariant failed, 2 usage or domain
error, 3 internal consistency error.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .arithmetic import (
    ConsistencyError,
    DomainError,
    fundamental_discriminant,
    is_prime,
    is_squarefree,
    primes_between,
    real_quadratic_character,
)
from .dieudonne import fermat_locus
from .sigmacount import Branch, sigma2_count
from .specialvalues import (
    ClassNumberCache,
    bernoulli_b2_definitional,
    bernoulli_b2_even,
    class_number_analytic,
    class_number_field,
)
from . import verify

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2, 3
CACHE_ENV = "SS_CACHE_PATH"
TABLE_MAX = 10**6

FIELDS = ("p", "branch", "B2_num", "B2_den", "h_p", "h_2p", "h_3p", "leg2p", "sigma2")


@dataclass(frozen=True)
class OutputRecord:
    p: int
    branch: str
    B2_num: int
    B2_den: int
    h_p: int
    h_2p: int
    h_3p: int
    leg2p: int
    sigma2: int

    @classmethod
    def from_breakdown(cls, b):
        ing = b.ingredients
        if ing is None:
            return cls(b.p, b.branch.value, None, None, None, None, None, None, b.total)
        return cls(
            b.p,
            b.branch.value,
            ing.b2.numerator,
            ing.b2.denominator,
            ing.h_p,
            ing.h_2p,
            ing.h_3p,
            ing.leg2p,
            b.total,
        )

    def csv_row(self):
        return ["" if v is None else str(v) for v in asdict(self).values()]

    def json_line(self):
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_csv_row(cls, row):
        vals = dict(zip(FIELDS, row))
        return cls(**{k: (v if k == "branch" else (int(v) if v != "" else None)) for k, v in vals.items()})

    @classmethod
    def from_json_line(cls, line):
        return cls(**json.loads(line))


class UsageError(Exception):
    pass


def _open_cache(args):
    path = getattr(args, "cache", None) or os.environ.get(CACHE_ENV) or None
    return ClassNumberCache(path)


def _close_cache(cache):
    if cache.path is not None and cache.dirty:
        cache.save()


def _require_prime(p):
    if p < 0 or not is_prime(p):
        raise UsageError(f"{p} is not prime")


def render_records(records, fmt):
    if fmt == "json-lines":
        return "".join(r.json_line() + "\n" for r in records)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _render_count_text(b):
    lines = [f"p = {b.p}"]
    if b.branch is Branch.SPECIAL:
        lines.append("branch: special value (p in {2, 3, 5})")
    else:
        ing = b.ingredients
        label = "p = 1 mod 4" if b.branch is Branch.P_1_MOD_4 else "p = 3 mod 4"
        lines += [
            f"branch: {b.branch.value} ({label})",
            f"B_2,chi       = {ing.b2}",
            f"h(sqrt(-p))   = {ing.h_p}",
            f"h(sqrt(-2p))  = {ing.h_2p}",
            f"h(sqrt(-3p))  = {ing.h_3p}",
            f"(2/p)         = {ing.leg2p}",
            "terms         = " + " + ".join(str(t) for t in b.terms),
        ]
    lines.append(f"|Sigma_2(F_p)| = {b.total}")
    return "\n".join(lines) + "\n"


def cmd_count(args, out):
    _require_prime(args.p)
    cache = _open_cache(args)
    b = sigma2_count(args.p, cache)
    _close_cache(cache)
    if args.format == "text":
        out.write(_render_count_text(b))
    else:
        out.write(render_records([OutputRecord.from_breakdown(b)], args.format))
    return EXIT_OK


def _table_chunk(primes, seed_entries):
    cache = ClassNumberCache()
    cache.update(seed_entries)
    records = [OutputRecord.from_breakdown(sigma2_count(p, cache)) for p in primes]
    return records, cache.items()


def table_records(lo, hi, jobs=1, cache=None):
    """OutputRecords for every prime in [lo, hi], in increasing order."""
    cache = cache if cache is not None else ClassNumberCache()
    primes = primes_between(lo, hi)
    if jobs <= 1 or len(primes) < 2:
        records, entries = _table_chunk(primes, cache.items())
        cache.update(entries)
        return records
    # interleave so that each worker gets a mix of small and large primes
    chunks = [primes[i::jobs * 4] for i in range(jobs * 4)]
    chunks = [c for c in chunks if c]
    seed = cache.items()
    by_prime = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for records, entries in pool.map(_table_chunk, chunks, [seed] * len(chunks)):
            cache.update(entries)
            for r in records:
                by_prime[r.p] = r
    return [by_prime[p] for p in primes]


def cmd_table(args, out):
    lo, hi = getattr(args, "from"), args.to
    if not (2 <= lo <= hi <= TABLE_MAX):
        raise UsageError(f"need 2 <= from <= to <= {TABLE_MAX}, got {lo}..{hi}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    cache = _open_cache(args)
    records = table_records(lo, hi, args.jobs, cache)
    _close_cache(cache)
    out.write(render_records(records, "json-lines" if args.format == "json-lines" else "csv"))
    return EXIT_OK


def cmd_classnumber(args, out):
    m = args.m
    if m < 1 or not is_squarefree(m):
        raise UsageError(f"-m must be a squarefree positive integer, got {m}")
    cache = _open_cache(args)
    h = class_number_field(m, cache)
    _close_cache(cache)
    D = fundamental_discriminant(-m)
    if D < -4:
        ha = class_number_analytic(D)
        out.write(f"D = {D}: h = {h} (forms) / {ha} (analytic)\n")
        if ha != h:
            out.write("error: the two methods disagree\n")
            return EXIT_CONSISTENCY
    else:
        out.write(f"D = {D}: h = {h} (forms) / n/a (analytic needs D < -4)\n")
    return EXIT_OK


def cmd_bernoulli(args, out):
    _require_prime(args.p)
    chi = real_quadratic_character(args.p)
    b1, b2 = bernoulli_b2_definitional(chi), bernoulli_b2_even(chi)
    out.write(f"D = {chi.discriminant}: B_2,chi = {b1} (definitional) / {b2} (even-character sum)\n")
    if b1 != b2:
        out.write("error: the two methods disagree\n")
        return EXIT_CONSISTENCY
    return EXIT_OK


def cmd_fermat(args, out):
    _require_prime(args.p)
    if args.e not in (1, 2):
        raise UsageError("--e must be 1 or 2")
    pts = fermat_locus(args.p, args.e)
    out.write(", ".join(str(pt) for pt in pts) + "\n" if pts else "(empty)\n")
    return EXIT_OK


def cmd_verify(args, out):
    if args.pmax < 7:
        raise UsageError("--pmax must be at least 7")
    cache = _open_cache(args)
    checks = verify.run(args.scope, args.pmax, cache)
    _close_cache(cache)
    failed = None
    for chk in checks:
        status = "PASS" if chk.ok else "FAIL"
        out.write(f"{status}  {chk.name}  ({chk.checked} checked)\n")
        if not chk.ok and failed is None:
            failed = chk
    if failed is not None:
        out.write(f"first counterexample: {failed.counterexample}\n")
        return EXIT_INVARIANT
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", metavar="PATH", help=f"class number cache file (default: ${CACHE_ENV})")

    parser = argparse.ArgumentParser(
        prog="sslocus",
        description="Counts of F_p-rational components of the genus-2 supersingular locus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="|Sigma_2(F_p)| with its term breakdown")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv", "json-lines"), default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="one row per prime in a range")
    p.add_argument("--from", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classnumber", parents=[common], help="h(Q(sqrt(-m))) by both methods")
    p.add_argument("-m", "--m", type=int, required=True)
    p.set_defaults(func=cmd_classnumber)

    p = sub.add_parser("bernoulli", parents=[common], help="B_2,chi for chi of Q(sqrt(p))")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("fermat", parents=[common], help="points of a^(p+1) + b^(p+1) = 0 on P^1(F_p^e)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_fermat)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--scope", choices=("all",) + verify.SCOPES, default="all")
    p.add_argument("--pmax", type=int, default=200)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
