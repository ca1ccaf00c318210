"""Command line front end of qsu3.

Usage::

    qsu3 su2-cgc --j1 1/2 --m1 1/2 --j2 1/2 --m2 -1/2 --j 1 --m 0 --q 7/10
    qsu3 su2-6j 1 1 1 1 1 1 --q 2
    qsu3 su2-9j 1/2 1/2 1 1/2 1/2 1 1 1 0 --q 7/10
    qsu3 su3-basis --rep 1,1
    qsu3 su3-cgc --rep1 1,0 --rep2 0,1 --rep3 0,0 --q 7/10 --format json
    qsu3 verify --max-weight 2 --q 7/10

Exit status is 0 on success, 2 for invalid input (bad labels, irrational q
with the exact backend, ...) and 3 when an internal consistency check fails.
Tables computed by ``su3-cgc`` are cached under ``--cache-dir`` (default
``$QSU3_CACHE_DIR``).
"""

import csv
import io
import json
import sys
import time

import click

from . import cache
from .basis import enumerate_basis, hypercharge, irrep, weight
from .cgc import CONVENTION, cgc_table
from .qnum import ConsistencyError, DomainError, QValue, format_exact, half, to_float
from .wigner import cgc_su2q, q6j, q9j

__all__ = ["cli"]

CACHE_ENV = "QSU3_CACHE_DIR"
SU2_CONVENTION = "q-cgc-condon-shortley/braided-9j"


def _hstr(x):
    x = half(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rep(text):
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) != 2:
        raise DomainError(f"irrep must look like 'lam,mu', got {text!r}")
    try:
        return irrep((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise DomainError(f"irrep must look like 'lam,mu', got {text!r}") from exc


def _value_entry(v, **labels):
    return {**labels, "value": format_exact(v), "value_float": to_float(v)}


def _render(payload, fmt):
    """Text for a payload in one of the output formats."""
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    entries = payload["entries"]
    fields = list(entries[0]) if entries else ["value", "value_float"]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "backend"] + fields)
        for e in entries:
            row = [" ".join(v) if isinstance(v, list) else v for v in (e[f] for f in fields)]
            writer.writerow([payload["q"], payload["backend"]] + row)
        return buf.getvalue()
    head = ", ".join(f"{k}={_plain(v)}" for k, v in payload["labels"].items())
    lines = [f"# q={payload['q']} backend={payload['backend']} {head}"]
    for e in entries:
        cols = []
        for f in fields:
            v = e[f]
            if f == "value_float":
                continue
            cols.append("(" + ",".join(v) + ")" if isinstance(v, list) else str(v))
        lines.append("  ".join(cols))
    return "\n".join(lines) + "\n"


def _plain(v):
    return "(" + ",".join(str(x) for x in v) + ")" if isinstance(v, list) else str(v)


def _emit(payload, fmt, output):
    text = _render(payload, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _run(fn):
    """Map library errors to exit codes 2 and 3."""
    try:
        fn()
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except ConsistencyError as exc:
        click.echo(f"consistency error: {exc}", err=True)
        sys.exit(3)


def common(f):
    f = click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["pretty", "json", "csv"]), default="pretty")(f)
    f = click.option("--backend", type=click.Choice(["float", "exact"]), default="exact",
                     help="exact: radical field over Q(q); float: double precision.")(f)
    f = click.option("--q", "q", default="1", help="Deformation parameter, decimal or p/r.")(f)
    f = click.option("--verbose", "-v", is_flag=True, help="Report timing and cache use on stderr.")(f)
    return f


def _qvalue(q, backend):
    return QValue(q, backend)


@click.group()
def cli():
    """Clebsch-Gordan coefficients of U_q(su(2)) and U_q(su(3))."""


@cli.command("su2-cgc")
@click.option("--j1", required=True)
@click.option("--m1", required=True)
@click.option("--j2", required=True)
@click.option("--m2", required=True)
@click.option("--j", "j", required=True)
@click.option("--m", "m", required=True)
@common
def su2_cgc(j1, m1, j2, m2, j, m, q, backend, fmt, output, verbose):
    """One q-Clebsch-Gordan coefficient (j1 m1 j2 m2 | j m)."""
    def go():
        qv = _qvalue(q, backend)
        args = [half(x) for x in (j1, m1, j2, m2, j, m)]
        names = ["j1", "m1", "j2", "m2", "j", "m"]
        labels = {n: _hstr(a) for n, a in zip(names, args)}
        v = cgc_su2q(*args, qv)
        payload = {"q": qv.label(), "backend": backend, "labels": labels,
                   "entries": [_value_entry(v)], "convention": SU2_CONVENTION}
        _emit(payload, fmt, output)
    _run(go)


def _symbol_command(name, count, fn, doc):
    @cli.command(name, help=doc)
    @click.argument("spins", nargs=count)
    @common
    def cmd(spins, q, backend, fmt, output, verbose):
        def go():
            qv = _qvalue(q, backend)
            args = [half(x) for x in spins]
            labels = {"args": [_hstr(a) for a in args]}
            v = fn(*args, qv)
            payload = {"q": qv.label(), "backend": backend, "labels": labels,
                       "entries": [_value_entry(v)], "convention": SU2_CONVENTION}
            _emit(payload, fmt, output)
        _run(go)
    return cmd


_symbol_command("su2-6j", 6, q6j, "q-6j symbol {a b c; d e f}.")
_symbol_command("su2-9j", 9, q9j, "Braided q-9j symbol, rows (j1 j2 j12)(j3 j4 j34)(j13 j24 j).")


@cli.command("su3-basis")
@click.option("--rep", required=True, help="Irrep as lam,mu.")
@common
def su3_basis(rep, q, backend, fmt, output, verbose):
    """Gelfand-Tsetlin labels of an irrep with their weights."""
    def go():
        r = _parse_rep(rep)
        entries = []
        for g in enumerate_basis(r):
            h1, h2 = weight(r, g)
            entries.append({"gamma": g.strings(), "h1": h1, "h2": h2, "y": _frac(hypercharge(r, g.j))})
        payload = {"q": _qvalue(q, backend).label(), "backend": backend,
                   "labels": {"rep": list(r), "dimension": len(entries)},
                   "entries": entries, "convention": "gt-descending"}
        _emit(payload, fmt, output)
    _run(go)


def _frac(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@cli.command("su3-cgc")
@click.option("--rep1", required=True)
@click.option("--rep2", required=True)
@click.option("--rep3", required=True)
@click.option("--cache-dir", envvar=CACHE_ENV, type=click.Path(file_okay=False),
              help=f"Table cache directory (default ${CACHE_ENV}).")
@common
def su3_cgc(rep1, rep2, rep3, cache_dir, q, backend, fmt, output, verbose):
    """Full CGC table of rep3 in rep1 (x) rep2."""
    def go():
        r1, r2, r3 = _parse_rep(rep1), _parse_rep(rep2), _parse_rep(rep3)
        qv = _qvalue(q, backend)
        start = time.perf_counter()
        key = cache.cache_key(r1, r2, r3, qv, CONVENTION)
        payload = None
        if cache_dir:
            try:
                payload = cache.load(cache_dir, key)
            except cache.CacheError as exc:
                click.echo(f"warning: {exc}; recomputing", err=True)
        if payload is None:
            payload = cache.table_payload(cgc_table(r1, r2, r3, qv))
            if cache_dir:
                cache.store(cache_dir, key, payload)
            source = "computed"
        else:
            source = "cache hit"
        if verbose:
            click.echo(f"{source} in {time.perf_counter() - start:.3f} s", err=True)
        _emit(payload, fmt, output)
    _run(go)


@cli.command("verify")
@click.option("--max-weight", type=int, default=2, show_default=True,
              help="Check irreps with lam + mu up to this value.")
@common
def verify(max_weight, q, backend, fmt, output, verbose):
    """Run the invariant suite and print a pass report."""
    from .verify import run_suite

    def go():
        if max_weight < 0:
            raise DomainError("--max-weight must be nonnegative")
        qv = _qvalue(q, backend)
        checks = run_suite(max_weight, qv)
        if fmt == "pretty":
            text = "\n".join(c.line() for c in checks)
            text += f"\n{sum(c.passed for c in checks)}/{len(checks)} checks passed\n"
            if output:
                with open(output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                click.echo(text, nl=False)
        else:
            entries = [{"check": c.name, "passed": c.passed, "deviation": c.deviation} for c in checks]
            _emit({"q": qv.label(), "backend": backend, "labels": {"max_weight": max_weight},
                   "entries": entries, "convention": CONVENTION}, fmt, output)
        if not all(c.passed for c in checks):
            raise ConsistencyError("verification failed")
    _run(go)


def main():
    cli()


if __name__ == "__main__":
    main()
