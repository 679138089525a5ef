"""Command-line interface.

One subcommand per calculator; every command is deterministic (identical
argv gives byte-identical stdout, for any --threads value).  Exit codes:
0 success, 2 usage error, 3 domain error (bad mathematical input), 4
internal assertion failure.

Class arguments are written either as two integers `n m`, as a single
comma pair `n,m`, or symbolically over the letters a, b, g (or the Greek
equivalents) standing for the three distinguished classes:

    class  ::= "0" | term (("+" | "-") term)*
    term   ::= [integer] symbol
    symbol ::= "a" | "b" | "g"

so `2a+b`, `-a` and `b+g` are all valid.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import birgraph as bg
from . import certifier, chern
from .catalog import catalog_version, entries, lookup
from .cubic import (
    KuClass,
    LiftedClass,
    chi,
    class_delta_sin_sq,
    fano_fiber_check,
    moduli_dim,
    moduli_info,
    parse_class,
    phase_gap_class,
    render_class,
    sextant_index,
    strata,
    strata_beta,
    ext_locus_codim,
)
from .errors import DomainError, InternalError
from .euler_forms import EulerForm, SerreIsometry, classify_form, exceptional_vectors, n_chi
from .lattice import (
    LatticeVector,
    cross,
    delta_sin_sq,
    is_primitive,
    norm_sq,
    pick_decompose,
    pick_oracle,
    triangle_points,
    triangle_points_oracle,
)

USAGE_ERROR, DOMAIN_ERROR, INTERNAL_ERROR = 2, 3, 4


class UsageError(Exception):
    pass


def _parse_class_token(token: str) -> KuClass:
    if "," in token:
        parts = token.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad coordinate pair {token!r}")
        try:
            return KuClass(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return parse_class(token)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_class_tokens(tokens: list[str]) -> KuClass:
    if len(tokens) == 2:
        try:
            return KuClass(int(tokens[0]), int(tokens[1]))
        except ValueError:
            raise UsageError(f"expected two integers, got {tokens!r}") from None
    if len(tokens) == 1:
        return _parse_class_token(tokens[0])
    raise UsageError(f"expected a class (one symbolic token or two integers), got {tokens!r}")


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)


def _matrix_option(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(f"expected four comma-separated integers, got {text!r}")
    try:
        a, b, c, d = (int(p) for p in parts)
    except ValueError:
        raise UsageError(f"matrix entries must be integers: {text!r}") from None
    return ((a, b), (c, d))


# ---------------------------------------------------------------- commands


def cmd_pairing(args) -> int:
    v = _parse_class_token(args.left)
    w = _parse_class_token(args.right)
    value = chi(v, w)
    hrr = chern.euler_pairing(chern.from_ku_basis(v), chern.from_ku_basis(w))
    if hrr != value:
        raise InternalError(f"lattice pairing {value} disagrees with Riemann-Roch {hrr}")
    _emit(
        args,
        {"v": [v.n, v.m], "w": [w.n, w.m], "chi": value},
        [f"chi({render_class(v)}, {render_class(w)}) = {value}"],
    )
    return 0


def cmd_pick(args) -> int:
    v = LatticeVector(args.a, args.b)
    v_minus, v_plus = pick_decompose(v)
    dss = delta_sin_sq(v)
    _emit(
        args,
        {
            "v": [v.a, v.b],
            "v_minus": [v_minus.a, v_minus.b],
            "v_plus": [v_plus.a, v_plus.b],
            "delta_sin_sq": str(dss),
        },
        [f"v- = {v_minus}, v+ = {v_plus}", f"delta_sin_sq = {dss}"],
    )
    return 0


def cmd_classify_form(args) -> int:
    q = EulerForm.from_matrix(_matrix_option(args.matrix))
    d = SerreIsometry.from_matrix(_matrix_option(args.serre))
    form = classify_form(q, d)
    exc = exceptional_vectors(form)
    threshold = n_chi(form)
    payload = {
        "family": form.family,
        "n": form.n,
        "basis_change": [list(r) for r in form.basis_change],
        "canonical_matrix": [list(r) for r in form.canonical.matrix()],
        "symmetric_degenerate": form.symmetric_degenerate,
        "exceptional_vectors": [[u.a, u.b] for u in exc],
        "n_chi": threshold,
    }
    lines = [
        f"family = {form.family}, n = {form.n}",
        f"basis change (columns) = {form.basis_change}",
        f"canonical matrix = {form.canonical.matrix()}",
        f"exceptional vectors (canonical basis) = {[str(u) for u in exc]}",
        f"n_chi = {threshold}",
    ]
    if form.symmetric_degenerate:
        lines.insert(1, "symmetric form: canonical matrix is the symmetrized -n*I")
    _emit(args, payload, lines)
    return 0


def _entry_lines(entry) -> list[str]:
    lines = [
        f"({entry.index},{entry.degree}) {entry.name}",
        f"  basis: {entry.basis}",
        f"  euler matrix: {entry.euler_matrix.matrix()}",
        f"  serre: {entry.serre.matrix()}"
        + (" (reconstructed order-4 isometry)" if entry.reconstructed_serre else ""),
        f"  serre relation: {entry.serre_relation or '-'}",
        f"  gldim {'<' if entry.gldim_strict else '<='} {entry.gldim_bound}",
        f"  family: {entry.family or '-'}"
        + (f", curve genus {entry.curve_genus}" if entry.curve_genus else ""),
        f"  n_chi: {entry.n_chi if entry.n_chi is not None else '-'}",
        f"  base: {entry.base_description}",
        f"  certifiable: {'yes' if entry.certifiable else 'no'}",
    ]
    for note in entry.notes:
        lines.append(f"  note: {note}")
    return lines


def cmd_catalog(args) -> int:
    if args.entry:
        try:
            index, degree = (int(x) for x in args.entry.split(","))
        except ValueError:
            raise UsageError("entry must be given as index,degree") from None
        chosen = [lookup(index, degree)]
    else:
        chosen = list(entries())
    if args.format == "json":
        payload = {
            "version": catalog_version(),
            "entries": [
                {
                    "index": e.index,
                    "degree": e.degree,
                    "name": e.name,
                    "euler_matrix": [list(r) for r in e.euler_matrix.matrix()],
                    "serre": [list(r) for r in e.serre.matrix()],
                    "serre_relation": e.serre_relation,
                    "gldim_bound": str(e.gldim_bound),
                    "gldim_strict": e.gldim_strict,
                    "family": e.family,
                    "n_chi": e.n_chi,
                    "base": e.base_description,
                    "curve_genus": e.curve_genus,
                    "certifiable": e.certifiable,
                }
                for e in chosen
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"catalog version {catalog_version()}")
        for e in chosen:
            print("\n".join(_entry_lines(e)))
    return 0


def _entry_from_arg(text: str):
    try:
        index, degree = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("entry must be given as index,degree") from None
    return lookup(index, degree)


def cmd_certify(args) -> int:
    entry = _entry_from_arg(args.entry)
    cert = certifier.certify(entry, LatticeVector(args.a, args.b))
    check = certifier.verify(cert, entry)
    if not check:
        raise InternalError("; ".join(check.failures))
    if args.format == "dot":
        print(certifier.cert_to_dot(cert))
    else:
        print(certifier.cert_to_text(cert))
        print("verified: ok")
    return 0


def cmd_certify_all(args) -> int:
    entry = _entry_from_arg(args.entry)
    report = certifier.certify_all(entry, args.norm_bound, threads=args.threads)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "entry": list(report.entry_label),
                    "norm_bound": report.norm_bound,
                    "total": report.total,
                    "certified": report.certified,
                    "max_depth": report.max_depth,
                    "base_reasons": report.base_reasons,
                    "split_nodes": report.split_nodes,
                    "failures": report.failures,
                },
                sort_keys=True,
            )
        )
    else:
        print("\n".join(report.lines()))
    return 0 if not report.failures else DOMAIN_ERROR


def cmd_moduli_info(args) -> int:
    v = _parse_class_tokens(args.cls)
    info = moduli_info(v)
    payload = {
        "class": [v.n, v.m],
        "rendered": render_class(v),
        "primitive": info.primitive,
        "chi_self": info.chi_self,
        "dim": info.dim,
        "normal_form": [info.normal_form.n, info.normal_form.m],
        "rotations": info.rotations,
        "sign": info.sign,
        "labels": list(info.labels),
        "b1": info.b1,
        "b2": info.b2,
        "aj_fiber_dim": info.aj_fiber_dim,
        "mrc_quotient": info.mrc_quotient,
        "fano_fiber_passes": info.fano_fiber.passes if info.fano_fiber else None,
    }
    lines = [
        f"class {render_class(v)} = ({v.n},{v.m})",
        f"primitive: {'yes' if info.primitive else 'no'}",
        f"chi(v,v) = {info.chi_self}, dim = {info.dim}",
        f"normal form {render_class(info.normal_form)} "
        f"(sign {info.sign:+d}, rotations {info.rotations})",
    ]
    for label in info.labels:
        lines.append(f"label: {label}")
    if info.b1 is not None:
        lines.append(f"b1 = {info.b1}, b2 = {info.b2}")
        lines.append(f"second-Chern-class fiber dimension = {info.aj_fiber_dim}")
        lines.append(f"mrc quotient: {info.mrc_quotient}")
        ff = info.fano_fiber
        lines.append(
            f"fano fiber check: {'passes' if ff.passes else 'FAILS'} "
            f"(chi_pm={ff.chi_pm}, chi_mp={ff.chi_mp}, degree={ff.degree}, r={ff.r})"
        )
    _emit(args, payload, lines)
    return 0


def cmd_strata(args) -> int:
    v = _parse_class_tokens(args.cls)
    if v.n == 0 and v.m >= 2:
        s = strata_beta(v.m)
        payload = {"class": [v.n, v.m], "strata": [
            {"v1": [s.v1.n, s.v1.m], "v2": [s.v2.n, s.v2.m], "codim": s.codim,
             "dominant": s.dominant}
        ]}
        lines = [
            f"strata of {render_class(v)}:",
            f"  ({render_class(s.v1)}, {render_class(s.v2)}) codim {s.codim} dominant",
        ]
        _emit(args, payload, lines)
        return 0
    result = strata(v)
    payload = {
        "class": [v.n, v.m],
        "strata": [
            {"v1": [s.v1.n, s.v1.m], "v2": [s.v2.n, s.v2.m], "codim": s.codim,
             "dominant": s.dominant}
            for s in result
        ],
    }
    lines = [f"strata of {render_class(v)}:"]
    for s in result:
        mark = " dominant" if s.dominant else ""
        lines.append(f"  ({render_class(s.v1)}, {render_class(s.v2)}) codim {s.codim}{mark}")
    _emit(args, payload, lines)
    return 0


def cmd_fano_check(args) -> int:
    v = _parse_class_tokens(args.cls)
    report = fano_fiber_check(v)
    payload = {
        "class": [v.n, v.m],
        "v_plus": [report.v_plus.n, report.v_plus.m],
        "v_minus": [report.v_minus.n, report.v_minus.m],
        "chi_pm": report.chi_pm,
        "chi_mp": report.chi_mp,
        "degree": report.degree,
        "r": report.r,
        "passes": report.passes,
    }
    lines = [
        f"v = {render_class(v)}: v+ = {render_class(report.v_plus)}, "
        f"v- = {render_class(report.v_minus)}",
        f"chi(v+,v-) = {report.chi_pm}, chi(v-,v+) = {report.chi_mp}",
        f"canonical degree = {report.degree}, r = {report.r}",
        f"passes: {'yes' if report.passes else 'no'}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_phase_gap(args) -> int:
    v = _parse_class_token(args.left)
    w = _parse_class_token(args.right)
    lv = LiftedClass(v, sextant_index(v) + 6 * args.branch_v)
    lw = LiftedClass(w, sextant_index(w) + 6 * args.branch_w)
    gap = phase_gap_class(lv, lw)
    payload = {
        "v": [v.n, v.m],
        "w": [w.n, w.m],
        "branch_v": lv.branch,
        "branch_w": lw.branch,
        "kind": gap.kind,
        "q": gap.q,
        "gap": gap.describe(),
        "chi_sign_zone": gap.chi_sign_zone(),
        "chi": chi(v, w),
    }
    lines = [
        f"phase({render_class(w)}) - phase({render_class(v)}) = {gap.describe()}",
        f"chi sign zone: {gap.chi_sign_zone()} (chi = {chi(v, w)})",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_ext_locus(args) -> int:
    v = _parse_class_token(args.left)
    w = _parse_class_token(args.right)
    report = ext_locus_codim(v, w)
    payload = {
        "v": [v.n, v.m],
        "w": [w.n, w.m],
        "codim": report.codim,
        "valid": report.valid,
        "small_gap": report.small_gap,
        "reasons": list(report.reasons),
    }
    lines = [
        f"ext locus of ({render_class(v)}, {render_class(w)}): codim {report.codim}",
        f"hypotheses valid: {'yes' if report.valid else 'no'}; "
        f"small gap: {'yes' if report.small_gap else 'no'}",
    ]
    lines.extend(f"  {r}" for r in report.reasons)
    _emit(args, payload, lines)
    return 0


def cmd_hilbert_map(args) -> int:
    if args.table:
        rows = []
        for d, g, m, expected in chern.HILBERT_TABLE:
            got = chern.hilbert_character(d, g, m)
            if got != expected:
                raise InternalError(f"table row ({d},{g},{m}) computed {got}")
            rows.append((d, g, m, got))
        if args.format == "json":
            print(
                json.dumps(
                    {"rows": [
                        {"d": d, "g": g, "m": m, "class": [v.n, v.m],
                         "rendered": render_class(v)}
                        for d, g, m, v in rows
                    ]},
                    sort_keys=True,
                )
            )
        else:
            print("d g m -> class")
            for d, g, m, v in rows:
                print(f"{d} {g} {m} -> {render_class(v)}")
        return 0
    if args.d is None or args.g is None or args.m is None:
        raise UsageError("hilbert-map needs <d> <g> <m> (or --table)")
    v = chern.hilbert_character(args.d, args.g, args.m)
    _emit(
        args,
        {"d": args.d, "g": args.g, "m": args.m, "class": [v.n, v.m],
         "rendered": render_class(v)},
        [render_class(v)],
    )
    return 0


def cmd_birgraph(args) -> int:
    graph = bg.build_graph(args.sum_bound)
    if args.format == "dot":
        print(bg.graph_to_dot(graph))
    elif args.format == "json":
        print(json.dumps(bg.graph_to_json(graph), sort_keys=True))
    else:
        connected, tree = bg.check_connected(args.sum_bound)
        print(f"nodes: {len(graph.nodes)}, edges: {len(graph.edges)}")
        print(f"connected: {'yes' if connected else 'NO'}")
        print(f"spanning tree edges: {len(tree)}")
    return 0


_HEX_ROW = 2  # integer stand-in for sqrt(3) row spacing (x already doubled)
_PX = 24


def _render_svg(nmin: int, nmax: int, mmin: int, mmax: int, mode: str) -> str:
    pts = []
    for n in range(nmin, nmax + 1):
        for m in range(mmin, mmax + 1):
            if mode == "hexagonal":
                x, y = 2 * n + m, m * _HEX_ROW
            else:
                x, y = 2 * n, 2 * m
            pts.append((x, y, n, m))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = 2
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    width = (x1 - x0) * _PX
    height = (y1 - y0) * _PX

    def sx(x: int) -> int:
        return (x - x0) * _PX

    def sy(y: int) -> int:
        return height - (y - y0) * _PX

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # distinguished rays through the origin, when visible
    if nmin <= 0 <= nmax and mmin <= 0 <= mmax:
        rays = [(1, 0), (0, 1), (-1, 1)] if mode == "hexagonal" else [(1, 0), (0, 1)]
        for rn, rm in rays:
            k = 0
            while True:
                k += 1
                n, m = k * rn, k * rm
                if not (nmin <= n <= nmax and mmin <= m <= mmax):
                    k -= 1
                    break
            if k == 0:
                continue
            if mode == "hexagonal":
                ex, ey = 2 * k * rn + k * rm, k * rm * _HEX_ROW
            else:
                ex, ey = 2 * k * rn, 2 * k * rm
            out.append(
                f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(ex)}" y2="{sy(ey)}" '
                'stroke="lightgray" stroke-width="1"/>'
            )
    for x, y, n, m in pts:
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="3" fill="black"/>')
        cls = KuClass(n, m)
        if not cls.is_zero():
            info = moduli_info(cls)
            if info.labels:
                out.append(
                    f'<text x="{sx(x) + 5}" y="{sy(y) - 5}" font-size="10">'
                    f"{render_class(cls)}: {info.labels[0].split(';')[0]}</text>"
                )
    out.append("</svg>")
    return "\n".join(out)


def cmd_render_lattice(args) -> int:
    parts = args.window.split(",")
    if len(parts) == 1:
        try:
            r = int(parts[0])
        except ValueError:
            raise UsageError("window must be R or nmin,nmax,mmin,mmax") from None
        nmin, nmax, mmin, mmax = -r, r, -r, r
    elif len(parts) == 4:
        try:
            nmin, nmax, mmin, mmax = (int(p) for p in parts)
        except ValueError:
            raise UsageError("window bounds must be integers") from None
    else:
        raise UsageError("window must be R or nmin,nmax,mmin,mmax")
    if nmin > nmax or mmin > mmax:
        raise UsageError("empty window")
    print(_render_svg(nmin, nmax, mmin, mmax, args.mode))
    return 0


def _oracle_pick(norm_bound: int, threads: int) -> list[str]:
    from math import isqrt

    vectors = []
    r = isqrt(norm_bound)
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            v = LatticeVector(a, b)
            if 1 < norm_sq(v) <= norm_bound and is_primitive(v):
                vectors.append(v)
    vectors.sort()

    def check(v: LatticeVector) -> bool:
        return pick_decompose(v) == pick_oracle(v)

    if threads <= 1:
        oks = [check(v) for v in vectors]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            oks = list(pool.map(check, vectors, chunksize=64))
    bad = [v for v, ok in zip(vectors, oks) if not ok]
    lines = [f"pick oracle: {len(vectors)} primitive vectors, norm_sq <= {norm_bound}"]
    lines.append("agreement: OK" if not bad else f"DISAGREEMENTS: {[str(v) for v in bad]}")
    return lines


def _oracle_triangle() -> list[str]:
    pairs = checked = 0
    bad = []
    rng = range(-4, 5)
    for va in rng:
        for vb in rng:
            for wa in rng:
                for wb in rng:
                    v = LatticeVector(va, vb)
                    w = LatticeVector(wa, wb)
                    if cross(v, w) <= 0:
                        continue
                    pairs += 1
                    if triangle_points(v, w) != triangle_points_oracle(v, w):
                        bad.append((v, w))
                    checked += 1
    lines = [f"triangle oracle: {checked} oriented pairs with coordinates <= 4"]
    lines.append("agreement: OK" if not bad else f"DISAGREEMENTS: {bad}")
    return lines


def _oracle_exceptional() -> list[str]:
    from .euler_forms import FAMILY_NAMES, family_matrix, serre_from_form

    lines = []
    ok = True
    for family in FAMILY_NAMES:
        m = EulerForm.from_matrix(family_matrix(family, 1))
        d_m = serre_from_form(m)
        form = classify_form(m, d_m)
        exc = exceptional_vectors(form)
        scan = _direct_exceptional_scan(form.canonical, 400)
        agree = set(exc) == set(scan)
        ok = ok and agree
        lines.append(
            f"{family} n=1: exceptional {[str(u) for u in exc]}, n_chi = {n_chi(form)}"
            + ("" if agree else f"  MISMATCH scan={[str(u) for u in scan]}")
        )
    lines.append("agreement: OK" if ok else "DISAGREEMENTS above")
    return lines


def _direct_exceptional_scan(q: EulerForm, norm_bound: int) -> list[LatticeVector]:
    from math import isqrt

    out = []
    r = isqrt(norm_bound)
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            v = LatticeVector(a, b)
            if norm_sq(v) <= 1 or norm_sq(v) > norm_bound or not is_primitive(v):
                continue
            vm, vp = pick_decompose(v)
            if q.pair(vp, vm) >= 0:
                out.append(v)
    out.sort()
    return out


def _oracle_tree(sum_bound: int) -> list[str]:
    built = bg.build_graph(sum_bound)
    regen = bg.build_graph_oracle(sum_bound)
    same = built.nodes == regen.nodes and built.edges == regen.edges
    connected, _ = bg.check_connected(sum_bound)
    witness_ok = True
    for m in range(6, 501):
        if m == 8:
            continue
        upper, lower = bg.prime_witness(m)
        if not (bg.in_node_set(*upper) and bg.in_node_set(*lower)):
            witness_ok = False
    lines = [
        f"tree oracle: sum_bound {sum_bound}, nodes {len(built.nodes)}, "
        f"edges {len(built.edges)}",
        f"rule-free regeneration agrees: {'yes' if same else 'NO'}",
        f"connected: {'yes' if connected else 'NO'}",
        f"prime witnesses 6..500 valid: {'yes' if witness_ok else 'NO'}",
    ]
    lines.append(
        "agreement: OK" if (same and connected and witness_ok) else "DISAGREEMENTS above"
    )
    return lines


def cmd_oracle(args) -> int:
    if args.suite == "pick":
        lines = _oracle_pick(args.norm_bound, args.threads)
    elif args.suite == "triangle":
        lines = _oracle_triangle()
    elif args.suite == "exceptional":
        lines = _oracle_exceptional()
    elif args.suite == "tree":
        lines = _oracle_tree(min(args.norm_bound, 100) if args.norm_bound else 100)
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    for line in lines:
        print(line)
    return 0 if any("agreement: OK" in line for line in lines) else DOMAIN_ERROR


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kunum",
        description="exact lattice calculus for rank-2 Kuznetsov components",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("pairing", help="Euler pairing of two classes")
    p.add_argument("left")
    p.add_argument("right")
    add_format(p)
    p.set_defaults(func=cmd_pairing)

    p = sub.add_parser("pick", help="short-pair decomposition of a lattice vector")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    add_format(p)
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("classify-form", help="canonical family of an Euler form")
    p.add_argument("--matrix", required=True, help="q11,q12,q21,q22")
    p.add_argument("--serre", required=True, help="d11,d12,d21,d22")
    add_format(p)
    p.set_defaults(func=cmd_classify_form)

    p = sub.add_parser("catalog", help="dump the Fano threefold lattice catalog")
    p.add_argument("entry", nargs="?", help="index,degree")
    add_format(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("certify", help="non-emptiness certificate for one class")
    p.add_argument("entry", help="index,degree")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("certify-all", help="certify every primitive class in a disc")
    p.add_argument("entry", help="index,degree")
    p.add_argument("--norm-bound", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_certify_all)

    p = sub.add_parser("moduli-info", help="report on the moduli space of a class")
    p.add_argument("cls", nargs="+", help="n m, or a symbolic class")
    add_format(p)
    p.set_defaults(func=cmd_moduli_info)

    p = sub.add_parser("strata", help="extension stratification of a class")
    p.add_argument("cls", nargs="+", help="n m, or a symbolic class")
    add_format(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("fano-check", help="canonical-degree check on the short pair")
    p.add_argument("cls", nargs="+", help="n m, or a symbolic class")
    add_format(p)
    p.set_defaults(func=cmd_fano_check)

    p = sub.add_parser("phase-gap", help="exact phase gap of two lifted classes")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--branch-v", type=int, default=0, help="even-shift offset for v")
    p.add_argument("--branch-w", type=int, default=0, help="even-shift offset for w")
    add_format(p)
    p.set_defaults(func=cmd_phase_gap)

    p = sub.add_parser("ext-locus", help="codimension of an extension locus")
    p.add_argument("left")
    p.add_argument("right")
    add_format(p)
    p.set_defaults(func=cmd_ext_locus)

    p = sub.add_parser("hilbert-map", help="class of a projected twisted curve ideal")
    p.add_argument("d", nargs="?", type=int)
    p.add_argument("g", nargs="?", type=int)
    p.add_argument("m", nargs="?", type=int)
    p.add_argument("--table", action="store_true", help="print the full built-in table")
    add_format(p)
    p.set_defaults(func=cmd_hilbert_map)

    p = sub.add_parser("birgraph", help="stable-birationality graph")
    p.add_argument("--sum-bound", type=int, required=True)
    p.add_argument("--format", choices=["text", "dot", "json"], default="text")
    p.set_defaults(func=cmd_birgraph)

    p = sub.add_parser("render-lattice", help="SVG picture of the class lattice")
    p.add_argument("--window", required=True, help="R or nmin,nmax,mmin,mmax")
    p.add_argument("--mode", choices=["hexagonal", "euclidean"], default="hexagonal")
    p.add_argument("--format", choices=["svg"], default="svg")
    p.set_defaults(func=cmd_render_lattice)

    p = sub.add_parser("oracle", help="run brute-force cross-checks")
    p.add_argument("--suite", choices=["pick", "triangle", "exceptional", "tree"],
                   required=True)
    p.add_argument("--norm-bound", type=int, default=400)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
