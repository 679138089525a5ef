"""Certificate-producing non-emptiness checker for moduli of stable objects.

The inductive criterion: a primitive class v outside the catalog base set
splits (uniquely) into its two short pieces v = v_plus + v_minus; when the
pieces pair negatively, chi(v_plus, v_minus) < 0, a stable extension of
objects of the piece classes exists with class v, and the stability
condition's global dimension must leave room for the splitting angle
(automatic whenever gldim < 5/2).  Recursing until every leaf lands in
the base set yields a binary tree whose norms strictly decrease down every
path; that tree is the certificate.  Non-primitive classes k*v0 reduce to
v0 by taking direct sums of stable objects (strictly semistable).

The builder memoizes by vector so the certificate is a shared DAG; the
checker `verify` re-validates every node invariant from scratch, using
only the lattice primitives (cross products, norms), never the builder's
decomposition routine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .catalog import FanoKuEntry
from .errors import ConditionFailed, NonCertifiableEntry, ZeroClass
from .lattice import LatticeVector, cross, norm_sq, pick_decompose

__all__ = [
    "Certificate",
    "certify",
    "certify_all",
    "verify",
    "VerifyResult",
    "CertifyAllReport",
    "CertificateBuilder",
    "cert_depth",
    "cert_to_text",
    "cert_to_dot",
]

_GLDIM_CUTOFF = Fraction(5, 2)


@dataclass(frozen=True)
class Certificate:
    """One node of a non-emptiness certificate.

    kind is one of:
      "base":       leaf; `reason` says which base rule fired
                    (threshold-hit, unit-norm, serre-orbit-of-base)
      "split":      v = v_plus + v_minus with chi(v_plus, v_minus) < 0;
                    children = (certificate for v_plus, for v_minus)
      "direct-sum": v = multiplicity * inner.root, multiplicity >= 2
    """

    entry_label: tuple[int, int]
    root: LatticeVector
    kind: str
    reason: str | None = None
    v_plus: LatticeVector | None = None
    v_minus: LatticeVector | None = None
    chi_cross: int | None = None
    delta_check: Fraction | None = None
    children: tuple["Certificate", ...] = ()
    multiplicity: int | None = None


def _gldim_ok(entry: FanoKuEntry, delta_sin_sq_value: Fraction) -> bool:
    """Exact test of gldim < 3 - delta(v).

    delta(v) <= 1/2 always, so any bound below 5/2 passes; a strict bound
    of exactly 5/2 passes too; a non-strict 5/2 needs delta < 1/2, i.e.
    sin^2(pi*delta) < 1.  Larger bounds never occur in the catalog.
    """
    b = entry.gldim_bound
    if b < _GLDIM_CUTOFF:
        return True
    if b == _GLDIM_CUTOFF:
        return entry.gldim_strict or delta_sin_sq_value < 1
    return False


class CertificateBuilder:
    """Builds certificates for one catalog entry with a shared memo table.

    The memo maps vector -> finished certificate; concurrent insert-or-get
    is safe (nodes are immutable values and rebuilding is idempotent).
    """

    def __init__(self, entry: FanoKuEntry):
        if not entry.certifiable:
            raise NonCertifiableEntry(
                f"entry {entry.label} ({entry.name}) is flagged non-certifiable"
            )
        self.entry = entry
        self._memo: dict[LatticeVector, Certificate] = {}

    def certify(self, v: LatticeVector) -> Certificate:
        if v.is_zero():
            raise ZeroClass("cannot certify the zero class")
        g = gcd(abs(v.a), abs(v.b))
        if g > 1:
            v0 = LatticeVector(v.a // g, v.b // g)
            return Certificate(
                entry_label=self.entry.label,
                root=v,
                kind="direct-sum",
                reason="direct sums of stable objects give strictly semistable ones",
                multiplicity=g,
                children=(self._primitive(v0),),
            )
        return self._primitive(v)

    def _primitive(self, v: LatticeVector) -> Certificate:
        hit = self._memo.get(v)
        if hit is not None:
            return hit
        entry = self.entry
        chi_self = entry.euler_matrix.self_pair(v)
        reason = entry.base_hit(chi_self, unit_norm=norm_sq(v) == 1)
        if reason is not None:
            cert = Certificate(entry.label, v, "base", reason=reason)
            self._memo[v] = cert
            return cert

        v_minus, v_plus = pick_decompose(v)
        dss = Fraction(1, norm_sq(v_plus) * norm_sq(v_minus))
        if not _gldim_ok(entry, dss):
            raise ConditionFailed("b", v, f"gldim guard fails at {v}")
        chi_cross = entry.euler_matrix.pair(v_plus, v_minus)
        if chi_cross >= 0:
            raise ConditionFailed(
                "c", v, f"chi(v_plus, v_minus) = {chi_cross} >= 0 at {v}"
            )
        cert = Certificate(
            entry_label=entry.label,
            root=v,
            kind="split",
            v_plus=v_plus,
            v_minus=v_minus,
            chi_cross=chi_cross,
            delta_check=dss,
            children=(self._primitive(v_plus), self._primitive(v_minus)),
        )
        self._memo[v] = cert
        return cert


def certify(entry: FanoKuEntry, v: LatticeVector) -> Certificate:
    """Certificate that the moduli space of class v is non-empty."""
    return CertificateBuilder(entry).certify(v)


@dataclass
class VerifyResult:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify(cert: Certificate, entry: FanoKuEntry) -> VerifyResult:
    """Re-check every node invariant without re-running the construction.

    Split nodes: sum identity, the three cross conditions, strict norm
    decrease, the stored pairing value and its sign, the stored delta
    value, the gldim guard, and child roots.  Base nodes: the entry's base
    predicate and the stored reason.  Direct sums: multiplicity and
    primitivity of the inner root.
    """
    failures: list[str] = []
    seen: set[int] = set()

    def visit(node: Certificate) -> None:
        if id(node) in seen:
            return
        seen.add(id(node))
        v = node.root
        where = f"{v} [{node.kind}]"
        if node.entry_label != entry.label:
            failures.append(f"{where}: wrong entry label")
        if node.kind == "base":
            chi_self = entry.euler_matrix.self_pair(v)
            expect = entry.base_hit(chi_self, unit_norm=norm_sq(v) == 1)
            if expect is None:
                failures.append(f"{where}: base predicate does not hold")
            elif expect != node.reason:
                failures.append(f"{where}: reason {node.reason!r} != {expect!r}")
        elif node.kind == "split":
            vp, vm = node.v_plus, node.v_minus
            if vp is None or vm is None or len(node.children) != 2:
                failures.append(f"{where}: malformed split")
                return
            if vm + vp != v:
                failures.append(f"{where}: pieces do not sum to the root")
            if not (cross(vm, v) == cross(v, vp) == cross(vm, vp) == 1):
                failures.append(f"{where}: cross conditions fail")
            if not (norm_sq(vp) < norm_sq(v) and norm_sq(vm) < norm_sq(v)):
                failures.append(f"{where}: norms do not strictly decrease")
            cc = entry.euler_matrix.pair(vp, vm)
            if cc != node.chi_cross:
                failures.append(f"{where}: stored pairing {node.chi_cross} != {cc}")
            if cc >= 0:
                failures.append(f"{where}: pairing of the pieces is not negative")
            dss = Fraction(1, norm_sq(vp) * norm_sq(vm))
            if dss != node.delta_check:
                failures.append(f"{where}: stored delta value is wrong")
            if not _gldim_ok(entry, dss):
                failures.append(f"{where}: gldim guard fails")
            if node.children[0].root != vp or node.children[1].root != vm:
                failures.append(f"{where}: child roots do not match the pieces")
            for child in node.children:
                visit(child)
        elif node.kind == "direct-sum":
            k = node.multiplicity
            if k is None or k < 2 or len(node.children) != 1:
                failures.append(f"{where}: malformed direct sum")
                return
            inner = node.children[0].root
            if k * inner != v:
                failures.append(f"{where}: multiplicity does not reproduce the root")
            if gcd(abs(inner.a), abs(inner.b)) != 1:
                failures.append(f"{where}: inner root is not primitive")
            visit(node.children[0])
        else:
            failures.append(f"{where}: unknown node kind")

    visit(cert)
    return VerifyResult(not failures, failures)


def cert_depth(cert: Certificate) -> int:
    memo: dict[int, int] = {}

    def depth(node: Certificate) -> int:
        got = memo.get(id(node))
        if got is not None:
            return got
        d = 1 + max((depth(c) for c in node.children), default=0)
        memo[id(node)] = d
        return d

    return depth(cert)


@dataclass
class CertifyAllReport:
    entry_label: tuple[int, int]
    norm_bound: int
    total: int
    certified: int
    max_depth: int
    base_reasons: dict[str, int]
    split_nodes: int
    failures: list[str]

    def lines(self) -> list[str]:
        out = [
            f"entry {self.entry_label[0]},{self.entry_label[1]}: "
            f"{self.certified}/{self.total} primitive classes certified "
            f"(norm_sq <= {self.norm_bound})",
            f"max tree depth {self.max_depth}, split nodes {self.split_nodes}",
        ]
        for reason in sorted(self.base_reasons):
            out.append(f"base[{reason}] = {self.base_reasons[reason]}")
        if self.failures:
            out.append(f"FAILURES ({len(self.failures)}):")
            out.extend(f"  {f}" for f in self.failures)
        else:
            out.append("failures: none")
        return out


def _primitive_vectors(norm_bound: int) -> list[LatticeVector]:
    r = isqrt(norm_bound)
    out = []
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            if a * a + b * b > norm_bound or (a == 0 and b == 0):
                continue
            if gcd(abs(a), abs(b)) == 1:
                out.append(LatticeVector(a, b))
    out.sort()
    return out


def certify_all(entry: FanoKuEntry, norm_bound: int, threads: int = 1) -> CertifyAllReport:
    """Certify every primitive v with norm_sq(v) <= norm_bound and verify
    each certificate.  Deterministic for any thread count: vectors are
    processed from a sorted list and results are aggregated in that order.
    """
    builder = CertificateBuilder(entry)
    vectors = _primitive_vectors(norm_bound)

    def run_one(v: LatticeVector) -> tuple[LatticeVector, Certificate | None, str | None]:
        try:
            cert = builder.certify(v)
        except ConditionFailed as exc:
            return v, None, f"{v}: condition ({exc.which}) failed at {exc.at}"
        check = verify(cert, entry)
        if not check:
            return v, cert, f"{v}: verification failed: {check.failures[0]}"
        return v, cert, None

    if threads <= 1:
        results = [run_one(v) for v in vectors]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, vectors, chunksize=64))

    failures = [msg for _, _, msg in results if msg is not None]
    certified = sum(1 for _, cert, msg in results if msg is None)
    max_depth = 0
    base_reasons: dict[str, int] = {}
    split_nodes = 0
    # dedup structurally (concurrent builders may materialize a vector twice)
    seen: set[tuple[LatticeVector, str]] = set()
    for _, cert, _ in results:
        if cert is None:
            continue
        max_depth = max(max_depth, cert_depth(cert))
        stack = [cert]
        while stack:
            node = stack.pop()
            key = (node.root, node.kind)
            if key in seen:
                continue
            seen.add(key)
            if node.kind == "base":
                base_reasons[node.reason] = base_reasons.get(node.reason, 0) + 1
            elif node.kind == "split":
                split_nodes += 1
            stack.extend(node.children)
    return CertifyAllReport(
        entry_label=entry.label,
        norm_bound=norm_bound,
        total=len(vectors),
        certified=certified,
        max_depth=max_depth,
        base_reasons=base_reasons,
        split_nodes=split_nodes,
        failures=failures,
    )


def _node_ids(cert: Certificate) -> dict[int, int]:
    """First-visit DFS numbering of the DAG nodes (deterministic)."""
    ids: dict[int, int] = {}
    order: list[Certificate] = []

    def walk(node: Certificate) -> None:
        if id(node) in ids:
            return
        ids[id(node)] = len(ids)
        order.append(node)
        for child in node.children:
            walk(child)

    walk(cert)
    return ids


def cert_to_text(cert: Certificate) -> str:
    """Stable nested text rendering; shared subtrees print once and are
    referenced by node id afterwards."""
    ids = _node_ids(cert)
    printed: set[int] = set()
    lines: list[str] = []

    def walk(node: Certificate, indent: int) -> None:
        pad = "  " * indent
        nid = ids[id(node)]
        if id(node) in printed:
            lines.append(f"{pad}ref #{nid} {node.root}")
            return
        printed.add(id(node))
        if node.kind == "base":
            lines.append(f"{pad}#{nid} base {node.root} reason={node.reason}")
        elif node.kind == "split":
            lines.append(
                f"{pad}#{nid} split {node.root} = {node.v_plus} + {node.v_minus} "
                f"chi_cross={node.chi_cross} delta_sin_sq={node.delta_check}"
            )
            for child in node.children:
                walk(child, indent + 1)
        else:
            lines.append(
                f"{pad}#{nid} direct-sum {node.root} = "
                f"{node.multiplicity} * {node.children[0].root}"
            )
            walk(node.children[0], indent + 1)

    walk(cert, 0)
    header = f"certificate entry={cert.entry_label[0]},{cert.entry_label[1]} root={cert.root}"
    return "\n".join([header] + lines)


def cert_to_dot(cert: Certificate) -> str:
    """GraphViz rendering of the decomposition DAG."""
    ids = _node_ids(cert)
    lines = ["digraph certificate {", "  node [fontname=monospace];"]
    emitted: set[int] = set()

    def walk(node: Certificate) -> None:
        if id(node) in emitted:
            return
        emitted.add(id(node))
        nid = ids[id(node)]
        if node.kind == "base":
            label = f"{node.root}\\n{node.reason}"
            lines.append(f'  n{nid} [shape=box, label="{label}"];')
        elif node.kind == "split":
            label = f"{node.root}\\nchi={node.chi_cross}"
            lines.append(f'  n{nid} [shape=ellipse, label="{label}"];')
        else:
            label = f"{node.root}\\nx{node.multiplicity}"
            lines.append(f'  n{nid} [shape=diamond, label="{label}"];')
        for child in node.children:
            walk(child)
            lines.append(f"  n{nid} -> n{ids[id(child)]};")

    walk(cert)
    lines.append("}")
    return "\n".join(lines)
