"""The discriminant graph of a sum-of-two-squares discriminant.

Vertices are the prime discriminants d_i of d; d_i and d_j are joined when
(d_i/p_j) = (d_j/p_i) = -1. Bipartitions with an Eulerian crossing subgraph
(every degree even) are the C4-splittings, odd graphs are those with none
besides the trivial one, and the number of spanning trees controls h+ mod 2^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from pellkit.arith import (
    PrimeDiscriminant,
    is_fundamental_discriminant,
    kronecker,
    prime_discriminant_factorization,
    radicand,
)
from pellkit.errors import DomainError, ResourceError, TheoremViolation

EVD_GUARD = 24
TREE_SUM_LIMIT = 8


@dataclass(frozen=True)
class DiscriminantGraph:
    vertices: tuple[PrimeDiscriminant, ...]
    adjacency: tuple[int, ...]  # row bitmasks, symmetric, zero diagonal

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(v.value for v in self.vertices)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree(self, i: int) -> int:
        return bin(self.adjacency[i]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        """Edges as label pairs, smaller index first."""
        lab = self.labels
        return [(lab[i], lab[j]) for i in range(self.n) for j in range(i + 1, self.n) if self.has_edge(i, j)]

    def to_edge_list(self) -> str:
        lines = [f"# vertices: {' '.join(map(str, self.labels))}"]
        lines += [f"{a} {b}" for a, b in self.edges()]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "gamma") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self.labels]
        lines += [f'  "{a}" -- "{b}";' for a, b in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Bipartition:
    """{A1, A2} given by vertex labels; the first vertex always lies in A1."""

    A1: tuple[int, ...]
    A2: tuple[int, ...]

    def is_trivial(self) -> bool:
        return not self.A1 or not self.A2


def _sos_factorization(d: int):
    if not is_fundamental_discriminant(d) or d < 0:
        raise DomainError(f"{d} is not a positive fundamental discriminant")
    fac = prime_discriminant_factorization(d)
    if any(v < 0 for v in fac.values):
        raise DomainError(f"{d} has a negative prime discriminant factor")
    return fac


def build_graph(d: int) -> DiscriminantGraph:
    fac = _sos_factorization(d)
    ds, ps, n = fac.values, fac.primes, fac.n
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if kronecker(ds[i], ps[j]) == -1 and kronecker(ds[j], ps[i]) == -1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return DiscriminantGraph(fac.parts, tuple(adj))


def bipartition_from_mask(g: DiscriminantGraph, mask: int) -> Bipartition:
    """Mask of A1 (normalized to contain vertex 0)."""
    full = (1 << g.n) - 1
    if not mask & 1:
        mask ^= full
    lab = g.labels
    return Bipartition(
        tuple(lab[i] for i in range(g.n) if mask >> i & 1),
        tuple(lab[i] for i in range(g.n) if not mask >> i & 1),
    )


def _mask_of(g: DiscriminantGraph, b: Bipartition) -> int:
    lab = g.labels
    if sorted(b.A1 + b.A2) != sorted(lab) or set(b.A1) & set(b.A2):
        raise DomainError("not a bipartition of the vertex set")
    return sum(1 << lab.index(v) for v in b.A1)


def _crossing_rows(g: DiscriminantGraph, mask: int) -> tuple[int, ...]:
    full = (1 << g.n) - 1
    return tuple(row & (full ^ mask if mask >> i & 1 else mask) for i, row in enumerate(g.adjacency))


def crossing_subgraph(g: DiscriminantGraph, b: Bipartition) -> DiscriminantGraph:
    if b.is_trivial():
        raise DomainError("trivial bipartition has no crossing subgraph")
    return DiscriminantGraph(g.vertices, _crossing_rows(g, _mask_of(g, b)))


def is_eulerian(g: DiscriminantGraph) -> bool:
    """All degrees even; connectivity is not required."""
    return all(g.degree(i) % 2 == 0 for i in range(g.n))


def _evd_masks(g: DiscriminantGraph) -> list[int]:
    if g.n > EVD_GUARD:
        raise ResourceError(f"n = {g.n} exceeds EVD guard {EVD_GUARD}")
    out = []
    for half in range(1 << (g.n - 1)):
        mask = half << 1 | 1
        if all(bin(r).count("1") % 2 == 0 for r in _crossing_rows(g, mask)):
            out.append(mask)
    return out


def enumerate_evds(d: int) -> list[Bipartition]:
    """Eulerian vertex decompositions, trivial one first.

    Checked against the Redei count 2^e4 and against the C4-splittings.
    """
    from pellkit.redei import e4, enumerate_c4_splittings

    g = build_graph(d)
    full = (1 << g.n) - 1
    masks = sorted(_evd_masks(g), key=lambda m: (m != full, m))
    evds = [bipartition_from_mask(g, m) for m in masks]
    expected = 2 ** e4(d)
    splittings = {s.as_set() for s in enumerate_c4_splittings(d)}
    induced = set()
    for b in evds:
        p1 = 1
        for v in b.A1:
            p1 *= v
        induced.add(frozenset((p1, d // p1)))
    if len(evds) != expected or induced != splittings:
        raise TheoremViolation(
            f"EVDs of {d} do not match its C4-splittings",
            {"d": d, "evds": len(evds), "expected": expected},
        )
    return evds


def is_odd_graph(g: DiscriminantGraph) -> bool:
    """Every nontrivial bipartition has a vertex with an odd number of cross edges."""
    return _evd_masks(g) == [(1 << g.n) - 1]


def odd_implies_negative_check(d: int):
    """If gamma(d) is odd then x^2 - m y^2 = -1 is solvable, m the radicand of d."""
    from pellkit.criteria import CriterionVerdict
    from pellkit.pell import negative_pell_solvable

    odd = is_odd_graph(build_graph(d))
    truth = negative_pell_solvable(radicand(d))
    v = CriterionVerdict("odd_graph", {"d": d}, odd, True if odd else None, truth)
    if odd and not truth:
        raise TheoremViolation(f"gamma({d}) is odd but N(eps) = +1", v.as_record())
    return v


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def laplacian(g: DiscriminantGraph) -> list[list[int]]:
    n = g.n
    return [[g.degree(i) if i == j else -int(g.has_edge(i, j)) for j in range(n)] for i in range(n)]


def spanning_tree_count(g: DiscriminantGraph) -> int:
    """Matrix-tree theorem on the first cofactor of the Laplacian."""
    if g.n <= 1:
        return 1
    lap = laplacian(g)
    return _bareiss_det([row[1:] for row in lap[1:]])


def _prufer_trees(n: int):
    """Edge lists of all labelled trees on n >= 2 vertices."""
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(i for i in range(n) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = (i for i in range(n) if degree[i] == 1)
        edges.append((u, w))
        yield edges


def tree_sum(d: int) -> int:
    """Sum over spanning trees T of K_n of prod over edges (1 - (d_i/p_j))."""
    fac = _sos_factorization(d)
    ds, ps, n = fac.values, fac.primes, fac.n
    if n == 1:
        return 1
    total = 0
    for edges in _prufer_trees(n):
        prod = 1
        for i, j in edges:
            prod *= 1 - kronecker(ds[i], ps[j])
            if not prod:
                break
        total += prod
    return total


def pumpluen_check(d: int) -> dict:
    """h+(d) = 2^(n-1) kappa_d mod 2^n, with kappa_d the spanning-tree count."""
    from pellkit.forms import class_number_strict

    g = build_graph(d)
    n, kappa = g.n, spanning_tree_count(g)
    h_plus = class_number_strict(d)
    report = {"d": d, "n": n, "kappa": kappa, "h_plus": h_plus}
    if n <= TREE_SUM_LIMIT:
        ts = tree_sum(d)
        report["tree_sum"] = ts
        if ts != 2 ** (n - 1) * kappa:
            raise TheoremViolation(f"tree sum {ts} != 2^(n-1) kappa for d = {d}", report)
    if (h_plus - 2 ** (n - 1) * kappa) % 2**n:
        raise TheoremViolation(f"Pumplun congruence fails for d = {d}", report)
    return report
