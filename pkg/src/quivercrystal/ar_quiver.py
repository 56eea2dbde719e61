"""Auslander-Reiten quivers of Dynkin quivers, built by knitting.

The AR quiver is knitted forward from the projectives: whenever every
irreducible map out of a non-injective X is known, the mesh ending at
the translate of X determines dim tau^{-1}X additively.  Hom and Ext
dimensions are then computed by walking tau orbits back to projectives,
with Ext obtained from Hom through Auslander-Reiten duality.
"""

from __future__ import annotations

import heapq
import json
import threading
from collections import defaultdict
from dataclasses import dataclass

from .dynkin import DimVector, Diagram, Quiver, all_orientations, positive_roots, ringel_form
from .errors import DomainError, InvariantViolation, QuiverParseError

__all__ = [
    "Indec",
    "ARQuiver",
    "ModuleClass",
    "build_ar",
    "thick_vertices",
    "special_orientations",
    "module_from_dim_dict",
    "module_from_json",
    "module_to_json",
    "tau_inv_class",
]


@dataclass(frozen=True)
class Indec:
    """An indecomposable representation, identified with its dimension vector."""

    id: int
    dim: DimVector
    projective_vertex: int | None = None
    injective_vertex: int | None = None

    @property
    def is_projective(self) -> bool:
        return self.projective_vertex is not None

    @property
    def is_injective(self) -> bool:
        return self.injective_vertex is not None

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.dim) + ")"


def _paths_dims(q: Quiver, forward: bool) -> dict[int, DimVector]:
    """dim P(i) when forward (paths i -> j), dim I(i) otherwise (paths j -> i)."""
    n = q.diagram.rank
    succ = defaultdict(list)
    for a, b in q.arrows:
        if forward:
            succ[a].append(b)
        else:
            succ[b].append(a)
    out = {}
    for i in range(1, n + 1):
        reach = {i}
        stack = [i]
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        out[i] = tuple(1 if j in reach else 0 for j in range(1, n + 1))
    return out


class ARQuiver:
    """Immutable AR quiver: indecomposables, irreducible arrows, tau links."""

    def __init__(
        self,
        quiver: Quiver,
        indecs: tuple[Indec, ...],
        arrows: tuple[tuple[int, int], ...],
        tau_pairs: tuple[tuple[int, int], ...],
    ):
        self.quiver = quiver
        self.indecs = indecs
        self.arrows = arrows
        self._tau = dict(tau_pairs)
        self._tau_inv = {x: z for z, x in tau_pairs}
        self.by_dim = {x.dim: x for x in indecs}
        self._proj = {x.projective_vertex: x for x in indecs if x.is_projective}
        self._inj = {x.injective_vertex: x for x in indecs if x.is_injective}
        self._hom_cache: dict[tuple[int, int], int] = {}
        self._hom_lock = threading.Lock()
        self._special: bool | None = None
        self._contexts: dict[int, object] = {}

    @property
    def rank(self) -> int:
        return self.quiver.diagram.rank

    def __len__(self) -> int:
        return len(self.indecs)

    def indec(self, x: Indec | int) -> Indec:
        return x if isinstance(x, Indec) else self.indecs[x]

    def projective(self, i: int) -> Indec:
        return self._proj[i]

    def injective(self, i: int) -> Indec:
        return self._inj[i]

    def simple(self, i: int) -> Indec:
        dim = tuple(1 if j == i else 0 for j in range(1, self.rank + 1))
        return self.by_dim[dim]

    def tau(self, x: Indec | int) -> Indec | None:
        """AR translate; absent exactly on projectives."""
        xid = self.indec(x).id
        tid = self._tau.get(xid)
        return None if tid is None else self.indecs[tid]

    def tau_inv(self, x: Indec | int) -> Indec | None:
        """Inverse AR translate; absent exactly on injectives."""
        xid = self.indec(x).id
        tid = self._tau_inv.get(xid)
        return None if tid is None else self.indecs[tid]

    def hom_dim(self, x: Indec | int, y: Indec | int) -> int:
        """dim Hom(X, Y), by shifting both arguments back along tau orbits."""
        x, y = self.indec(x), self.indec(y)
        key = (x.id, y.id)
        with self._hom_lock:
            cached = self._hom_cache.get(key)
        if cached is not None:
            return cached
        if x.is_projective:
            val = y.dim[x.projective_vertex - 1]
        elif y.is_projective:
            tx = self.tau(x)
            val = ringel_form(self.quiver, x.dim, y.dim) + tx.dim[y.projective_vertex - 1]
        else:
            val = self.hom_dim(self.tau(x), self.tau(y))
        with self._hom_lock:
            self._hom_cache[key] = val
        return val

    def ext_dim(self, x: Indec | int, y: Indec | int) -> int:
        """dim Ext^1(X, Y) = dim Hom(Y, tau X), zero when X is projective."""
        x, y = self.indec(x), self.indec(y)
        if x.is_projective:
            return 0
        return self.hom_dim(y, self.tau(x))

    def hom_to_simple(self, m: "ModuleClass", i: int) -> int:
        """dim Hom(M, S(i)) of a class, additive over summands."""
        s = self.simple(i)
        return sum(k * self.hom_dim(b, s) for b, k in zip(self.indecs, m.mults) if k)

    def is_special(self) -> bool:
        """Whether every indecomposable maps to each simple with multiplicity <= 1."""
        if self._special is None:
            self._special = all(
                self.hom_dim(x, self.simple(i)) <= 1
                for i in range(1, self.rank + 1)
                for x in self.indecs
            )
        return self._special

    def to_json(self) -> str:
        objs = []
        for x in self.indecs:
            o: dict = {"id": x.id, "dim": list(x.dim)}
            if x.is_projective:
                o["proj"] = x.projective_vertex
            if x.is_injective:
                o["inj"] = x.injective_vertex
            objs.append(o)
        doc = {
            "quiver": self.quiver.text_spec(),
            "indecs": objs,
            "arrows": [list(a) for a in self.arrows],
            "tau": sorted([z, x] for z, x in self._tau.items()),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def to_dot(self) -> str:
        lines = ["digraph ar {", "  rankdir=LR;"]
        for x in self.indecs:
            tags = []
            if x.is_projective:
                tags.append(f"P({x.projective_vertex})")
            if x.is_injective:
                tags.append(f"I({x.injective_vertex})")
            label = str(x) + (" " + "/".join(tags) if tags else "")
            lines.append(f'  n{x.id} [label="{label}"];')
        for a, b in self.arrows:
            lines.append(f"  n{a} -> n{b};")
        for z, x in sorted(self._tau.items()):
            lines.append(f'  n{z} -> n{x} [style=dashed, constraint=false, label="tau"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ar(q: Quiver) -> ARQuiver:
    """Knit the AR quiver of a Dynkin quiver.

    Starts from the projectives P(i) (paths-from-i dimension vectors) and
    repeatedly completes meshes: once tau^{-1} is known for every
    non-injective source of an arrow into X, the arrows out of X are all
    present and dim tau^{-1}X = sum of the middle terms minus dim X.
    """
    roots = set(positive_roots(q))
    proj_dims = _paths_dims(q, forward=True)
    inj_dims = _paths_dims(q, forward=False)
    inj_of = {dim: i for i, dim in inj_dims.items()}

    nodes: dict[DimVector, dict] = {}
    arrows_in: dict[DimVector, list[DimVector]] = defaultdict(list)
    arrows_out: dict[DimVector, list[DimVector]] = defaultdict(list)
    tau_inv_done: dict[DimVector, DimVector] = {}

    def add_node(dim: DimVector, proj: int | None) -> None:
        if dim not in roots:
            raise InvariantViolation(f"knitting produced non-root {dim} for {q}")
        if dim in nodes:
            raise InvariantViolation(f"knitting produced duplicate {dim} for {q}")
        nodes[dim] = {"proj": proj, "inj": inj_of.get(dim)}

    def add_arrow(src: DimVector, dst: DimVector) -> None:
        arrows_out[src].append(dst)
        arrows_in[dst].append(src)

    for i in range(1, q.diagram.rank + 1):
        add_node(proj_dims[i], i)
    for a, b in q.arrows:
        add_arrow(proj_dims[b], proj_dims[a])

    pending = {dim for dim, info in nodes.items() if info["inj"] is None}
    while pending:
        ready = [
            x
            for x in sorted(pending)
            if all(
                nodes[w]["inj"] is not None or w in tau_inv_done for w in arrows_in[x]
            )
        ]
        if not ready:
            raise InvariantViolation(f"knitting stalled for {q}")
        for x in ready:
            middles = arrows_out[x]
            z = tuple(
                sum(e[j] for e in middles) - x[j] for j in range(q.diagram.rank)
            )
            add_node(z, None)
            for e in middles:
                add_arrow(e, z)
            tau_inv_done[x] = z
            pending.discard(x)
            if nodes[z]["inj"] is None:
                pending.add(z)

    if set(nodes) != roots:
        raise InvariantViolation(f"knitting missed roots for {q}")

    order = _topological_ids(nodes, arrows_out)
    indecs = tuple(
        Indec(order[dim], dim, nodes[dim]["proj"], nodes[dim]["inj"])
        for dim in sorted(nodes, key=lambda d: order[d])
    )
    arrow_ids = tuple(
        sorted((order[a], order[b]) for a, outs in arrows_out.items() for b in outs)
    )
    tau_pairs = tuple(
        sorted((order[z], order[x]) for x, z in tau_inv_done.items())
    )
    ar = ARQuiver(q, indecs, arrow_ids, tau_pairs)
    _check_meshes(ar)
    return ar


def _topological_ids(nodes: dict, arrows_out: dict) -> dict[DimVector, int]:
    """Kahn order on the irreducible arrows, ties broken by dimension vector."""
    indeg = {dim: 0 for dim in nodes}
    for src, outs in arrows_out.items():
        for dst in outs:
            indeg[dst] += 1
    heap = [dim for dim, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order: dict[DimVector, int] = {}
    while heap:
        dim = heapq.heappop(heap)
        order[dim] = len(order)
        for dst in arrows_out.get(dim, ()):
            indeg[dst] -= 1
            if indeg[dst] == 0:
                heapq.heappush(heap, dst)
    if len(order) != len(nodes):
        raise InvariantViolation("AR quiver contains a cycle")
    return order


def _check_meshes(ar: ARQuiver) -> None:
    """Mesh additivity: dim tau Z + dim Z equals the sum over arrows into Z."""
    into = defaultdict(list)
    for a, b in ar.arrows:
        into[b].append(a)
    for z in ar.indecs:
        tz = ar.tau(z)
        if tz is None:
            continue
        mid = [ar.indecs[a].dim for a in into[z.id]]
        total = tuple(sum(d[j] for d in mid) for j in range(ar.rank))
        want = tuple(tz.dim[j] + z.dim[j] for j in range(ar.rank))
        if total != want:
            raise InvariantViolation(f"mesh additivity fails at {z} for {ar.quiver}")


@dataclass(frozen=True)
class ModuleClass:
    """An isomorphism class of representations: multiplicities per Indec id."""

    mults: tuple[int, ...]

    def __post_init__(self):
        if any(k < 0 for k in self.mults):
            raise DomainError(f"negative multiplicity in {self.mults}")

    def mult(self, x: Indec | int) -> int:
        return self.mults[x.id if isinstance(x, Indec) else x]

    def summand_count(self) -> int:
        return sum(self.mults)

    def is_zero(self) -> bool:
        return not any(self.mults)

    def dimension_vector(self, ar: ARQuiver) -> DimVector:
        n = ar.rank
        out = [0] * n
        for x, k in zip(ar.indecs, self.mults):
            if k:
                for j in range(n):
                    out[j] += k * x.dim[j]
        return tuple(out)

    def total_dim(self, ar: ARQuiver) -> int:
        return sum(self.dimension_vector(ar))


def zero_module(ar: ARQuiver) -> ModuleClass:
    return ModuleClass((0,) * len(ar))


def module_from_dim_dict(ar: ARQuiver, counts: dict[DimVector, int]) -> ModuleClass:
    """Build a class from {dimension vector: multiplicity}."""
    mults = [0] * len(ar)
    for dim, k in counts.items():
        dim = tuple(dim)
        if dim not in ar.by_dim:
            raise DomainError(f"{dim} is not an indecomposable dimension vector")
        if k < 0:
            raise DomainError(f"negative multiplicity for {dim}")
        mults[ar.by_dim[dim].id] += k
    return ModuleClass(tuple(mults))


def module_from_json(ar: ARQuiver, text: str) -> ModuleClass:
    """Parse the `{"1,1,1":2,"1,0,0":1}` wire format."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverParseError(f"bad module JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise QuiverParseError("module JSON must be an object")
    counts: dict[DimVector, int] = {}
    for key, val in obj.items():
        try:
            dim = tuple(int(p) for p in key.split(","))
            k = int(val)
        except ValueError as exc:
            raise QuiverParseError(f"bad module entry {key!r}: {val!r}") from exc
        counts[dim] = counts.get(dim, 0) + k
    return module_from_dim_dict(ar, counts)


def module_to_json(ar: ARQuiver, m: ModuleClass) -> str:
    obj = {
        ",".join(str(d) for d in x.dim): k for x, k in zip(ar.indecs, m.mults) if k
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def tau_inv_class(ar: ARQuiver, m: ModuleClass) -> ModuleClass:
    """Class of tau^{-1}M: mu_B(tau^{-1}M) = mu_{tau B}(M); injectives drop out."""
    mults = [0] * len(ar)
    for b in ar.indecs:
        tb = ar.tau(b)
        if tb is not None:
            mults[b.id] = m.mults[tb.id]
    return ModuleClass(tuple(mults))


def thick_vertices(ar: ARQuiver) -> frozenset[int]:
    """Vertices where some indecomposable has dimension >= 2."""
    return frozenset(
        i for i in range(1, ar.rank + 1) if any(x.dim[i - 1] >= 2 for x in ar.indecs)
    )


def _thick_vertices_of(diag: Diagram) -> frozenset[int]:
    roots = positive_roots(diag)
    return frozenset(
        i for i in range(1, diag.rank + 1) if any(r[i - 1] >= 2 for r in roots)
    )


def special_orientations(diag: Diagram) -> tuple[Quiver, ...]:
    """All orientations in which no thick vertex is a source.

    A source vertex i admits dim Hom(X, S(i)) = dim X_i, so this matches
    filtering all orientations by the direct <= 1 condition.
    """
    thick = _thick_vertices_of(diag)
    return tuple(
        q for q in all_orientations(diag) if not (thick & set(q.sources()))
    )
