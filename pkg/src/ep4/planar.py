"""Combinatorial-map representation of graphs embedded in the sphere.

An embedding is encoded purely combinatorially: every edge ``i`` of the map
contributes two darts ``2*i`` (tail to head) and ``2*i + 1`` (head to tail),
and each vertex carries a counterclockwise cyclic order of its outgoing
darts (the rotation system).  Faces are the orbits of ``phi(d) =
sigma(twin(d))``, which walks the face lying to the left of each dart.
Genus 0 is enforced per connected component via Euler's formula
``|V| - |E| + |F| = 2``, so every map in this library is a sphere (plane)
embedding.

Bridges appear twice on their single face walk; the bridge-free boundary
edge set ``E(F)`` of a face is therefore Eulerian, and a face is odd when
``|E(F)|`` is odd.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    NonPlanarEmbedding,
    NonPlanarInput,
    RotationMismatch,
    SelfLoop,
)

Dart = int
Vertex = int
EdgeId = int
FaceId = int


def twin(d: Dart) -> Dart:
    return d ^ 1

def edge_of(d: Dart) -> EdgeId:
    return d >> 1


def face_walks_of_rotation(rotation: dict[Vertex, tuple[Dart, ...]],
                           tail: dict[Dart, Vertex]) -> list[tuple[Dart, ...]]:
    """Orbits of phi = sigma o twin over an arbitrary dart universe.

    Works on any rotation dict whose darts pair up via ``d ^ 1``; used both
    by PlanarMap construction and by the incremental embedder.
    """
    succ: dict[Dart, Dart] = {}
    for v, darts in rotation.items():
        k = len(darts)
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % k]
    walks = []
    seen: set[Dart] = set()
    for d0 in sorted(succ):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while True:
            walk.append(d)
            seen.add(d)
            d = succ[twin(d)]
            if d == d0:
                break
        walks.append(tuple(walk))
    return walks


@dataclass(frozen=True)
class Face:
    """One face of the map: its boundary walk and derived edge data.

    ``edge_plus`` is the boundary edge multiset (bridges twice) and
    ``edge_set`` the bridge-free boundary.  An isolated vertex owns a
    degenerate face with an empty walk.
    """

    id: FaceId
    darts: tuple[Dart, ...]
    vertices: frozenset[Vertex]
    edge_plus: tuple[EdgeId, ...]
    edge_set: frozenset[EdgeId]
    component: int

    @property
    def degree(self) -> int:
        return len(self.edge_plus)

    @property
    def odd(self) -> bool:
        return len(self.edge_set) % 2 == 1

    def __repr__(self) -> str:  # compact, face lists get long
        return f"Face({self.id}, deg={self.degree}, odd={self.odd})"


class PlanarMap:
    """Immutable genus-0 combinatorial map.

    Construct through :func:`build_map`; the constructor validates the
    rotation system, enumerates faces, and checks Euler's formula per
    connected component.  Parallel edges are allowed, self-loops are not.
    """

    def __init__(self, edges: list[tuple[Vertex, Vertex]],
                 rotation: dict[Vertex, list[Dart]],
                 vertices: list[Vertex] | None = None):
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
        vset = {u for e in edges for u in e}
        if vertices is not None:
            extra = vset - set(vertices)
            if extra:
                raise RotationMismatch(f"edges use undeclared vertices {sorted(extra)}")
            vset = set(vertices)
        vset |= set(rotation)
        self.edges: tuple[tuple[Vertex, Vertex], ...] = tuple((u, v) for u, v in edges)
        self.vertices: tuple[Vertex, ...] = tuple(sorted(vset))
        self._tail: dict[Dart, Vertex] = {}
        for i, (u, v) in enumerate(self.edges):
            self._tail[2 * i] = u
            self._tail[2 * i + 1] = v
        self.rotation: dict[Vertex, tuple[Dart, ...]] = self._check_rotation(rotation)
        self._build()

    # -- construction ------------------------------------------------------

    def _check_rotation(self, rotation) -> dict[Vertex, tuple[Dart, ...]]:
        expected: dict[Vertex, set[Dart]] = {v: set() for v in self.vertices}
        for d, v in self._tail.items():
            expected[v].add(d)
        out: dict[Vertex, tuple[Dart, ...]] = {}
        for v in self.vertices:
            listed = list(rotation.get(v, ()))
            if len(listed) != len(set(listed)) or set(listed) != expected[v]:
                raise RotationMismatch(
                    f"rotation at vertex {v} lists {listed}, expected darts {sorted(expected[v])}")
            if listed:
                # canonical form: start the cyclic order at the lowest dart
                j = listed.index(min(listed))
                listed = listed[j:] + listed[:j]
            out[v] = tuple(listed)
        return out

    def _build(self) -> None:
        # connected components over vertices
        comp: dict[Vertex, int] = {}
        cid = 0
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in self.vertices:
            if v in comp:
                continue
            queue = deque([v])
            comp[v] = cid
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in comp:
                        comp[y] = cid
                        queue.append(y)
            cid += 1
        self._component_of_vertex = comp
        self.component_count = cid

        walks = face_walks_of_rotation(self.rotation, self._tail)
        # dart faces ordered by first dart encountered, then isolated-vertex faces
        walks.sort(key=lambda w: min(w))
        faces: list[Face] = []
        face_of_dart: dict[Dart, FaceId] = {}
        for walk in walks:
            fid = len(faces)
            for d in walk:
                face_of_dart[d] = fid
            counts: dict[EdgeId, int] = {}
            for d in walk:
                counts[edge_of(d)] = counts.get(edge_of(d), 0) + 1
            edge_plus = tuple(sorted(itertools.chain.from_iterable(
                [e] * c for e, c in counts.items())))
            edge_set = frozenset(e for e, c in counts.items() if c == 1)
            verts = frozenset(self._tail[d] for d in walk)
            faces.append(Face(fid, walk, verts, edge_plus, edge_set,
                              comp[self._tail[walk[0]]]))
        for v in self.vertices:
            if not self.rotation[v]:
                fid = len(faces)
                faces.append(Face(fid, (), frozenset([v]), (), frozenset(), comp[v]))
        self._faces: tuple[Face, ...] = tuple(faces)
        self._face_of_dart = face_of_dart

        self.bridges: frozenset[EdgeId] = frozenset(
            e for e in range(len(self.edges))
            if face_of_dart[2 * e] == face_of_dart[2 * e + 1])

        # Euler per component: sphere embeddings only
        vcount = [0] * cid
        ecount = [0] * cid
        fcount = [0] * cid
        for v in self.vertices:
            vcount[comp[v]] += 1
        for u, _ in self.edges:
            ecount[comp[u]] += 1
        for f in faces:
            fcount[f.component] += 1
        for c in range(cid):
            if vcount[c] - ecount[c] + fcount[c] != 2:
                raise NonPlanarEmbedding(
                    f"component {c}: V-E+F = {vcount[c]}-{ecount[c]}+{fcount[c]} != 2; "
                    "rotation encodes positive genus")

        # per-vertex cyclic face order with anchor positions (dedup at cut vertices)
        self._vertex_faces: dict[Vertex, tuple[FaceId, ...]] = {}
        self._vertex_face_anchor: dict[Vertex, dict[FaceId, int]] = {}
        for v in self.vertices:
            order: list[FaceId] = []
            anchor: dict[FaceId, int] = {}
            for pos, d in enumerate(self.rotation[v]):
                f = face_of_dart[d]
                if f not in anchor:
                    anchor[f] = pos
                    order.append(f)
            if not self.rotation[v]:
                f = next(fc.id for fc in faces if not fc.darts and v in fc.vertices)
                order, anchor = [f], {f: 0}
            self._vertex_faces[v] = tuple(order)
            self._vertex_face_anchor[v] = anchor

        # canonical outer face: the face holding the lowest dart of each component
        outer: dict[int, FaceId] = {}
        for f in self._faces:
            if f.darts and (f.component not in outer or
                            min(f.darts) < min(self._faces[outer[f.component]].darts)):
                if f.component not in outer:
                    outer[f.component] = f.id
                else:
                    cur = self._faces[outer[f.component]]
                    if min(f.darts) < min(cur.darts):
                        outer[f.component] = f.id
        for f in self._faces:
            if not f.darts:
                outer[f.component] = f.id
        self._outer_face_of_component = outer

        # plain adjacency, for cycle work
        nbrs: dict[Vertex, dict[Vertex, list[EdgeId]]] = {v: {} for v in self.vertices}
        for e, (u, v) in enumerate(self.edges):
            nbrs[u].setdefault(v, []).append(e)
            nbrs[v].setdefault(u, []).append(e)
        self._neighbors = {
            v: tuple(sorted((w, tuple(es)) for w, es in d.items()))
            for v, d in nbrs.items()
        }

    # -- basic accessors -----------------------------------------------------

    def tail(self, d: Dart) -> Vertex:
        return self._tail[d]

    def head(self, d: Dart) -> Vertex:
        return self._tail[twin(d)]

    def faces(self) -> tuple[Face, ...]:
        return self._faces

    def face(self, fid: FaceId) -> Face:
        return self._faces[fid]

    def face_of_dart(self, d: Dart) -> FaceId:
        return self._face_of_dart[d]

    def odd_faces(self) -> frozenset[FaceId]:
        return frozenset(f.id for f in self._faces if f.odd)

    def vertex_faces(self, v: Vertex) -> tuple[FaceId, ...]:
        """Faces incident to v, in the cyclic rotation order, each once."""
        return self._vertex_faces[v]

    def vertex_face_anchor(self, v: Vertex, f: FaceId) -> int:
        """Rotation position of the corner anchoring the vf-edge {v, f}."""
        return self._vertex_face_anchor[v][f]

    def component_of_vertex(self, v: Vertex) -> int:
        return self._component_of_vertex[v]

    def outer_face(self, component: int) -> FaceId:
        return self._outer_face_of_component[component]

    def neighbors(self, v: Vertex) -> tuple[tuple[Vertex, tuple[EdgeId, ...]], ...]:
        return self._neighbors[v]

    def edge_between(self, u: Vertex, v: Vertex) -> EdgeId | None:
        for w, es in self._neighbors[u]:
            if w == v:
                return es[0]
        return None

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return (f"PlanarMap(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
                f"|F|={len(self._faces)})")


def build_map(edges: list[tuple[Vertex, Vertex]],
              rotation: dict[Vertex, list[Dart]],
              vertices: list[Vertex] | None = None) -> PlanarMap:
    """Validate and construct a PlanarMap from an edge list and rotation.

    ``rotation`` maps each vertex to the counterclockwise order of its
    outgoing darts (dart ``2*i`` leaves ``edges[i][0]``, dart ``2*i + 1``
    leaves ``edges[i][1]``).
    """
    return PlanarMap(edges, rotation, vertices)


# --------------------------------------------------------------------------
# vertex-face incidence graph
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class VfGraph:
    """Embedded vertex-face incidence graph.

    Bipartite on face ids and vertex ids with one edge per incidence pair;
    ``vertex_order`` keeps the cyclic order of incident faces around each
    vertex (inherited from the rotation) and ``anchors`` the rotation
    position through which each vf-edge is embedded.
    """

    face_ids: tuple[FaceId, ...]
    vertex_ids: tuple[Vertex, ...]
    vertex_order: dict[Vertex, tuple[FaceId, ...]]
    face_order: dict[FaceId, tuple[Vertex, ...]]
    anchors: dict[tuple[Vertex, FaceId], int]

    @property
    def edge_count(self) -> int:
        return sum(len(o) for o in self.vertex_order.values())

    def is_connected(self) -> bool:
        nodes: list = [("f", f) for f in self.face_ids] + [("v", v) for v in self.vertex_ids]
        if not nodes:
            return True
        adj: dict = {n: [] for n in nodes}
        for v, fs in self.vertex_order.items():
            for f in fs:
                adj[("v", v)].append(("f", f))
                adj[("f", f)].append(("v", v))
        seen = {nodes[0]}
        queue = deque([nodes[0]])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == len(nodes)


def vf_graph(m: PlanarMap, restrict_faces: frozenset[FaceId] | None = None) -> VfGraph:
    """Vertex-face incidence graph, optionally restricted to a face subset.

    The restricted graph keeps only the given face nodes but all vertices.
    """
    if restrict_faces is None:
        fids = tuple(f.id for f in m.faces())
        keep = None
    else:
        fids = tuple(sorted(restrict_faces))
        keep = frozenset(restrict_faces)
    vertex_order: dict[Vertex, tuple[FaceId, ...]] = {}
    anchors: dict[tuple[Vertex, FaceId], int] = {}
    for v in m.vertices:
        order = [f for f in m.vertex_faces(v) if keep is None or f in keep]
        vertex_order[v] = tuple(order)
        for f in order:
            anchors[(v, f)] = m.vertex_face_anchor(v, f)
    face_order: dict[FaceId, tuple[Vertex, ...]] = {}
    for fid in fids:
        face = m.face(fid)
        seen: list[Vertex] = []
        for d in face.darts:
            t = m.tail(d)
            if t not in seen:
                seen.append(t)
        if not face.darts:
            seen = sorted(face.vertices)
        face_order[fid] = tuple(seen)
    return VfGraph(fids, tuple(m.vertices), vertex_order, face_order, anchors)


# --------------------------------------------------------------------------
# planar embedding of an abstract graph (path addition)
# --------------------------------------------------------------------------

def embed_planar(edges: list[tuple[Vertex, Vertex]],
                 vertices: list[Vertex] | None = None) -> dict[Vertex, list[Dart]]:
    """Compute a genus-0 rotation system for a loopless planar edge list.

    Works block by block: each biconnected block is embedded by path
    addition (start from a cycle, repeatedly route a path of an unembedded
    piece through a face containing all its attachments), blocks are then
    stitched at cut vertices, and parallel edges are nested next to their
    representative.  Raises :class:`NonPlanarInput` when some piece has no
    admissible face.
    """
    for u, v in edges:
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
    vset = sorted({u for e in edges for u in e} | set(vertices or ()))

    # group parallel edges; embed one representative of each
    rep_of_pair: dict[tuple[Vertex, Vertex], EdgeId] = {}
    duplicates: list[EdgeId] = []
    simple_edges: list[EdgeId] = []
    for e, (u, v) in enumerate(edges):
        key = (u, v) if u < v else (v, u)
        if key in rep_of_pair:
            duplicates.append(e)
        else:
            rep_of_pair[key] = e
            simple_edges.append(e)

    adj: dict[Vertex, list[tuple[Vertex, EdgeId]]] = {v: [] for v in vset}
    for e in simple_edges:
        u, v = edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))

    rotation: dict[Vertex, list[Dart]] = {v: [] for v in vset}
    for block in _biconnected_blocks(vset, adj):
        block_rot = _embed_block(edges, block)
        for v, darts in block_rot.items():
            rotation[v].extend(darts)

    _insert_parallel_duplicates(edges, rotation, rep_of_pair, duplicates)

    try:
        build_map(edges, rotation, vertices=vset)
    except NonPlanarEmbedding as exc:  # pragma: no cover - embedder bug guard
        raise AssertionError(f"embedder produced a non-planar rotation: {exc}")
    return rotation


def _biconnected_blocks(vset, adj) -> list[list[EdgeId]]:
    """Biconnected components as edge-id lists (Hopcroft-Tarjan, iterative)."""
    disc: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    blocks: list[list[EdgeId]] = []
    counter = itertools.count()
    for root in vset:
        if root in disc or not adj[root]:
            continue
        estack: list[EdgeId] = []
        disc[root] = low[root] = next(counter)
        stack: list[tuple[Vertex, Vertex | None, int]] = [(root, None, 0)]
        while stack:
            v, parent_edge, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, parent_edge, i + 1)
                w, e = adj[v][i]
                if e == parent_edge:
                    continue
                if w not in disc:
                    estack.append(e)
                    disc[w] = low[w] = next(counter)
                    stack.append((w, e, 0))
                elif disc[w] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        block = []
                        while True:
                            e = estack.pop()
                            block.append(e)
                            if e == parent_edge:
                                break
                        blocks.append(block)
    blocks.sort(key=min)
    return blocks


def _find_cycle_in_block(edges, block: list[EdgeId]) -> list[Vertex] | None:
    adj: dict[Vertex, list[tuple[Vertex, EdgeId]]] = {}
    for e in block:
        u, v = edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    start = min(adj)
    parent: dict[Vertex, tuple[Vertex, EdgeId] | None] = {start: None}
    stack = [(start, None)]
    while stack:
        v, pe = stack.pop()
        for w, e in adj[v]:
            if e == pe:
                continue
            if w in parent:
                # found a cycle: close v -> ... -> w
                path = [v]
                x = v
                while x != w:
                    x = parent[x][0]  # type: ignore[index]
                    path.append(x)
                return path
            parent[w] = (v, e)
            stack.append((w, e))
    return None


def _embed_block(edges, block: list[EdgeId]) -> dict[Vertex, list[Dart]]:
    def dart(e: EdgeId, frm: Vertex) -> Dart:
        return 2 * e if edges[e][0] == frm else 2 * e + 1

    bverts = sorted({u for e in block for u in edges[e]})
    if len(block) == 1:
        e = block[0]
        u, v = edges[e]
        return {u: [2 * e], v: [2 * e + 1]}
    n, msize = len(bverts), len(block)
    if msize > 3 * n - 6:
        raise NonPlanarInput(f"block with {n} vertices has {msize} > 3n-6 edges")

    cycle = _find_cycle_in_block(edges, block)
    assert cycle is not None and len(cycle) >= 3, "biconnected block must contain a cycle"

    rotation: dict[Vertex, list[Dart]] = {}
    embedded: set[EdgeId] = set()
    pair_edge: dict[tuple[Vertex, Vertex], EdgeId] = {}
    for e in block:
        u, v = edges[e]
        pair_edge[(u, v)] = pair_edge[(v, u)] = e
    k = len(cycle)
    for i, v in enumerate(cycle):
        nxt, prv = cycle[(i + 1) % k], cycle[(i - 1) % k]
        rotation[v] = [dart(pair_edge[(v, nxt)], v), dart(pair_edge[(v, prv)], v)]
        embedded.add(pair_edge[(v, nxt)])

    tails = {d: edges[edge_of(d)][0] if d % 2 == 0 else edges[edge_of(d)][1]
             for e in block for d in (2 * e, 2 * e + 1)}

    while len(embedded) < len(block):
        remaining = [e for e in block if e not in embedded]
        hverts = set(rotation)
        pieces = _pieces(edges, remaining, hverts)

        walks = face_walks_of_rotation({v: tuple(ds) for v, ds in rotation.items()}, tails)
        face_verts = [frozenset(tails[d] for d in w) for w in walks]
        face_of: dict[Dart, int] = {d: i for i, w in enumerate(walks) for d in w}

        best = None
        for pi, (pedges, att) in enumerate(pieces):
            admissible = [i for i, fv in enumerate(face_verts) if att <= fv]
            if not admissible:
                raise NonPlanarInput("piece with no admissible face")
            key = (len(admissible), min(pedges))
            if best is None or key < best[0]:
                best = (key, pi, admissible[0])
        assert best is not None
        _, pi, target = best
        pedges, att = pieces[pi]
        path_vs, path_es = _path_through_piece(edges, pedges, att, hverts)

        for v in path_vs[1:-1]:
            e_prev = path_es[path_vs.index(v) - 1]
            e_next = path_es[path_vs.index(v)]
            rotation[v] = [dart(e_next, v), dart(e_prev, v)]
        for endpoint, e_end in ((path_vs[0], path_es[0]), (path_vs[-1], path_es[-1])):
            rot = rotation[endpoint]
            pos = next(p for p, d in enumerate(rot) if face_of[d] == target)
            rot.insert(pos + 1, dart(e_end, endpoint))
        embedded.update(path_es)
    return rotation


def _pieces(edges, remaining: list[EdgeId], hverts: set[Vertex]):
    """Bridge pieces of the embedded subgraph: (edge set, attachment set)."""
    parent: dict[EdgeId, EdgeId] = {e: e for e in remaining}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_inner: dict[Vertex, EdgeId] = {}
    for e in remaining:
        for v in edges[e]:
            if v in hverts:
                continue
            if v in by_inner:
                ra, rb = find(by_inner[v]), find(e)
                if ra != rb:
                    parent[ra] = rb
            else:
                by_inner[v] = e
    groups: dict[EdgeId, list[EdgeId]] = {}
    for e in remaining:
        groups.setdefault(find(e), []).append(e)
    pieces = []
    for g in sorted(groups.values(), key=min):
        att = frozenset(v for e in g for v in edges[e] if v in hverts)
        pieces.append((g, att))
    return pieces


def _path_through_piece(edges, pedges: list[EdgeId], att: frozenset[Vertex],
                        hverts: set[Vertex]) -> tuple[list[Vertex], list[EdgeId]]:
    """Path between two attachment vertices with interior outside the host."""
    assert len(att) >= 2, "piece of a biconnected block has >= 2 attachments"
    start = min(att)
    adj: dict[Vertex, list[tuple[Vertex, EdgeId]]] = {}
    for e in pedges:
        u, v = edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    prev: dict[Vertex, tuple[Vertex, EdgeId]] = {}
    queue = deque([start])
    seen = {start}
    goal = None
    while queue:
        x = queue.popleft()
        for y, e in sorted(adj.get(x, ())):
            if y in seen:
                continue
            prev[y] = (x, e)
            if y in att and y != start:
                goal = y
                queue.clear()
                break
            if y not in hverts:
                seen.add(y)
                queue.append(y)
    assert goal is not None, "piece attachments must be connected through it"
    vs, es = [goal], []
    x = goal
    while x != start:
        x, e = prev[x]
        vs.append(x)
        es.append(e)
    vs.reverse()
    es.reverse()
    return vs, es


def _insert_parallel_duplicates(edges, rotation, rep_of_pair, duplicates):
    # nest each duplicate directly next to the previously placed copy
    anchor: dict[tuple[Vertex, Vertex], EdgeId] = {}
    for e in duplicates:
        u, v = edges[e]
        key = (u, v) if u < v else (v, u)
        ref = anchor.get(key, rep_of_pair[key])
        ru, rv = edges[ref]
        ref_dart_u = 2 * ref if ru == u else 2 * ref + 1
        ref_dart_v = twin(ref_dart_u)
        new_dart_u = 2 * e
        pos = rotation[u].index(ref_dart_u)
        rotation[u].insert(pos + 1, new_dart_u)
        pos = rotation[v].index(ref_dart_v)
        rotation[v].insert(pos, twin(new_dart_u))
        anchor[key] = e
