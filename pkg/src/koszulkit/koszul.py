"""Koszul calculus: weight spaces, differentials, (co)homology, cup and cap.

The homological generators W_p live inside the weight-p path space; W_0 is
the vertex space, W_1 the arrow space, W_2 the relation space, and each
higher space is the intersection of the two shifted copies of the previous
one.  Every basis vector is vertex-pair homogeneous and carries coordinates
of its two factorizations (arrow tensor W_{p-1} and W_{p-1} tensor arrow),
which is all the differentials and products ever need.

Cochains assign to each W_p basis vector a value in the coefficient module
(the algebra itself or the trivial module on the vertices); chains pair a
coefficient with a W_p basis vector in the transposed vertex block.
Everything is graded by the biweight (homological degree, coefficient
weight); homology is computed blockwise in that grading.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Elem, GradedAlgebra
from .linalg import SparseVec, SpanSolver, echelonize, intersect
from .quiver import Path, paths_of_weight


class ModuleError(ValueError):
    """Raised for coefficient-module combinations outside {A, k} rules."""


class NotClosedError(ValueError):
    """Raised when a class is requested for a non-cocycle / non-cycle."""


class DegreeError(ValueError):
    pass


MODULE_A = "A"
MODULE_K = "k"


class WSpace:
    """Basis of W_p blocked by (target, source) vertex pairs."""

    def __init__(self, p: int):
        self.p = p
        self.block_keys: List[Tuple[int, int]] = []
        self.block_paths: Dict[Tuple[int, int], List[Path]] = {}
        self.block_path_index: Dict[Tuple[int, int], Dict[Tuple[int, ...], int]] = {}
        self.block_basis: Dict[Tuple[int, int], List[SparseVec]] = {}
        self.flat: List[Tuple[int, int, int]] = []  # (tgt, src, local index)
        self.flat_of_block: Dict[Tuple[int, int], List[int]] = {}
        # factorization coordinates, per flat basis index
        self.left_fact: List[Dict[Tuple[int, int], object]] = []   # (arrow, prev flat)
        self.right_fact: List[Dict[Tuple[int, int], object]] = []  # (prev flat, arrow)
        self.relation_coords: List[SparseVec] = []  # p == 2 only

    @property
    def dim(self) -> int:
        return len(self.flat)

    def finish(self) -> None:
        for key in self.block_keys:
            idxs = []
            for k in range(len(self.block_basis[key])):
                idxs.append(len(self.flat))
                self.flat.append((key[0], key[1], k))
            self.flat_of_block[key] = idxs

    def block_of(self, flat_idx: int) -> Tuple[int, int]:
        j, i, _k = self.flat[flat_idx]
        return (j, i)

    def vector(self, flat_idx: int) -> SparseVec:
        j, i, k = self.flat[flat_idx]
        return self.block_basis[(j, i)][k]


class KoszulCalculus:
    """W-spaces, differentials and products for one graded algebra."""

    def __init__(self, algebra: GradedAlgebra, p_max: Optional[int] = None):
        self.algebra = algebra
        self.field = algebra.field
        self.quiver = algebra.quiver
        pres = algebra.presentation
        if p_max is None:
            p_max = 3
        self.p_max = p_max
        self.wspaces: List[WSpace] = []
        self._split_memo: Dict[Tuple[int, int], List[Dict[Tuple[int, int], object]]] = {}
        self._build_wspaces(pres)

    # -- W spaces ----------------------------------------------------------

    def _build_wspaces(self, pres) -> None:
        q = self.quiver
        field = self.field
        # p = 0: the vertices
        w0 = WSpace(0)
        for i in range(q.n_vertices):
            key = (i, i)
            w0.block_keys.append(key)
            w0.block_paths[key] = [Path.trivial(q, i)]
            w0.block_path_index[key] = {(): 0}
            w0.block_basis[key] = [{0: field.one}]
        w0.finish()
        self.wspaces.append(w0)
        if self.p_max == 0:
            return
        # p = 1: the arrows
        w1 = WSpace(1)
        arrow_flat: Dict[int, int] = {}
        for key in sorted({(q.target[a], q.source[a]) for a in range(q.n_arrows)}):
            arrows = [a for a in range(q.n_arrows)
                      if (q.target[a], q.source[a]) == key]
            w1.block_keys.append(key)
            w1.block_paths[key] = [Path.from_arrows(q, (a,)) for a in arrows]
            w1.block_path_index[key] = {(a,): k for k, a in enumerate(arrows)}
            w1.block_basis[key] = [{k: field.one} for k in range(len(arrows))]
        w1.finish()
        for flat_idx, (j, i, k) in enumerate(w1.flat):
            a = w1.block_paths[(j, i)][k].arrows[0]
            arrow_flat[a] = flat_idx
            w0_src = w0.flat_of_block[(i, i)][0]
            w0_tgt = w0.flat_of_block[(j, j)][0]
            w1.left_fact.append({(a, w0_src): field.one})
            w1.right_fact.append({(w0_tgt, a): field.one})
        self.arrow_flat = arrow_flat
        self.wspaces.append(w1)
        # p >= 2
        for p in range(2, self.p_max + 2):
            prev = self.wspaces[p - 1]
            if prev.dim == 0:
                ws = WSpace(p)
                ws.finish()
                self.wspaces.append(ws)
                continue
            ws = WSpace(p)
            paths = paths_of_weight(q, p)
            blocks: Dict[Tuple[int, int], List[Path]] = {}
            for path in paths:
                blocks.setdefault((path.target, path.source), []).append(path)
            # spanning vectors of V (x) W_{p-1} and W_{p-1} (x) V per block
            left_span: Dict[Tuple[int, int], List[Tuple[Tuple[int, int], SparseVec]]] = {}
            right_span: Dict[Tuple[int, int], List[Tuple[Tuple[int, int], SparseVec]]] = {}
            for key in sorted(blocks):
                ws.block_paths[key] = blocks[key]
                ws.block_path_index[key] = {pa.arrows: k for k, pa in enumerate(blocks[key])}
            for yflat, (jy, iy, ky) in enumerate(prev.flat):
                yvec = prev.block_basis[(jy, iy)][ky]
                ypaths = prev.block_paths[(jy, iy)]
                for a in range(q.n_arrows):
                    # left: a (x) y, the arrow is the last applied
                    if q.source[a] == jy:
                        key = (q.target[a], iy)
                        if key in blocks:
                            idx = ws.block_path_index[key]
                            vec = {idx[(a,) + ypaths[t].arrows]: c for t, c in yvec.items()}
                            left_span.setdefault(key, []).append(((a, yflat), vec))
                    # right: y (x) a, the arrow is applied first
                    if q.target[a] == iy:
                        key = (jy, q.source[a])
                        if key in blocks:
                            idx = ws.block_path_index[key]
                            vec = {idx[ypaths[t].arrows + (a,)]: c for t, c in yvec.items()}
                            right_span.setdefault(key, []).append(((yflat, a), vec))
            if p == 2:
                # W_2 is the relation space itself
                rel_by_block: Dict[Tuple[int, int], List[int]] = {}
                for r, key in enumerate(pres.relation_blocks):
                    rel_by_block.setdefault(key, []).append(r)
                for key in sorted(blocks):
                    rels = rel_by_block.get(key, [])
                    if not rels:
                        continue
                    idx = ws.block_path_index[key]
                    vecs = []
                    for r in rels:
                        vec: SparseVec = {}
                        for coeff, pair in pres.relations[r]:
                            t = idx[pair]
                            cur = field.add(vec.get(t, field.zero), coeff)
                            if field.is_zero(cur):
                                vec.pop(t, None)
                            else:
                                vec[t] = cur
                        vecs.append(vec)
                    sub = echelonize(vecs, len(blocks[key]), field)
                    if sub.dim:
                        ws.block_keys.append(key)
                        ws.block_basis[key] = sub.basis_checked()
            else:
                for key in sorted(blocks):
                    ambient = len(blocks[key])
                    lv = [v for _pair, v in left_span.get(key, [])]
                    rv = [v for _pair, v in right_span.get(key, [])]
                    if not lv or not rv:
                        continue
                    sub = intersect(echelonize(lv, ambient, field),
                                    echelonize(rv, ambient, field))
                    if sub.dim:
                        ws.block_keys.append(key)
                        ws.block_basis[key] = sub.basis_checked()
            ws.finish()
            # factorization coordinates in both product bases
            for key in ws.block_keys:
                ambient = len(ws.block_paths[key])
                lpairs = left_span.get(key, [])
                rpairs = right_span.get(key, [])
                lsolver = SpanSolver([v for _pair, v in lpairs], ambient, field)
                rsolver = SpanSolver([v for _pair, v in rpairs], ambient, field)
                for vec in ws.block_basis[key]:
                    lsol = lsolver.solve(vec)
                    rsol = rsolver.solve(vec)
                    if lsol is None or rsol is None:
                        raise AssertionError("W basis vector escaped its factorizations")
                    ws.left_fact.append({lpairs[t][0]: c for t, c in enumerate(lsol)
                                         if not field.is_zero(c)})
                    ws.right_fact.append({rpairs[t][0]: c for t, c in enumerate(rsol)
                                          if not field.is_zero(c)})
            if p == 2:
                # coordinates of each basis vector over the input relations
                rel_vec_by_block: Dict[Tuple[int, int], List[Tuple[int, SparseVec]]] = {}
                for r, key in enumerate(pres.relation_blocks):
                    idx = ws.block_path_index[key]
                    vec = {}
                    for coeff, pair in pres.relations[r]:
                        t = idx[pair]
                        cur = field.add(vec.get(t, field.zero), coeff)
                        if field.is_zero(cur):
                            vec.pop(t, None)
                        else:
                            vec[t] = cur
                    rel_vec_by_block.setdefault(key, []).append((r, vec))
                for flat_idx, (j, i, k) in enumerate(ws.flat):
                    pairs = rel_vec_by_block.get((j, i), [])
                    solver = SpanSolver([v for _r, v in pairs],
                                        len(ws.block_paths[(j, i)]), field)
                    sol = solver.solve(ws.block_basis[(j, i)][k])
                    ws.relation_coords.append(
                        {pairs[t][0]: c for t, c in enumerate(sol)
                         if not field.is_zero(c)})
            self.wspaces.append(ws)

    def w(self, p: int) -> WSpace:
        if p < len(self.wspaces):
            return self.wspaces[p]
        ws = WSpace(p)
        ws.finish()
        return ws

    def w_dims(self) -> List[int]:
        return [ws.dim for ws in self.wspaces]

    # -- coefficient modules -------------------------------------------------

    def _mod_rmul(self, module: str, value, arrow: int):
        """value * arrow in the module."""
        if module == MODULE_A:
            return self.algebra.rmul_arrow(value, arrow)
        return None  # arrows act by zero on k

    def _mod_lmul(self, module: str, arrow: int, value):
        if module == MODULE_A:
            return self.algebra.lmul_arrow(arrow, value)
        return None

    def _mod_is_zero(self, module: str, value) -> bool:
        if value is None:
            return True
        if module == MODULE_A:
            return not value
        return self.field.is_zero(value)

    def _mod_add(self, module: str, x, y, c):
        """x + c*y in the module (either argument may be None for zero)."""
        if self._mod_is_zero(module, y):
            return x
        if module == MODULE_A:
            if x is None:
                x = {}
            return self.algebra.elem_add(x, y, c)
        add = self.field.add(self.field.zero if x is None else x, self.field.mul(c, y))
        return add

    # -- cochains and chains --------------------------------------------------

    def zero_cochain(self, p: int, module: str = MODULE_A) -> "Cochain":
        return Cochain(self, p, module, {})

    def cochain_from_values(self, p: int, values: Dict[int, object],
                            module: str = MODULE_A) -> "Cochain":
        return Cochain(self, p, module, dict(values))

    def cochain_on_relations(self, rel_values: Dict[int, Elem],
                             module: str = MODULE_A) -> "Cochain":
        """Degree-2 cochain from its values on the presentation's relations."""
        ws = self.w(2)
        values: Dict[int, object] = {}
        for flat_idx in range(ws.dim):
            val = None
            for r, c in ws.relation_coords[flat_idx].items():
                if r in rel_values:
                    val = self._mod_add(module, val, rel_values[r], c)
            if not self._mod_is_zero(module, val):
                values[flat_idx] = val
        return Cochain(self, 2, module, values)

    def cochain_on_arrows(self, arrow_values: Dict[int, Elem],
                          module: str = MODULE_A) -> "Cochain":
        values = {}
        for a, val in arrow_values.items():
            if not self._mod_is_zero(module, val):
                values[self.arrow_flat[a]] = val
        return Cochain(self, 1, module, values)

    def cochain_on_vertices(self, vertex_values: Dict[int, Elem],
                            module: str = MODULE_A) -> "Cochain":
        values = {}
        w0 = self.w(0)
        for i, val in vertex_values.items():
            if not self._mod_is_zero(module, val):
                values[w0.flat_of_block[(i, i)][0]] = val
        return Cochain(self, 0, module, values)

    def fundamental_cocycle(self) -> "Cochain":
        """The identity map on the arrow space, as a 1-cochain."""
        return self.cochain_on_arrows(
            {a: self.algebra.arrow_elem(a) for a in range(self.quiver.n_arrows)})

    def fundamental_coboundary_potential(self) -> Optional[Dict[int, object]]:
        """A vertex potential with unit increment along every arrow, if any.

        When it exists, the weight-0 diagonal cochain it defines has the
        fundamental 1-cocycle as its differential, exhibiting it as a
        coboundary.
        """
        q = self.quiver
        field = self.field
        lam: Dict[int, object] = {}
        for start in range(q.n_vertices):
            if start in lam:
                continue
            lam[start] = field.zero
            stack = [start]
            while stack:
                v = stack.pop()
                for a in range(q.n_arrows):
                    nbrs = []
                    if q.source[a] == v:
                        nbrs.append((q.target[a], field.add(lam[v], field.one)))
                    if q.target[a] == v:
                        nbrs.append((q.source[a], field.sub(lam[v], field.one)))
                    for w, value in nbrs:
                        if w in lam:
                            if lam[w] != value:
                                return None
                        else:
                            lam[w] = value
                            stack.append(w)
        return lam

    def zero_chain(self, q: int, module: str = MODULE_A) -> "Chain":
        return Chain(self, q, module, {})

    def chain_from_pairs(self, q: int, pairs: Sequence[Tuple[Elem, SparseVec, Tuple[int, int]]],
                         module: str = MODULE_A) -> "Chain":
        """Build a chain from (coefficient, W_q vector in block path coords, block)."""
        ws = self.w(q)
        values: Dict[int, object] = {}
        for coeff, wvec, key in pairs:
            basis = ws.block_basis.get(key)
            if basis is None:
                if wvec:
                    raise ValueError("W component outside the computed space")
                continue
            solver = SpanSolver(basis, len(ws.block_paths[key]), self.field)
            sol = solver.solve(wvec)
            if sol is None:
                raise ValueError("W component outside the computed space")
            for k, c in enumerate(sol):
                if self.field.is_zero(c):
                    continue
                flat_idx = ws.flat_of_block[key][k]
                values[flat_idx] = self._mod_add(module, values.get(flat_idx), coeff, c)
        values = {k: v for k, v in values.items() if not self._mod_is_zero(module, v)}
        return Chain(self, q, module, values)

    # -- differentials ---------------------------------------------------------

    def apply_bK(self, f: "Cochain") -> "Cochain":
        """Cochain differential: f(x_1..x_p).x_{p+1} - (-1)^p x_1.f(x_2..x_{p+1})."""
        p = f.p
        ws_next = self.w(p + 1)
        field = self.field
        sign = field.neg(field.one) if p % 2 == 0 else field.one
        values: Dict[int, object] = {}
        for z in range(ws_next.dim):
            val = None
            for (y, beta), c in ws_next.right_fact[z].items():
                fy = f.values.get(y)
                if fy is None:
                    continue
                val = self._mod_add(f.module, val, self._mod_rmul(f.module, fy, beta), c)
            for (alpha, y2), c in ws_next.left_fact[z].items():
                fy = f.values.get(y2)
                if fy is None:
                    continue
                val = self._mod_add(f.module, val,
                                    self._mod_lmul(f.module, alpha, fy),
                                    field.mul(sign, c))
            if not self._mod_is_zero(f.module, val):
                values[z] = val
        return Cochain(self, p + 1, f.module, values)

    def apply_bK_chain(self, z: "Chain") -> "Chain":
        """Chain differential: m.x_1 (x) x_2..x_q + (-1)^q x_q.m (x) x_1..x_{q-1}."""
        q = z.q
        if q == 0:
            return self.zero_chain(0, z.module)
        ws = self.w(q)
        field = self.field
        sign = field.one if q % 2 == 0 else field.neg(field.one)
        values: Dict[int, object] = {}
        for wflat, melem in z.values.items():
            for (alpha, y), c in ws.left_fact[wflat].items():
                part = self._mod_rmul(z.module, melem, alpha)
                if not self._mod_is_zero(z.module, part):
                    values[y] = self._mod_add(z.module, values.get(y), part, c)
            for (y2, beta), c in ws.right_fact[wflat].items():
                part = self._mod_lmul(z.module, beta, melem)
                if not self._mod_is_zero(z.module, part):
                    values[y2] = self._mod_add(z.module, values.get(y2), part,
                                               field.mul(sign, c))
        values = {k: v for k, v in values.items() if not self._mod_is_zero(z.module, v)}
        return Chain(self, q - 1, z.module, values)

    # -- splits and products -----------------------------------------------------

    def split_coords(self, p: int, q: int) -> List[Dict[Tuple[int, int], object]]:
        """Coordinates of each W_{p+q} basis vector in W_p (x) W_q."""
        if p < 1 or q < 1:
            raise DegreeError("split requires positive degrees on both sides")
        memo = self._split_memo.get((p, q))
        if memo is not None:
            return memo
        field = self.field
        wp, wq, wpq = self.w(p), self.w(q), self.w(p + q)
        out: List[Dict[Tuple[int, int], object]] = []
        # solvers over W_p blocks (prefix side) and W_q blocks (suffix side)
        psolvers: Dict[Tuple[int, int], SpanSolver] = {}
        qsolvers: Dict[Tuple[int, int], SpanSolver] = {}
        for key in wp.block_keys:
            psolvers[key] = SpanSolver(wp.block_basis[key], len(wp.block_paths[key]), field)
        for key in wq.block_keys:
            qsolvers[key] = SpanSolver(wq.block_basis[key], len(wq.block_paths[key]), field)
        for flat_idx, (j, i, k) in enumerate(wpq.flat):
            vec = wpq.block_basis[(j, i)][k]
            paths = wpq.block_paths[(j, i)]
            # group path coordinates by the suffix (last q arrows)
            by_suffix: Dict[Tuple[int, ...], SparseVec] = {}
            for t, c in vec.items():
                arrows = paths[t].arrows
                by_suffix.setdefault(arrows[p:], {})[arrows[:p]] = c
            coords: Dict[Tuple[int, int], object] = {}
            rows: Dict[int, SparseVec] = {}
            for suffix, pref_vec in by_suffix.items():
                mid = self.quiver.target[suffix[0]]
                pkey = (j, mid)
                solver = psolvers.get(pkey)
                if solver is None:
                    raise AssertionError("prefix block missing from W_p")
                local_index = wp.block_path_index[pkey]
                target = {local_index[pref]: c for pref, c in pref_vec.items()}
                sol = solver.solve(target)
                if sol is None:
                    raise AssertionError("prefix escaped W_p during split")
                for kk, c in enumerate(sol):
                    if field.is_zero(c):
                        continue
                    xflat = wp.flat_of_block[pkey][kk]
                    rows.setdefault(xflat, {})[suffix] = c
            for xflat, suffix_vec in rows.items():
                mid = wp.flat[xflat][1]  # source vertex of the prefix
                qkey = (mid, i)
                solver = qsolvers.get(qkey)
                if solver is None:
                    raise AssertionError("suffix block missing from W_q")
                local_index = wq.block_path_index[qkey]
                target = {local_index[suf]: c for suf, c in suffix_vec.items()}
                sol = solver.solve(target)
                if sol is None:
                    raise AssertionError("suffix escaped W_q during split")
                for kk, c in enumerate(sol):
                    if field.is_zero(c):
                        continue
                    yflat = wq.flat_of_block[qkey][kk]
                    coords[(xflat, yflat)] = c
            out.append(coords)
        self._split_memo[(p, q)] = out
        return out

    def _mod_product(self, mod_f: str, mod_g: str, fval, gval,
                     fblock: Tuple[int, int], gblock: Tuple[int, int]):
        """Product in P (x)_A Q for modules in {A, k}; returns (module, value)."""
        if fval is None or gval is None:
            return (MODULE_A, None)
        if mod_f == MODULE_A and mod_g == MODULE_A:
            return (MODULE_A, self.algebra.multiply(fval, gval))
        if mod_f == MODULE_A and mod_g == MODULE_K:
            # A (x)_A k: augmentation of the A value at the joining vertex
            mid = fblock[1]
            eps = fval.get((0, mid), self.field.zero)
            scalar = self.field.mul(eps, gval)
            # nonzero only when the A value has a vertex component there
            return (MODULE_K, scalar if fblock[0] == mid else self.field.zero)
        if mod_f == MODULE_K and mod_g == MODULE_A:
            mid = gblock[0]
            eps = gval.get((0, mid), self.field.zero)
            scalar = self.field.mul(fval, eps)
            return (MODULE_K, scalar if gblock[1] == mid else self.field.zero)
        raise ModuleError("at least one coefficient module must be the algebra")

    def cup(self, f: "Cochain", g: "Cochain") -> "Cochain":
        """(f cup g)(x_1..x_{p+q}) = (-1)^{pq} f(x_1..x_p) g(x_{p+1}..)."""
        p, q = f.p, g.p
        field = self.field
        if f.module == MODULE_K and g.module == MODULE_K:
            raise ModuleError("at least one coefficient module must be the algebra")
        out_module = MODULE_K if MODULE_K in (f.module, g.module) else MODULE_A
        ws_out = self.w(p + q)
        w0 = self.w(0)
        sign = field.one if (p * q) % 2 == 0 else field.neg(field.one)
        values: Dict[int, object] = {}
        if p == 0 or q == 0:
            inner = g if p == 0 else f
            ws_in = self.w(inner.p)
            for z, val in inner.values.items():
                j, i = ws_in.block_of(z)
                if p == 0:
                    fv = f.values.get(w0.flat_of_block[(j, j)][0])
                    mod, prod = self._mod_product(f.module, g.module, fv, val,
                                                  (j, j), (j, i))
                else:
                    gv = g.values.get(w0.flat_of_block[(i, i)][0])
                    mod, prod = self._mod_product(f.module, g.module, val, gv,
                                                  (j, i), (i, i))
                if not self._mod_is_zero(out_module, prod):
                    values[z] = self._mod_add(out_module, values.get(z), prod, sign)
        else:
            splits = self.split_coords(p, q)
            wp, wq = self.w(p), self.w(q)
            for z in range(ws_out.dim):
                val = None
                for (x, y), c in splits[z].items():
                    fv = f.values.get(x)
                    gv = g.values.get(y)
                    if fv is None or gv is None:
                        continue
                    _mod, prod = self._mod_product(f.module, g.module, fv, gv,
                                                   wp.block_of(x), wq.block_of(y))
                    if self._mod_is_zero(out_module, prod):
                        continue
                    val = self._mod_add(out_module, val, prod, c)
                if not self._mod_is_zero(out_module, val):
                    values[z] = self._mod_add(out_module, None, val, sign)
        values = {k: v for k, v in values.items() if not self._mod_is_zero(out_module, v)}
        return Cochain(self, p + q, out_module, values)

    def cap(self, f: "Cochain", z: "Chain", side: str = "left") -> "Chain":
        """Cap products.

        side="left":  f cap z = (-1)^{(q-p)p} (f(x_{q-p+1}..x_q) m) (x) x_1..x_{q-p}
        side="right": z cap f = (-1)^{pq} (m f(x_1..x_p)) (x) x_{p+1}..x_q
        """
        p, q = f.p, z.q
        if p > q:
            raise DegreeError("cap requires the cochain degree at most the chain degree")
        if f.module == MODULE_K and z.module == MODULE_K:
            raise ModuleError("at least one coefficient module must be the algebra")
        out_module = MODULE_K if MODULE_K in (f.module, z.module) else MODULE_A
        field = self.field
        ws_in = self.w(q)
        ws_out = self.w(q - p)
        w0 = self.w(0)
        if side == "left":
            sign = field.one if ((q - p) * p) % 2 == 0 else field.neg(field.one)
        elif side == "right":
            sign = field.one if (p * q) % 2 == 0 else field.neg(field.one)
        else:
            raise ValueError("side must be 'left' or 'right'")
        values: Dict[int, object] = {}

        def add(out_flat: int, prod, c) -> None:
            if self._mod_is_zero(out_module, prod):
                return
            values[out_flat] = self._mod_add(out_module, values.get(out_flat), prod,
                                             field.mul(sign, c))

        for wflat, melem in z.values.items():
            j, i = ws_in.block_of(wflat)  # coefficient melem lies in e_i M e_j
            if p == 0:
                if side == "left":
                    fv = f.values.get(w0.flat_of_block[(i, i)][0])
                    _m, prod = self._mod_product(f.module, z.module, fv, melem,
                                                 (i, i), (i, j))
                else:
                    fv = f.values.get(w0.flat_of_block[(j, j)][0])
                    _m, prod = self._mod_product(z.module, f.module, melem, fv,
                                                 (i, j), (j, j))
                add(wflat, prod, field.one)
                continue
            if p == q:
                fv = f.values.get(wflat)
                if fv is None:
                    continue
                out_block = (j, j) if side == "left" else (i, i)
                out_flat = ws_out.flat_of_block.get(out_block, [None])[0]
                if side == "left":
                    _m, prod = self._mod_product(f.module, z.module, fv, melem,
                                                 (j, i), (i, j))
                else:
                    _m, prod = self._mod_product(z.module, f.module, melem, fv,
                                                 (i, j), (j, i))
                add(out_flat, prod, field.one)
                continue
            if side == "left":
                splits = self.split_coords(q - p, p)
                wsuf = self.w(p)
                for (u, s), c in splits[wflat].items():
                    fv = f.values.get(s)
                    if fv is None:
                        continue
                    mid = wsuf.block_of(s)[0]
                    _m, prod = self._mod_product(f.module, z.module, fv, melem,
                                                 (mid, i), (i, j))
                    add(u, prod, c)
            else:
                splits = self.split_coords(p, q - p)
                wpre = self.w(p)
                for (s, u), c in splits[wflat].items():
                    fv = f.values.get(s)
                    if fv is None:
                        continue
                    mid = wpre.block_of(s)[1]
                    _m, prod = self._mod_product(z.module, f.module, melem, fv,
                                                 (i, j), (j, mid))
                    add(u, prod, c)
        values = {k: v for k, v in values.items() if not self._mod_is_zero(out_module, v)}
        return Chain(self, q - p, out_module, values)

    def cup_bracket(self, f: "Cochain", g: "Cochain") -> "Cochain":
        sign = self.field.one if (f.p * g.p) % 2 == 0 else self.field.neg(self.field.one)
        return self.cup(f, g).add(self.cup(g, f), self.field.neg(sign))

    def cap_bracket(self, f: "Cochain", z: "Chain") -> "Chain":
        sign = self.field.one if (f.p * z.q) % 2 == 0 else self.field.neg(self.field.one)
        return self.cap(f, z, "left").add(self.cap(f, z, "right"), self.field.neg(sign))


class Cochain:
    """Element of Hom_{k^e}(W_p, M), stored by W-basis index."""

    def __init__(self, kd: KoszulCalculus, p: int, module: str, values: Dict[int, object]):
        self.kd = kd
        self.p = p
        self.module = module
        self.values = values

    def is_zero(self) -> bool:
        return not self.values

    def add(self, other: "Cochain", c=None) -> "Cochain":
        if other.p != self.p or other.module != self.module:
            raise DegreeError("cochain mismatch in addition")
        kd = self.kd
        if c is None:
            c = kd.field.one
        values = dict(self.values)
        for k, v in other.values.items():
            cur = kd._mod_add(self.module, values.get(k), v, c)
            if kd._mod_is_zero(self.module, cur):
                values.pop(k, None)
            else:
                values[k] = cur
        return Cochain(kd, self.p, self.module, values)

    def scale(self, c) -> "Cochain":
        kd = self.kd
        if kd.field.is_zero(c):
            return Cochain(kd, self.p, self.module, {})
        values = {}
        for k, v in self.values.items():
            values[k] = kd._mod_add(self.module, None, v, c)
        return Cochain(kd, self.p, self.module, values)

    def equals(self, other: "Cochain") -> bool:
        return self.add(other, self.kd.field.neg(self.kd.field.one)).is_zero()

    def coefficient_weights(self) -> List[int]:
        if self.module != MODULE_A:
            return []
        out = set()
        for v in self.values.values():
            out.update(m for (m, _pos) in v)
        return sorted(out)

    def weight_component(self, m: int) -> "Cochain":
        if self.module != MODULE_A:
            return self
        values = {}
        for k, v in self.values.items():
            part = {t: c for t, c in v.items() if t[0] == m}
            if part:
                values[k] = part
        return Cochain(self.kd, self.p, self.module, values)

    def is_cocycle(self) -> bool:
        return self.kd.apply_bK(self).is_zero()


class Chain:
    """Element of M (x)_{k^e} W_q, stored by W-basis index."""

    def __init__(self, kd: KoszulCalculus, q: int, module: str, values: Dict[int, object]):
        self.kd = kd
        self.q = q
        self.module = module
        self.values = values

    def is_zero(self) -> bool:
        return not self.values

    def add(self, other: "Chain", c=None) -> "Chain":
        if other.q != self.q or other.module != self.module:
            raise DegreeError("chain mismatch in addition")
        kd = self.kd
        if c is None:
            c = kd.field.one
        values = dict(self.values)
        for k, v in other.values.items():
            cur = kd._mod_add(self.module, values.get(k), v, c)
            if kd._mod_is_zero(self.module, cur):
                values.pop(k, None)
            else:
                values[k] = cur
        return Chain(kd, self.q, self.module, values)

    def scale(self, c) -> "Chain":
        kd = self.kd
        if kd.field.is_zero(c):
            return Chain(kd, self.q, self.module, {})
        return Chain(kd, self.q, self.module,
                     {k: kd._mod_add(self.module, None, v, c) for k, v in self.values.items()})

    def equals(self, other: "Chain") -> bool:
        return self.add(other, self.kd.field.neg(self.kd.field.one)).is_zero()

    def coefficient_weights(self) -> List[int]:
        if self.module != MODULE_A:
            return []
        out = set()
        for v in self.values.values():
            out.update(m for (m, _pos) in v)
        return sorted(out)

    def weight_component(self, n: int) -> "Chain":
        if self.module != MODULE_A:
            return self
        values = {}
        for k, v in self.values.items():
            part = {t: c for t, c in v.items() if t[0] == n}
            if part:
                values[k] = part
        return Chain(self.kd, self.q, self.module, values)

    def is_cycle(self) -> bool:
        return self.kd.apply_bK_chain(self).is_zero()
