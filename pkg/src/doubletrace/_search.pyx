# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure-Python search kernel.

Same semantics, same traversal order, same results; only the inner loops
and the union-find scratch work are C.  Keep any behavior change in both
backends or in neither.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

FREE, PAR, ANTI, ARC = 0, 1, 2, 3

MODE_EXISTS = 0
MODE_COUNT_RAW = 1
MODE_ENUM_FIXED = 2

BACKEND = "compiled"

cdef int C_FREE = 0, C_PAR = 1, C_ANTI = 2, C_ARC = 3
cdef int C_EXISTS = 0, C_COUNT = 1, C_ENUM = 2


cdef class _Search:
    cdef int n, m, L
    cdef int require_strong, d_max, mode, check_local
    cdef long long count
    cdef list found
    cdef int* ea
    cdef int* eb
    cdef int* labels
    cdef int* deg
    cdef int* inc_count
    cdef int* inc_off
    cdef int* inc_flat
    cdef int* lo_in
    cdef int* hi_in
    cdef int* use
    cdef int* fflag
    cdef int* rem
    cdef int* link_off
    cdef int* link_len
    cdef int* link_a
    cdef int* link_b
    cdef int* step_e
    cdef int* step_f
    # union-find scratch, stamped per call
    cdef int* uf_parent
    cdef int* uf_stamp
    cdef int* uf_present
    cdef int* root_stamp
    cdef int* comp_size
    cdef int* comp_used
    cdef int epoch

    def __cinit__(self, int n, list ea, list eb, list labels,
                  int require_strong, int d_max, int mode):
        cdef int m = len(ea)
        cdef int i, v, total
        self.n = n
        self.m = m
        self.L = 2 * m
        self.require_strong = require_strong
        self.d_max = d_max
        self.mode = mode
        self.check_local = 1 if (require_strong or d_max > 0) else 0
        self.count = 0
        self.found = []
        self.epoch = 0

        self.ea = <int*> PyMem_Malloc(m * sizeof(int))
        self.eb = <int*> PyMem_Malloc(m * sizeof(int))
        self.labels = <int*> PyMem_Malloc(m * sizeof(int))
        self.use = <int*> PyMem_Malloc(m * sizeof(int))
        self.fflag = <int*> PyMem_Malloc(m * sizeof(int))
        self.uf_parent = <int*> PyMem_Malloc(m * sizeof(int))
        self.uf_stamp = <int*> PyMem_Malloc(m * sizeof(int))
        self.uf_present = <int*> PyMem_Malloc(2 * m * sizeof(int))
        self.root_stamp = <int*> PyMem_Malloc(m * sizeof(int))
        self.comp_size = <int*> PyMem_Malloc(m * sizeof(int))
        self.comp_used = <int*> PyMem_Malloc(m * sizeof(int))
        self.step_e = <int*> PyMem_Malloc((self.L + 1) * sizeof(int))
        self.step_f = <int*> PyMem_Malloc((self.L + 1) * sizeof(int))
        self.deg = <int*> PyMem_Malloc(n * sizeof(int))
        self.inc_count = <int*> PyMem_Malloc(n * sizeof(int))
        self.inc_off = <int*> PyMem_Malloc((n + 1) * sizeof(int))
        self.lo_in = <int*> PyMem_Malloc(n * sizeof(int))
        self.hi_in = <int*> PyMem_Malloc(n * sizeof(int))
        self.rem = <int*> PyMem_Malloc(n * sizeof(int))
        self.link_off = <int*> PyMem_Malloc((n + 1) * sizeof(int))
        self.link_len = <int*> PyMem_Malloc(n * sizeof(int))

        for i in range(m):
            self.ea[i] = ea[i]
            self.eb[i] = eb[i]
            self.labels[i] = labels[i]
            self.use[i] = 0
            self.fflag[i] = 0
            self.uf_stamp[i] = 0
            self.root_stamp[i] = 0
        for v in range(n):
            self.deg[v] = 0
            self.inc_count[v] = 0
        for i in range(m):
            self.deg[self.ea[i]] += 1
            self.deg[self.eb[i]] += 1
            self.inc_count[self.ea[i]] += 1
            if self.eb[i] != self.ea[i]:
                self.inc_count[self.eb[i]] += 1

        total = 0
        for v in range(n):
            self.inc_off[v] = total
            total += self.inc_count[v]
        self.inc_off[n] = total
        self.inc_flat = <int*> PyMem_Malloc((total if total else 1) * sizeof(int))
        for v in range(n):
            self.link_len[v] = 0
        cdef int* fill = <int*> PyMem_Malloc(n * sizeof(int))
        for v in range(n):
            fill[v] = 0
        for i in range(m):
            v = self.ea[i]
            self.inc_flat[self.inc_off[v] + fill[v]] = i
            fill[v] += 1
            if self.eb[i] != self.ea[i]:
                v = self.eb[i]
                self.inc_flat[self.inc_off[v] + fill[v]] = i
                fill[v] += 1
        PyMem_Free(fill)

        # one link per visit plus one temporary for the closing test
        total = 0
        for v in range(n):
            self.link_off[v] = total
            total += self.deg[v] + 1
        self.link_off[n] = total
        self.link_a = <int*> PyMem_Malloc((total if total else 1) * sizeof(int))
        self.link_b = <int*> PyMem_Malloc((total if total else 1) * sizeof(int))

        for v in range(n):
            self.rem[v] = 2 * self.deg[v]

    def __dealloc__(self):
        PyMem_Free(self.ea)
        PyMem_Free(self.eb)
        PyMem_Free(self.labels)
        PyMem_Free(self.use)
        PyMem_Free(self.fflag)
        PyMem_Free(self.uf_parent)
        PyMem_Free(self.uf_stamp)
        PyMem_Free(self.uf_present)
        PyMem_Free(self.root_stamp)
        PyMem_Free(self.comp_size)
        PyMem_Free(self.comp_used)
        PyMem_Free(self.step_e)
        PyMem_Free(self.step_f)
        PyMem_Free(self.deg)
        PyMem_Free(self.inc_count)
        PyMem_Free(self.inc_off)
        PyMem_Free(self.inc_flat)
        PyMem_Free(self.lo_in)
        PyMem_Free(self.hi_in)
        PyMem_Free(self.rem)
        PyMem_Free(self.link_off)
        PyMem_Free(self.link_len)
        PyMem_Free(self.link_a)
        PyMem_Free(self.link_b)

    cdef int prepare_bounds(self):
        """Arrival-count bounds and static parity; 0 means infeasible."""
        cdef int i, v, a, b, lbl
        cdef int* anti_ends = <int*> PyMem_Malloc(self.n * sizeof(int))
        cdef int* free_ends = <int*> PyMem_Malloc(self.n * sizeof(int))
        for v in range(self.n):
            self.lo_in[v] = 0
            self.hi_in[v] = 0
            anti_ends[v] = 0
            free_ends[v] = 0
        for i in range(self.m):
            a = self.ea[i]
            b = self.eb[i]
            lbl = self.labels[i]
            if a == b:
                self.lo_in[a] += 2
                self.hi_in[a] += 2
                continue
            if lbl == C_ARC:
                self.lo_in[b] += 2
                self.hi_in[b] += 2
            elif lbl == C_ANTI:
                self.lo_in[a] += 1
                self.hi_in[a] += 1
                self.lo_in[b] += 1
                self.hi_in[b] += 1
                anti_ends[a] += 1
                anti_ends[b] += 1
            else:
                self.hi_in[a] += 2
                self.hi_in[b] += 2
                if lbl == C_FREE:
                    free_ends[a] += 1
                    free_ends[b] += 1
        for v in range(self.n):
            if self.lo_in[v] > self.deg[v] or self.deg[v] > self.hi_in[v]:
                PyMem_Free(anti_ends)
                PyMem_Free(free_ends)
                return 0
            if free_ends[v] == 0 and (anti_ends[v] - self.deg[v]) % 2 != 0:
                PyMem_Free(anti_ends)
                PyMem_Free(free_ends)
                return 0
        PyMem_Free(anti_ends)
        PyMem_Free(free_ends)
        return 1

    cdef int uf_find(self, int x):
        cdef int r = x
        while self.uf_parent[r] != r:
            self.uf_parent[r] = self.uf_parent[self.uf_parent[r]]
            r = self.uf_parent[r]
        return r

    cdef int vertex_ok(self, int v):
        """Frozen-component test on the current links at v."""
        cdef int off = self.link_off[v]
        cdef int ln = self.link_len[v]
        cdef int k, z, r, x, y, pcnt, idx
        self.epoch += 1
        pcnt = 0
        for k in range(ln):
            x = self.link_a[off + k]
            y = self.link_b[off + k]
            if self.uf_stamp[x] != self.epoch:
                self.uf_stamp[x] = self.epoch
                self.uf_parent[x] = x
                self.uf_present[pcnt] = x
                pcnt += 1
            if self.uf_stamp[y] != self.epoch:
                self.uf_stamp[y] = self.epoch
                self.uf_parent[y] = y
                self.uf_present[pcnt] = y
                pcnt += 1
        for k in range(ln):
            x = self.uf_find(self.link_a[off + k])
            y = self.uf_find(self.link_b[off + k])
            if x != y:
                self.uf_parent[x] = y
        for idx in range(pcnt):
            z = self.uf_present[idx]
            r = self.uf_find(z)
            if self.root_stamp[r] != self.epoch:
                self.root_stamp[r] = self.epoch
                self.comp_size[r] = 0
                self.comp_used[r] = 1
            self.comp_size[r] += 1
            if self.use[z] != 2:
                self.comp_used[r] = 0
        for idx in range(pcnt):
            z = self.uf_present[idx]
            r = self.uf_find(z)
            if r != z:
                continue
            if self.comp_used[r]:
                if self.require_strong and self.comp_size[r] < self.inc_count[v]:
                    return 0
                if 0 < self.d_max and self.comp_size[r] <= self.d_max:
                    return 0
        return 1

    cdef int accept(self, int start, int first_edge, int prev_edge):
        cdef int off = self.link_off[start]
        cdef int ln = self.link_len[start]
        cdef int ok
        self.link_a[off + ln] = prev_edge
        self.link_b[off + ln] = first_edge
        self.link_len[start] = ln + 1
        ok = self.vertex_ok(start)
        self.link_len[start] = ln
        return ok

    cdef int edge_delta(self, int u_count, int lbl):
        if u_count == 0 and lbl == C_PAR:
            return 2
        if lbl == C_FREE:
            return 1
        return 0

    cdef int extend(self, int pos, int depth, int prev_edge, int start,
                    int first_edge):
        cdef int ii, e, u, lbl, a, b, f, w, d_shift, ok, nf, fi
        cdef int off
        if depth == self.L:
            if pos != start:
                return 0
            if self.check_local and not self.accept(start, first_edge, prev_edge):
                return 0
            if self.mode == C_COUNT:
                self.count += 1
                return 0
            self.found.append(
                [(self.step_e[fi], self.step_f[fi]) for fi in range(self.L)]
            )
            return 1 if self.mode == C_EXISTS else 0
        for ii in range(self.inc_count[pos]):
            e = self.inc_flat[self.inc_off[pos] + ii]
            u = self.use[e]
            if u == 2:
                continue
            lbl = self.labels[e]
            a = self.ea[e]
            b = self.eb[e]
            nf = 2 if a == b else 1
            for fi in range(nf):
                if a == b:
                    f = fi
                else:
                    f = 0 if pos == a else 1
                if lbl == C_ARC and f != 0:
                    continue
                if u == 1:
                    if lbl == C_PAR and f != self.fflag[e]:
                        continue
                    if lbl == C_ANTI and f == self.fflag[e]:
                        continue
                    if self.check_local and prev_edge == e:
                        if self.d_max > 0 or self.inc_count[pos] > 1:
                            continue
                if a == b:
                    w = a
                else:
                    w = b if f == 0 else a

                d_shift = 0 if a == b else self.edge_delta(u, lbl)
                if d_shift:
                    self.lo_in[w] += d_shift
                    self.hi_in[pos] -= d_shift
                    if self.lo_in[w] > self.deg[w] or self.hi_in[pos] < self.deg[pos]:
                        self.lo_in[w] -= d_shift
                        self.hi_in[pos] += d_shift
                        continue

                self.use[e] = u + 1
                if u == 0:
                    self.fflag[e] = f
                off = self.link_off[pos]
                self.link_a[off + self.link_len[pos]] = prev_edge
                self.link_b[off + self.link_len[pos]] = e
                self.link_len[pos] += 1
                self.rem[pos] -= 1
                self.rem[w] -= 1
                self.step_e[depth] = e
                self.step_f[depth] = f

                ok = 1
                if self.check_local and pos != start:
                    ok = self.vertex_ok(pos)
                if ok and pos == start and self.rem[start] == 0 and depth + 1 < self.L:
                    ok = 0
                if ok and self.rem[w] == 0 and depth + 1 < self.L:
                    ok = 0
                if ok and self.extend(w, depth + 1, e, start, first_edge):
                    return 1

                self.rem[pos] += 1
                self.rem[w] += 1
                self.link_len[pos] -= 1
                self.use[e] = u
                if d_shift:
                    self.lo_in[w] -= d_shift
                    self.hi_in[pos] += d_shift
        return 0

    def search(self):
        cdef int e0, f0, a, b, start, w0, d_shift, stop, has_arcs, i
        cdef list roots
        if not self.prepare_bounds():
            return self.finish()
        has_arcs = 0
        for i in range(self.m):
            if self.labels[i] == C_ARC:
                has_arcs = 1
                break
        if self.mode == C_COUNT:
            roots = [
                (e, f)
                for e in range(self.m)
                for f in (0, 1)
                if self.labels[e] != C_ARC or f == 0
            ]
        elif has_arcs:
            roots = [(0, f) for f in (0, 1) if self.labels[0] != C_ARC or f == 0]
        else:
            roots = [(0, 0)]

        for e0, f0 in roots:
            a = self.ea[e0]
            b = self.eb[e0]
            start = a if (a == b or f0 == 0) else b
            w0 = a if a == b else (b if f0 == 0 else a)
            d_shift = 0 if a == b else self.edge_delta(0, self.labels[e0])
            if d_shift:
                self.lo_in[w0] += d_shift
                self.hi_in[start] -= d_shift
                if self.lo_in[w0] > self.deg[w0] or self.hi_in[start] < self.deg[start]:
                    self.lo_in[w0] -= d_shift
                    self.hi_in[start] += d_shift
                    continue
            self.use[e0] = 1
            self.fflag[e0] = f0
            self.rem[start] -= 1
            self.rem[w0] -= 1
            self.step_e[0] = e0
            self.step_f[0] = f0
            stop = self.extend(w0, 1, e0, start, e0)
            self.rem[start] += 1
            self.rem[w0] += 1
            self.use[e0] = 0
            if d_shift:
                self.lo_in[w0] -= d_shift
                self.hi_in[start] += d_shift
            if stop:
                break
        return self.finish()

    def finish(self):
        if self.mode == C_COUNT:
            return self.count
        if self.mode == C_ENUM:
            return [tuple(s) for s in self.found]
        return list(self.found[0]) if self.found else None


def run(n, ea, eb, labels, require_strong=False, d_max=0, mode=MODE_EXISTS):
    """Search for double traces of the labeled host.

    Returns a step list or None (exists mode), a raw sequence count, or the
    list of all satisfying sequences whose first step is normalized to the
    lowest edge (enumerate mode).
    """
    if len(ea) == 0:
        if mode == MODE_COUNT_RAW:
            return 0
        if mode == MODE_ENUM_FIXED:
            return []
        return []  # the empty trace
    s = _Search(n, list(ea), list(eb), list(labels),
                1 if require_strong else 0, d_max, mode)
    return s.search()
