"""Pure-Python census search kernel.

DFS over the cyclic orders of a fixed inverse-closed generating set X,
pruned by incremental skew-propagation failure: the partial cycle pins phi
on a path of X and pi-mod-d values wherever the inverse positions of two
consecutive entries are already placed; products then propagate through the
skew-morphism axiom, and any clash (conflicting image, broken injectivity,
or an X-element forced away from its cycle successor) kills the branch.

A complete, conflict-free propagation covers all of D_n, so the surviving
cycles are exactly those whose rotation extends to a candidate table; the
caller re-certifies each survivor with the authoritative engine.

dihedralmaps._speedups is the compiled twin of this module; keep the two in
sync.  Results and their order must be identical.
"""

from __future__ import annotations

__all__ = ["search_regular_cycles"]

IS_COMPILED = False


class _State:
    __slots__ = ("cycle", "pos", "phi", "pid", "preim", "done", "donep")

    def __init__(self, n2: int, d: int):
        self.cycle = [-1] * d
        self.pos = [-1] * n2
        self.phi = [-1] * n2
        self.pid = [-1] * n2
        self.preim = [-1] * n2
        self.done = [0] * n2
        self.donep = [0] * n2

    def copy(self) -> "_State":
        st = _State.__new__(_State)
        st.cycle = self.cycle[:]
        st.pos = self.pos[:]
        st.phi = self.phi[:]
        st.pid = self.pid[:]
        st.preim = self.preim[:]
        st.done = self.done[:]
        st.donep = self.donep[:]
        return st


def _assign_phi(st: _State, g: int, v: int) -> bool:
    cur = st.phi[g]
    if cur >= 0:
        return cur == v
    if st.preim[v] >= 0 and st.preim[v] != g:
        return False
    st.phi[g] = v
    st.preim[v] = g
    return True


def _assign_pid(st: _State, g: int, v: int) -> bool:
    cur = st.pid[g]
    if cur >= 0:
        return cur == v
    st.pid[g] = v
    return True


def _seed_pids(st: _State, d: int, inv: tuple) -> bool:
    """pi(x_i) = c(i+1) - c(i) mod d wherever both inverse positions exist.

    Position i+1 (mod d) is only adjacent to i once placed, and placements
    fill left to right, so an unplaced entry shows up as cycle[i] = -1.
    """
    cycle, pos = st.cycle, st.pos
    for i in range(d):
        x = cycle[i]
        if x < 0:
            continue
        nxt = cycle[(i + 1) % d]
        if nxt < 0:
            continue
        ci = pos[inv[x]]
        cn = pos[inv[nxt]]
        if ci < 0 or cn < 0:
            continue
        if not _assign_pid(st, x, (cn - ci) % d):
            return False
    return True


def _propagate(st: _State, n2: int, d: int, mul: tuple) -> bool:
    """Sweep the axiom over all known pairs until a fixpoint or a clash."""
    cycle = st.cycle
    phi, pid = st.phi, st.pid
    changed = True
    while changed:
        changed = False
        for g in range(n2):
            pg = pid[g]
            if phi[g] < 0 or pg < 0:
                continue
            mask = st.done[g]
            maskp = st.donep[g]
            full = (1 << d) - 1
            if mask == full and maskp == full:
                continue
            gm = g * n2
            fm = phi[g] * n2
            for t in range(d):
                bit = 1 << t
                x = cycle[t]
                if x < 0:
                    continue
                h = mul[gm + x]
                if not (mask & bit):
                    tgt = cycle[(t + pg) % d]
                    if tgt >= 0:
                        if not _assign_phi(st, h, mul[fm + tgt]):
                            return False
                        mask |= bit
                        changed = True
                if not (maskp & bit):
                    s = 0
                    ok = True
                    for i in range(pg):
                        xi = cycle[(t + i) % d]
                        if xi < 0 or pid[xi] < 0:
                            ok = False
                            break
                        s += pid[xi]
                    if ok:
                        if not _assign_pid(st, h, s % d):
                            return False
                        maskp |= bit
                        changed = True
            st.done[g] = mask
            st.donep[g] = maskp
    return True


def _place(st: _State, x: int, k: int, d: int, n2: int, mul: tuple, inv: tuple):
    """Place x at position k on a copy of st; None when propagation clashes."""
    nst = st.copy()
    nst.cycle[k] = x
    nst.pos[x] = k
    complete = k == d - 1
    if k > 0 and not _assign_phi(nst, nst.cycle[k - 1], x):
        return None
    if complete and not _assign_phi(nst, x, nst.cycle[0]):
        return None
    if not _seed_pids(nst, d, inv):
        return None
    if not _propagate(nst, n2, d, mul):
        return None
    return nst


def search_regular_cycles(
    n: int, x_ids: tuple, mul: tuple, inv: tuple
) -> list[tuple]:
    """All cyclic orders of X (starting at its least element) whose rotation
    propagates to a complete consistent skew table."""
    d = len(x_ids)
    n2 = 2 * n
    in_x = [False] * n2
    for x in x_ids:
        in_x[x] = True

    root = _State(n2, d)
    root.phi[0] = 0
    root.preim[0] = 0
    root.pid[0] = 1 % d

    results: list[tuple] = []

    def descend(st: _State, k: int) -> None:
        if k == d:
            if any(v < 0 for v in st.phi) or any(v < 0 for v in st.pid):
                raise AssertionError("complete cycle left the table partial")
            results.append(tuple(st.cycle))
            return
        forced = st.phi[st.cycle[k - 1]] if k > 0 else -1
        if forced >= 0:
            if not in_x[forced] or st.pos[forced] >= 0:
                return
            candidates = [forced]
        else:
            candidates = [x for x in x_ids if st.pos[x] < 0]
        for x in candidates:
            nst = _place(st, x, k, d, n2, mul, inv)
            if nst is not None:
                descend(nst, k + 1)

    first = _place(root, x_ids[0], 0, d, n2, mul, inv)
    if first is not None:
        descend(first, 1)
    return results
