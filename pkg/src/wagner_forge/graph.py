"""Small directed-graph helpers shared by the automata modules.

Graphs are given as ``succ(node) -> iterable of nodes`` over dense integer
node ids ``0..n-1``.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence

Succ = Callable[[int], Iterable[int]]


def tarjan_scc(n: int, succ: Succ, roots: Iterable[int] | None = None) -> tuple[list[list[int]], list[int]]:
    """Strongly connected components, iterative Tarjan.

    Returns ``(components, comp_of)`` where ``comp_of[v] == -1`` for nodes not
    reached from ``roots`` (all nodes when ``roots`` is None). Components come
    out in reverse topological order (sinks first).
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in (range(n) if roots is None else roots):
        if index[root] != -1:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(comps)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps, comp_of


def is_loop(comp: Sequence[int], succ: Succ) -> bool:
    """An SCC is a loop iff it has at least one internal edge."""
    if len(comp) > 1:
        return True
    v = comp[0]
    return any(w == v for w in succ(v))


def reachable(roots: Iterable[int], succ: Succ) -> set[int]:
    seen = set(roots)
    todo = deque(seen)
    while todo:
        v = todo.popleft()
        for w in succ(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def shortest_path(
    source: int,
    targets: Callable[[int], bool],
    labelled_succ: Callable[[int], Iterable[tuple[str, int]]],
    allowed: Callable[[int], bool] = lambda _: True,
    nonempty: bool = False,
) -> tuple[str, int] | None:
    """BFS for a labelled path from ``source`` to a node satisfying ``targets``.

    Returns ``(label_word, end_node)``. With ``nonempty`` the path must use at
    least one edge (used to close cycles).
    """
    parent: dict[int, tuple[int, str] | None] = {source: None}
    todo = deque([source])
    if not nonempty and targets(source):
        return "", source
    while todo:
        v = todo.popleft()
        for label, w in labelled_succ(v):
            if not allowed(w):
                continue
            if targets(w):
                word = [label]
                x = v
                while parent[x] is not None:
                    px, lab = parent[x]
                    word.append(lab)
                    x = px
                return "".join(reversed(word)), w
            if w not in parent:
                parent[w] = (v, label)
                todo.append(w)
    return None
