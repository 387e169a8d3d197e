"""Graphviz rendering of evaluation trees.

Leaves that end in the same basis state are joined by a connector: solid blue
when their amplitudes have the same sign (they reinforce), dashed red when the
signs differ (they annihilate).
"""
from __future__ import annotations

from .amplitudes import format_amplitude
from .circuit import bits_str
from .interpreter import EvalTree


def ket_label(state, ascii: bool = False) -> str:
    return f"|{bits_str(state)}{'>' if ascii else '⟩'}"


def leaf_pairs(tree: EvalTree) -> list[tuple[int, int, str]]:
    """``(i, j, kind)`` for consecutive same-state leaves, indices in leaf order."""
    by_state: dict = {}
    for i, w in enumerate(tree.leaves()):
        by_state.setdefault(w.state, []).append((i, w.amp.numerator > 0))
    pairs = []
    for group in by_state.values():
        for (i, si), (j, sj) in zip(group[::2], group[1::2]):
            pairs.append((i, j, "reinforce" if si == sj else "annihilate"))
    return sorted(pairs)


def tree_to_dot(tree: EvalTree, ascii: bool = False) -> str:
    lines = [
        "digraph evaluation {",
        "  rankdir=LR;",
        '  node [shape=plaintext, fontname="Helvetica"];',
    ]
    edges = []
    leaf_ids = []
    counter = 0

    def visit(node: EvalTree) -> str:
        nonlocal counter
        nid = f"n{counter}"
        counter += 1
        states = [node.value.state, *node.trail]
        label = (" -> " if ascii else " → ").join(ket_label(s, ascii) for s in states)
        if node.is_leaf():
            leaf_ids.append(nid)
            lines.append(f'  {nid} [label="{label}", leaf=true];')
        else:
            lines.append(f'  {nid} [label="{label}"];')
        for ch in node.children:
            cid = visit(ch)
            edges.append(f'  {nid} -> {cid} [label="{format_amplitude(ch.value.amp)}"];')
        return nid

    visit(tree)
    lines.extend(edges)
    for i, j, kind in leaf_pairs(tree):
        style = 'color=blue, style=solid' if kind == "reinforce" else 'color=red, style=dashed'
        lines.append(
            f'  {leaf_ids[i]} -> {leaf_ids[j]} [{style}, dir=both, constraint=false, pair={kind}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
