"""Brute-force reference for the rule cascade, used by the ordering criterion.

It drives the rule functions directly: every rule is tried at every morph
junction, with none of the prefilters or trigger gating that realize uses.
"""
from __future__ import annotations

import itertools

from sorani.phonology import DEFAULT_ORDER, RULES, _State

MORPH_BLOCK = ("copula-t", "imperative-r", "stem-e-a", "stem-o-wa", "emphatic-i", "indefinite-y")
BLOCKS = ("morph", "vowel-merge", "vowel-drop", "glide", "shortening")


def brute_realize(seq, order) -> str:
    st = _State(seq)
    for _ in range(32):
        changed = False
        for rid in order:
            st.rule = rid
            j = 1
            while j < len(st.segs):
                if st.owner[j - 1] != st.owner[j] and RULES[rid].apply(st, j):
                    changed = True
                    j = max(1, j - 1)
                else:
                    j += 1
        if not changed:
            return "".join(st.segs)
    raise RuntimeError(f"no fixpoint for {seq.underlying()!r} under {order}")


def candidate_orders():
    """Every order of the five blocks, then every internal order of the morph-conditioned block."""
    seen = []
    for blocks in itertools.permutations(BLOCKS):
        order = tuple(r for b in blocks for r in (MORPH_BLOCK if b == "morph" else (b,)))
        seen.append(order)
    tail = DEFAULT_ORDER[len(MORPH_BLOCK):]
    for inner in itertools.permutations(MORPH_BLOCK):
        order = inner + tail
        if order not in seen:
            seen.append(order)
    return seen


def ordering_report(cases):
    """cases: (sequence, gold surface) pairs. Returns {order: number of gold forms reproduced}."""
    return {order: sum(brute_realize(seq, order) == want for seq, want in cases) for order in candidate_orders()}
