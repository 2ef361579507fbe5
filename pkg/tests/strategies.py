"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from seqop.operad import is_nondegenerate


@st.composite
def surjection(draw, max_entries=6, max_arity=4, min_arity=1):
    k = draw(st.integers(min_arity, max_arity))
    m = draw(st.integers(k, max(k, max_entries)))
    seq = [draw(st.integers(1, k))]
    while len(seq) < m:
        seq.append(draw(st.integers(1, k).filter(lambda v, last=seq[-1]: v != last)))
    missing = [v for v in range(1, k + 1) if v not in seq]
    for v in missing:
        # splice the missing value where it does not create a repeat
        for pos in range(len(seq) + 1):
            left = seq[pos - 1] if pos else None
            right = seq[pos] if pos < len(seq) else None
            if left != v and right != v:
                seq.insert(pos, v)
                break
    seq = tuple(seq)
    assert is_nondegenerate(seq)
    return seq


@st.composite
def permutation(draw, k):
    return tuple(draw(st.permutations(list(range(1, k + 1)))))
