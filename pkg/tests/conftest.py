from hypothesis import strategies as st

from bairekit.cylinder import Atom, Diff, EMPTY, FULL, Inter, Union

seqs = st.lists(st.integers(0, 2), max_size=3).map(tuple)

_atoms = st.one_of(
    seqs.map(Atom),
    st.just(EMPTY),
    st.just(FULL),
)

exprs = st.recursive(
    _atoms,
    lambda sub: st.one_of(
        st.builds(Union, sub, sub),
        st.builds(Inter, sub, sub),
        st.builds(Diff, sub, sub),
    ),
    max_leaves=4,
)
