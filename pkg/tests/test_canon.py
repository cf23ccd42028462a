from hypothesis import given, strategies as st

from qabduct import ABox, Assertion
from qabduct.canon import abox_key, canonical_abox
from qabduct.model import anonymous
from strategies import aboxes


def _rename(abox, mapping):
    return ABox(Assertion(a.predicate, tuple(mapping.get(i, i) for i in a.args)) for a in abox)


@given(aboxes(anonymous_ok=True), st.permutations([1, 2, 3, 4]))
def test_key_ignores_anonymous_names(abox, perm):
    mapping = {anonymous(k): anonymous(perm[k - 1] + 10) for k in (1, 2)}
    assert abox_key(_rename(abox, mapping)) == abox_key(abox)


@given(aboxes(anonymous_ok=True))
def test_canonical_form_is_a_fixpoint(abox):
    canon = canonical_abox(abox)
    assert abox_key(canon) == abox_key(abox)
    assert canonical_abox(canon) == canon
    assert len(canon) == len(abox)


@given(aboxes(), aboxes())
def test_named_individuals_are_never_renamed(a1, a2):
    assert (abox_key(a1) == abox_key(a2)) == (a1 == a2)
