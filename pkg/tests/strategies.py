from hypothesis import assume
from hypothesis import strategies as st

from tqf.forms import TernaryForm


@st.composite
def positive_forms(draw, max_diag=12):
    a = draw(st.integers(1, max_diag))
    b = draw(st.integers(1, max_diag))
    c = draw(st.integers(1, max_diag))
    r = draw(st.integers(-b, b))
    s = draw(st.integers(-a, a))
    t = draw(st.integers(-a, a))
    f = TernaryForm(a, b, c, r, s, t)
    assume(f.is_positive_definite)
    return f


@st.composite
def primitive_forms(draw, max_diag=12):
    f = draw(positive_forms(max_diag))
    assume(f.is_primitive)
    return f
