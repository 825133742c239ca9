from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from snskit.algebra import Element, basis_in_window
from snskit.tensors import Tensor3, TensorElement

settings.register_profile("default", derandomize=True, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BASIS4 = basis_in_window(4)

basis_vectors = st.sampled_from(BASIS4)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)


def elements(max_terms=4):
    return st.dictionaries(basis_vectors, rationals, max_size=max_terms).map(Element)


def homogeneous_elements(max_terms=3):
    """Parity-homogeneous elements, the domain of the signed identities."""
    return st.integers(0, 1).flatmap(lambda p: st.dictionaries(
        st.sampled_from([b for b in BASIS4 if b.parity == p]), rationals,
        min_size=1, max_size=max_terms).map(Element))


def tensors(max_terms=4):
    return st.dictionaries(st.tuples(basis_vectors, basis_vectors), rationals,
                           max_size=max_terms).map(TensorElement)


def tensors3(max_terms=3):
    return st.dictionaries(st.tuples(basis_vectors, basis_vectors, basis_vectors), rationals,
                           max_size=max_terms).map(Tensor3)


def F(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        return
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
