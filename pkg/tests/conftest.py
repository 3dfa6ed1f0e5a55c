import functools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rees_kit.arith import GF32003, Ring
from rees_kit.families import (
    binary_ideal,
    binary_linear_syzygy_matrix,
    find_quadric_red3,
    monomial_aci,
    northcott_ideal,
    northcott_reference_data,
    quaternary_example,
)
from rees_kit.rees import AnalyzeOptions, analyze

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


R3 = Ring(["x", "y", "z"], GF32003)


@st.composite
def polys(draw, ring=R3, max_deg=3, max_terms=4, homogeneous=None):
    """Small random polynomials; ``homogeneous`` fixes a total degree."""
    n = ring.nvars
    k = draw(st.integers(0, max_terms))
    f = ring.zero()
    for _ in range(k):
        if homogeneous is None:
            exps = draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n))
        else:
            cuts = sorted(draw(st.lists(st.integers(0, homogeneous), min_size=n - 1, max_size=n - 1)))
            bounds = [0] + cuts + [homogeneous]
            exps = [bounds[i + 1] - bounds[i] for i in range(n)]
        c = draw(st.integers(-20, 20))
        f = f + ring.monomial(exps, c)
    return f


# -- suite instances, analyzed once per session -----------------------------

def _mono(n):
    m = monomial_aci(n, n, n, 1, 1, 1)
    return m.Q + [m.ring.gens()[2] ** n], m.Q


def _binary(n):
    return binary_ideal(binary_linear_syzygy_matrix(n, seed=0))


def _quadric():
    _, I, J, _, _ = find_quadric_red3(seed=0)
    return I, J


def _quaternary(tag):
    J, a = quaternary_example(tag)
    return J + [a], J


def _northcott():
    ents, det = northcott_ideal(*northcott_reference_data())
    return ents + [det], ents


SUITE = {
    "mono3": lambda: _mono(3),
    "mono4": lambda: _mono(4),
    "binary3": lambda: _binary(3),
    "binary4": lambda: _binary(4),
    "binary5": lambda: _binary(5),
    "quadric": _quadric,
    "hf141": lambda: _quaternary("hf141"),
    "hf131": lambda: _quaternary("hf131"),
    "hf121": lambda: _quaternary("hf121"),
    "northcott": _northcott,
}
FAST_SUITE = ["mono3", "mono4", "binary3", "binary4", "binary5", "quadric", "hf141", "hf131", "hf121"]


@functools.lru_cache(maxsize=None)
def suite_instance(name):
    return SUITE[name]()


@functools.lru_cache(maxsize=None)
def suite_report(name):
    I, J = suite_instance(name)
    return analyze(I, J, AnalyzeOptions())


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
