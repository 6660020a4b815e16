import random

from hypothesis import strategies as st

from cylrig import catalog
from cylrig.corpus import random_tight

CERT_GROUPS = ["Ci", "C2", "Cs_axial", "Cs_horizontal"]


def base(key, group=None):
    return catalog.base_graph(key, group)


@st.composite
def tight_graphs(draw, groups=CERT_GROUPS, max_vertices=14):
    group = draw(st.sampled_from(groups))
    seed = draw(st.integers(0, 10 ** 6))
    cert, g = random_tight(group, random.Random(seed), max_vertices)
    return cert, g
