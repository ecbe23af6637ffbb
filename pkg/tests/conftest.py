"""Session-scoped test corpus: one graph per construction family.

Built once per session; every entry is deterministic (fixed seeds), so
expected values frozen in the tests stay valid across runs.
"""

from dataclasses import dataclass

import pytest

from expforge.cayley import (
    SparseGraph,
    build_cayley,
    build_cayley_on,
    build_schreier,
    build_schreier_from_perms,
)
from expforge.ffield import make_field
from expforge.gensets import (
    CubeSpec,
    GeneratingSet,
    cube_base_action,
    cube_embeddings,
    elementary_set,
    nonsplit_torus,
    power_generators,
    search_conjugator,
    sl2_over_extension_plus_conjugator,
    sl2_standard,
)
from expforge.groups import GroupHandle, VectorDomain, enumerate_group, three_cycle, transposition

SEARCH_SEED = 20240
SEARCH_TRIALS = 200


@dataclass
class CorpusEntry:
    name: str
    recipe: str
    graph: SparseGraph


def _triangle():
    handle = GroupHandle.alt(3)
    rot = three_cycle(3, 0, 1, 2)
    return build_cayley(GeneratingSet(handle, [("r", rot), ("r^-1", rot.inverse())], symmetric=True))


def _sym3():
    handle = GroupHandle.sym(3)
    gens = [(f"t{i}{j}", transposition(3, i, j)) for i, j in ((0, 1), (0, 2), (1, 2))]
    return build_cayley(GeneratingSet(handle, gens, symmetric=True))


@pytest.fixture(scope="session")
def torus_searches():
    """Conjugator searches for q in {3, 5, 9}, 200 trials, fixed seed."""
    out = {}
    for p, k in [(3, 1), (5, 1), (3, 2)]:
        spec = make_field(p, k)
        torus = nonsplit_torus(spec, 2)
        out[(p, k)] = search_conjugator(torus, trials=SEARCH_TRIALS, seed=SEARCH_SEED)
    return out


@pytest.fixture(scope="session")
def corpus(torus_searches):
    entries = []
    entries.append(CorpusEntry("k3", "baseline", _triangle()))
    entries.append(CorpusEntry("sym3_transpositions", "baseline", _sym3()))

    f2 = make_field(2)
    entries.append(CorpusEntry("sl2_f2_standard", "sl2-standard", build_cayley(sl2_standard(f2))))
    entries.append(
        CorpusEntry(
            "schreier_sl2_f2_vectors",
            "sl2-standard",
            build_schreier(sl2_standard(f2), VectorDomain(f2, 2)),
        )
    )
    for p in (3, 5, 7, 11, 13):
        entries.append(
            CorpusEntry(f"sl2_f{p}_standard", "sl2-standard", build_cayley(sl2_standard(make_field(p))))
        )
    for (p, k), found in torus_searches.items():
        entries.append(
            CorpusEntry(
                f"torus_conj_q{p**k}", "torus-conj", build_cayley_on(found.ambient, found.genset)
            )
        )
    entries.append(
        CorpusEntry("elementary_sl3_f2", "elementary", build_cayley(elementary_set(3, f2)))
    )
    entries.append(
        CorpusEntry("elementary_sl2_f3", "elementary", build_cayley(elementary_set(2, make_field(3))))
    )
    entries.append(
        CorpusEntry(
            "ros_m1_sl2_f3",
            "ros-sl2",
            build_cayley(sl2_over_extension_plus_conjugator(make_field(3), 1, trials=32, seed=SEARCH_SEED)),
        )
    )
    gens, domain = cube_base_action(1)
    built = cube_embeddings(CubeSpec.reduced_spec(d=7, m=2), gens, domain)
    entries.append(
        CorpusEntry(
            "cube_d7_m2_schreier",
            "cube",
            build_schreier_from_perms([g for _, g in built.genset]),
        )
    )
    entries.append(
        CorpusEntry("el3_power_s1", "el3-power", build_cayley(power_generators(1, 1)))
    )
    return entries


@pytest.fixture(scope="session")
def ros_m2():
    """The 4-generator SL_4(F_2) construction and its Cayley graph."""
    genset = sl2_over_extension_plus_conjugator(make_field(2), 2, trials=12, seed=7)
    group = enumerate_group(genset.members())
    graph = build_cayley_on(group, genset)
    return genset, group, graph
