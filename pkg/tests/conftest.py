import os

import pytest
from hypothesis import settings

from gcmassey.graphs import ModularGraph

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

SLOW = os.environ.get("GCMASSEY_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="slow; set GCMASSEY_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def relabel(g: ModularGraph, vperm, fperm) -> ModularGraph:
    """Same graph with vertex v renamed vperm[v] and flag f renamed fperm[f]."""
    nf = g.n_flags
    fv = [0] * nf
    partner = [0] * nf
    for f in range(nf):
        fv[fperm[f]] = vperm[g.flag_vertex[f]]
        partner[fperm[f]] = fperm[g.partner[f]]
    genus = [0] * g.n_vertices
    for v, x in enumerate(g.genus):
        genus[vperm[v]] = x
    return ModularGraph(tuple(genus), tuple(fv), tuple(partner), tuple(fperm[l] for l in g.legs))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
