import itertools

import pytest
from hypothesis import strategies as st

from foamlab.builtins import builtin_web
from foamlab.webs import Web


@pytest.fixture(scope="session")
def dodecahedron():
    return builtin_web("dodecahedron")


@st.composite
def cubic_multigraphs(draw, max_vertices=6, circles=True):
    """Random trivalent multigraphs (loops and multi-edges allowed) built by
    pairing up half-edges, plus optional free circles."""
    n = draw(st.sampled_from([k for k in range(0, max_vertices + 1, 2)]))
    half = [f"v{k}" for k in range(n) for _ in range(3)]
    order = draw(st.permutations(range(len(half))))
    edges = [(f"e{k}", (half[order[2 * k]], half[order[2 * k + 1]]))
             for k in range(len(half) // 2)]
    ncirc = draw(st.integers(0, 2)) if circles else 0
    edges += [(f"c{k}", ()) for k in range(ncirc)]
    return Web.from_edges(edges, "random", vertices=[f"v{k}" for k in range(n)])


def brute_force_colorings(web):
    """Every assignment of 3 colors to the edges, filtered by the vertex rule."""
    ids = web.edge_ids
    out = []
    for colors in itertools.product((1, 2, 3), repeat=len(ids)):
        assign = dict(zip(ids, colors))
        ok = True
        for v in web.vertices:
            seen = [assign[e] for e in web.incident(v)]
            if len(set(seen)) != 3 or len(seen) != 3:
                ok = False
                break
        if ok:
            out.append(assign)
    return out


# -- acceptance reporting ----------------------------------------------------

_CRITERIA: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    report = outcome.get_result()
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True, "seconds": 0.0, "note": ""})
    if report.when == "call":
        entry["seconds"] += report.duration
        entry["note"] = entry["note"] or getattr(item, "acceptance_note", "")
    if report.failed or (report.when == "call" and report.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        line = f"{'PASS' if e['ok'] else 'FAIL'}  criterion {n:2d}: {e['title']} ({e['seconds']:.2f} s)"
        if e["note"]:
            line += f"\n      {e['note']}"
        terminalreporter.write_line(line)
