"""Shared brute-force oracles: everything here works on explicit element sets."""

import itertools
import os

from hypothesis import HealthCheck, settings

from entroflow import modules as mc

settings.register_profile(
    "entroflow",
    derandomize=True,
    deadline=None,
    max_examples=int(os.environ.get("ENTROFLOW_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("entroflow")


def element_set(sub):
    """Coordinates of every element of a finite module lying in ``sub``."""
    return {x.coords for x in mc.elements(sub.parent) if x in sub}


def add(m, a, b):
    return tuple((x + y) % d for x, y, d in zip(a, b, m.factors))


def closure(m, gens):
    """Subgroup generated by ``gens`` in a finite module, by repeated addition."""
    zero = tuple(0 for _ in m.factors)
    out = {zero}
    frontier = [zero]
    gens = [tuple(g % d for g, d in zip(v, m.factors)) for v in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add(m, x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def brute_homs(m, k):
    """All maps on generators that respect the relations of a finite ``m``."""
    out = []
    images = list(itertools.product(*(range(e) for e in k.factors)))
    for choice in itertools.product(images, repeat=m.ngens):
        ok = all(all((d * c) % e == 0 for c, e in zip(img, k.factors)) for d, img in zip(m.factors, choice))
        if ok:
            out.append([[choice[j][i] for j in range(m.ngens)] for i in range(k.ngens)])
    return out


def all_subgroups(m):
    """Every subgroup of a finite module as a frozenset of coordinates."""
    elems = [x.coords for x in mc.elements(m)]
    cyclic = {frozenset(closure(m, [x])) for x in elems}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for a in frontier:
            for c in cyclic:
                s = frozenset(closure(m, list(a | c)))
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return found


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
