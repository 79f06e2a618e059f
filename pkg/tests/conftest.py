import sys
from math import comb
from pathlib import Path


sys.path.insert(0, str(Path(__file__).parent))

from normalhilbert import Analysis, MonomialIdeal, NormalFiltration, Semigroup2, table_from_function  # noqa: E402

PLANE = ((1, 0), (0, 1))
A1 = ((1, 0), (1, 2))
M = [(1, 0), (0, 1)]
M_A1 = [(1, 0), (1, 1), (1, 2)]
CUBIC = [(3, 0), (1, 1), (0, 3)]

# toric instances used across the suites: (label, rays, I, J)
INSTANCES = [
    ("plane m,m", PLANE, M, M),
    ("A1 m,m", A1, M_A1, M_A1),
    ("plane cubic,m", PLANE, CUBIC, M),
    ("plane (x2,y3),m", PLANE, [(2, 0), (0, 3)], M),
    ("plane (x2,y2),(x3,y3)", PLANE, [(2, 0), (0, 2)], [(3, 0), (0, 3)]),
    ("plane (x2,y),(x,y2)", PLANE, [(2, 0), (0, 1)], [(1, 0), (0, 2)]),
    ("A1 (x2..),m", A1, [(2, 0), (1, 2)], M_A1),
    ("cone(1,3) m,pair", ((1, 0), (1, 3)), [(1, 0), (1, 1), (1, 2), (1, 3)], [(1, 0), (1, 3)]),
]


def make(rays, I, J, label="", **opts):
    from normalhilbert import Options

    S = Semigroup2(*rays)
    F = NormalFiltration(MonomialIdeal.from_generators(S, I), MonomialIdeal.from_generators(S, J))
    return Analysis(F, options=Options(**opts), label=label)


def elliptic_value(r, s):
    return 0 if r + s == 0 else 1 + 3 * comb(r + s, 2)


def elliptic(n=8):
    return Analysis(table=table_from_function(elliptic_value, n, n), label="elliptic")


# -- acceptance summary -----------------------------------------------------------

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
